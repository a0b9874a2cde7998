//! Generalized flag manifold data attached to a parabolic selection.
//!
//! A subset `Π₀` of the simple roots generates the isotropy subsystem
//! `R_h = R ∩ span(Π₀)`; the complement `R_m = R ∖ R_h` carries the tangent
//! space, with the standard positive ordering `R_m⁺ = R⁺ ∖ R_h`. The module
//! computes `δ_m = Σ_{α∈R_m⁺} α`, the orthogonal projection onto the center
//! (the annihilator of `span(Π₀)` inside the weight space) and the grouping
//! of `R_m⁺` into T-root classes `(ρ_j, m_j, β_j)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::linalg::{solve, QMat};
use crate::ratio::{q_str, Q};
use crate::root_systems::{sum_of, AmbientVector, RootSystem};

/// Flag manifold `G/H` determined by a root system and a parabolic selection
/// `Π₀` (0-based indices into the simple roots; these span the semisimple
/// part of the isotropy algebra).
#[derive(Clone, Debug)]
pub struct FlagManifold {
    system: RootSystem,
    pi0: BTreeSet<usize>,
    r_h: Vec<AmbientVector>,
    r_m_plus: Vec<AmbientVector>,
    delta_m: AmbientVector,
    dim_complex: usize,
    center_dim: usize,
}

/// One class of positive T-roots: the common center projection `ρ`, the
/// complex dimension `m` of the corresponding isotropy submodule, and the
/// common pairing `β = ⟨α, δ_m⟩` of its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TRootClass {
    pub rho: AmbientVector,
    pub multiplicity: usize,
    pub beta: Q,
}

/// All positive T-root classes, sorted by `(β, ρ)` for deterministic output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TRootDecomposition {
    pub classes: Vec<TRootClass>,
}

impl TRootDecomposition {
    pub fn total_multiplicity(&self) -> usize {
        self.classes.iter().map(|c| c.multiplicity).sum()
    }

    pub fn betas(&self) -> Vec<Q> {
        self.classes.iter().map(|c| c.beta.clone()).collect()
    }
}

/// Builds the flag manifold for `Π₀ ⊊ {simple roots}`. The empty set gives
/// the full flag `G/T`.
pub fn build_flag(system: RootSystem, pi0: &BTreeSet<usize>) -> Result<FlagManifold> {
    let rank = system.rank();
    for &i in pi0 {
        if i >= rank {
            return Err(Error::ParabolicIndexOutOfRange(i, rank));
        }
    }
    if pi0.len() == rank {
        return Err(Error::ParabolicIsFullSimpleSet);
    }

    let pi0_roots: Vec<AmbientVector> = pi0
        .iter()
        .map(|&i| system.simple_roots()[i].clone())
        .collect();
    let span_mat = basis_columns(system.ambient_dim(), &pi0_roots);

    let mut r_h = Vec::new();
    let mut r_m_plus = Vec::new();
    for root in system.positive_roots() {
        if in_span(&span_mat, root) {
            r_h.push(root.clone());
            r_h.push(root.neg());
        } else {
            r_m_plus.push(root.clone());
        }
    }
    r_h.sort();

    let delta_m = sum_of(&r_m_plus)?;
    let dim_complex = r_m_plus.len();
    let center_dim = rank - pi0.len();

    Ok(FlagManifold {
        system,
        pi0: pi0.clone(),
        r_h,
        r_m_plus,
        delta_m,
        dim_complex,
        center_dim,
    })
}

impl FlagManifold {
    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn pi0(&self) -> &BTreeSet<usize> {
        &self.pi0
    }

    pub fn is_full_flag(&self) -> bool {
        self.pi0.is_empty()
    }

    /// Isotropy roots `R_h` (both signs), sorted.
    pub fn r_h(&self) -> &[AmbientVector] {
        &self.r_h
    }

    /// Positive complementary roots `R_m⁺ = R⁺ ∖ R_h`.
    pub fn r_m_plus(&self) -> &[AmbientVector] {
        &self.r_m_plus
    }

    pub fn delta_m(&self) -> &AmbientVector {
        &self.delta_m
    }

    /// Complex dimension of `M`, i.e. `|R_m⁺|`.
    pub fn dim_complex(&self) -> usize {
        self.dim_complex
    }

    /// Dimension of the center of the isotropy algebra (`rank − |Π₀|`).
    pub fn center_dim(&self) -> usize {
        self.center_dim
    }

    /// Descriptive label such as `A2` or `B3(pi0=1,3)`.
    pub fn label(&self) -> String {
        let base = format!("{}{}", self.system.family(), self.system.rank());
        if self.pi0.is_empty() {
            base
        } else {
            let idx: Vec<String> = self.pi0.iter().map(|i| (i + 1).to_string()).collect();
            format!("{base}(pi0={})", idx.join(","))
        }
    }

    /// Orthogonal projection of a weight-space vector onto the orthogonal
    /// complement of `span(Π₀)`. On these orthonormal realizations the
    /// restriction of the invariant form to the Cartan subalgebra is a
    /// positive multiple of the dot product, so dot-orthogonal equals
    /// form-orthogonal and the scale drops out.
    pub fn project_to_center(&self, v: &AmbientVector) -> Result<AmbientVector> {
        if v.dim() != self.system.ambient_dim() {
            return Err(Error::DimensionMismatch(v.dim(), self.system.ambient_dim()));
        }
        if !self.system.in_weight_space(v) {
            return Err(Error::NotInWeightSpace);
        }
        if self.pi0.is_empty() {
            return Ok(v.clone());
        }
        let basis: Vec<AmbientVector> = self
            .pi0
            .iter()
            .map(|&i| self.system.simple_roots()[i].clone())
            .collect();
        let k = basis.len();
        let mut gram = QMat::zero(k, k);
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                gram.set(i, j, bi.dot(bj)?);
            }
        }
        let rhs: Vec<Q> = basis.iter().map(|b| b.dot(v)).collect::<Result<_>>()?;
        let coeffs = solve(&gram, &rhs)
            .ok_or_else(|| Error::Internal("singular Gram matrix of simple roots".into()))?;
        let mut out = v.clone();
        for (c, b) in coeffs.iter().zip(&basis) {
            out = out.sub(&b.scale(c))?;
        }
        Ok(out)
    }

    /// Partition of `R_m⁺` by equal center projection. The pairing
    /// `β = ⟨α, δ_m⟩` is asserted to be constant on each class; a violation
    /// signals a projection bug and reports an internal consistency error.
    pub fn t_root_decomposition(&self) -> Result<TRootDecomposition> {
        let mut by_rho: BTreeMap<AmbientVector, (usize, Q)> = BTreeMap::new();
        for alpha in &self.r_m_plus {
            let rho = self.project_to_center(alpha)?;
            let beta = self.system.inner(alpha, &self.delta_m)?;
            match by_rho.get_mut(&rho) {
                None => {
                    by_rho.insert(rho, (1, beta));
                }
                Some((count, beta0)) => {
                    if *beta0 != beta {
                        return Err(Error::InconsistentClassPairing(q_str(beta0), q_str(&beta)));
                    }
                    *count += 1;
                }
            }
        }
        let mut classes: Vec<TRootClass> = by_rho
            .into_iter()
            .map(|(rho, (multiplicity, beta))| TRootClass {
                rho,
                multiplicity,
                beta,
            })
            .collect();
        classes.sort_by(|a, b| (&a.beta, &a.rho).cmp(&(&b.beta, &b.rho)));
        Ok(TRootDecomposition { classes })
    }

    /// Exhaustive check of the invariant-ordering closure conditions
    /// `(R_h + R_m⁺) ∩ R ⊆ R_m⁺` and `(R_m⁺ + R_m⁺) ∩ R ⊆ R_m⁺`.
    pub fn verify_invariant_ordering(&self) -> Result<()> {
        let m_plus: BTreeSet<_> = self.r_m_plus.iter().cloned().collect();
        let check = |sum: AmbientVector| -> Result<()> {
            if self.system.is_root(&sum) && !m_plus.contains(&sum) {
                return Err(Error::Internal(format!(
                    "closure violation: {sum} is a root outside R_m+"
                )));
            }
            Ok(())
        };
        for h in &self.r_h {
            for m in &self.r_m_plus {
                check(h.add(m)?)?;
            }
        }
        for m1 in &self.r_m_plus {
            for m2 in &self.r_m_plus {
                check(m1.add(m2)?)?;
            }
        }
        Ok(())
    }
}

fn basis_columns(dim: usize, basis: &[AmbientVector]) -> QMat {
    QMat::from_rows(
        (0..dim)
            .map(|r| basis.iter().map(|b| b.coords()[r].clone()).collect())
            .collect(),
    )
}

fn in_span(span_mat: &QMat, v: &AmbientVector) -> bool {
    if span_mat.ncols() == 0 {
        return v.is_zero();
    }
    solve(span_mat, v.coords()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{q, qi};
    use crate::root_systems::Family;
    use num_traits::{Signed, Zero};

    fn flag(family: Family, rank: usize, pi0: &[usize]) -> FlagManifold {
        let rs = RootSystem::build(family, rank).unwrap();
        build_flag(rs, &pi0.iter().copied().collect()).unwrap()
    }

    /// SU(3n)/S(U(n)³): type A rank 3n−1 with Π₀ missing α_n and α_{2n}
    /// (1-based), i.e. all 0-based indices except n−1 and 2n−1.
    fn su3n_flag(n: usize) -> FlagManifold {
        let rank = 3 * n - 1;
        let pi0: Vec<usize> = (0..rank).filter(|&i| i != n - 1 && i != 2 * n - 1).collect();
        flag(Family::A, rank, &pi0)
    }

    #[test]
    fn a2_full_flag_dimensions() {
        let f = flag(Family::A, 2, &[]);
        assert_eq!(f.dim_complex(), 3);
        assert_eq!(f.center_dim(), 2);
        assert_eq!(f.r_m_plus().len(), f.system().positive_roots().len());
        assert!(f.r_h().is_empty());
    }

    #[test]
    fn su3n_flag_data() {
        for n in 1..=3 {
            let f = su3n_flag(n);
            assert_eq!(f.dim_complex(), 3 * n * n);
            assert_eq!(f.center_dim(), 2);
            // δ_m = 2n(Σ_{i≤n} ε_i − Σ_{i>2n} ε_i)
            let dim = 3 * n;
            let mut want = vec![Q::zero(); dim];
            for (i, w) in want.iter_mut().enumerate() {
                if i < n {
                    *w = qi(2 * n as i64);
                } else if i >= 2 * n {
                    *w = -qi(2 * n as i64);
                }
            }
            assert_eq!(f.delta_m(), &AmbientVector::new(want));
        }
    }

    #[test]
    fn b2_full_flag() {
        let f = flag(Family::B, 2, &[]);
        assert_eq!(f.dim_complex(), 4);
        assert_eq!(f.delta_m(), &AmbientVector::from_i64(&[3, 1]));
    }

    #[test]
    fn full_parabolic_set_is_rejected() {
        let rs = RootSystem::build(Family::A, 2).unwrap();
        let err = build_flag(rs, &[0usize, 1].into_iter().collect());
        assert!(matches!(err, Err(Error::ParabolicIsFullSimpleSet)));
        let rs = RootSystem::build(Family::A, 2).unwrap();
        let err = build_flag(rs, &[5usize].into_iter().collect());
        assert!(matches!(err, Err(Error::ParabolicIndexOutOfRange(5, 2))));
    }

    #[test]
    fn r_h_is_closed_under_negation_and_in_span() {
        let f = su3n_flag(2);
        // R_h for S(U(2)³) consists of three A₁ subsystems: 6 roots.
        assert_eq!(f.r_h().len(), 6);
        for h in f.r_h() {
            assert!(f.r_h().contains(&h.neg()));
        }
        assert_eq!(f.r_m_plus().len() * 2 + f.r_h().len(), f.system().num_roots());
    }

    #[test]
    fn projection_kills_isotropy_roots() {
        let f = su3n_flag(2);
        for h in f.r_h() {
            assert!(f.project_to_center(h).unwrap().is_zero());
        }
    }

    #[test]
    fn projection_is_identity_on_full_flags() {
        let f = flag(Family::C, 3, &[]);
        for r in f.system().positive_roots() {
            assert_eq!(&f.project_to_center(r).unwrap(), r);
        }
    }

    #[test]
    fn projection_matches_gram_schmidt_oracle() {
        // Independent oracle: orthogonalize span(Π₀) by exact Gram–Schmidt
        // (no normalization) and subtract the component along each direction.
        let f = su3n_flag(2);
        let basis: Vec<AmbientVector> = f
            .pi0()
            .iter()
            .map(|&i| f.system().simple_roots()[i].clone())
            .collect();
        let mut ortho: Vec<AmbientVector> = Vec::new();
        for b in &basis {
            let mut u = b.clone();
            for o in &ortho {
                let c = u.dot(o).unwrap() / o.dot(o).unwrap();
                u = u.sub(&o.scale(&c)).unwrap();
            }
            assert!(!u.is_zero());
            ortho.push(u);
        }
        let project = |v: &AmbientVector| -> AmbientVector {
            let mut out = v.clone();
            for o in &ortho {
                let c = out.dot(o).unwrap() / o.dot(o).unwrap();
                out = out.sub(&o.scale(&c)).unwrap();
            }
            out
        };
        for v in f.system().positive_roots() {
            assert_eq!(f.project_to_center(v).unwrap(), project(v));
        }
        // Spot value: ε₂−ε₃ in SU(6)/S(U(2)³) projects to (1/2,1/2,−1/2,−1/2,0,0).
        let v = AmbientVector::from_i64(&[0, 1, -1, 0, 0, 0]);
        let want = AmbientVector::new(vec![
            q(1, 2),
            q(1, 2),
            q(-1, 2),
            q(-1, 2),
            Q::zero(),
            Q::zero(),
        ]);
        assert_eq!(f.project_to_center(&v).unwrap(), want);
        // ε₁−ε₂ = α₁ lies in R_h, so it projects to zero.
        let v = AmbientVector::from_i64(&[1, -1, 0, 0, 0, 0]);
        assert!(f.project_to_center(&v).unwrap().is_zero());
    }

    #[test]
    fn projection_is_idempotent_and_linear() {
        let cases = [
            su3n_flag(2),
            flag(Family::B, 3, &[0]),
            flag(Family::C, 3, &[1]),
            flag(Family::D, 4, &[0, 2]),
            flag(Family::A, 3, &[1]),
        ];
        for f in &cases {
            for v in f.system().positive_roots() {
                let p = f.project_to_center(v).unwrap();
                assert_eq!(f.project_to_center(&p).unwrap(), p);
            }
            let roots = f.system().positive_roots();
            let (u, w) = (&roots[0], &roots[roots.len() - 1]);
            let lin = f.project_to_center(&u.add(w).unwrap()).unwrap();
            let sum = f
                .project_to_center(u)
                .unwrap()
                .add(&f.project_to_center(w).unwrap())
                .unwrap();
            assert_eq!(lin, sum);
        }
    }

    #[test]
    fn projection_rejects_vectors_outside_weight_space() {
        let f = flag(Family::A, 2, &[]);
        let err = f.project_to_center(&AmbientVector::from_i64(&[1, 0, 0]));
        assert!(matches!(err, Err(Error::NotInWeightSpace)));
        let err = f.project_to_center(&AmbientVector::from_i64(&[1, -1]));
        assert!(matches!(err, Err(Error::DimensionMismatch(2, 3))));
    }

    #[test]
    fn delta_m_is_orthogonal_to_isotropy_and_positive_on_r_m() {
        for f in [
            su3n_flag(2),
            flag(Family::B, 4, &[1, 3]),
            flag(Family::D, 4, &[0]),
        ] {
            for h in f.r_h() {
                assert_eq!(f.system().inner(f.delta_m(), h).unwrap(), Q::zero());
            }
            for m in f.r_m_plus() {
                assert!(f.system().inner(m, f.delta_m()).unwrap().is_positive());
            }
        }
    }

    #[test]
    fn t_roots_of_su3n_quotients() {
        for n in 1..=3i64 {
            let f = su3n_flag(n as usize);
            let dec = f.t_root_decomposition().unwrap();
            assert_eq!(dec.classes.len(), 3);
            for c in &dec.classes {
                assert_eq!(c.multiplicity, (n * n) as usize);
            }
            assert_eq!(dec.betas(), vec![qi(2 * n), qi(2 * n), qi(4 * n)]);
            assert_eq!(dec.total_multiplicity(), f.dim_complex());
        }
    }

    #[test]
    fn full_flag_classes_are_singletons() {
        for f in [
            flag(Family::A, 3, &[]),
            flag(Family::B, 2, &[]),
            flag(Family::D, 4, &[]),
        ] {
            let dec = f.t_root_decomposition().unwrap();
            assert_eq!(dec.classes.len(), f.dim_complex());
            assert!(dec.classes.iter().all(|c| c.multiplicity == 1));
        }
    }

    #[test]
    fn a2_full_flag_betas() {
        // Dot products of the positive roots with δ = (2,0,−2): {2,2,4}.
        let f = flag(Family::A, 2, &[]);
        let dec = f.t_root_decomposition().unwrap();
        assert_eq!(dec.betas(), vec![qi(2), qi(2), qi(4)]);
    }

    #[test]
    fn invariant_ordering_closure_holds() {
        for f in [
            flag(Family::A, 2, &[]),
            su3n_flag(2),
            flag(Family::B, 3, &[0]),
            flag(Family::C, 3, &[2]),
            flag(Family::D, 4, &[1, 3]),
        ] {
            f.verify_invariant_ordering().unwrap();
        }
    }

    #[test]
    fn multiplicities_sum_to_dim_complex_across_parabolics() {
        // Every proper subset of the simple roots of A₃ and B₃.
        for family in [Family::A, Family::B] {
            let rank = 3;
            for mask in 0..(1u32 << rank) - 1 {
                let pi0: BTreeSet<usize> = (0..rank).filter(|i| mask & (1 << i) != 0).collect();
                let rs = RootSystem::build(family, rank).unwrap();
                let f = build_flag(rs, &pi0).unwrap();
                let dec = f.t_root_decomposition().unwrap();
                assert_eq!(dec.total_multiplicity(), f.dim_complex());
                for (i, a) in dec.classes.iter().enumerate() {
                    assert!(a.beta.is_positive());
                    for b in dec.classes.iter().skip(i + 1) {
                        assert_ne!(a.rho, b.rho);
                    }
                }
            }
        }
    }
}
