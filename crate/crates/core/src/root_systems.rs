//! Classical root systems in orthonormal ambient coordinates.
//!
//! Type `A_{n−1}` is realized inside `ℝⁿ` (roots `ε_i − ε_j` living in the
//! sum-zero hyperplane), types `B_n`, `C_n`, `D_n` in `ℝⁿ` with the
//! orthonormal basis `ω_i`. The invariant bilinear form is the standard dot
//! product times a positive rational `form_scale`; with the default scale 1
//! every type-A root has squared length 2.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratio::{qi, Q};

/// The four classical families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    /// Smallest rank for which the family yields a simple algebra that is not
    /// a duplicate of a smaller family (`B₁ ≅ A₁`, `C₂ ≅ B₂`, `D₂ ≅ A₁×A₁`).
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B => 2,
            Family::C | Family::D => 3,
        }
    }

    /// The classical parameter `n` of `SU(n)`, `SO(2n+1)`, `Sp(n)`, `SO(2n)`.
    pub fn classical_param(self, rank: usize) -> usize {
        match self {
            Family::A => rank + 1,
            _ => rank,
        }
    }

    /// Rank corresponding to a classical parameter; inverse of
    /// [`Family::classical_param`].
    pub fn rank_from_param(self, n: usize) -> usize {
        match self {
            Family::A => n.saturating_sub(1),
            _ => n,
        }
    }

    /// Compact group label, e.g. `SU(4)` or `SO(7)`.
    pub fn group_name(self, rank: usize) -> String {
        let n = self.classical_param(rank);
        match self {
            Family::A => format!("SU({n})"),
            Family::B => format!("SO({})", 2 * n + 1),
            Family::C => format!("Sp({n})"),
            Family::D => format!("SO({})", 2 * n),
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.trim() {
            "A" | "a" => Some(Family::A),
            "B" | "b" => Some(Family::B),
            "C" | "c" => Some(Family::C),
            "D" | "d" => Some(Family::D),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        };
        write!(f, "{c}")
    }
}

/// Vector in the ambient coordinate space of a root system, with exact
/// rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AmbientVector(Vec<Q>);

impl AmbientVector {
    pub fn new(coords: Vec<Q>) -> Self {
        AmbientVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        AmbientVector(coords.iter().map(|&c| qi(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        AmbientVector(vec![Q::zero(); dim])
    }

    /// Unit coordinate vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![Q::zero(); dim];
        v[i] = Q::one();
        AmbientVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &AmbientVector) -> Result<AmbientVector> {
        self.check_dim(other)?;
        Ok(AmbientVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &AmbientVector) -> Result<AmbientVector> {
        self.check_dim(other)?;
        Ok(AmbientVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn neg(&self) -> AmbientVector {
        AmbientVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, f: &Q) -> AmbientVector {
        AmbientVector(self.0.iter().map(|a| a * f).collect())
    }

    /// Plain dot product, without the form scale.
    pub fn dot(&self, other: &AmbientVector) -> Result<Q> {
        self.check_dim(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(Q::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn coord_sum(&self) -> Q {
        self.0.iter().fold(Q::zero(), |acc, a| acc + a)
    }

    fn check_dim(&self, other: &AmbientVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }
}

impl fmt::Display for AmbientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Componentwise exact sum of a nonempty list of vectors.
pub fn sum_of(vectors: &[AmbientVector]) -> Result<AmbientVector> {
    let first = vectors.first().ok_or(Error::EmptyVectorList)?;
    let mut acc = first.clone();
    for v in &vectors[1..] {
        acc = acc.add(v)?;
    }
    Ok(acc)
}

/// A classical root system with a chosen (standard) set of simple roots and
/// the lexicographically sorted list of positive roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    ambient_dim: usize,
    simple_roots: Vec<AmbientVector>,
    positive_roots: Vec<AmbientVector>,
    root_set: BTreeSet<AmbientVector>,
    form_scale: Q,
}

impl RootSystem {
    /// Builds the root system of the given family and rank with the standard
    /// simple roots and `form_scale = 1`.
    pub fn build(family: Family, rank: usize) -> Result<RootSystem> {
        let min = family.min_rank();
        if rank < min {
            return Err(Error::UnsupportedRank { family, rank, min });
        }
        let (ambient_dim, simple_roots, mut positive_roots) = match family {
            Family::A => {
                let n = rank + 1;
                let simple: Vec<_> = (0..rank).map(|i| eps_diff(n, i, i + 1)).collect();
                let mut pos = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        pos.push(eps_diff(n, i, j));
                    }
                }
                (n, simple, pos)
            }
            Family::B => {
                let n = rank;
                let mut simple: Vec<_> = (0..n - 1).map(|i| eps_diff(n, i, i + 1)).collect();
                simple.push(AmbientVector::unit(n, n - 1));
                let mut pos = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        pos.push(eps_diff(n, i, j));
                        pos.push(eps_sum(n, i, j));
                    }
                    pos.push(AmbientVector::unit(n, i));
                }
                (n, simple, pos)
            }
            Family::C => {
                let n = rank;
                let mut simple: Vec<_> = (0..n - 1).map(|i| eps_diff(n, i, i + 1)).collect();
                simple.push(AmbientVector::unit(n, n - 1).scale(&qi(2)));
                let mut pos = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        pos.push(eps_diff(n, i, j));
                        pos.push(eps_sum(n, i, j));
                    }
                    pos.push(AmbientVector::unit(n, i).scale(&qi(2)));
                }
                (n, simple, pos)
            }
            Family::D => {
                let n = rank;
                let mut simple: Vec<_> = (0..n - 1).map(|i| eps_diff(n, i, i + 1)).collect();
                simple.push(eps_sum(n, n - 2, n - 1));
                let mut pos = Vec::new();
                for i in 0..n {
                    for j in (i + 1)..n {
                        pos.push(eps_diff(n, i, j));
                        pos.push(eps_sum(n, i, j));
                    }
                }
                (n, simple, pos)
            }
        };
        positive_roots.sort();
        let mut root_set = BTreeSet::new();
        for r in &positive_roots {
            root_set.insert(r.clone());
            root_set.insert(r.neg());
        }
        Ok(RootSystem {
            family,
            rank,
            ambient_dim,
            simple_roots,
            positive_roots,
            root_set,
            form_scale: Q::one(),
        })
    }

    /// Same system with the invariant form multiplied by `scale > 0`.
    pub fn with_form_scale(mut self, scale: Q) -> Result<RootSystem> {
        if !scale.is_positive() {
            return Err(Error::NonPositiveScale);
        }
        self.form_scale = scale;
        Ok(self)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn form_scale(&self) -> &Q {
        &self.form_scale
    }

    pub fn simple_roots(&self) -> &[AmbientVector] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[AmbientVector] {
        &self.positive_roots
    }

    /// All roots, positives followed by their negatives.
    pub fn roots(&self) -> Vec<AmbientVector> {
        let mut all: Vec<_> = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(AmbientVector::neg));
        all
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive_roots.len()
    }

    pub fn is_root(&self, v: &AmbientVector) -> bool {
        self.root_set.contains(v)
    }

    /// Invariant inner product: `form_scale · Σ uᵢ vᵢ`.
    pub fn inner(&self, u: &AmbientVector, v: &AmbientVector) -> Result<Q> {
        Ok(u.dot(v)? * &self.form_scale)
    }

    pub fn norm_sq(&self, v: &AmbientVector) -> Result<Q> {
        self.inner(v, v)
    }

    /// `δ = Σ_{α ∈ R⁺} α`.
    pub fn delta(&self) -> AmbientVector {
        sum_of(&self.positive_roots).expect("positive roots are nonempty")
    }

    /// Membership in the weight space of the realization: for type A the
    /// sum-zero hyperplane of `ℝⁿ`, otherwise all of `ℝⁿ`.
    pub fn in_weight_space(&self, v: &AmbientVector) -> bool {
        v.dim() == self.ambient_dim
            && (self.family != Family::A || v.coord_sum().is_zero())
    }
}

fn eps_diff(dim: usize, i: usize, j: usize) -> AmbientVector {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v[j] = -Q::one();
    AmbientVector::new(v)
}

fn eps_sum(dim: usize, i: usize, j: usize) -> AmbientVector {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v[j] = Q::one();
    AmbientVector::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{solve, QMat};
    use crate::ratio::{is_nonneg_integer, q};

    fn all_systems(max_rank: usize) -> Vec<RootSystem> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B, Family::C, Family::D] {
            for rank in family.min_rank()..=max_rank {
                out.push(RootSystem::build(family, rank).unwrap());
            }
        }
        out
    }

    #[test]
    fn root_counts() {
        // A_{n-1} in ℝⁿ: n(n-1); B_n, C_n: 2n²; D_n: 2n(n-1).
        for rank in 1..=8 {
            let rs = RootSystem::build(Family::A, rank).unwrap();
            let n = rank + 1;
            assert_eq!(rs.num_roots(), n * (n - 1));
            assert_eq!(rs.ambient_dim(), n);
        }
        for rank in 2..=8 {
            let rs = RootSystem::build(Family::B, rank).unwrap();
            assert_eq!(rs.num_roots(), 2 * rank * rank);
        }
        for rank in 3..=8 {
            let rs = RootSystem::build(Family::C, rank).unwrap();
            assert_eq!(rs.num_roots(), 2 * rank * rank);
            let rs = RootSystem::build(Family::D, rank).unwrap();
            assert_eq!(rs.num_roots(), 2 * rank * (rank - 1));
        }
    }

    #[test]
    fn a2_simple_roots_and_count() {
        // su(3): 6 roots, simple roots ε₁−ε₂ and ε₂−ε₃.
        let rs = RootSystem::build(Family::A, 2).unwrap();
        assert_eq!(rs.num_roots(), 6);
        assert_eq!(
            rs.simple_roots(),
            &[
                AmbientVector::from_i64(&[1, -1, 0]),
                AmbientVector::from_i64(&[0, 1, -1]),
            ]
        );
    }

    #[test]
    fn b2_count_and_d4_lengths() {
        let rs = RootSystem::build(Family::B, 2).unwrap();
        assert_eq!(rs.num_roots(), 8);
        let rs = RootSystem::build(Family::D, 4).unwrap();
        assert_eq!(rs.num_roots(), 24);
        for r in rs.roots() {
            assert_eq!(rs.norm_sq(&r).unwrap(), qi(2));
        }
    }

    #[test]
    fn rank_below_minimum_is_rejected() {
        assert!(RootSystem::build(Family::A, 0).is_err());
        assert!(RootSystem::build(Family::B, 1).is_err());
        assert!(RootSystem::build(Family::C, 2).is_err());
        assert!(RootSystem::build(Family::D, 2).is_err());
    }

    #[test]
    fn type_a_roots_have_squared_length_two() {
        for rank in 1..=6 {
            let rs = RootSystem::build(Family::A, rank).unwrap();
            for r in rs.roots() {
                assert_eq!(rs.norm_sq(&r).unwrap(), qi(2));
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let alpha = AmbientVector::from_i64(&[1, -1, 0]);
        assert_eq!(a2.inner(&alpha, &alpha).unwrap(), qi(2));

        let b3 = RootSystem::build(Family::B, 3).unwrap();
        let w1 = AmbientVector::unit(3, 0);
        let w2 = AmbientVector::unit(3, 1);
        assert_eq!(b3.inner(&w1, &w2).unwrap(), qi(0));

        let delta = a2.delta();
        assert_eq!(delta, AmbientVector::from_i64(&[2, 0, -2]));
        assert_eq!(a2.inner(&delta, &delta).unwrap(), qi(8));
    }

    #[test]
    fn inner_rejects_dimension_mismatch() {
        let a2 = RootSystem::build(Family::A, 2).unwrap();
        let bad = AmbientVector::from_i64(&[1, 0]);
        assert!(a2.inner(&bad, &bad.clone()).is_ok());
        assert!(a2
            .inner(&bad, &AmbientVector::from_i64(&[1, 0, 0]))
            .is_err());
    }

    #[test]
    fn sum_of_positive_roots_closed_forms() {
        // A: δ = Σ (n+1−2j) ε_j; B: δ = Σ (2n−2i+1) ω_i;
        // C: δ = 2Σ (n+1−i) ω_i; D: δ = 2Σ (n−i) ω_i  (1-based i).
        for rank in 1..=8 {
            let rs = RootSystem::build(Family::A, rank).unwrap();
            let n = (rank + 1) as i64;
            let want: Vec<i64> = (1..=n).map(|j| n + 1 - 2 * j).collect();
            assert_eq!(rs.delta(), AmbientVector::from_i64(&want));
        }
        for rank in 2..=8 {
            let rs = RootSystem::build(Family::B, rank).unwrap();
            let n = rank as i64;
            let want: Vec<i64> = (1..=n).map(|i| 2 * n - 2 * i + 1).collect();
            assert_eq!(rs.delta(), AmbientVector::from_i64(&want));
        }
        for rank in 3..=8 {
            let n = rank as i64;
            let rs = RootSystem::build(Family::C, rank).unwrap();
            let want: Vec<i64> = (1..=n).map(|i| 2 * (n + 1 - i)).collect();
            assert_eq!(rs.delta(), AmbientVector::from_i64(&want));
            let rs = RootSystem::build(Family::D, rank).unwrap();
            let want: Vec<i64> = (1..=n).map(|i| 2 * (n - i)).collect();
            assert_eq!(rs.delta(), AmbientVector::from_i64(&want));
        }
    }

    #[test]
    fn sum_of_edge_cases() {
        assert!(sum_of(&[]).is_err());
        let v = AmbientVector::from_i64(&[1, -1, 0]);
        assert_eq!(sum_of(std::slice::from_ref(&v)).unwrap(), v);
        let w = AmbientVector::from_i64(&[1, 0]);
        assert!(sum_of(&[v, w]).is_err());
    }

    #[test]
    fn delta_pairs_to_norm_on_simple_roots() {
        // ⟨δ, ᾱ⟩ = ‖ᾱ‖² for every simple root ᾱ.
        for rs in all_systems(8) {
            let delta = rs.delta();
            for alpha in rs.simple_roots() {
                assert_eq!(
                    rs.inner(&delta, alpha).unwrap(),
                    rs.norm_sq(alpha).unwrap(),
                    "family {} rank {}",
                    rs.family(),
                    rs.rank()
                );
            }
        }
    }

    #[test]
    fn delta_norm_closed_forms() {
        // A: n(n−1)(n+1)/3; B: n(4n²−1)/3; C: 2n(n+1)(2n+1)/3; D: 2n(n−1)(2n−1)/3.
        for rs in all_systems(8) {
            let n = rs.family().classical_param(rs.rank()) as i64;
            let want = match rs.family() {
                Family::A => q(n * (n - 1) * (n + 1), 3),
                Family::B => q(n * (4 * n * n - 1), 3),
                Family::C => q(2 * n * (n + 1) * (2 * n + 1), 3),
                Family::D => q(2 * n * (n - 1) * (2 * n - 1), 3),
            };
            assert_eq!(rs.norm_sq(&rs.delta()).unwrap(), want);
        }
    }

    #[test]
    fn roots_closed_under_negation_and_disjoint_split() {
        for rs in all_systems(5) {
            let pos: BTreeSet<_> = rs.positive_roots().iter().cloned().collect();
            assert_eq!(pos.len(), rs.positive_roots().len());
            for r in rs.positive_roots() {
                assert!(rs.is_root(&r.neg()));
                assert!(!pos.contains(&r.neg()));
            }
            assert_eq!(rs.roots().len(), rs.num_roots());
        }
    }

    #[test]
    fn positive_roots_are_nonneg_integer_combinations_of_simples() {
        for rs in all_systems(6) {
            let cols = rs.simple_roots();
            let mat = QMat::from_rows(
                (0..rs.ambient_dim())
                    .map(|r| cols.iter().map(|s| s.coords()[r].clone()).collect())
                    .collect(),
            );
            for root in rs.positive_roots() {
                let x = solve(&mat, root.coords()).expect("simple roots span the root lattice");
                assert!(
                    x.iter().all(is_nonneg_integer),
                    "{root} not a nonneg integer combination in {} rank {}",
                    rs.family(),
                    rs.rank()
                );
            }
        }
    }

    #[test]
    fn form_scale_rescales_inner_products_only() {
        let rs = RootSystem::build(Family::B, 3).unwrap();
        let scaled = rs.clone().with_form_scale(q(7, 3)).unwrap();
        assert_eq!(rs.positive_roots(), scaled.positive_roots());
        for u in rs.simple_roots() {
            for v in rs.simple_roots() {
                assert_eq!(
                    scaled.inner(u, v).unwrap(),
                    rs.inner(u, v).unwrap() * q(7, 3)
                );
            }
        }
        assert!(rs.clone().with_form_scale(qi(0)).is_err());
        assert!(rs.clone().with_form_scale(qi(-2)).is_err());
    }

    #[test]
    fn inner_is_symmetric_and_bilinear() {
        let rs = RootSystem::build(Family::C, 3).unwrap();
        let roots = rs.positive_roots();
        for u in roots.iter().take(4) {
            for v in roots.iter().take(4) {
                assert_eq!(rs.inner(u, v).unwrap(), rs.inner(v, u).unwrap());
                let w = u.add(v).unwrap();
                for x in roots.iter().take(4) {
                    assert_eq!(
                        rs.inner(&w, x).unwrap(),
                        rs.inner(u, x).unwrap() + rs.inner(v, x).unwrap()
                    );
                }
            }
        }
    }
}
