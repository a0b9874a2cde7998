//! Compact classical Lie algebras realized by structure constants.
//!
//! The basis is `H_1..H_r` spanning (a basis of) the torus algebra, followed
//! by a pair `X_α, Y_α` for each positive root `α`, satisfying the rotation
//! relations
//!
//! ```text
//!     [ξ, X_α] =  α(ξ) Y_α ,   [ξ, Y_α] = −α(ξ) X_α ,   [X_α, Y_α] ∈ t ,
//! ```
//!
//! where `α(ξ)` is the dot product of the root with the angle coordinates of
//! `ξ`. The brackets are computed inside the defining matrix representation
//! (`su(n)`, `so(2n+1)`, `sp(n)`, `so(2n)`) with exact complex-rational
//! arithmetic and then expanded over the basis, so the structure-constant
//! table is exact. The Killing form is obtained from traces of adjoint
//! compositions rather than from tabulated constants; the classical
//! defining-representation multiples only appear in tests as cross-checks.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{inverse, QMat};
use crate::ratio::Q;
use crate::root_systems::{AmbientVector, Family, RootSystem};

use super::cmat::{combine, e_im, e_re, CMat};

/// Sparse rational matrix in column-major triplet form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    n: usize,
    cols: Vec<Vec<(usize, Q)>>,
}

impl SparseMat {
    fn from_columns(n: usize, mut cols: Vec<Vec<(usize, Q)>>) -> Self {
        for col in &mut cols {
            col.sort_by_key(|(r, _)| *r);
            col.retain(|(_, v)| !v.is_zero());
        }
        SparseMat { n, cols }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Q {
        match self.cols[col].binary_search_by_key(&row, |(r, _)| *r) {
            Ok(k) => self.cols[col][k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn column(&self, col: usize) -> &[(usize, Q)] {
        &self.cols[col]
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.n);
        let mut out = vec![Q::zero(); self.n];
        for (c, val) in v.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            for (r, a) in &self.cols[c] {
                out[*r] += a * val;
            }
        }
        out
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_prod(&self, other: &SparseMat) -> Q {
        let mut acc = Q::zero();
        for c in 0..self.n {
            for (r, v) in &self.cols[c] {
                // self[r,c] * other[c,r]
                let o = other.get(c, *r);
                if !o.is_zero() {
                    acc += v * o;
                }
            }
        }
        acc
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.n, other.n);
        let mut cols = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, b) in &other.cols[j] {
                for (r, a) in &self.cols[*k] {
                    *acc.entry(*r).or_insert_with(Q::zero) += a * b;
                }
            }
            cols.push(acc.into_iter().collect());
        }
        SparseMat::from_columns(self.n, cols)
    }

    pub fn to_qmat(&self) -> QMat {
        let mut m = QMat::zero(self.n, self.n);
        for c in 0..self.n {
            for (r, v) in &self.cols[c] {
                m.set(*r, c, v.clone());
            }
        }
        m
    }
}

/// Angle coordinates of the standard torus basis: for type A the vectors
/// `e_k − e_n` in `ℝⁿ⁺¹`-ambient coordinates (0-based last index), for the
/// other families the unit vectors `e_k`.
pub fn torus_angle_basis(family: Family, rank: usize, ambient_dim: usize) -> Vec<AmbientVector> {
    (0..rank)
        .map(|k| match family {
            Family::A => {
                let mut v = vec![Q::zero(); ambient_dim];
                v[k] = Q::from_integer(1.into());
                v[ambient_dim - 1] = Q::from_integer((-1).into());
                AmbientVector::new(v)
            }
            _ => AmbientVector::unit(ambient_dim, k),
        })
        .collect()
}

/// A compact classical algebra with exact structure constants, the
/// ad-computed Killing form and per-root torus components of `[X_α, Y_α]`.
#[derive(Clone, Debug)]
pub struct AlgebraRealization {
    family: Family,
    rank: usize,
    dim: usize,
    positive_roots: Vec<AmbientVector>,
    root_index: BTreeMap<AmbientVector, usize>,
    torus_angles: Vec<AmbientVector>,
    #[cfg_attr(not(test), allow(dead_code))]
    basis: Vec<CMat>,
    ad: Vec<SparseMat>,
    killing_gram: QMat,
    z_torus: Vec<Vec<Q>>,
}

impl AlgebraRealization {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Real dimension of the algebra: `rank + 2·|R⁺|`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn positive_roots(&self) -> &[AmbientVector] {
        &self.positive_roots
    }

    pub fn root_index(&self, root: &AmbientVector) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    /// Basis index of `X_α` for the `i`-th positive root.
    pub fn x_index(&self, root_idx: usize) -> usize {
        self.rank + 2 * root_idx
    }

    /// Basis index of `Y_α` for the `i`-th positive root.
    pub fn y_index(&self, root_idx: usize) -> usize {
        self.rank + 2 * root_idx + 1
    }

    pub fn torus_angles(&self) -> &[AmbientVector] {
        &self.torus_angles
    }

    /// Angle vector of the torus element with the given H-basis coordinates.
    pub fn angle_vector(&self, coords: &[Q]) -> Result<AmbientVector> {
        if coords.len() != self.rank {
            return Err(Error::DimensionMismatch(coords.len(), self.rank));
        }
        let dim = self.torus_angles[0].dim();
        let mut out = AmbientVector::zero(dim);
        for (c, theta) in coords.iter().zip(&self.torus_angles) {
            out = out.add(&theta.scale(c))?;
        }
        Ok(out)
    }

    pub fn ad(&self, basis_idx: usize) -> &SparseMat {
        &self.ad[basis_idx]
    }

    pub fn killing_gram(&self) -> &QMat {
        &self.killing_gram
    }

    /// Torus block of the Killing form in the H-basis (negative definite).
    pub fn killing_torus_block(&self) -> QMat {
        let mut g = QMat::zero(self.rank, self.rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                g.set(i, j, self.killing_gram.get(i, j).clone());
            }
        }
        g
    }

    /// `n_α = −B(X_α, X_α) > 0`, the metric normalization of the root pair.
    pub fn norm_factor(&self, root_idx: usize) -> Q {
        -self
            .killing_gram
            .get(self.x_index(root_idx), self.x_index(root_idx))
            .clone()
    }

    /// Torus coordinates of `[X_α, Y_α]`.
    pub fn z_torus(&self, root_idx: usize) -> &[Q] {
        &self.z_torus[root_idx]
    }

    #[cfg(test)]
    pub(crate) fn defining_basis(&self, idx: usize) -> &CMat {
        &self.basis[idx]
    }

    /// Exact ad-invariance of the Killing form: `adᵀZ G + G adZ = 0` for
    /// every basis element `Z`; equivalent to `B([Z,X],Y) + B(X,[Z,Y]) = 0`
    /// over all basis triples.
    pub fn verify_ad_invariance(&self) -> Result<()> {
        for (zi, adz) in self.ad.iter().enumerate() {
            for x in 0..self.dim {
                // column x of G·adZ  plus  column x of adZᵀ·G
                let gcol: Vec<Q> = (0..self.dim)
                    .map(|r| self.killing_gram.get(r, x).clone())
                    .collect();
                let left = adz_transpose_apply(adz, &gcol);
                let adcol: Vec<Q> = {
                    let mut v = vec![Q::zero(); self.dim];
                    for (r, val) in adz.column(x) {
                        v[*r] = val.clone();
                    }
                    v
                };
                let right = mat_apply_rows(&self.killing_gram, &adcol);
                for r in 0..self.dim {
                    if &left[r] + &right[r] != Q::zero() {
                        return Err(Error::Internal(format!(
                            "Killing form not ad-invariant at basis element {zi}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn adz_transpose_apply(adz: &SparseMat, v: &[Q]) -> Vec<Q> {
    // (adZᵀ v)_c = Σ_r adZ[r,c] v[r]
    let n = adz.dim();
    let mut out = vec![Q::zero(); n];
    for c in 0..n {
        for (r, a) in adz.column(c) {
            if !v[*r].is_zero() {
                out[c] += a * &v[*r];
            }
        }
    }
    out
}

fn mat_apply_rows(m: &QMat, v: &[Q]) -> Vec<Q> {
    (0..m.nrows())
        .map(|r| {
            m.row(r)
                .iter()
                .zip(v)
                .fold(Q::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// Builds the compact realization for the family and rank, with the basis
/// pairs ordered like the positive roots of [`RootSystem::build`].
pub fn build_algebra(family: Family, rank: usize) -> Result<AlgebraRealization> {
    let rs = RootSystem::build(family, rank)?;
    let ambient = rs.ambient_dim();
    let torus_angles = torus_angle_basis(family, rank, ambient);

    let (torus_mats, pair_map) = defining_matrices(family, rank, &rs)?;
    let mut basis: Vec<CMat> = torus_mats;
    let mut positive_roots = Vec::new();
    let mut root_index = BTreeMap::new();
    for (i, root) in rs.positive_roots().iter().enumerate() {
        let (x, y) = pair_map
            .get(root)
            .ok_or_else(|| Error::Internal(format!("no defining pair for root {root}")))?;
        basis.push(x.clone());
        basis.push(y.clone());
        positive_roots.push(root.clone());
        root_index.insert(root.clone(), i);
    }
    let dim = basis.len();

    // Frobenius blocks: the torus block plus one diagonal entry per X/Y.
    let mut torus_frob = QMat::zero(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            torus_frob.set(i, j, basis[i].frob(&basis[j]));
        }
    }
    let torus_frob_inv = inverse(&torus_frob)
        .ok_or_else(|| Error::Internal("degenerate torus Frobenius block".into()))?;
    let pair_norms: Vec<Q> = (rank..dim).map(|i| basis[i].frob(&basis[i])).collect();
    if pair_norms.iter().any(Zero::is_zero) {
        return Err(Error::Internal("zero Frobenius norm in basis".into()));
    }

    let expand = |w: &CMat| -> Result<Vec<Q>> {
        let mut coeffs = vec![Q::zero(); dim];
        let rhs: Vec<Q> = (0..rank).map(|i| w.frob(&basis[i])).collect();
        let torus_coeffs = torus_frob_inv.apply(&rhs);
        coeffs[..rank].clone_from_slice(&torus_coeffs);
        for i in rank..dim {
            let f = w.frob(&basis[i]);
            if !f.is_zero() {
                coeffs[i] = f / &pair_norms[i - rank];
            }
        }
        // The expansion must reconstruct w exactly; anything else means the
        // bracket left the algebra.
        let mut recon = CMat::zero(w.dim());
        for (c, b) in coeffs.iter().zip(&basis) {
            recon.axpy(c, b);
        }
        if recon.sub(w).is_zero() {
            Ok(coeffs)
        } else {
            Err(Error::Internal(
                "bracket expansion failed to reconstruct".into(),
            ))
        }
    };

    let mut ad: Vec<SparseMat> = Vec::with_capacity(dim);
    for bi in &basis {
        let mut cols: Vec<Vec<(usize, Q)>> = Vec::with_capacity(dim);
        for bj in &basis {
            let w = bi.bracket(bj);
            if w.is_zero() {
                cols.push(Vec::new());
                continue;
            }
            let coeffs = expand(&w)?;
            cols.push(
                coeffs
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        ad.push(SparseMat::from_columns(dim, cols));
    }

    let mut killing_gram = QMat::zero(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let v = ad[i].trace_prod(&ad[j]);
            killing_gram.set(i, j, v.clone());
            killing_gram.set(j, i, v);
        }
    }
    if !killing_gram.is_symmetric() {
        return Err(Error::Internal("Killing Gram matrix not symmetric".into()));
    }

    let mut z_torus = Vec::with_capacity(positive_roots.len());
    for i in 0..positive_roots.len() {
        let x = rank + 2 * i;
        let y = x + 1;
        let w = basis[x].bracket(&basis[y]);
        let coeffs = expand(&w)?;
        if coeffs[rank..].iter().any(|v| !v.is_zero()) {
            return Err(Error::Internal(
                "[X,Y] has components outside the torus".into(),
            ));
        }
        z_torus.push(coeffs[..rank].to_vec());
    }

    let alg = AlgebraRealization {
        family,
        rank,
        dim,
        positive_roots,
        root_index,
        torus_angles,
        basis,
        ad,
        killing_gram,
        z_torus,
    };
    for i in 0..alg.positive_roots.len() {
        if !alg.norm_factor(i).is_positive() {
            return Err(Error::Internal("non-positive Killing norm factor".into()));
        }
    }
    Ok(alg)
}

type PairMap = BTreeMap<AmbientVector, (CMat, CMat)>;

/// Torus generators and root pairs in the defining representation.
fn defining_matrices(
    family: Family,
    rank: usize,
    rs: &RootSystem,
) -> Result<(Vec<CMat>, PairMap)> {
    let mut pairs = PairMap::new();
    let torus;
    match family {
        Family::A => {
            let n = rank + 1;
            torus = (0..rank)
                .map(|k| combine(n, &[e_im(n, k, k, 1), e_im(n, n - 1, n - 1, -1)]))
                .collect();
            for i in 0..n {
                for j in (i + 1)..n {
                    let x = combine(n, &[e_re(n, i, j, 1), e_re(n, j, i, -1)]);
                    let y = combine(n, &[e_im(n, i, j, 1), e_im(n, j, i, 1)]);
                    pairs.insert(eps_minus(n, i, j), (x, y));
                }
            }
        }
        Family::B | Family::D => {
            let n = rank;
            let m = if family == Family::B { 2 * n + 1 } else { 2 * n };
            // Plane k occupies coordinates (2k, 2k+1).
            torus = (0..n)
                .map(|k| combine(m, &[e_re(m, 2 * k, 2 * k + 1, 1), e_re(m, 2 * k + 1, 2 * k, -1)]))
                .collect();
            for k in 0..n {
                for l in (k + 1)..n {
                    let (a, b, c, d) = (2 * k, 2 * k + 1, 2 * l, 2 * l + 1);
                    let m1 = |s: i64| [e_re(m, a, c, s), e_re(m, c, a, -s)];
                    let m2 = |s: i64| [e_re(m, a, d, s), e_re(m, d, a, -s)];
                    let m3 = |s: i64| [e_re(m, b, c, s), e_re(m, c, b, -s)];
                    let m4 = |s: i64| [e_re(m, b, d, s), e_re(m, d, b, -s)];
                    // ω_k − ω_l: X = M1 + M4, Y = M2 − M3.
                    let x = combine(m, &[m1(1), m4(1)].concat());
                    let y = combine(m, &[m2(1), m3(-1)].concat());
                    pairs.insert(eps_minus(n, k, l), (x, y));
                    // ω_k + ω_l: X = M1 − M4, Y = −(M2 + M3).
                    let x = combine(m, &[m1(1), m4(-1)].concat());
                    let y = combine(m, &[m2(-1), m3(-1)].concat());
                    pairs.insert(eps_plus(n, k, l), (x, y));
                }
                if family == Family::B {
                    let (a, b, e) = (2 * k, 2 * k + 1, 2 * n);
                    let x = combine(m, &[e_re(m, a, e, 1), e_re(m, e, a, -1)]);
                    let y = combine(m, &[e_re(m, e, b, 1), e_re(m, b, e, -1)]);
                    pairs.insert(AmbientVector::unit(n, k), (x, y));
                }
            }
        }
        Family::C => {
            let n = rank;
            let m = 2 * n;
            torus = (0..n)
                .map(|k| combine(m, &[e_im(m, k, k, 1), e_im(m, n + k, n + k, -1)]))
                .collect();
            for k in 0..n {
                for l in (k + 1)..n {
                    // ω_k − ω_l from the u(n) block, doubled into the
                    // conjugate block.
                    let x = combine(
                        m,
                        &[
                            e_re(m, k, l, 1),
                            e_re(m, l, k, -1),
                            e_re(m, n + k, n + l, 1),
                            e_re(m, n + l, n + k, -1),
                        ],
                    );
                    let y = combine(
                        m,
                        &[
                            e_im(m, k, l, 1),
                            e_im(m, l, k, 1),
                            e_im(m, n + k, n + l, -1),
                            e_im(m, n + l, n + k, -1),
                        ],
                    );
                    pairs.insert(eps_minus(n, k, l), (x, y));
                    // ω_k + ω_l from the symmetric off-diagonal block.
                    let x = combine(
                        m,
                        &[
                            e_re(m, k, n + l, 1),
                            e_re(m, l, n + k, 1),
                            e_re(m, n + k, l, -1),
                            e_re(m, n + l, k, -1),
                        ],
                    );
                    let y = combine(
                        m,
                        &[
                            e_im(m, k, n + l, 1),
                            e_im(m, l, n + k, 1),
                            e_im(m, n + k, l, 1),
                            e_im(m, n + l, k, 1),
                        ],
                    );
                    pairs.insert(eps_plus(n, k, l), (x, y));
                }
                // 2ω_k.
                let x = combine(m, &[e_re(m, k, n + k, 1), e_re(m, n + k, k, -1)]);
                let y = combine(m, &[e_im(m, k, n + k, 1), e_im(m, n + k, k, 1)]);
                pairs.insert(AmbientVector::unit(n, k).scale(&crate::ratio::qi(2)), (x, y));
            }
        }
    }
    // Every positive root of the system must have received a pair.
    for root in rs.positive_roots() {
        if !pairs.contains_key(root) {
            return Err(Error::Internal(format!("missing defining pair for {root}")));
        }
    }
    Ok((torus, pairs))
}

fn eps_minus(dim: usize, i: usize, j: usize) -> AmbientVector {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::from_integer(1.into());
    v[j] = Q::from_integer((-1).into());
    AmbientVector::new(v)
}

fn eps_plus(dim: usize, i: usize, j: usize) -> AmbientVector {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::from_integer(1.into());
    v[j] = Q::from_integer(1.into());
    AmbientVector::new(v)
}
