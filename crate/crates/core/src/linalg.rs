//! Small exact linear-algebra kernel plus a float eigensolver for tiny
//! symmetric matrices. Everything here targets matrices of dimension at most
//! a few dozen, so dense Gaussian elimination over the rationals is the right
//! tool.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratio::{q_to_f64, Q};

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).clone() + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn trace(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(q_to_f64).collect())
            .collect()
    }
}

/// Solves `A x = b` exactly. Returns `None` when the system is inconsistent.
/// For underdetermined consistent systems the free variables are set to zero.
pub fn solve(a: &QMat, b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(a.nrows(), b.len());
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut aug: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut pr = 0;
    for pc in 0..cols {
        let Some(nz) = (pr..rows).find(|&r| !aug[r][pc].is_zero()) else {
            continue;
        };
        aug.swap(pr, nz);
        let inv = aug[pr][pc].clone().recip();
        for v in aug[pr][pc..].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != pr && !aug[r][pc].is_zero() {
                let f = aug[r][pc].clone();
                for c in pc..=cols {
                    let delta = &f * &aug[pr][c];
                    aug[r][c] = &aug[r][c] - delta;
                }
            }
        }
        pivot_cols.push(pc);
        pr += 1;
        if pr == rows {
            break;
        }
    }
    // Inconsistent iff a zero row has a nonzero rhs.
    for row in aug.iter().skip(pr) {
        if row[..cols].iter().all(Zero::is_zero) && !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

/// Inverse via Gauss–Jordan; `None` when singular.
pub fn inverse(a: &QMat) -> Option<QMat> {
    assert_eq!(a.nrows(), a.ncols());
    let n = a.nrows();
    let mut cols = Vec::with_capacity(n);
    let id = QMat::identity(n);
    for c in 0..n {
        let e: Vec<Q> = (0..n).map(|r| id.get(r, c).clone()).collect();
        let x = solve(a, &e)?;
        // `solve` zero-fills free variables, so verify we got a true inverse column.
        if a.apply(&x) != e {
            return None;
        }
        cols.push(x);
    }
    let mut out = QMat::zero(n, n);
    for (c, col) in cols.iter().enumerate() {
        for r in 0..n {
            out.set(r, c, col[r].clone());
        }
    }
    Some(out)
}

/// Characteristic polynomial coefficients `c_0..c_n` of a square matrix,
/// monic (`c_n = 1`), via the Faddeev–LeVerrier recurrence.
pub fn char_poly(a: &QMat) -> Vec<Q> {
    assert_eq!(a.nrows(), a.ncols());
    let n = a.nrows();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m = QMat::identity(n);
    for k in 1..=n {
        m = a.mul(&m);
        let c = -m.trace() / crate::ratio::qi(k as i64);
        for i in 0..n {
            let v = m.get(i, i).clone() + &c;
            m.set(i, i, v);
        }
        coeffs[n - k] = c;
    }
    coeffs
}

/// Evaluates `Σ c_k x^k` exactly.
pub fn eval_poly(coeffs: &[Q], x: &Q) -> Q {
    coeffs
        .iter()
        .rev()
        .fold(Q::zero(), |acc, c| acc * x + c)
}

/// Pivots of the LDLᵀ factorization of a symmetric matrix; `None` when a zero
/// pivot appears (the matrix is then singular or needs pivoting). For a
/// definite matrix the pivot signs decide the sign of the form.
pub fn ldlt_pivots(a: &QMat) -> Option<Vec<Q>> {
    assert!(a.is_symmetric());
    let n = a.nrows();
    let mut w: Vec<Vec<Q>> = (0..n).map(|r| a.row(r).to_vec()).collect();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let p = w[k][k].clone();
        if p.is_zero() {
            return None;
        }
        for r in (k + 1)..n {
            let f = &w[r][k] / &p;
            for c in k..n {
                let delta = &f * &w[k][c];
                w[r][c] = &w[r][c] - delta;
            }
        }
        pivots.push(p);
    }
    Some(pivots)
}

const EIG_SWEEP_LIMIT: usize = 64;

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending. Deterministic: fixed sweep order, fixed tolerance.
pub fn sym_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for _ in 0..EIG_SWEEP_LIMIT {
        let mut off = 0.0;
        for r in 0..n {
            for c in (r + 1)..n {
                off += m[r][c] * m[r][c];
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + frobenius(&m)) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    eig.sort_by(|a, b| a.partial_cmp(b).expect("real eigenvalues"));
    eig
}

fn frobenius(m: &[Vec<f64>]) -> f64 {
    m.iter()
        .flat_map(|r| r.iter())
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt()
}

/// Lower Cholesky factor of a positive-definite matrix.
pub fn cholesky(a: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 {
                    return Err(Error::Internal(
                        "cholesky: matrix not positive definite".into(),
                    ));
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Ok(l)
}

/// Eigenvalues of a matrix `D` that is self-adjoint with respect to a
/// positive-definite form `G` (i.e. `G D = Dᵀ G`). Returns them sorted
/// ascending; they are real by self-adjointness.
pub fn eigenvalues_selfadjoint(d: &QMat, g: &QMat) -> Result<Vec<f64>> {
    let n = d.nrows();
    let df = d.to_f64();
    let gf = g.to_f64();
    let l = cholesky(&gf)?;
    // S = Lᵀ D L⁻ᵀ is symmetric and similar to D.
    let mut w = vec![vec![0.0; n]; n];
    for c in 0..n {
        // Solve Lᵀ x = e_c by back substitution: column c of L⁻ᵀ.
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = if i == c { 1.0 } else { 0.0 };
            for k in (i + 1)..n {
                s -= l[k][i] * x[k];
            }
            x[i] = s / l[i][i];
        }
        for r in 0..n {
            w[r][c] = x[r];
        }
    }
    let mut s = vec![vec![0.0; n]; n];
    for r in 0..n {
        for c in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                for j in 0..n {
                    acc += l[k][r] * df[k][j] * w[j][c];
                }
            }
            s[r][c] = acc;
        }
    }
    for r in 0..n {
        for c in (r + 1)..n {
            let avg = 0.5 * (s[r][c] + s[c][r]);
            s[r][c] = avg;
            s[c][r] = avg;
        }
    }
    Ok(sym_eigenvalues(&s))
}
