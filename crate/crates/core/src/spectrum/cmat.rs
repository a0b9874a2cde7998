//! Complex matrices with exact rational real and imaginary parts, just
//! enough for realizing compact classical algebras in their defining
//! representations and taking brackets.

use num_traits::Zero;

use crate::ratio::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CMat {
    n: usize,
    re: Vec<Q>,
    im: Vec<Q>,
}

impl CMat {
    pub fn zero(n: usize) -> Self {
        CMat {
            n,
            re: vec![Q::zero(); n * n],
            im: vec![Q::zero(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[cfg(test)]
    pub fn re(&self, i: usize, j: usize) -> &Q {
        &self.re[i * self.n + j]
    }

    #[cfg(test)]
    pub fn im(&self, i: usize, j: usize) -> &Q {
        &self.im[i * self.n + j]
    }

    pub fn add_entry(&mut self, i: usize, j: usize, re: Q, im: Q) {
        self.re[i * self.n + j] += re;
        self.im[i * self.n + j] += im;
    }

    pub fn is_zero(&self) -> bool {
        self.re.iter().all(Zero::is_zero) && self.im.iter().all(Zero::is_zero)
    }

    /// `self += c · other` with a real scalar `c`.
    pub fn axpy(&mut self, c: &Q, other: &CMat) {
        assert_eq!(self.n, other.n);
        if c.is_zero() {
            return;
        }
        for k in 0..self.n * self.n {
            if !other.re[k].is_zero() {
                self.re[k] += c * &other.re[k];
            }
            if !other.im[k].is_zero() {
                self.im[k] += c * &other.im[k];
            }
        }
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let (ar, ai) = (&self.re[i * n + k], &self.im[i * n + k]);
                if ar.is_zero() && ai.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (br, bi) = (&other.re[k * n + j], &other.im[k * n + j]);
                    if br.is_zero() && bi.is_zero() {
                        continue;
                    }
                    out.re[i * n + j] += ar * br - ai * bi;
                    out.im[i * n + j] += ar * bi + ai * br;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for k in 0..self.n * self.n {
            out.re[k] -= &other.re[k];
            out.im[k] -= &other.im[k];
        }
        out
    }

    pub fn bracket(&self, other: &CMat) -> CMat {
        self.mul(other).sub(&other.mul(self))
    }

    /// Real part of the trace.
    #[cfg(test)]
    pub fn trace_re(&self) -> Q {
        (0..self.n).fold(Q::zero(), |acc, i| acc + &self.re[i * self.n + i])
    }

    /// Real Frobenius pairing `Re Tr(A Bᴴ) = Σ (re·re + im·im)`; positive
    /// definite on real subspaces of matrices.
    pub fn frob(&self, other: &CMat) -> Q {
        assert_eq!(self.n, other.n);
        let mut acc = Q::zero();
        for k in 0..self.n * self.n {
            if !self.re[k].is_zero() && !other.re[k].is_zero() {
                acc += &self.re[k] * &other.re[k];
            }
            if !self.im[k].is_zero() && !other.im[k].is_zero() {
                acc += &self.im[k] * &other.im[k];
            }
        }
        acc
    }
}

/// Single real entry `E_ij`.
pub(crate) fn e_re(n: usize, i: usize, j: usize, v: i64) -> CMat {
    let mut m = CMat::zero(n);
    m.add_entry(i, j, crate::ratio::qi(v), Q::zero());
    m
}

/// Single imaginary entry `v·i·E_ij`.
pub(crate) fn e_im(n: usize, i: usize, j: usize, v: i64) -> CMat {
    let mut m = CMat::zero(n);
    m.add_entry(i, j, Q::zero(), crate::ratio::qi(v));
    m
}

/// Sum of elementary pieces.
pub(crate) fn combine(n: usize, parts: &[CMat]) -> CMat {
    let mut out = CMat::zero(n);
    for p in parts {
        out = out.sub(&CMat::zero(n).sub(p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::qi;

    #[test]
    fn bracket_of_elementary_matrices() {
        // [E12, E21] = E11 − E22.
        let a = e_re(2, 0, 1, 1);
        let b = e_re(2, 1, 0, 1);
        let c = a.bracket(&b);
        assert_eq!(c.re(0, 0), &qi(1));
        assert_eq!(c.re(1, 1), &qi(-1));
        assert_eq!(c.im(0, 0), &qi(0));
    }

    #[test]
    fn complex_multiplication() {
        // (iE11)(iE11) = −E11.
        let a = e_im(1, 0, 0, 1);
        let sq = a.mul(&a);
        assert_eq!(sq.re(0, 0), &qi(-1));
        assert_eq!(sq.im(0, 0), &qi(0));
        assert_eq!(sq.trace_re(), qi(-1));
    }

    #[test]
    fn frobenius_is_positive_on_nonzero() {
        let a = combine(2, &[e_re(2, 0, 1, 1), e_re(2, 1, 0, -1)]);
        assert_eq!(a.frob(&a), qi(2));
        assert!(!a.is_zero());
    }
}
