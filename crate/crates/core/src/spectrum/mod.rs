//! Invariant metrics and the torus-restricted Casimir operator.
//!
//! A chamber parameter `ξ` in the center of the isotropy algebra defines the
//! invariant Kähler metric `g_ξ` via `ω(X,Y) = B(ad_ξ X, Y)` paired with the
//! fixed complex structure `J X_α = Y_α`. For a `g_ξ`-orthonormal basis
//! `{v_i}` of the tangent part, the operator
//!
//! ```text
//!     D = −Σ_i ad(v_i)²
//! ```
//!
//! preserves the torus algebra, and the spectrum of its torus restriction is
//! contained in the spectrum of the metric Laplacian acting on functions.
//! The adjoint maps `ad(v_i)` are skew with respect to `−B`, so the minus
//! sign makes the restriction positive; its smallest eigenvalue is reported
//! as a λ₁ candidate (an upper-bound witness, not a proof of equality).
//!
//! Everything stays rational up to the `D` matrix; floats enter only when
//! extracting eigenvalues.

mod algebra;
mod cmat;
pub mod su3;

pub use algebra::{build_algebra, torus_angle_basis, AlgebraRealization, SparseMat};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::flag::FlagManifold;
use crate::linalg::{char_poly, eigenvalues_selfadjoint, eval_poly, solve, QMat};
use crate::ratio::{q_from_f64, q_str, qi, Q};
use crate::root_systems::AmbientVector;

/// Torus element in H-basis coordinates, constrained to the center of the
/// isotropy algebra of its flag. Chamber membership is checked by the
/// operations that need a nondegenerate metric, so wall parameters fail
/// there rather than here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricParameter {
    coords: Vec<Q>,
    float_input: bool,
}

impl MetricParameter {
    pub fn new(flag: &FlagManifold, coords: Vec<Q>) -> Result<Self> {
        let sys = flag.system();
        if coords.len() != sys.rank() {
            return Err(Error::DimensionMismatch(coords.len(), sys.rank()));
        }
        let param = MetricParameter {
            coords,
            float_input: false,
        };
        let angle = param.angle_vector(flag)?;
        for &i in flag.pi0() {
            if !sys.simple_roots()[i].dot(&angle)?.is_zero() {
                return Err(Error::NotInCenter);
            }
        }
        Ok(param)
    }

    /// Builds from float coordinates; every finite `f64` is a dyadic
    /// rational, so the conversion is exact and downstream arithmetic stays
    /// rational. The float origin is recorded for report formatting.
    pub fn from_f64(flag: &FlagManifold, coords: &[f64]) -> Result<Self> {
        let exact: Option<Vec<Q>> = coords.iter().map(|&c| q_from_f64(c)).collect();
        let exact = exact.ok_or(Error::NonPositiveCurveParameter)?;
        let mut param = MetricParameter::new(flag, exact)?;
        param.float_input = true;
        Ok(param)
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn float_input(&self) -> bool {
        self.float_input
    }

    /// Angle coordinates of the torus element in the ambient space.
    pub fn angle_vector(&self, flag: &FlagManifold) -> Result<AmbientVector> {
        let sys = flag.system();
        let basis = torus_angle_basis(sys.family(), sys.rank(), sys.ambient_dim());
        let mut out = AmbientVector::zero(sys.ambient_dim());
        for (c, theta) in self.coords.iter().zip(&basis) {
            out = out.add(&theta.scale(c))?;
        }
        Ok(out)
    }
}

/// Torus-restricted Casimir data at a metric parameter.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    /// Matrix of `D` on the torus in H-basis coordinates (not symmetric in
    /// these coordinates; compare spectra, not entries).
    pub d_matrix: QMat,
    /// Eigenvalues sorted ascending; real because `D` is self-adjoint for
    /// the Killing inner product on the torus.
    pub eigenvalues: Vec<f64>,
    /// Smallest eigenvalue: an upper-bound witness for λ₁ of the metric
    /// Laplacian, with equality known only for specific cases.
    pub lambda1_candidate: f64,
    /// Exact characteristic polynomial coefficients, constant term first.
    pub char_poly: Vec<Q>,
    /// Exact test `p(2) = 0` of the characteristic polynomial.
    pub has_exact_eigenvalue_two: bool,
    /// Whether the parameter was supplied as floats.
    pub float_input: bool,
}

/// Root values `α(ξ)` over `R_m⁺`; all must be positive for `ξ` to lie in
/// the chamber of the fixed invariant ordering.
pub fn chamber_values(flag: &FlagManifold, xi: &MetricParameter) -> Result<Vec<Q>> {
    let angle = xi.angle_vector(flag)?;
    let mut out = Vec::with_capacity(flag.r_m_plus().len());
    for alpha in flag.r_m_plus() {
        let v = alpha.dot(&angle)?;
        if !v.is_positive() {
            return Err(Error::OutsideChamber {
                root: alpha.to_string(),
                value: q_str(&v),
            });
        }
        out.push(v);
    }
    Ok(out)
}

/// The Kähler–Einstein parameter: the Killing dual of `δ_m` in torus
/// coordinates, obtained by solving the torus block of the ad-computed
/// Killing form. Always lies in the center and the chamber.
pub fn ke_parameter(flag: &FlagManifold) -> Result<MetricParameter> {
    let alg = build_algebra(flag.system().family(), flag.system().rank())?;
    ke_parameter_with(&alg, flag)
}

pub fn ke_parameter_with(alg: &AlgebraRealization, flag: &FlagManifold) -> Result<MetricParameter> {
    check_same_system(alg, flag)?;
    let g = alg.killing_torus_block();
    let rhs: Vec<Q> = alg
        .torus_angles()
        .iter()
        .map(|theta| flag.delta_m().dot(theta).map(|v| -v))
        .collect::<Result<_>>()?;
    let coords =
        solve(&g, &rhs).ok_or_else(|| Error::Internal("singular Killing torus block".into()))?;
    MetricParameter::new(flag, coords)
}

/// Gram matrix of `g_ξ` on the ordered basis `(X_α, Y_α)_{α ∈ R_m⁺}`:
/// diagonal with `g(X_α, X_α) = g(Y_α, Y_α) = α(ξ) · n_α`, where
/// `n_α = −B(X_α, X_α)`. Root pairs belonging to inequivalent isotropy
/// submodules are automatically orthogonal.
pub fn metric_gram(flag: &FlagManifold, xi: &MetricParameter) -> Result<QMat> {
    let alg = build_algebra(flag.system().family(), flag.system().rank())?;
    metric_gram_with(&alg, flag, xi)
}

pub fn metric_gram_with(
    alg: &AlgebraRealization,
    flag: &FlagManifold,
    xi: &MetricParameter,
) -> Result<QMat> {
    check_same_system(alg, flag)?;
    let values = chamber_values(flag, xi)?;
    let m = 2 * flag.r_m_plus().len();
    let mut gram = QMat::zero(m, m);
    for (i, (alpha, a)) in flag.r_m_plus().iter().zip(&values).enumerate() {
        let idx = alg
            .root_index(alpha)
            .ok_or_else(|| Error::Internal(format!("root {alpha} missing from algebra")))?;
        let entry = a * alg.norm_factor(idx);
        gram.set(2 * i, 2 * i, entry.clone());
        gram.set(2 * i + 1, 2 * i + 1, entry);
    }
    Ok(gram)
}

/// Assembles the torus restriction of `D = −Σ ad(v_i)²` exactly and extracts
/// its spectrum. For each root pair the two normalized basis vectors
/// contribute `−(ad X_α² + ad Y_α²)/(α(ξ) n_α)`, whose torus action is
/// `H ↦ 2 α(H)/(α(ξ) n_α) · [X_α, Y_α]`.
pub fn casimir_on_torus(flag: &FlagManifold, xi: &MetricParameter) -> Result<SpectrumReport> {
    let alg = build_algebra(flag.system().family(), flag.system().rank())?;
    casimir_on_torus_with(&alg, flag, xi)
}

pub fn casimir_on_torus_with(
    alg: &AlgebraRealization,
    flag: &FlagManifold,
    xi: &MetricParameter,
) -> Result<SpectrumReport> {
    check_same_system(alg, flag)?;
    let values = chamber_values(flag, xi)?;
    let rank = alg.rank();
    let mut d = QMat::zero(rank, rank);
    for (alpha, a) in flag.r_m_plus().iter().zip(&values) {
        let idx = alg
            .root_index(alpha)
            .ok_or_else(|| Error::Internal(format!("root {alpha} missing from algebra")))?;
        let denom = a * alg.norm_factor(idx);
        let z = alg.z_torus(idx);
        for l in 0..rank {
            let alpha_l = alpha.dot(&alg.torus_angles()[l])?;
            if alpha_l.is_zero() {
                continue;
            }
            let coef = qi(2) * alpha_l / &denom;
            for (row, zr) in z.iter().enumerate() {
                if !zr.is_zero() {
                    let v = d.get(row, l).clone() + &coef * zr;
                    d.set(row, l, v);
                }
            }
        }
    }

    // D is self-adjoint for the positive form −B on the torus.
    let mut g = alg.killing_torus_block();
    for r in 0..rank {
        for c in 0..rank {
            let v = -g.get(r, c).clone();
            g.set(r, c, v);
        }
    }
    let eigenvalues = eigenvalues_selfadjoint(&d, &g)?;
    let poly = char_poly(&d);
    let has_two = eval_poly(&poly, &qi(2)).is_zero();
    Ok(SpectrumReport {
        lambda1_candidate: eigenvalues[0],
        eigenvalues,
        d_matrix: d,
        char_poly: poly,
        has_exact_eigenvalue_two: has_two,
        float_input: xi.float_input(),
    })
}

/// `Π_{α∈R_m⁺} α(ξ) / α(ξ̄)` with `ξ̄` the Kähler–Einstein parameter: the
/// volume distortion of `g_ξ` relative to the Kähler–Einstein metric. Equals
/// 1 exactly on the constant-volume locus.
pub fn volume_ratio(flag: &FlagManifold, xi: &MetricParameter) -> Result<Q> {
    let alg = build_algebra(flag.system().family(), flag.system().rank())?;
    volume_ratio_with(&alg, flag, xi)
}

pub fn volume_ratio_with(
    alg: &AlgebraRealization,
    flag: &FlagManifold,
    xi: &MetricParameter,
) -> Result<Q> {
    let values = chamber_values(flag, xi)?;
    let ke = ke_parameter_with(alg, flag)?;
    let ke_values = chamber_values(flag, &ke)?;
    let mut ratio = Q::from_integer(1.into());
    for (a, b) in values.iter().zip(&ke_values) {
        ratio *= a / b;
    }
    Ok(ratio)
}

fn check_same_system(alg: &AlgebraRealization, flag: &FlagManifold) -> Result<()> {
    let sys = flag.system();
    if alg.family() != sys.family() || alg.rank() != sys.rank() {
        return Err(Error::Internal(
            "algebra realization does not match the flag's root system".into(),
        ));
    }
    Ok(())
}
