//! Criticality of the Kähler–Einstein metric for the first Laplace
//! eigenvalue on the space of invariant Kähler metrics of fixed volume.
//!
//! With `μ = ‖δ_m‖² / dim_ℂ M` and positive T-root classes `(ρ_j, m_j, β_j)`,
//! the metric is critical exactly when
//!
//! ```text
//!     Σ_j (μ/β_j − 1) · m_j · ρ_j  =  0 .
//! ```
//!
//! The test only makes sense when the center of the isotropy algebra has
//! dimension at least two (otherwise the space of volume-normalized invariant
//! Kähler metrics is a point), which is reported as a distinct
//! [`Verdict::NotApplicable`]. Everything here is exact rational arithmetic;
//! verdicts never depend on tolerances. The result stands under the standing
//! hypothesis that `G` is (locally) the full isometry group of the metric;
//! the rare enlargements of the isometry group are not detected here and are
//! flagged on every report.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::flag::{build_flag, FlagManifold};
use crate::ratio::{qi, Q};
use crate::root_systems::{AmbientVector, Family, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Extremal,
    NotExtremal,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Extremal => "EXTREMAL",
            Verdict::NotExtremal => "NOT_EXTREMAL",
            Verdict::NotApplicable => "NOT_APPLICABLE",
        };
        write!(f, "{s}")
    }
}

/// Outcome of the criticality test. The residual is kept as a full ambient
/// vector so near-misses remain inspectable.
#[derive(Clone, Debug)]
pub struct ExtremalityReport {
    /// `‖δ_m‖² / dim_ℂ M`.
    pub mu: Q,
    /// `Σ_j (μ/β_j − 1) m_j ρ_j` in ambient coordinates.
    pub residual: AmbientVector,
    pub verdict: Verdict,
    pub center_dim: usize,
    /// The verdict assumes `G` is (locally) the full isometry group; cases
    /// where the isometry algebra is strictly larger are not detected.
    pub assumes_full_isometry_group: bool,
}

/// Evaluates the criticality condition on a flag manifold.
pub fn check_extremality(flag: &FlagManifold) -> Result<ExtremalityReport> {
    let sys = flag.system();
    let mu = sys.norm_sq(flag.delta_m())? / qi(flag.dim_complex() as i64);
    let decomposition = flag.t_root_decomposition()?;
    let mut residual = AmbientVector::zero(sys.ambient_dim());
    for class in &decomposition.classes {
        let weight = (&mu / &class.beta - qi(1)) * qi(class.multiplicity as i64);
        residual = residual.add(&class.rho.scale(&weight))?;
    }
    let verdict = if flag.center_dim() < 2 {
        Verdict::NotApplicable
    } else if residual.is_zero() {
        Verdict::Extremal
    } else {
        Verdict::NotExtremal
    };
    Ok(ExtremalityReport {
        mu,
        residual,
        verdict,
        center_dim: flag.center_dim(),
        assumes_full_isometry_group: true,
    })
}

/// Scalar necessary condition on a full flag: pairing the criticality
/// condition with the simple root `ᾱ` gives
///
/// ```text
///     ‖ᾱ‖²  =  μ · Σ_{α∈R⁺} ⟨α, ᾱ⟩ / ⟨α, δ⟩ .
/// ```
///
/// Returns `RHS − LHS`; zero is necessary for criticality. The value scales
/// with the form scale but its vanishing does not.
pub fn pairing_residual(flag: &FlagManifold, simple_index: usize) -> Result<Q> {
    if !flag.is_full_flag() {
        return Err(Error::NotFullFlag);
    }
    let sys = flag.system();
    if simple_index >= sys.rank() {
        return Err(Error::SimpleIndexOutOfRange(simple_index, sys.rank()));
    }
    let alpha_bar = &sys.simple_roots()[simple_index];
    let delta = flag.delta_m();
    let mu = sys.norm_sq(delta)? / qi(flag.dim_complex() as i64);
    let mut sum = Q::zero();
    for alpha in sys.positive_roots() {
        let num = sys.inner(alpha, alpha_bar)?;
        if num.is_zero() {
            continue;
        }
        sum += num / sys.inner(alpha, delta)?;
    }
    Ok(mu * sum - sys.norm_sq(alpha_bar)?)
}

/// Criticality of a product metric. The product is critical exactly when
/// every factor is; a factor whose test is not applicable (center dimension
/// one) blocks the `Extremal` verdict and, absent any `NotExtremal` factor,
/// turns the product verdict into `NotApplicable`.
pub fn check_product(flags: &[FlagManifold]) -> Result<Verdict> {
    if flags.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let verdicts: Vec<Verdict> = flags
        .iter()
        .map(|f| check_extremality(f).map(|r| r.verdict))
        .collect::<Result<_>>()?;
    if verdicts.iter().all(|v| *v == Verdict::Extremal) {
        Ok(Verdict::Extremal)
    } else if verdicts.contains(&Verdict::NotExtremal) {
        Ok(Verdict::NotExtremal)
    } else {
        Ok(Verdict::NotApplicable)
    }
}

/// Smallest rank included in full-flag surveys (rank-one full flags have a
/// one-dimensional center and are never applicable).
pub fn survey_min_rank(family: Family) -> usize {
    family.min_rank().max(2)
}

/// Runs the criticality test on every full flag `G/T` of the given families
/// up to `max_rank`, in deterministic `(family, rank)` order.
pub fn survey_full_flags(
    families: &BTreeSet<Family>,
    max_rank: usize,
) -> Result<Vec<(Family, usize, ExtremalityReport)>> {
    let mut out = Vec::new();
    for &family in families {
        for rank in survey_min_rank(family)..=max_rank {
            let rs = RootSystem::build(family, rank)?;
            let flag = build_flag(rs, &BTreeSet::new())?;
            out.push((family, rank, check_extremality(&flag)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::q;

    fn full_flag(family: Family, rank: usize) -> FlagManifold {
        let rs = RootSystem::build(family, rank).unwrap();
        build_flag(rs, &BTreeSet::new()).unwrap()
    }

    fn su3n_flag(n: usize) -> FlagManifold {
        let rank = 3 * n - 1;
        let pi0: BTreeSet<usize> =
            (0..rank).filter(|&i| i != n - 1 && i != 2 * n - 1).collect();
        let rs = RootSystem::build(Family::A, rank).unwrap();
        build_flag(rs, &pi0).unwrap()
    }

    #[test]
    fn su3_full_flag_is_extremal() {
        let r = check_extremality(&full_flag(Family::A, 2)).unwrap();
        assert_eq!(r.verdict, Verdict::Extremal);
        assert!(r.residual.is_zero());
        assert_eq!(r.mu, q(8, 3));
        assert!(r.assumes_full_isometry_group);
    }

    #[test]
    fn su6_quotient_is_extremal_with_expected_mu() {
        let r = check_extremality(&su3n_flag(2)).unwrap();
        assert_eq!(r.verdict, Verdict::Extremal);
        assert_eq!(r.mu, q(16, 3));
    }

    #[test]
    fn b2_full_flag_is_not_extremal() {
        let r = check_extremality(&full_flag(Family::B, 2)).unwrap();
        assert_eq!(r.verdict, Verdict::NotExtremal);
        assert!(!r.residual.is_zero());
        // Hand computation: residual = (−7/24) ω₁ + (7/8) ω₂.
        assert_eq!(
            r.residual,
            AmbientVector::new(vec![q(-7, 24), q(7, 8)])
        );
    }

    #[test]
    fn rank_one_full_flag_is_not_applicable() {
        let r = check_extremality(&full_flag(Family::A, 1)).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert_eq!(r.center_dim, 1);
    }

    #[test]
    fn mu_for_su3n_family() {
        for n in 1..=4i64 {
            let r = check_extremality(&su3n_flag(n as usize)).unwrap();
            assert_eq!(r.mu, q(8 * n, 3), "n={n}");
            assert_eq!(r.verdict, Verdict::Extremal);
        }
    }

    #[test]
    fn pairing_residual_type_a_closed_form() {
        // For ᾱ = ε₁−ε₂ the pairing sum is n/(2(n−1)), so the residual
        // vanishes iff 6(n−1) = n(n+1).
        for rank in 1..=8 {
            let n = (rank + 1) as i64;
            let f = full_flag(Family::A, rank);
            let residual = pairing_residual(&f, 0).unwrap();
            let mu = q(2 * (n + 1), 3);
            let sum = q(n, 2 * (n - 1));
            assert_eq!(residual, mu * sum - qi(2));
            let zero = residual.is_zero();
            assert_eq!(zero, 6 * (n - 1) == n * (n + 1), "n={n}");
        }
    }

    #[test]
    fn pairing_residual_type_b_closed_form() {
        // ᾱ = ω_n: sum = (1 + 1/n)/2, ‖ᾱ‖² = 1, zero iff 6n² = (4n²−1)(n+1).
        for rank in 2..=8 {
            let n = rank as i64;
            let f = full_flag(Family::B, rank);
            let residual = pairing_residual(&f, rank - 1).unwrap();
            let mu = q(4 * n * n - 1, 3 * n);
            let sum = q(n + 1, 2 * n);
            assert_eq!(residual, mu * sum - qi(1));
            assert!(!residual.is_zero());
            assert_ne!(6 * n * n, (4 * n * n - 1) * (n + 1));
        }
    }

    #[test]
    fn pairing_residual_type_c_closed_form() {
        // ᾱ = 2ω_n: sum = 1/(n+1) + 1/n − 1/2, ‖ᾱ‖² = 4.
        for rank in 3..=8 {
            let n = rank as i64;
            let f = full_flag(Family::C, rank);
            let residual = pairing_residual(&f, rank - 1).unwrap();
            let mu = q(2 * (n + 1) * (2 * n + 1), 3 * n);
            let sum = q(1, n + 1) + q(1, n) - q(1, 2);
            assert_eq!(residual, mu * sum - qi(4));
            assert!(!residual.is_zero());
        }
    }

    #[test]
    fn pairing_residual_type_d_harmonic_form() {
        // ᾱ = ω₁−ω₂: sum = 1/2 + 1/(2(n−1)) − 1/(4(n−2)), ‖ᾱ‖² = 2.
        for rank in 3..=8 {
            let n = rank as i64;
            let f = full_flag(Family::D, rank);
            let residual = pairing_residual(&f, 0).unwrap();
            // ‖δ‖²/dim = (2n(n−1)(2n−1)/3)/(n²−n) = 2(2n−1)/3.
            let mu = q(2 * (2 * n - 1), 3);
            assert_eq!(
                mu,
                f.system().norm_sq(f.delta_m()).unwrap() / qi(f.dim_complex() as i64)
            );
            let sum = q(1, 2) + q(1, 2 * (n - 1)) - q(1, 4 * (n - 2));
            assert_eq!(residual, mu * sum - qi(2));
            assert!(!residual.is_zero());
        }
    }

    #[test]
    fn pairing_residual_requires_full_flag() {
        let err = pairing_residual(&su3n_flag(2), 0);
        assert!(matches!(err, Err(Error::NotFullFlag)));
        let err = pairing_residual(&full_flag(Family::A, 2), 7);
        assert!(matches!(err, Err(Error::SimpleIndexOutOfRange(7, 2))));
    }

    #[test]
    fn pairing_residuals_vanish_on_extremal_full_flag() {
        let f = full_flag(Family::A, 2);
        for i in 0..2 {
            assert!(pairing_residual(&f, i).unwrap().is_zero());
        }
    }

    #[test]
    fn product_rule() {
        let a2 = full_flag(Family::A, 2);
        let b2 = full_flag(Family::B, 2);
        let a1 = full_flag(Family::A, 1);
        assert_eq!(
            check_product(&[a2.clone(), a2.clone()]).unwrap(),
            Verdict::Extremal
        );
        assert_eq!(
            check_product(&[a2.clone(), b2.clone()]).unwrap(),
            Verdict::NotExtremal
        );
        assert_eq!(check_product(std::slice::from_ref(&a2)).unwrap(), Verdict::Extremal);
        assert_eq!(check_product(std::slice::from_ref(&a1)).unwrap(), Verdict::NotApplicable);
        assert_eq!(
            check_product(&[a1.clone(), a2.clone()]).unwrap(),
            Verdict::NotApplicable
        );
        assert_eq!(
            check_product(&[a1, b2]).unwrap(),
            Verdict::NotExtremal
        );
        assert!(matches!(check_product(&[]), Err(Error::EmptyProduct)));
    }

    #[test]
    fn survey_finds_su3_only() {
        let families: BTreeSet<Family> =
            [Family::A, Family::B, Family::C, Family::D].into_iter().collect();
        let rows = survey_full_flags(&families, 8).unwrap();
        let extremal: Vec<String> = rows
            .iter()
            .filter(|(_, _, r)| r.verdict == Verdict::Extremal)
            .map(|(f, rank, _)| format!("{f}{rank}"))
            .collect();
        assert_eq!(extremal, vec!["A2".to_string()]);
        for (f, rank, r) in &rows {
            assert_ne!(r.verdict, Verdict::NotApplicable, "{f}{rank}");
        }
    }

    #[test]
    fn verdicts_are_scale_invariant() {
        for scale in [qi(1), qi(2), q(7, 3)] {
            for (family, rank, pi0) in [
                (Family::A, 2, vec![]),
                (Family::B, 2, vec![]),
                (Family::A, 5, vec![0, 2, 4]),
                (Family::C, 3, vec![1]),
            ] {
                let base = build_flag(
                    RootSystem::build(family, rank).unwrap(),
                    &pi0.iter().copied().collect(),
                )
                .unwrap();
                let scaled = build_flag(
                    RootSystem::build(family, rank)
                        .unwrap()
                        .with_form_scale(scale.clone())
                        .unwrap(),
                    &pi0.iter().copied().collect(),
                )
                .unwrap();
                let r0 = check_extremality(&base).unwrap();
                let r1 = check_extremality(&scaled).unwrap();
                assert_eq!(r0.verdict, r1.verdict);
                assert_eq!(r0.residual, r1.residual);
                assert_eq!(&r0.mu * &scale, r1.mu);
                // β_j scales with the form, so μ/β_j is unchanged.
                let d0 = base.t_root_decomposition().unwrap();
                let d1 = scaled.t_root_decomposition().unwrap();
                for (c0, c1) in d0.classes.iter().zip(&d1.classes) {
                    assert_eq!(&r0.mu / &c0.beta, &r1.mu / &c1.beta);
                }
            }
        }
    }

    #[test]
    fn pairing_zero_set_matches_survey_verdicts() {
        // Whenever some pairing residual is nonzero the verdict must be
        // NOT_EXTREMAL; a zero residual vector forces all pairings to vanish.
        for family in [Family::A, Family::B, Family::C, Family::D] {
            for rank in survey_min_rank(family)..=6 {
                let f = full_flag(family, rank);
                let report = check_extremality(&f).unwrap();
                let pairings: Vec<Q> = (0..rank)
                    .map(|i| pairing_residual(&f, i).unwrap())
                    .collect();
                if report.residual.is_zero() {
                    assert!(pairings.iter().all(Zero::is_zero));
                }
                if pairings.iter().any(|p| !p.is_zero()) {
                    assert_eq!(report.verdict, Verdict::NotExtremal);
                }
            }
        }
    }

    #[test]
    fn pairing_residual_value_scales_with_form() {
        let f = full_flag(Family::B, 3);
        let scaled = build_flag(
            RootSystem::build(Family::B, 3)
                .unwrap()
                .with_form_scale(q(7, 3))
                .unwrap(),
            &BTreeSet::new(),
        )
        .unwrap();
        for i in 0..3 {
            let r0 = pairing_residual(&f, i).unwrap();
            let r1 = pairing_residual(&scaled, i).unwrap();
            assert_eq!(r0 * q(7, 3), r1);
        }
    }
}
