//! Browser bindings: three JSON-returning entry points behind `wasm-bindgen`
//! for the static demo page in `www/`.
//!
//! Every function returns a JSON string with an `"ok"` field so the page can
//! branch without exception plumbing. The heavy lifting happens in
//! `flagx-core`; values are exact until the final float rendering.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use flagx_core::extremality::{check_extremality, survey_full_flags};
use flagx_core::flag::build_flag;
use flagx_core::ratio::{q_str, q_to_f64};
use flagx_core::root_systems::{Family, RootSystem};
use flagx_core::spectrum::{casimir_on_torus, ke_parameter, su3};

fn ok(payload: Value) -> String {
    json!({"ok": true, "data": payload}).to_string()
}

fn err(message: impl ToString) -> String {
    json!({"ok": false, "error": message.to_string()}).to_string()
}

/// Samples of the λ₁ branch along the constant-volume curve of SU(3)/T²,
/// plus the optimizer's maximum. Powers the curve plot.
#[wasm_bindgen]
pub fn su3_curve_json(n_samples: usize, s_min: f64, s_max: f64) -> String {
    let scan = match su3::lambda1_scan(n_samples, s_min, s_max) {
        Ok(scan) => scan,
        Err(e) => return err(e),
    };
    let (s_star, f_star) = match su3::maximize_lambda1(1e-10) {
        Ok(v) => v,
        Err(e) => return err(e),
    };
    let samples: Vec<Value> = scan
        .samples
        .iter()
        .map(|&(s, f)| json!({"s": s, "f": f}))
        .collect();
    ok(json!({
        "samples": samples,
        "max_value": scan.max_value,
        "argmax_s": scan.argmax_s,
        "s_star": s_star,
        "f_star": f_star,
    }))
}

/// Point readout for the curve slider: curve partner `t`, both Casimir
/// eigenvalues, chamber coordinates and metric coefficients at `s`.
#[wasm_bindgen]
pub fn su3_point_json(s: f64) -> String {
    let t = match su3::curve_t(s) {
        Ok(t) => t,
        Err(e) => return err(e),
    };
    let (lo, hi) = su3::d_eigenvalues(s, t);
    let (a, b) = su3::st_to_ab(s, t);
    ok(json!({
        "s": s,
        "t": t,
        "a": a,
        "b": b,
        "lambda1": lo,
        "lambda2": hi,
        "metric": {"g11": 12.0 * s, "g22": 12.0 * (s + t), "g33": 12.0 * t},
        "volume_constraint": s * t * (s + t),
    }))
}

/// Full-flag survey rows for the verdict table.
#[wasm_bindgen]
pub fn survey_json(max_rank_a: usize, max_rank_bcd: usize) -> String {
    let a: BTreeSet<Family> = [Family::A].into_iter().collect();
    let bcd: BTreeSet<Family> = [Family::B, Family::C, Family::D].into_iter().collect();
    let mut rows = match survey_full_flags(&a, max_rank_a) {
        Ok(r) => r,
        Err(e) => return err(e),
    };
    match survey_full_flags(&bcd, max_rank_bcd) {
        Ok(r) => rows.extend(r),
        Err(e) => return err(e),
    }
    let rows: Vec<Value> = rows
        .iter()
        .map(|(family, rank, rep)| {
            json!({
                "label": format!("{family}{rank}"),
                "group": family.group_name(*rank),
                "verdict": rep.verdict.to_string(),
                "mu": q_str(&rep.mu),
            })
        })
        .collect();
    ok(json!({"rows": rows}))
}

/// Flag explorer: T-root classes, extremality verdict and the spectrum of
/// the torus-restricted Casimir at the Kähler–Einstein parameter.
/// `parabolic` is a comma list of 1-based simple-root indices kept in the
/// isotropy subalgebra ("" for the full flag).
#[wasm_bindgen]
pub fn flag_report_json(family: &str, n: usize, parabolic: &str) -> String {
    let Some(family) = Family::parse(family) else {
        return err("unknown family; expected A, B, C or D");
    };
    let rank = family.rank_from_param(n);
    if rank < family.min_rank() {
        return err(format!(
            "family {family} needs a larger parameter (rank {rank} below minimum {})",
            family.min_rank()
        ));
    }
    let mut pi0 = BTreeSet::new();
    for part in parabolic.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        match part.parse::<usize>() {
            Ok(i) if i >= 1 => {
                pi0.insert(i - 1);
            }
            _ => return err(format!("bad parabolic index '{part}'")),
        }
    }
    let sys = match RootSystem::build(family, rank) {
        Ok(s) => s,
        Err(e) => return err(e),
    };
    let flag = match build_flag(sys, &pi0) {
        Ok(f) => f,
        Err(e) => return err(e),
    };
    let decomposition = match flag.t_root_decomposition() {
        Ok(d) => d,
        Err(e) => return err(e),
    };
    let extremality = match check_extremality(&flag) {
        Ok(r) => r,
        Err(e) => return err(e),
    };
    let ke = match ke_parameter(&flag) {
        Ok(k) => k,
        Err(e) => return err(e),
    };
    let spectrum = match casimir_on_torus(&flag, &ke) {
        Ok(s) => s,
        Err(e) => return err(e),
    };
    let classes: Vec<Value> = decomposition
        .classes
        .iter()
        .map(|c| {
            json!({
                "rho": c.rho.to_string(),
                "multiplicity": c.multiplicity,
                "beta": q_str(&c.beta),
            })
        })
        .collect();
    ok(json!({
        "label": flag.label(),
        "group": family.group_name(rank),
        "dim_complex": flag.dim_complex(),
        "center_dim": flag.center_dim(),
        "delta_m": flag.delta_m().to_string(),
        "t_root_classes": classes,
        "verdict": extremality.verdict.to_string(),
        "mu": q_str(&extremality.mu),
        "residual": extremality.residual.to_string(),
        "ke_xi": ke.coords().iter().map(q_str).collect::<Vec<_>>().join(", "),
        "eigenvalues": spectrum.eigenvalues,
        "lambda1_candidate": spectrum.lambda1_candidate,
        "eigen2_exact": spectrum.has_exact_eigenvalue_two,
        "d_matrix": (0..spectrum.d_matrix.nrows())
            .map(|r| spectrum.d_matrix.row(r).iter().map(q_to_f64).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    }))
}
