//! Deterministic report rendering: a fixed JSON envelope plus aligned-table
//! text. Rationals are serialized as `p/q` strings, floats in scientific
//! notation with 17 significant digits; no timestamps, no map iteration
//! order dependence (`serde_json` maps are sorted).

use serde::Serialize;
use serde_json::{json, Value};

use flagx_core::ratio::{q_str, Q};
use flagx_core::root_systems::AmbientVector;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
}

impl Report {
    pub fn new(command: &str, inputs: Value, outputs: Value) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            outputs,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// `2.0000000000000000e0` style: 17 significant digits, always with an
/// exponent, reproducible across runs.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn json_f64(x: f64) -> Value {
    Value::String(fmt_f64(x))
}

pub fn json_q(x: &Q) -> Value {
    Value::String(q_str(x))
}

pub fn json_vector(v: &AmbientVector) -> Value {
    Value::Array(v.coords().iter().map(json_q).collect())
}

pub fn json_verdict(v: flagx_core::extremality::Verdict) -> Value {
    json!(v.to_string())
}

/// Standing-hypothesis note attached to every extremality verdict.
pub const ISOMETRY_CAVEAT: &str =
    "verdict assumes G is (locally) the full isometry group; isometry-group \
     enlargements are not detected";

/// Left-aligned two-column table body.
pub fn kv_table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}

/// Aligned multi-column table with a header row.
pub fn columns_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let render = |cells: Vec<String>, widths: &[usize]| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(&format!("{cell:<w$}", w = widths[i]));
        }
        line.trim_end().to_string()
    };
    out.push_str(&render(
        header.iter().map(|s| s.to_string()).collect(),
        &widths,
    ));
    out.push('\n');
    for row in rows {
        out.push_str(&render(row.clone(), &widths));
        out.push('\n');
    }
    out
}
