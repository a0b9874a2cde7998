//! `flagx` — survey and spectrum tool for invariant Kähler–Einstein metrics
//! on classical generalized flag manifolds.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain/math error.

mod report;

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flagx_core::extremality::{
    check_extremality, survey_min_rank, ExtremalityReport,
};
use flagx_core::flag::{build_flag, FlagManifold};
use flagx_core::ratio::{parse_q, q_str, q_to_f64, Q};
use flagx_core::root_systems::{Family, RootSystem};
use flagx_core::spectrum::{casimir_on_torus, ke_parameter, su3, MetricParameter};

use report::{
    columns_table, fmt_f64, json_f64, json_q, json_vector, json_verdict, kv_table, Report,
    ISOMETRY_CAVEAT,
};

#[derive(Parser)]
#[command(
    name = "flagx",
    version,
    about = "Extremality of the first Laplace eigenvalue for invariant Kähler-Einstein \
             metrics on classical flag manifolds",
    after_help = "Exit codes: 0 success, 1 usage error, 2 domain/math error.\n\
                  FLAGX_THREADS caps survey parallelism."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Dump a classical root system. N is the classical parameter: SU(N),
    /// SO(2N+1), Sp(N), SO(2N).
    Roots { family: String, n: usize },
    /// Flag manifold data and T-root decomposition for a parabolic choice.
    Flag {
        family: String,
        n: usize,
        /// 1-based simple-root indices kept in the isotropy subalgebra,
        /// e.g. --parabolic 1,3,5. Empty for the full flag.
        #[arg(long)]
        parabolic: Option<String>,
        /// Positive rational multiplier on the invariant form, e.g. 7/3.
        #[arg(long)]
        scale: Option<String>,
    },
    /// Criticality verdict for the Kähler-Einstein metric.
    Extremal {
        family: String,
        n: usize,
        #[arg(long)]
        parabolic: Option<String>,
        #[arg(long)]
        scale: Option<String>,
    },
    /// Verdict table over full flags G/T.
    Survey {
        /// Comma-separated families, e.g. A,B,C,D.
        #[arg(long, default_value = "A,B,C,D")]
        families: String,
        /// Common maximum rank; default is 9 for A and 8 for B, C, D.
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long)]
        scale: Option<String>,
    },
    /// Torus-restricted Casimir matrix and its spectrum.
    Spectrum {
        family: String,
        n: usize,
        #[arg(long)]
        parabolic: Option<String>,
        /// Torus coordinates, rationals like 1/3,0 (floats with --float).
        /// Defaults to the Kähler-Einstein parameter.
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        /// Accept decimal floating-point coordinates in --xi.
        #[arg(long)]
        float: bool,
    },
    /// Constrained first-eigenvalue analysis on SU(3)/T².
    Su3 {
        /// scan or optimize.
        mode: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0.05)]
        s_min: f64,
        #[arg(long, default_value_t = 2.0)]
        s_max: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

enum AppError {
    Usage(String),
    Domain(flagx_core::Error),
}

impl From<flagx_core::Error> for AppError {
    fn from(e: flagx_core::Error) -> Self {
        AppError::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<(), AppError> {
    let (report, table) = match &cli.command {
        Command::Roots { family, n } => cmd_roots(family, *n)?,
        Command::Flag {
            family,
            n,
            parabolic,
            scale,
        } => cmd_flag(family, *n, parabolic.as_deref(), scale.as_deref())?,
        Command::Extremal {
            family,
            n,
            parabolic,
            scale,
        } => cmd_extremal(family, *n, parabolic.as_deref(), scale.as_deref())?,
        Command::Survey {
            families,
            max_rank,
            scale,
        } => cmd_survey(families, *max_rank, scale.as_deref())?,
        Command::Spectrum {
            family,
            n,
            parabolic,
            xi,
            float,
        } => cmd_spectrum(family, *n, parabolic.as_deref(), xi.as_deref(), *float)?,
        Command::Su3 {
            mode,
            samples,
            s_min,
            s_max,
            tol,
        } => cmd_su3(mode, *samples, *s_min, *s_max, *tol)?,
    };
    match cli.format {
        Format::Json => emit(&format!("{}\n", report.to_json())),
        Format::Table => emit(&table),
    }
}

/// Writes to stdout, treating a closed pipe as a normal early exit.
fn emit(text: &str) -> Result<(), AppError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(AppError::Usage(format!("cannot write output: {e}"))),
    }
}

/// Family letter and classical parameter from the command line; the
/// parameter must reach the family's minimum rank, anything lower is a
/// usage error caught before any domain computation.
fn parse_family_n(family: &str, n: usize) -> Result<(Family, usize), AppError> {
    let family = Family::parse(family)
        .ok_or_else(|| AppError::Usage(format!("unknown family '{family}', expected A, B, C or D")))?;
    let rank = family.rank_from_param(n);
    if rank < family.min_rank() {
        let min_n = match family {
            Family::A => 2,
            Family::B => 2,
            Family::C | Family::D => 3,
        };
        return Err(AppError::Usage(format!(
            "family {family} needs parameter n >= {min_n}, got {n}"
        )));
    }
    Ok((family, rank))
}

fn parse_parabolic(spec: Option<&str>, rank: usize) -> Result<BTreeSet<usize>, AppError> {
    let Some(spec) = spec else {
        return Ok(BTreeSet::new());
    };
    let mut out = BTreeSet::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let one_based: usize = part
            .parse()
            .map_err(|_| AppError::Usage(format!("bad parabolic index '{part}'")))?;
        if one_based == 0 {
            // 1-based on the command line; 0 cannot be shifted down and is
            // reported as the domain-level out-of-range index it denotes.
            return Err(AppError::Domain(
                flagx_core::Error::ParabolicIndexOutOfRange(0, rank),
            ));
        }
        out.insert(one_based - 1);
    }
    Ok(out)
}

fn parse_scale(spec: Option<&str>) -> Result<Q, AppError> {
    match spec {
        None => Ok(flagx_core::ratio::qi(1)),
        Some(s) => {
            parse_q(s).ok_or_else(|| AppError::Usage(format!("bad rational scale '{s}'")))
        }
    }
}

fn build_system(family: Family, rank: usize, scale: &Q) -> Result<RootSystem, AppError> {
    Ok(RootSystem::build(family, rank)?.with_form_scale(scale.clone())?)
}

fn parabolic_json(pi0: &BTreeSet<usize>) -> Value {
    Value::Array(pi0.iter().map(|i| json!(i + 1)).collect())
}

fn cmd_roots(family_s: &str, n: usize) -> Result<(Report, String), AppError> {
    let (family, rank) = parse_family_n(family_s, n)?;
    let rs = RootSystem::build(family, rank)?;
    let inputs = json!({"family": family.to_string(), "n": n, "rank": rank});
    let outputs = json!({
        "group": family.group_name(rank),
        "ambient_dim": rs.ambient_dim(),
        "num_roots": rs.num_roots(),
        "simple_roots": rs.simple_roots().iter().map(json_vector).collect::<Vec<_>>(),
        "positive_roots": rs.positive_roots().iter().map(json_vector).collect::<Vec<_>>(),
    });
    let mut table = format!(
        "root system {family}{rank} ({})\n",
        family.group_name(rank)
    );
    table.push_str(&kv_table(&[
        ("ambient dimension", rs.ambient_dim().to_string()),
        ("number of roots", rs.num_roots().to_string()),
    ]));
    table.push_str("simple roots:\n");
    for r in rs.simple_roots() {
        table.push_str(&format!("  {r}\n"));
    }
    table.push_str("positive roots:\n");
    for r in rs.positive_roots() {
        table.push_str(&format!("  {r}\n"));
    }
    Ok((Report::new("roots", inputs, outputs), table))
}

fn flag_from_args(
    family_s: &str,
    n: usize,
    parabolic: Option<&str>,
    scale: &Q,
) -> Result<(FlagManifold, Value), AppError> {
    let (family, rank) = parse_family_n(family_s, n)?;
    let pi0 = parse_parabolic(parabolic, rank)?;
    let sys = build_system(family, rank, scale)?;
    let flag = build_flag(sys, &pi0)?;
    let inputs = json!({
        "family": family.to_string(),
        "n": n,
        "rank": rank,
        "parabolic": parabolic_json(&pi0),
        "scale": q_str(scale),
    });
    Ok((flag, inputs))
}

fn cmd_flag(
    family_s: &str,
    n: usize,
    parabolic: Option<&str>,
    scale: Option<&str>,
) -> Result<(Report, String), AppError> {
    let scale = parse_scale(scale)?;
    let (flag, inputs) = flag_from_args(family_s, n, parabolic, &scale)?;
    let dec = flag.t_root_decomposition()?;
    let classes: Vec<Value> = dec
        .classes
        .iter()
        .map(|c| {
            json!({
                "rho": json_vector(&c.rho),
                "multiplicity": c.multiplicity,
                "beta": json_q(&c.beta),
            })
        })
        .collect();
    let outputs = json!({
        "label": flag.label(),
        "group": flag.system().family().group_name(flag.system().rank()),
        "dim_complex": flag.dim_complex(),
        "center_dim": flag.center_dim(),
        "delta_m": json_vector(flag.delta_m()),
        "num_isotropy_roots": flag.r_h().len(),
        "t_root_classes": classes,
    });
    let mut table = format!("flag manifold {}\n", flag.label());
    table.push_str(&kv_table(&[
        ("group", flag.system().family().group_name(flag.system().rank())),
        ("dim_C M", flag.dim_complex().to_string()),
        ("center dim", flag.center_dim().to_string()),
        ("delta_m", flag.delta_m().to_string()),
        ("isotropy roots", flag.r_h().len().to_string()),
    ]));
    let rows: Vec<Vec<String>> = dec
        .classes
        .iter()
        .map(|c| {
            vec![
                c.rho.to_string(),
                c.multiplicity.to_string(),
                q_str(&c.beta),
            ]
        })
        .collect();
    table.push_str("T-root classes:\n");
    table.push_str(&columns_table(&["rho", "m_j", "beta_j"], &rows));
    Ok((Report::new("flag", inputs, outputs), table))
}

fn extremality_outputs(report: &ExtremalityReport, flag: &FlagManifold) -> Value {
    json!({
        "label": flag.label(),
        "verdict": json_verdict(report.verdict),
        "mu": json_q(&report.mu),
        "residual": json_vector(&report.residual),
        "center_dim": report.center_dim,
        "dim_complex": flag.dim_complex(),
        "caveats": [ISOMETRY_CAVEAT],
    })
}

fn cmd_extremal(
    family_s: &str,
    n: usize,
    parabolic: Option<&str>,
    scale: Option<&str>,
) -> Result<(Report, String), AppError> {
    let scale = parse_scale(scale)?;
    let (flag, inputs) = flag_from_args(family_s, n, parabolic, &scale)?;
    let report = check_extremality(&flag)?;
    let outputs = extremality_outputs(&report, &flag);
    let mut table = format!("extremality on {}\n", flag.label());
    table.push_str(&kv_table(&[
        ("verdict", report.verdict.to_string()),
        ("mu", q_str(&report.mu)),
        ("residual", report.residual.to_string()),
        ("center dim", report.center_dim.to_string()),
    ]));
    table.push_str(&format!("note: {ISOMETRY_CAVEAT}\n"));
    Ok((Report::new("extremal", inputs, outputs), table))
}

fn cmd_survey(
    families_s: &str,
    max_rank: Option<usize>,
    scale: Option<&str>,
) -> Result<(Report, String), AppError> {
    let scale = parse_scale(scale)?;
    let mut families = BTreeSet::new();
    for part in families_s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        families.insert(Family::parse(part).ok_or_else(|| {
            AppError::Usage(format!("unknown family '{part}' in --families"))
        })?);
    }
    if families.is_empty() {
        return Err(AppError::Usage("empty family set".into()));
    }
    for &f in &families {
        if let Some(m) = max_rank {
            if m < survey_min_rank(f) {
                return Err(AppError::Usage(format!(
                    "--max-rank {m} is below the survey minimum for family {f}"
                )));
            }
        }
    }

    // (family, rank) jobs, fanned out on a pool sized by FLAGX_THREADS;
    // collection keeps the deterministic job order.
    let jobs: Vec<(Family, usize)> = families
        .iter()
        .flat_map(|&f| {
            let hi = max_rank.unwrap_or(if f == Family::A { 9 } else { 8 });
            (survey_min_rank(f)..=hi).map(move |r| (f, r))
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(survey_threads())
        .build()
        .map_err(|e| AppError::Usage(format!("thread pool: {e}")))?;
    let results: Vec<Result<(Family, usize, ExtremalityReport), flagx_core::Error>> =
        pool.install(|| {
            use rayon::prelude::*;
            jobs.par_iter()
                .map(|&(family, rank)| {
                    let sys = RootSystem::build(family, rank)?
                        .with_form_scale(scale.clone())?;
                    let flag = build_flag(sys, &BTreeSet::new())?;
                    Ok((family, rank, check_extremality(&flag)?))
                })
                .collect()
        });

    let mut rows_json = Vec::new();
    let mut rows_table = Vec::new();
    for r in results {
        let (family, rank, rep) = r?;
        rows_json.push(json!({
            "family": family.to_string(),
            "rank": rank,
            "n": family.classical_param(rank),
            "label": format!("{family}{rank}"),
            "group": family.group_name(rank),
            "verdict": json_verdict(rep.verdict),
            "mu": json_q(&rep.mu),
        }));
        rows_table.push(vec![
            format!("{family}{rank}"),
            family.group_name(rank),
            rep.verdict.to_string(),
            q_str(&rep.mu),
        ]);
    }
    let inputs = json!({
        "families": families.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "max_rank": max_rank.map_or(Value::Null, |m| json!(m)),
        "scale": q_str(&scale),
    });
    let outputs = json!({"rows": rows_json, "caveats": [ISOMETRY_CAVEAT]});
    let mut table = String::from("full-flag survey (KE metric criticality)\n");
    table.push_str(&columns_table(
        &["label", "group", "verdict", "mu"],
        &rows_table,
    ));
    table.push_str(&format!("note: {ISOMETRY_CAVEAT}\n"));
    Ok((Report::new("survey", inputs, outputs), table))
}

fn survey_threads() -> usize {
    std::env::var("FLAGX_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(0) // 0 lets rayon pick
}

fn parse_xi(
    flag: &FlagManifold,
    xi: Option<&str>,
    float: bool,
) -> Result<MetricParameter, AppError> {
    match xi {
        None => Ok(ke_parameter(flag)?),
        Some(spec) => {
            let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
            if float {
                let coords: Vec<f64> = parts
                    .iter()
                    .map(|p| {
                        p.parse::<f64>()
                            .map_err(|_| AppError::Usage(format!("bad float coordinate '{p}'")))
                    })
                    .collect::<Result<_, _>>()?;
                Ok(MetricParameter::from_f64(flag, &coords)?)
            } else {
                let coords: Vec<Q> = parts
                    .iter()
                    .map(|p| {
                        parse_q(p).ok_or_else(|| {
                            AppError::Usage(format!(
                                "bad rational coordinate '{p}' (use --float for decimals)"
                            ))
                        })
                    })
                    .collect::<Result<_, _>>()?;
                Ok(MetricParameter::new(flag, coords)?)
            }
        }
    }
}

fn cmd_spectrum(
    family_s: &str,
    n: usize,
    parabolic: Option<&str>,
    xi: Option<&str>,
    float: bool,
) -> Result<(Report, String), AppError> {
    let scale = flagx_core::ratio::qi(1);
    let (flag, mut inputs) = flag_from_args(family_s, n, parabolic, &scale)?;
    let param = parse_xi(&flag, xi, float)?;
    let spec = casimir_on_torus(&flag, &param)?;
    if let Value::Object(map) = &mut inputs {
        map.remove("scale");
        map.insert("xi".into(), json!(xi.map(str::to_string)));
        map.insert("float".into(), json!(float));
    }
    let entry = |v: &Q| -> Value {
        if spec.float_input {
            json_f64(q_to_f64(v))
        } else {
            json_q(v)
        }
    };
    let d_rows: Vec<Value> = (0..spec.d_matrix.nrows())
        .map(|r| Value::Array(spec.d_matrix.row(r).iter().map(entry).collect()))
        .collect();
    let outputs = json!({
        "label": flag.label(),
        "xi": param.coords().iter().map(json_q).collect::<Vec<_>>(),
        "xi_is_ke": xi.is_none(),
        "d_matrix": d_rows,
        "eigenvalues": spec.eigenvalues.iter().map(|&e| json_f64(e)).collect::<Vec<_>>(),
        "lambda1_candidate": json_f64(spec.lambda1_candidate),
        "char_poly": spec.char_poly.iter().map(json_q).collect::<Vec<_>>(),
        "eigen2_exact": spec.has_exact_eigenvalue_two,
    });
    let mut table = format!("torus-restricted Casimir on {}\n", flag.label());
    let scalar_str = |v: &Q| -> String {
        if spec.float_input {
            fmt_f64(q_to_f64(v))
        } else {
            q_str(v)
        }
    };
    let xi_desc = param
        .coords()
        .iter()
        .map(scalar_str)
        .collect::<Vec<_>>()
        .join(",");
    table.push_str(&kv_table(&[
        (
            "xi",
            format!("{xi_desc}{}", if xi.is_none() { "  (KE parameter)" } else { "" }),
        ),
        (
            "lambda1 candidate",
            format!("{} (upper-bound witness)", fmt_f64(spec.lambda1_candidate)),
        ),
        ("exact eigenvalue 2", spec.has_exact_eigenvalue_two.to_string()),
    ]));
    table.push_str("D matrix (torus coordinates):\n");
    let rows: Vec<Vec<String>> = (0..spec.d_matrix.nrows())
        .map(|r| spec.d_matrix.row(r).iter().map(scalar_str).collect())
        .collect();
    for row in &rows {
        table.push_str(&format!("  [{}]\n", row.join(", ")));
    }
    table.push_str("eigenvalues (ascending):\n");
    for e in &spec.eigenvalues {
        table.push_str(&format!("  {}\n", fmt_f64(*e)));
    }
    Ok((Report::new("spectrum", inputs, outputs), table))
}

fn cmd_su3(
    mode: &str,
    samples: usize,
    s_min: f64,
    s_max: f64,
    tol: f64,
) -> Result<(Report, String), AppError> {
    match mode {
        "scan" => {
            if samples < 2 || !(s_min.is_finite() && s_min > 0.0) || s_min >= s_max {
                return Err(AppError::Usage(
                    "scan needs --samples >= 2 and 0 < --s-min < --s-max".into(),
                ));
            }
            let scan = su3::lambda1_scan(samples, s_min, s_max)?;
            let bound_ok = scan.samples.iter().all(|&(_, f)| f <= 2.0 + 1e-12);
            let inputs = json!({
                "mode": "scan",
                "samples": samples,
                "s_min": json_f64(s_min),
                "s_max": json_f64(s_max),
            });
            let outputs = json!({
                "max_value": json_f64(scan.max_value),
                "argmax_s": json_f64(scan.argmax_s),
                "all_samples_below_2_plus_1e12": bound_ok,
                "num_samples": scan.samples.len(),
            });
            let table = format!(
                "SU(3)/T² curve scan ({} samples on [{}, {}])\n{}",
                samples,
                s_min,
                s_max,
                kv_table(&[
                    ("max f", fmt_f64(scan.max_value)),
                    ("argmax s", fmt_f64(scan.argmax_s)),
                    ("f <= 2 + 1e-12 everywhere", bound_ok.to_string()),
                ])
            );
            Ok((Report::new("su3", inputs, outputs), table))
        }
        "optimize" => {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(AppError::Usage("--tol must be positive".into()));
            }
            let (s_star, f_star) = su3::maximize_lambda1(tol)?;
            let inputs = json!({"mode": "optimize", "tol": json_f64(tol)});
            let outputs = json!({
                "s_star": json_f64(s_star),
                "f_star": json_f64(f_star),
                "t_star": json_f64(su3::curve_t(s_star)?),
            });
            let table = format!(
                "SU(3)/T² constrained maximization\n{}",
                kv_table(&[
                    ("s*", fmt_f64(s_star)),
                    ("t*", fmt_f64(su3::curve_t(s_star)?)),
                    ("f*", fmt_f64(f_star)),
                ])
            );
            Ok((Report::new("su3", inputs, outputs), table))
        }
        other => Err(AppError::Usage(format!(
            "unknown su3 mode '{other}', expected scan or optimize"
        ))),
    }
}
