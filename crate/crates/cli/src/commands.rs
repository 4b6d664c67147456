//! The five subcommands. Each returns flat records plus an overall status.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::{json, Value};

use pentagonal::arrangements::SIGMA0;
use pentagonal::bounds::{heptagonal_bound_check, odd_n_bound_check, PentagonalForm};
use pentagonal::sharpness::monte_carlo_records;
use pentagonal::{
    enumerate_arrangements, lemma1_residuals, max_cosine_sum, monte_carlo_verify,
    pentagonal_bound_check, AngleVector, BoundReport, Error, MonteCarloConfig, SharpnessOptions,
    Theorem, WeightVector,
};

use crate::output::Record;

pub enum Failure {
    Input(String),
    Solver(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::Input(m),
            Error::Convergence {
                message,
                best_value,
                best_gradient_norm,
                iterations,
            } => Failure::Solver(format!(
                "{message} (best value {}, best projected gradient norm {}, {iterations} iterations)",
                opt(best_value),
                opt(best_gradient_norm)
            )),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or("none".into(), |v| v.to_string())
}

pub struct Outcome {
    pub records: Vec<Record>,
    pub notes: Vec<String>,
    /// A bound was violated or a claimed identity failed.
    pub violation: bool,
}

fn record(v: Value) -> Record {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("records are objects"),
    }
}

fn check_n(n: Option<usize>, len: usize, what: &str) -> Result<usize, Failure> {
    match n {
        Some(n) if n != len => Err(Failure::Input(format!(
            "{what} has {len} entries, expected {n} (--n)"
        ))),
        _ => Ok(len),
    }
}

fn positive_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::Input(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

fn weight_vector(w: &[f64]) -> Result<WeightVector<f64>, Failure> {
    Ok(WeightVector::from_slice(w)?)
}

pub fn bound(
    n: Option<usize>,
    weights: &[f64],
    angles: &[f64],
    tol: f64,
    experimental: bool,
) -> Result<Outcome, Failure> {
    positive_tol(tol)?;
    let n = check_n(n, weights.len(), "weights")?;
    check_n(Some(n), angles.len(), "angles")?;
    let a = weight_vector(weights)?;
    let alpha = AngleVector::from_slice(angles)?;

    let reports: Vec<BoundReport<f64>> = match n {
        5 => vec![
            pentagonal_bound_check(&a, &alpha, PentagonalForm::Normal, tol)?,
            pentagonal_bound_check(&a, &alpha, PentagonalForm::Strong, tol)?,
        ],
        7 => vec![heptagonal_bound_check(&a, &alpha, tol)?],
        n if n >= 9 && n % 2 == 1 => {
            if !experimental {
                return Err(Failure::Input(format!(
                    "n = {n} has no proven bound; pass --experimental to evaluate the conjectured one"
                )));
            }
            vec![odd_n_bound_check(&a, &alpha, tol)?]
        }
        n => {
            return Err(Failure::Input(format!(
                "n must be 5, 7 or odd >= 9, got {n}"
            )))
        }
    };

    let mut records = Vec::new();
    for r in &reports {
        let mut rec = record(json!({
            "command": "bound",
            "theorem": r.theorem.as_str(),
            "experimental": r.theorem.is_experimental(),
            "n": n,
            "weights": weights,
            "angles": angles,
            "lhs": r.lhs,
            "rhs": r.rhs,
            "gap": r.gap,
            "holds": r.holds,
        }));
        for other in &reports {
            rec.insert(format!("rhs_{}", rhs_key(other.theorem)), json!(other.rhs));
        }
        rec.insert("tolerance".into(), json!(tol));
        rec.insert("seed".into(), Value::Null);
        records.push(rec);
    }
    let violation = reports.iter().any(|r| !r.holds);
    let mut notes = Vec::new();
    if n == 5 && !a.is_sorted() {
        notes.push("strong form evaluated after sorting (weight, angle) pairs by weight".into());
    }
    notes.push(
        if violation {
            "VIOLATION"
        } else {
            "all bounds hold"
        }
        .into(),
    );
    Ok(Outcome {
        records,
        notes,
        violation,
    })
}

fn rhs_key(t: Theorem) -> &'static str {
    match t {
        Theorem::PentagonalNormal => "normal",
        Theorem::PentagonalStrong => "strong",
        Theorem::Heptagonal => "heptagonal",
        Theorem::OddNExperimental => "experimental",
        Theorem::Toth => "toth",
        Theorem::Lemma2Arrangement => "arrangement",
    }
}

fn same(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

pub fn arrange(n: Option<usize>, weights: &[f64], tol: f64) -> Result<Outcome, Failure> {
    positive_tol(tol)?;
    check_n(n, weights.len(), "weights")?;
    check_n(Some(5), weights.len(), "weights")?;
    let a = weight_vector(weights)?;
    let arrs = enumerate_arrangements(&a)?;
    let phis: Vec<f64> = arrs.iter().map(|s| s.phi()).collect::<Result<_, _>>()?;
    let min = phis.iter().copied().fold(f64::INFINITY, f64::min);
    let sorted = a.is_sorted();

    let mut records = Vec::new();
    let mut tied = Vec::new();
    for (s, &phi) in arrs.iter().zip(&phis) {
        let order = s.order_one_based();
        let is_min = same(phi, min, tol);
        if is_min {
            tied.push(order.clone());
        }
        records.push(record(json!({
            "command": "arrange",
            "order": order,
            "arranged": s.values(),
            "phi": phi,
            "minimizer": is_min,
            "sigma0": sorted && order == SIGMA0,
            "weights": weights,
            "tolerance": tol,
        })));
    }

    let fmt = |o: &Vec<usize>| {
        let s: Vec<String> = o.iter().map(usize::to_string).collect();
        format!("({})", s.join(","))
    };
    let highlighted = tied
        .iter()
        .find(|o| sorted && o.as_slice() == SIGMA0)
        .unwrap_or(&tied[0]);
    let mut notes = vec![format!(
        "minimum phi {min} at {} (tied: {})",
        fmt(highlighted),
        tied.iter().map(fmt).collect::<Vec<_>>().join(" ")
    )];
    let mut violation = false;
    if sorted {
        let agrees = tied.iter().any(|o| o.as_slice() == SIGMA0);
        violation = !agrees;
        notes.push(format!(
            "sorted input: sigma0 = (1,5,2,3,4) {} the minimum",
            if agrees { "attains" } else { "does NOT attain" }
        ));
    } else {
        notes.push("input not sorted: no sigma0 claim".into());
    }
    Ok(Outcome {
        records,
        notes,
        violation,
    })
}

pub fn lemma1_check(n: Option<usize>, weights: &[f64], tol: f64) -> Result<Outcome, Failure> {
    positive_tol(tol)?;
    check_n(n, weights.len(), "weights")?;
    check_n(Some(5), weights.len(), "weights")?;
    let rows = lemma1_residuals(&weight_vector(weights)?)?;
    let mut violation = false;
    let mut records = Vec::new();
    for r in &rows {
        let relative = if r.scale > 0.0 {
            r.residual / r.scale
        } else {
            r.residual
        };
        let holds = relative <= tol && r.rhs_formula >= -tol * r.scale;
        violation |= !holds;
        records.push(record(json!({
            "command": "lemma1-check",
            "row": r.row,
            "arrangement": r.pair.0,
            "mirror": r.pair.1,
            "direct_diff": r.lhs_diff,
            "mirror_diff": r.mirror_diff,
            "formula": r.rhs_formula,
            "residual": r.residual,
            "relative_residual": relative,
            "holds": holds,
            "weights": weights,
            "tolerance": tol,
        })));
    }
    let notes = vec![if violation {
        "identity check FAILED".to_string()
    } else {
        format!(
            "all {} identities hold, all differences nonnegative",
            rows.len()
        )
    }];
    Ok(Outcome {
        records,
        notes,
        violation,
    })
}

pub struct SharpnessArgs {
    pub tol: f64,
    pub seed: u64,
    pub starts: usize,
    pub max_iter: usize,
}

pub fn sharpness(
    n: Option<usize>,
    weights: &[f64],
    args: &SharpnessArgs,
) -> Result<Outcome, Failure> {
    positive_tol(args.tol)?;
    let n = check_n(n, weights.len(), "weights")?;
    if n != 5 && n != 7 {
        return Err(Failure::Input(format!(
            "sharpness needs 5 or 7 weights, got {n}"
        )));
    }
    let opts = SharpnessOptions {
        tol: args.tol,
        starts: args.starts,
        max_iter: args.max_iter,
        seed: args.seed,
        ..SharpnessOptions::default()
    };
    let r = max_cosine_sum(&weight_vector(weights)?, &opts)?;
    if !r.methods_agree {
        return Err(Failure::Solver(format!(
            "critical-point enumeration ({}) and gradient ascent ({}) disagree beyond {}",
            r.bisection_value,
            opt(r.gradient_value),
            10.0 * args.tol
        )));
    }

    let mut rec = record(json!({
        "command": "sharpness",
        "n": n,
        "weights": weights,
        "max_value": r.max_value,
        "maximizer": r.maximizer,
        "on_boundary": r.on_boundary,
        "lambda": r.lambda,
        "bisection_value": r.bisection_value,
        "gradient_value": r.gradient_value,
        "gradient_norm": r.gradient_norm,
    }));
    if n == 5 {
        rec.insert("rhs_strong".into(), json!(r.rhs_strong));
        rec.insert("rhs_normal".into(), json!(r.rhs_normal));
        rec.insert("gap_strong".into(), json!(r.gap_strong));
        rec.insert("gap_normal".into(), json!(r.gap_normal));
    } else {
        rec.insert("rhs_heptagonal".into(), json!(r.rhs_normal));
        rec.insert("gap_heptagonal".into(), json!(r.gap_normal));
    }
    rec.insert("equality_found".into(), json!(r.equality_found));
    rec.insert("method".into(), json!(r.method.as_str()));
    rec.insert("methods_agree".into(), json!(r.methods_agree));
    rec.insert("tolerance".into(), json!(args.tol));
    rec.insert("seed".into(), json!(args.seed));

    let violation = [r.gap_strong, r.gap_normal]
        .into_iter()
        .flatten()
        .any(|g| g < -args.tol);
    Ok(Outcome {
        records: vec![rec],
        notes: Vec::new(),
        violation,
    })
}

pub struct SweepArgs<'a> {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub tol: f64,
    pub experimental: bool,
    pub emit_samples: Option<&'a Path>,
}

const EMIT_CHUNK: u64 = 1 << 16;

pub fn sweep(args: &SweepArgs) -> Result<Outcome, Failure> {
    let mut cfg = MonteCarloConfig::new(args.n, args.samples, args.seed, args.tol);
    cfg.experimental = args.experimental;
    let summary = monte_carlo_verify::<f64>(&cfg)?;

    if let Some(path) = args.emit_samples {
        let mut out = BufWriter::new(File::create(path)?);
        let mut start = 0;
        while start < cfg.samples {
            let end = (start + EMIT_CHUNK).min(cfg.samples);
            for s in monte_carlo_records::<f64>(&cfg, start..end)? {
                let mut rec = record(json!({
                    "command": "sweep-sample",
                    "index": s.index,
                    "seed": s.seed,
                    "n": cfg.n,
                    "weights": s.weights,
                    "angles": s.angles,
                    "lhs": s.lhs,
                }));
                for c in &s.checks {
                    let key = rhs_key(c.theorem);
                    rec.insert(format!("rhs_{key}"), json!(c.rhs));
                    rec.insert(format!("gap_{key}"), json!(c.gap));
                    rec.insert(format!("holds_{key}"), json!(c.holds));
                }
                rec.insert("tolerance".into(), json!(s.tolerance));
                rec.insert("experimental".into(), json!(s.experimental));
                serde_json::to_writer(&mut out, &rec).map_err(std::io::Error::from)?;
                writeln!(out)?;
            }
            start = end;
        }
        out.flush()?;
    }

    let records = summary
        .checks
        .iter()
        .map(|c| {
            record(json!({
                "command": "sweep",
                "theorem": c.theorem.as_str(),
                "experimental": summary.experimental,
                "n": summary.n,
                "samples": summary.samples,
                "seed": summary.seed,
                "tolerance": summary.tolerance,
                "violations": c.violations,
                "min_gap": c.min_gap,
                "argmin_index": c.argmin_index,
                "argmin_weights": c.argmin_weights,
                "argmin_angles": c.argmin_angles,
            }))
        })
        .collect();
    let mut notes = Vec::new();
    if summary.experimental {
        notes.push(format!(
            "EXPERIMENTAL: n = {} bound is conjectural",
            summary.n
        ));
    }
    notes.push(format!(
        "{} violations in {} samples",
        summary.violations, summary.samples
    ));
    Ok(Outcome {
        records,
        notes,
        violation: summary.violations > 0,
    })
}
