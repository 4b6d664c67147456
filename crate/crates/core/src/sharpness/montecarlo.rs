//! Seeded Monte-Carlo search for counterexamples.
//!
//! Sample `i` is drawn from its own ChaCha8 stream (`seed`, stream `i`), so
//! every sample can be replayed on its own and the summary does not depend
//! on how the work is split across threads.
//!
//! Weights are log-uniform on `[0.1, 10]`; angles are uniform on the simplex
//! (normalised unit exponentials, i.e. Dirichlet(1, …, 1), scaled to π).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    cosine_sum, heptagonal_rhs, odd_n_rhs_experimental, pentagonal_rhs_normal,
    pentagonal_rhs_strong, sort_jointly, AngleVector, Theorem, WeightVector,
};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_SEED: u64 = 42;
const WEIGHT_LOG10_RANGE: (f64, f64) = (-1.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloConfig {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub tol: f64,
    /// Required for odd `n ≥ 9`.
    pub experimental: bool,
}

impl MonteCarloConfig {
    pub fn new(n: usize, samples: u64, seed: u64, tol: f64) -> Self {
        Self {
            n,
            samples,
            seed,
            tol,
            experimental: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::invalid("samples must be at least 1"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::invalid("tolerance must be positive"));
        }
        match self.n {
            5 | 7 => Ok(()),
            n if n >= 9 && n % 2 == 1 => {
                if self.experimental {
                    Ok(())
                } else {
                    Err(Error::invalid(format!(
                        "n = {n} is only supported as an experimental (unproven) bound"
                    )))
                }
            }
            n => Err(Error::invalid(format!(
                "n must be 5, 7 or odd >= 9, got {n}"
            ))),
        }
    }

    pub fn theorems(&self) -> &'static [Theorem] {
        match self.n {
            5 => &[Theorem::PentagonalNormal, Theorem::PentagonalStrong],
            7 => &[Theorem::Heptagonal],
            _ => &[Theorem::OddNExperimental],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleCheck<T> {
    pub theorem: Theorem,
    pub rhs: T,
    pub gap: T,
    pub holds: bool,
}

/// One sample with everything needed to replay it standalone.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRecord<T> {
    pub index: u64,
    pub seed: u64,
    pub weights: Vec<T>,
    pub angles: Vec<T>,
    pub lhs: T,
    pub checks: Vec<SampleCheck<T>>,
    pub tolerance: T,
    pub experimental: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary<T> {
    pub theorem: Theorem,
    pub violations: u64,
    pub min_gap: T,
    pub argmin_index: u64,
    pub argmin_weights: Vec<T>,
    pub argmin_angles: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloSummary<T> {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub tolerance: T,
    pub experimental: bool,
    /// Total over all checks.
    pub violations: u64,
    pub checks: Vec<CheckSummary<T>>,
}

/// Draws sample `index`: `(weights, angles)`.
pub fn sample_input<T: Real>(n: usize, seed: u64, index: u64) -> (WeightVector<T>, AngleVector<T>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let (lo, hi) = WEIGHT_LOG10_RANGE;
    let weights: Vec<T> = (0..n)
        .map(|_| T::lit(10f64.powf(rng.random_range(lo..hi))))
        .collect();
    let weights = WeightVector::new(weights).expect("log-uniform weights are positive");
    loop {
        let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let s: f64 = e.iter().sum();
        let angles = e
            .iter()
            .map(|&x| T::lit(x / s * std::f64::consts::PI))
            .collect();
        // Redraw the rare sample with an angle below the validation floor.
        if let Ok(alpha) = AngleVector::new(angles) {
            return (weights, alpha);
        }
    }
}

fn evaluate<T: Real>(cfg: &MonteCarloConfig, index: u64) -> SampleRecord<T> {
    let (a, alpha) = sample_input::<T>(cfg.n, cfg.seed, index);
    let tol = T::lit(cfg.tol);
    let lhs = cosine_sum(&a, &alpha).expect("lengths match");
    let rhs_for = |theorem: Theorem| -> T {
        match theorem {
            Theorem::PentagonalNormal => pentagonal_rhs_normal(&a),
            Theorem::PentagonalStrong => {
                let (sorted, _) = sort_jointly(&a, &alpha).expect("lengths match");
                pentagonal_rhs_strong(&sorted)
            }
            Theorem::Heptagonal => heptagonal_rhs(&a),
            Theorem::OddNExperimental => odd_n_rhs_experimental(&a, cfg.n),
            _ => unreachable!("not sampled"),
        }
        .expect("validated configuration")
    };
    let checks = cfg
        .theorems()
        .iter()
        .map(|&theorem| {
            let rhs = rhs_for(theorem);
            let gap = rhs - lhs;
            SampleCheck {
                theorem,
                rhs,
                gap,
                holds: gap >= -tol,
            }
        })
        .collect();
    SampleRecord {
        index,
        seed: cfg.seed,
        weights: a.as_slice().to_vec(),
        angles: alpha.as_slice().to_vec(),
        lhs,
        checks,
        tolerance: tol,
        experimental: cfg.n >= 9,
    }
}

/// Per-sample records for `range` (clamped to the sample count), in index order.
pub fn monte_carlo_records<T: Real>(
    cfg: &MonteCarloConfig,
    range: std::ops::Range<u64>,
) -> Result<Vec<SampleRecord<T>>> {
    cfg.validate()?;
    let end = range.end.min(cfg.samples);
    Ok((range.start..end)
        .into_par_iter()
        .map(|i| evaluate::<T>(cfg, i))
        .collect())
}

#[derive(Clone)]
struct Acc<T> {
    violations: Vec<u64>,
    argmin: Vec<Option<(T, u64)>>,
}

impl<T: Real> Acc<T> {
    fn empty(k: usize) -> Self {
        Self {
            violations: vec![0; k],
            argmin: vec![None; k],
        }
    }

    fn add(mut self, rec: &SampleRecord<T>) -> Self {
        for (k, c) in rec.checks.iter().enumerate() {
            if !c.holds {
                self.violations[k] += 1;
            }
            self.argmin[k] = pick(self.argmin[k], Some((c.gap, rec.index)));
        }
        self
    }

    fn merge(mut self, other: Self) -> Self {
        for k in 0..self.violations.len() {
            self.violations[k] += other.violations[k];
            self.argmin[k] = pick(self.argmin[k], other.argmin[k]);
        }
        self
    }
}

/// Smaller gap wins; ties go to the smaller index so the merge order does not matter.
fn pick<T: Real>(x: Option<(T, u64)>, y: Option<(T, u64)>) -> Option<(T, u64)> {
    match (x, y) {
        (Some(a), Some(b)) => {
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                Some(b)
            } else {
                Some(a)
            }
        }
        (a, None) => a,
        (None, b) => b,
    }
}

/// Runs the sweep and summarises violations (`gap < −tol`) per bound.
pub fn monte_carlo_verify<T: Real>(cfg: &MonteCarloConfig) -> Result<MonteCarloSummary<T>> {
    cfg.validate()?;
    let theorems = cfg.theorems();
    let k = theorems.len();
    let acc = (0..cfg.samples)
        .into_par_iter()
        .fold(
            || Acc::<T>::empty(k),
            |acc, i| acc.add(&evaluate::<T>(cfg, i)),
        )
        .reduce(|| Acc::empty(k), Acc::merge);

    let checks: Vec<CheckSummary<T>> = theorems
        .iter()
        .enumerate()
        .map(|(j, &theorem)| {
            let (min_gap, idx) = acc.argmin[j].expect("at least one sample");
            let (w, al) = sample_input::<T>(cfg.n, cfg.seed, idx);
            CheckSummary {
                theorem,
                violations: acc.violations[j],
                min_gap,
                argmin_index: idx,
                argmin_weights: w.as_slice().to_vec(),
                argmin_angles: al.as_slice().to_vec(),
            }
        })
        .collect();
    Ok(MonteCarloSummary {
        n: cfg.n,
        samples: cfg.samples,
        seed: cfg.seed,
        tolerance: T::lit(cfg.tol),
        experimental: cfg.n >= 9,
        violations: checks.iter().map(|c| c.violations).sum(),
        checks,
    })
}
