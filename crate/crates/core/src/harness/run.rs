use super::report::{ExperimentReport, Method, ReportRow};
use super::spec::{Mode, SequenceSpec};
use crate::coxeter::{CoxeterGroup, Family};
use crate::distribution::{product_t_distribution, DiscreteDistribution};
use crate::enumerate::TableSet;
use crate::error::{Error, Result};
use crate::ks::ks_to_normal;
use crate::sampling::{sample_batch, SeededRng};
use crate::wasserstein::d2_to_normal;
use num_bigint::BigUint;
use rayon::prelude::*;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Directory for cached exceptional element tables.
    pub table_dir: Option<PathBuf>,
    /// Adds per-row wall time, which makes reports non-reproducible.
    pub record_wall_time: bool,
}

pub fn run_experiment(spec: &SequenceSpec) -> Result<ExperimentReport> {
    run_experiment_with(spec, &RunOptions::default())
}

pub fn run_experiment_with(spec: &SequenceSpec, opts: &RunOptions) -> Result<ExperimentReport> {
    spec.validate()?;
    match opts.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::ParameterOutOfRange(format!("thread pool: {e}")))?;
            pool.install(|| run_rows(spec, opts))
        }
        None => run_rows(spec, opts),
    }
}

fn run_rows(spec: &SequenceSpec, opts: &RunOptions) -> Result<ExperimentReport> {
    let rows = spec
        .groups
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let start = Instant::now();
            let mut row = match choose_method(spec, g) {
                Method::Exact => exact_row(g, spec.cap, opts)?,
                Method::Montecarlo => sampled_row(g, spec, i as u32, opts)?,
            };
            row.n = i + 1;
            if opts.record_wall_time {
                row.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport::new(spec.name.clone(), spec.seed, rows))
}

fn choose_method(spec: &SequenceSpec, g: &CoxeterGroup) -> Method {
    match spec.mode {
        Mode::Exact => Method::Exact,
        Mode::Montecarlo => Method::Montecarlo,
        Mode::Auto => {
            let cap = BigUint::from(spec.cap);
            let fits = g.factors().iter().all(|t| t.family() == Family::I2 || t.order() <= cap);
            if fits {
                Method::Exact
            } else {
                Method::Montecarlo
            }
        }
    }
}

fn base_row(g: &CoxeterGroup, method: Method) -> ReportRow {
    ReportRow {
        n: 0,
        group: g.to_string(),
        rank: g.rank(),
        log10_order: g.log10_order(),
        mean: 0.0,
        variance: 0.0,
        variance_exact: None,
        d2: None,
        ks: None,
        method,
        samples: None,
        diagnostic: None,
        wall_time_ms: None,
    }
}

fn fill_distances(row: &mut ReportRow, law: &DiscreteDistribution) {
    match law.standardize() {
        Ok(z) => {
            row.d2 = Some(d2_to_normal(&z));
            row.ks = Some(ks_to_normal(&z));
        }
        Err(e) => row.diagnostic = Some(e.to_string()),
    }
}

fn exact_row(g: &CoxeterGroup, cap: u64, opts: &RunOptions) -> Result<ReportRow> {
    // loads (or builds and persists) exceptional tables through the cache dir
    TableSet::for_group(g, cap, opts.table_dir.as_deref())?;
    let law = product_t_distribution(g, cap)?;
    let m = law.exact_moments();
    let mut row = base_row(g, Method::Exact);
    row.mean = m.mean_f64();
    row.variance = m.variance_f64();
    row.variance_exact = Some(m.variance.to_string());
    fill_distances(&mut row, &law);
    Ok(row)
}

/// Empirical law of `t` from `spec.samples` draws on stream `stream`,
/// standardized by its own moments.
fn sampled_row(g: &CoxeterGroup, spec: &SequenceSpec, stream: u32, opts: &RunOptions) -> Result<ReportRow> {
    let tables = TableSet::for_group(g, spec.cap, opts.table_dir.as_deref())?;
    let n = spec.samples as usize;
    let draws = sample_batch(g, n, &SeededRng::with_stream(spec.seed, stream), &tables)?;
    let mut counts = vec![0u64; 2 * g.rank() + 1];
    for t in draws {
        counts[t as usize] += 1;
    }
    let law = DiscreteDistribution::from_dense_counts(&counts)?;
    let m = law.exact_moments();
    let mut row = base_row(g, Method::Montecarlo);
    row.samples = Some(spec.samples);
    row.mean = m.mean_f64();
    row.variance = if n > 1 {
        m.variance_f64() * n as f64 / (n - 1) as f64
    } else {
        0.0
    };
    fill_distances(&mut row, &law);
    Ok(row)
}
