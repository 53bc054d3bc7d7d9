//! Experiment runners. Each walks its parameter grid and writes CSV with a
//! fixed header; a grid point that fails is reported and skipped.

use std::io::Write;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{ExperimentConfig, ExperimentKind};
use crate::analysis::stats::sample_distinct;
use crate::analysis::{
    fpr_exact, mc_w_distribution, privacy_audit, run_utility_experiment, tail_audit, AuditConfig,
    BudgetSpec, Proportion, UtilityConfig,
};
use crate::calibration::{dist_w, quantile_n, WDistribution};
use crate::error::{Error, Result};
use crate::filter::{BloomFilter, FilterParams};
use crate::hash::sub_seed;
use crate::mechanism::derive_budget;
use crate::parallel::fold_trials;

/// σ multiplier for the `ci` half-width columns.
pub const CI_SIGMAS: f64 = 3.0;

pub const FPR_HEADER: &str = "m,k,A,fpr_exact,fpr_emp,ci";
pub const UTILITY_HEADER: &str = "m,k,A,alpha,eps,delta,N,eps0,bound_D4,acc_emp,ci";
pub const WDIST_HEADER: &str = "w,analytic,empirical,tv_running";
pub const AUDIT_HEADER: &str = "bit_class,log_ratio,band,pass";
pub const CALIBRATE_HEADER: &str = "w,pmf,cdf";

/// Outcome of a grid run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunSummary {
    pub points: usize,
    /// `(point description, error message)` for every failed point.
    pub failures: Vec<(String, String)>,
}

impl RunSummary {
    fn record(&mut self, point: String, outcome: Result<()>) -> Result<()> {
        self.points += 1;
        match outcome {
            Ok(()) => Ok(()),
            // output failures abort the run; everything else is per point
            Err(Error::Io(e)) => Err(Error::Io(e)),
            Err(e) => {
                eprintln!("grid point {point} failed: {e}");
                self.failures.push((point, e.to_string()));
                Ok(())
            }
        }
    }
}

/// Runs the experiment described by `cfg`, writing CSV to `out`.
pub fn run_experiment(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<RunSummary> {
    match cfg.kind {
        ExperimentKind::Fpr => run_fpr(cfg, out),
        ExperimentKind::Utility => run_utility(cfg, out),
        ExperimentKind::Wdist => run_wdist(cfg, out),
        ExperimentKind::Audit => run_audit(cfg, out),
        ExperimentKind::Calibrate => run_calibrate(cfg, out),
    }
}

fn shapes(cfg: &ExperimentConfig) -> Vec<(u64, usize, u64)> {
    let mut out = Vec::new();
    for &m in &cfg.m {
        for &k in &cfg.k {
            for &a in &cfg.dataset_size {
                out.push((m, k, a));
            }
        }
    }
    out
}

fn budgets(cfg: &ExperimentConfig) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &eps in &cfg.epsilon {
        for &delta in &cfg.delta {
            out.push((eps, delta));
        }
    }
    out
}

fn run_fpr(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<RunSummary> {
    writeln!(out, "{FPR_HEADER}")?;
    let mut summary = RunSummary::default();
    for (i, (m, k, a)) in shapes(cfg).into_iter().enumerate() {
        let seed = sub_seed(cfg.seed, i as u64);
        let outcome = (|| {
            let exact = fpr_exact(m, k, a)?;
            let emp = empirical_fpr(m, k, a, cfg.trials, cfg.query_count, cfg.universe, seed)?;
            let ci = CI_SIGMAS * emp.sigma();
            writeln!(out, "{m},{k},{a},{exact},{},{ci}", emp.rate())?;
            Ok(())
        })();
        summary.record(format!("m={m},k={k},A={a}"), outcome)?;
    }
    Ok(summary)
}

/// False-positive rate over `trials` fresh filters with `queries`
/// non-member queries each.
pub fn empirical_fpr(
    m: u64,
    k: usize,
    dataset_size: u64,
    trials: u64,
    queries: u64,
    universe: u64,
    rng_seed: u64,
) -> Result<Proportion> {
    FilterParams::new(m as usize, k, universe, 0)?;
    if dataset_size.saturating_mul(2) > universe {
        return Err(Error::domain("universe too small for the dataset"));
    }
    fold_trials(
        trials,
        Proportion::default,
        |acc, t| {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(rng_seed, t));
            let params = FilterParams::new(m as usize, k, universe, rng.next_u64())?;
            let data = sample_distinct(&mut rng, dataset_size as usize, universe, &[]);
            let filter = BloomFilter::build(params, &data)?;
            let members: std::collections::HashSet<u64> = data.into_iter().collect();
            let mut issued = 0;
            while issued < queries {
                let y = rng.random_range(0..universe);
                if members.contains(&y) {
                    continue;
                }
                issued += 1;
                acc.hits += filter.contains(y) as u64;
            }
            acc.total += queries;
            Ok(())
        },
        |a, b| Proportion::new(a.hits + b.hits, a.total + b.total),
    )
}

fn run_utility(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<RunSummary> {
    writeln!(out, "{UTILITY_HEADER}")?;
    let mut summary = RunSummary::default();
    let mut index = 0u64;
    for (m, k, a) in shapes(cfg) {
        for &alpha in &cfg.alpha {
            for (eps, delta) in budgets(cfg) {
                let seed = sub_seed(cfg.seed, index);
                index += 1;
                let outcome = (|| {
                    let r = run_utility_experiment(&UtilityConfig {
                        m,
                        k,
                        dataset_size: a,
                        alpha,
                        budget: BudgetSpec::Derived {
                            epsilon: eps,
                            delta,
                        },
                        query_count: cfg.query_count,
                        trials: cfg.trials,
                        rng_seed: seed,
                        universe: cfg.universe,
                    })?;
                    let acc = r.aggregate.private_accuracy();
                    writeln!(
                        out,
                        "{m},{k},{a},{alpha},{eps},{delta},{},{},{},{},{}",
                        r.budget.n_quantile(),
                        r.budget.epsilon0(),
                        r.bound_private,
                        acc.rate(),
                        CI_SIGMAS * acc.sigma()
                    )?;
                    Ok(())
                })();
                summary.record(
                    format!("m={m},k={k},A={a},alpha={alpha},eps={eps},delta={delta}"),
                    outcome,
                )?;
            }
        }
    }
    Ok(summary)
}

fn run_wdist(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<RunSummary> {
    writeln!(out, "{WDIST_HEADER}")?;
    let mut summary = RunSummary::default();
    for (i, (m, k, a)) in shapes(cfg).into_iter().enumerate() {
        let seed = sub_seed(cfg.seed, i as u64);
        let outcome = (|| {
            let analytic = dist_w(m, k, a)?;
            let mc = mc_w_distribution(m, k, a, cfg.trials, seed)?;
            writeln!(out, "# m={m},k={k},A={a},trials={}", mc.trials)?;
            let empirical = mc.pmf();
            let mut tv = 0.0;
            for (w, (&p, &q)) in analytic.pmf().iter().zip(&empirical).enumerate() {
                tv += 0.5 * (p - q).abs();
                writeln!(out, "{w},{p},{q},{tv}")?;
            }
            Ok(())
        })();
        summary.record(format!("m={m},k={k},A={a}"), outcome)?;
    }
    Ok(summary)
}

fn run_audit(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<RunSummary> {
    writeln!(out, "{AUDIT_HEADER}")?;
    let mut summary = RunSummary::default();
    let mut index = 0u64;
    for (m, k, a) in shapes(cfg) {
        for (eps, delta) in budgets(cfg) {
            let seed = sub_seed(cfg.seed, index);
            index += 1;
            let outcome = (|| {
                let budget = derive_budget(eps, delta, m, k, a)?;
                let report = privacy_audit(&AuditConfig {
                    m,
                    k,
                    dataset_size: a,
                    epsilon0: budget.epsilon0(),
                    trials: cfg.trials,
                    rng_seed: seed,
                })?;
                writeln!(
                    out,
                    "# m={m},k={k},A={a},eps={eps},delta={delta},N={},eps0={},differing_bits={}",
                    budget.n_quantile(),
                    budget.epsilon0(),
                    report.differing_bits
                )?;
                if report.inconclusive {
                    writeln!(out, "# no neighboring pair with a differing bit found")?;
                }
                for b in &report.bits {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        b.class.as_str(),
                        b.log_ratio,
                        b.band,
                        b.pass
                    )?;
                }
                let tail = tail_audit(&budget, cfg.trials, sub_seed(seed, 1))?;
                writeln!(
                    out,
                    "# tail: exceed_rate={},limit={},pass={}",
                    tail.rate(),
                    tail.limit(),
                    tail.pass
                )?;
                Ok(())
            })();
            summary.record(
                format!("m={m},k={k},A={a},eps={eps},delta={delta}"),
                outcome,
            )?;
        }
    }
    Ok(summary)
}

fn run_calibrate(cfg: &ExperimentConfig, out: &mut dyn Write) -> Result<RunSummary> {
    writeln!(out, "{CALIBRATE_HEADER}")?;
    let mut summary = RunSummary::default();
    for (m, k, a) in shapes(cfg) {
        for &delta in &cfg.delta {
            let outcome = (|| {
                writeln!(out, "# m={m},k={k},A={a},delta={delta}")?;
                let dist = dist_w(m, k, a)?;
                write_calibration_rows(&dist, delta, out)
            })();
            summary.record(format!("m={m},k={k},A={a},delta={delta}"), outcome)?;
        }
    }
    Ok(summary)
}

/// `w,pmf,cdf` rows followed by a `# N=..,p0=..` footer.
pub fn write_calibration_rows(dist: &WDistribution, delta: f64, out: &mut dyn Write) -> Result<()> {
    let n = quantile_n(dist, delta)?;
    for (w, (p, c)) in dist.pmf().iter().zip(dist.cdf()).enumerate() {
        writeln!(out, "{w},{p},{c}")?;
    }
    writeln!(out, "# N={n},p0={}", dist.p0())?;
    Ok(())
}

/// Complete calibration CSV for one shape, as written by `dpbloom calibrate`.
pub fn write_calibration(dist: &WDistribution, delta: f64, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{CALIBRATE_HEADER}")?;
    write_calibration_rows(dist, delta, out)
}
