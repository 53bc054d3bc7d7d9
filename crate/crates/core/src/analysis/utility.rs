//! Query-accuracy simulation for the plain and the private filter.

use std::collections::HashSet;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bounds::{
    accuracy_bound_private, accuracy_bound_standard, accuracy_bound_vs_standard, fpr_exact,
    UtilityParams,
};
use super::stats::{sample_distinct, Proportion};
use crate::error::{Error, Result};
use crate::filter::{BloomFilter, FilterParams};
use crate::hash::sub_seed;
use crate::mechanism::{derive_budget, privatize, BudgetProvenance, PrivacyBudget};
use crate::parallel::fold_trials;

/// How the per-bit budget of an experiment is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BudgetSpec {
    /// Calibrated from `(ε, δ)`.
    Derived { epsilon: f64, delta: f64 },
    /// A fixed `ε₀` (including `0` for the pure-noise baseline).
    Fixed { epsilon0: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtilityConfig {
    pub m: u64,
    pub k: usize,
    pub dataset_size: u64,
    /// Share of non-member queries.
    pub alpha: f64,
    pub budget: BudgetSpec,
    /// Queries per trial.
    pub query_count: u64,
    /// Independent (hash seed, dataset, flip pass) draws.
    pub trials: u64,
    pub rng_seed: u64,
    /// Universe size `n`.
    pub universe: u64,
}

/// Ground truth `z`, plain-filter answer `ẑ`, private-filter answer `z̃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryOutcome {
    pub z: bool,
    pub z_hat: bool,
    pub z_tilde: bool,
}

/// Counts of all eight `(z, ẑ, z̃)` combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OutcomeCounts {
    counts: [u64; 8],
}

impl OutcomeCounts {
    fn slot(o: QueryOutcome) -> usize {
        (o.z as usize) << 2 | (o.z_hat as usize) << 1 | o.z_tilde as usize
    }

    pub fn record(&mut self, o: QueryOutcome) {
        self.counts[Self::slot(o)] += 1;
    }

    pub fn merge(mut self, other: &OutcomeCounts) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    fn sum_where(&self, pred: impl Fn(QueryOutcome) -> bool) -> u64 {
        (0..8)
            .filter(|&s| {
                pred(QueryOutcome {
                    z: s & 4 != 0,
                    z_hat: s & 2 != 0,
                    z_tilde: s & 1 != 0,
                })
            })
            .map(|s| self.counts[s])
            .sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Pr[z̃ = z]`.
    pub fn private_accuracy(&self) -> Proportion {
        Proportion::new(self.sum_where(|o| o.z_tilde == o.z), self.total())
    }

    /// `Pr[ẑ = z]`.
    pub fn standard_accuracy(&self) -> Proportion {
        Proportion::new(self.sum_where(|o| o.z_hat == o.z), self.total())
    }

    /// `Pr[z̃ = ẑ]`.
    pub fn agreement(&self) -> Proportion {
        Proportion::new(self.sum_where(|o| o.z_tilde == o.z_hat), self.total())
    }

    /// `Pr[z̃ = 1]`.
    pub fn positive_rate(&self) -> Proportion {
        Proportion::new(self.sum_where(|o| o.z_tilde), self.total())
    }

    /// `Pr[z̃ = 1 | z = 0]`.
    pub fn private_fpr(&self) -> Proportion {
        Proportion::new(
            self.sum_where(|o| !o.z && o.z_tilde),
            self.sum_where(|o| !o.z),
        )
    }

    /// `Pr[z̃ = 0 | z = 1]`.
    pub fn private_fnr(&self) -> Proportion {
        Proportion::new(
            self.sum_where(|o| o.z && !o.z_tilde),
            self.sum_where(|o| o.z),
        )
    }

    /// `Pr[ẑ = 1 | z = 0]`.
    pub fn standard_fpr(&self) -> Proportion {
        Proportion::new(
            self.sum_where(|o| !o.z && o.z_hat),
            self.sum_where(|o| !o.z),
        )
    }

    /// Members the plain filter answered `false` for; always 0 for a
    /// correct filter.
    pub fn standard_false_negatives(&self) -> u64 {
        self.sum_where(|o| o.z && !o.z_hat)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UtilityReport {
    pub config: UtilityConfig,
    pub budget: PrivacyBudget,
    /// Exact plain-filter false-positive probability, used as `δ_err`.
    pub delta_err: f64,
    pub per_trial: Vec<OutcomeCounts>,
    pub aggregate: OutcomeCounts,
    /// `α(1 − t − t^k)·δ_err + α·t`.
    pub bound_private: f64,
    /// `t·α·(1 − δ_err)`.
    pub bound_vs_standard: f64,
    /// `1 − (1 − e^{−2|A|k/m})^k · α`.
    pub bound_standard: f64,
}

fn check(cfg: &UtilityConfig) -> Result<()> {
    FilterParams::new(cfg.m as usize, cfg.k, cfg.universe, 0)?;
    if !(0.0..=1.0).contains(&cfg.alpha) {
        return Err(Error::domain(format!(
            "alpha must lie in [0, 1], got {}",
            cfg.alpha
        )));
    }
    if cfg.dataset_size == 0 && cfg.alpha < 1.0 {
        return Err(Error::domain("member queries need a non-empty dataset"));
    }
    if cfg.dataset_size.saturating_mul(2) > cfg.universe {
        return Err(Error::domain("universe too small for the dataset"));
    }
    if cfg.trials == 0 || cfg.query_count == 0 {
        return Err(Error::domain("trials and query_count must be positive"));
    }
    Ok(())
}

/// Builds a filter per trial, privatizes it and issues a query stream with
/// a share `alpha` of non-members (uniform over the universe minus `A`) and
/// `1 − alpha` members (uniform over `A`).
pub fn run_utility_experiment(cfg: &UtilityConfig) -> Result<UtilityReport> {
    check(cfg)?;
    let provenance = BudgetProvenance {
        m: cfg.m,
        k: cfg.k,
        dataset_size: cfg.dataset_size,
    };
    let budget = match cfg.budget {
        BudgetSpec::Derived { epsilon, delta } => {
            derive_budget(epsilon, delta, cfg.m, cfg.k, cfg.dataset_size)?
        }
        BudgetSpec::Fixed { epsilon0 } => PrivacyBudget::with_epsilon0(epsilon0, provenance)?,
    };

    let per_trial = fold_trials(
        cfg.trials,
        Vec::new,
        |acc: &mut Vec<OutcomeCounts>, t| {
            acc.push(run_trial(cfg, &budget, sub_seed(cfg.rng_seed, t))?);
            Ok(())
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;
    let aggregate = per_trial
        .iter()
        .fold(OutcomeCounts::default(), |acc, c| acc.merge(c));

    let delta_err = fpr_exact(cfg.m, cfg.k, cfg.dataset_size)?;
    // t = 1 when no bit is ever flipped; the bounds are evaluated at that limit
    let t = budget.keep_prob();
    let utility = UtilityParams {
        alpha: cfg.alpha,
        t,
        k: cfg.k,
        delta_err,
    };
    Ok(UtilityReport {
        config: *cfg,
        budget,
        delta_err,
        per_trial,
        aggregate,
        bound_private: accuracy_bound_private(&utility),
        bound_vs_standard: accuracy_bound_vs_standard(&utility),
        bound_standard: accuracy_bound_standard(cfg.m, cfg.k, cfg.dataset_size, cfg.alpha)?,
    })
}

fn run_trial(cfg: &UtilityConfig, budget: &PrivacyBudget, seed: u64) -> Result<OutcomeCounts> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = FilterParams::new(cfg.m as usize, cfg.k, cfg.universe, rng.next_u64())?;
    let dataset = sample_distinct(&mut rng, cfg.dataset_size as usize, cfg.universe, &[]);
    let members: HashSet<u64> = dataset.iter().copied().collect();
    let filter = BloomFilter::build(params, &dataset)?;
    let private = privatize(&filter, budget, rng.next_u64())?;

    let mut counts = OutcomeCounts::default();
    for _ in 0..cfg.query_count {
        let non_member = rng.random_bool(cfg.alpha);
        let y = if non_member {
            loop {
                let y = rng.random_range(0..cfg.universe);
                if !members.contains(&y) {
                    break y;
                }
            }
        } else {
            dataset[rng.random_range(0..dataset.len())]
        };
        counts.record(QueryOutcome {
            z: !non_member,
            z_hat: filter.contains(y),
            z_tilde: private.contains(y),
        });
    }
    Ok(counts)
}
