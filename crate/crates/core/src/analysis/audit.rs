//! Empirical privacy audit.
//!
//! For a fixed neighboring pair `(A, A')` the released bits are sampled many
//! times. Bits where `g` and `g'` differ must show an output log-ratio within
//! `±ε₀`; bits where they agree must show none. Separately, over random
//! neighboring pairs the total loss `|S|·ε₀` may exceed `ε` with probability
//! at most `δ`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::montecarlo::{sample_neighbors, NeighborPair};
use crate::error::{Error, Result};
use crate::hash::sub_seed;
use crate::mechanism::{privatize, BudgetProvenance, PrivacyBudget};
use crate::parallel::fold_trials;

/// σ multiplier for per-bit log-ratio checks.
pub const AUDIT_SIGMAS: f64 = 4.0;
/// σ multiplier for the `Pr[|S|·ε₀ > ε] ≤ δ` check.
pub const TAIL_SIGMAS: f64 = 3.0;
/// Attempts at finding a neighboring pair with at least one differing bit.
const PAIR_ATTEMPTS: u64 = 1000;
/// Agreeing bits sampled per audit.
const AGREEING_BITS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditConfig {
    pub m: u64,
    pub k: usize,
    pub dataset_size: u64,
    pub epsilon0: f64,
    pub trials: u64,
    pub rng_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitClass {
    Differing,
    Agreeing,
}

impl BitClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            BitClass::Differing => "differing",
            BitClass::Agreeing => "agreeing",
        }
    }
}

/// Audit of one output value `v` at one bit position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BitAudit {
    pub position: usize,
    pub class: BitClass,
    pub value: bool,
    /// Empirical `Pr[g̃[j] = v]` under `A`.
    pub freq: f64,
    /// Empirical `Pr[g̃'[j] = v]` under `A'`.
    pub freq_neighbor: f64,
    pub log_ratio: f64,
    /// Delta-method standard error of `log_ratio`.
    pub sigma: f64,
    /// Largest admissible `|log_ratio|`.
    pub band: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub epsilon0: f64,
    pub trials: u64,
    /// `|S|` for the audited pair.
    pub differing_bits: usize,
    pub bits: Vec<BitAudit>,
    /// No pair with a differing bit was found; nothing to audit.
    pub inconclusive: bool,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        !self.inconclusive && self.bits.iter().all(|b| b.pass)
    }

    pub fn max_differing_log_ratio(&self) -> f64 {
        self.bits
            .iter()
            .filter(|b| b.class == BitClass::Differing)
            .map(|b| b.log_ratio.abs())
            .fold(0.0, f64::max)
    }
}

fn find_pair(cfg: &AuditConfig) -> Result<Option<NeighborPair>> {
    for attempt in 0..PAIR_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.rng_seed, attempt));
        let pair = sample_neighbors(cfg.m as usize, cfg.k, cfg.dataset_size as usize, &mut rng)?;
        if pair.base.bits().hamming(pair.neighbor.bits()) > 0 {
            return Ok(Some(pair));
        }
    }
    Ok(None)
}

/// Per-bit audit of randomized response on one neighboring pair.
pub fn privacy_audit(cfg: &AuditConfig) -> Result<AuditReport> {
    if !(cfg.epsilon0 > 0.0 && cfg.epsilon0.is_finite()) {
        return Err(Error::domain("audit needs a positive, finite epsilon0"));
    }
    if cfg.dataset_size == 0 || cfg.trials == 0 {
        return Err(Error::domain("audit needs dataset_size ≥ 1 and trials ≥ 1"));
    }
    let Some(pair) = find_pair(cfg)? else {
        return Ok(AuditReport {
            epsilon0: cfg.epsilon0,
            trials: cfg.trials,
            differing_bits: 0,
            bits: Vec::new(),
            inconclusive: true,
        });
    };
    let (g, g2) = (&pair.base, &pair.neighbor);
    let differing = g.bits().differing_positions(g2.bits());
    // spread the agreeing sample over set and unset bits
    let (ones, zeros): (Vec<usize>, Vec<usize>) = (0..g.params().m)
        .filter(|j| !differing.contains(j))
        .partition(|&j| g.bits().get(j));
    let mut agreeing: Vec<usize> = ones.into_iter().take(AGREEING_BITS / 2).collect();
    let room = AGREEING_BITS - agreeing.len();
    agreeing.extend(zeros.into_iter().take(room));
    let positions: Vec<(usize, BitClass)> = differing
        .iter()
        .map(|&j| (j, BitClass::Differing))
        .chain(agreeing.iter().map(|&j| (j, BitClass::Agreeing)))
        .collect();

    let budget = PrivacyBudget::with_epsilon0(cfg.epsilon0, BudgetProvenance::of(g))?;
    let seed_base = sub_seed(cfg.rng_seed, u64::MAX);
    let seed_neighbor = sub_seed(cfg.rng_seed, u64::MAX - 1);
    let n = positions.len();
    // ones[i] under A, ones[n + i] under A'
    let ones = fold_trials(
        cfg.trials,
        || vec![0u64; 2 * n],
        |acc, t| {
            let a = privatize(g, &budget, sub_seed(seed_base, t))?;
            let b = privatize(g2, &budget, sub_seed(seed_neighbor, t))?;
            for (i, &(j, _)) in positions.iter().enumerate() {
                acc[i] += a.bits().get(j) as u64;
                acc[n + i] += b.bits().get(j) as u64;
            }
            Ok(())
        },
        |mut x, y| {
            for (p, q) in x.iter_mut().zip(y) {
                *p += q;
            }
            x
        },
    )?;

    let trials = cfg.trials as f64;
    let mut bits = Vec::with_capacity(2 * n);
    for (i, &(position, class)) in positions.iter().enumerate() {
        for value in [false, true] {
            let count = |c: u64| if value { c } else { cfg.trials - c };
            let freq = count(ones[i]) as f64 / trials;
            let freq_neighbor = count(ones[n + i]) as f64 / trials;
            let log_ratio = (freq / freq_neighbor).ln();
            let sigma = ((1.0 - freq) / (trials * freq)
                + (1.0 - freq_neighbor) / (trials * freq_neighbor))
                .sqrt();
            let band = match class {
                BitClass::Differing => cfg.epsilon0 + AUDIT_SIGMAS * sigma,
                BitClass::Agreeing => AUDIT_SIGMAS * sigma,
            };
            bits.push(BitAudit {
                position,
                class,
                value,
                freq,
                freq_neighbor,
                log_ratio,
                sigma,
                band,
                pass: log_ratio.is_finite() && log_ratio.abs() <= band,
            });
        }
    }
    Ok(AuditReport {
        epsilon0: cfg.epsilon0,
        trials: cfg.trials,
        differing_bits: differing.len(),
        bits,
        inconclusive: false,
    })
}

/// Frequency with which the total privacy loss `|S|·ε₀` exceeds `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailAudit {
    pub exceed: u64,
    pub trials: u64,
    pub delta: f64,
    pub sigma: f64,
    pub pass: bool,
}

impl TailAudit {
    pub fn rate(&self) -> f64 {
        self.exceed as f64 / self.trials as f64
    }

    pub fn limit(&self) -> f64 {
        self.delta + TAIL_SIGMAS * self.sigma
    }
}

/// Samples `trials` random neighboring pairs of the budget's filter shape
/// and counts how often `|S|·ε₀ > ε`. With `ε₀ = ε/N` that is `|S| > N`,
/// which is evaluated on integers.
pub fn tail_audit(budget: &PrivacyBudget, trials: u64, rng_seed: u64) -> Result<TailAudit> {
    let p = budget.provenance();
    if p.dataset_size == 0 || trials == 0 {
        return Err(Error::domain(
            "tail audit needs dataset_size ≥ 1 and trials ≥ 1",
        ));
    }
    if budget.delta() <= 0.0 {
        return Err(Error::domain(
            "tail audit needs a calibrated budget (delta > 0)",
        ));
    }
    let n = budget.n_quantile() as usize;
    let exceed = fold_trials(
        trials,
        || 0u64,
        |acc, t| {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(rng_seed, t));
            let pair = sample_neighbors(p.m as usize, p.k, p.dataset_size as usize, &mut rng)?;
            *acc += (pair.base.bits().hamming(pair.neighbor.bits()) > n) as u64;
            Ok(())
        },
        |a, b| a + b,
    )?;
    let delta = budget.delta();
    let sigma = (delta * (1.0 - delta) / trials as f64).sqrt();
    let rate = exceed as f64 / trials as f64;
    Ok(TailAudit {
        exceed,
        trials,
        delta,
        sigma,
        pass: rate <= delta + TAIL_SIGMAS * sigma,
    })
}
