//! Randomized response over the bit array, and queries against the result.
//!
//! Every bit is kept with probability `e^{ε₀}/(e^{ε₀}+1)` and flipped
//! otherwise, which makes each bit `ε₀`-DP. With `ε₀ = ε/N` and `N` the
//! `1 − δ` quantile of the neighbor distance `W`, the released array is
//! `(ε, δ)`-DP for a single release. Releasing the same dataset more than
//! once is not covered by that accounting.

use rand::distr::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::bits::BitArray;
use crate::calibration::{dist_w_cached, quantile_n};
use crate::error::{Error, Result};
use crate::filter::{BloomFilter, FilterParams};
use crate::hash::HashFamily;

/// The filter shape a budget was calibrated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BudgetProvenance {
    pub m: u64,
    pub k: usize,
    pub dataset_size: u64,
}

impl BudgetProvenance {
    pub fn of(filter: &BloomFilter) -> Self {
        BudgetProvenance {
            m: filter.params().m as u64,
            k: filter.params().k,
            dataset_size: filter.inserted_count(),
        }
    }
}

/// `(ε, δ, N, ε₀)` together with the derived keep/flip probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrivacyBudget {
    epsilon: f64,
    delta: f64,
    n_quantile: u64,
    epsilon0: f64,
    keep_prob: f64,
    flip_prob: f64,
    provenance: BudgetProvenance,
}

impl PrivacyBudget {
    fn assemble(
        epsilon: f64,
        delta: f64,
        n_quantile: u64,
        epsilon0: f64,
        provenance: BudgetProvenance,
    ) -> Self {
        // logistic forms stay finite for ε₀ = ∞
        let keep_prob = 1.0 / (1.0 + (-epsilon0).exp());
        let flip_prob = 1.0 / (1.0 + epsilon0.exp());
        PrivacyBudget {
            epsilon,
            delta,
            n_quantile,
            epsilon0,
            keep_prob,
            flip_prob,
            provenance,
        }
    }

    /// Budget with a directly chosen per-bit `ε₀`, bypassing calibration.
    ///
    /// Meant for experiments: `ε₀ = 0` gives the pure-noise baseline and
    /// `ε₀ = ∞` disables flipping. The recorded `(ε, δ, N)` are `(ε₀, 0, 1)`
    /// and carry no `(ε, δ)` guarantee.
    pub fn with_epsilon0(epsilon0: f64, provenance: BudgetProvenance) -> Result<Self> {
        if epsilon0.is_nan() || epsilon0 < 0.0 {
            return Err(Error::domain(format!(
                "epsilon0 must be ≥ 0, got {epsilon0}"
            )));
        }
        Ok(Self::assemble(epsilon0, 0.0, 1, epsilon0, provenance))
    }

    /// Rebuilds a budget from recorded values, checking their consistency.
    pub fn from_recorded(
        epsilon: f64,
        delta: f64,
        epsilon0: f64,
        n_quantile: u64,
        provenance: BudgetProvenance,
    ) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) || !(delta > 0.0 && delta < 1.0) {
            return Err(Error::domain("recorded epsilon/delta out of range"));
        }
        if n_quantile == 0 || n_quantile > 2 * provenance.k as u64 {
            return Err(Error::domain(format!(
                "recorded N = {n_quantile} out of range"
            )));
        }
        let expected = epsilon / n_quantile as f64;
        if (epsilon0 - expected).abs() > 1e-12 * expected {
            return Err(Error::domain(format!(
                "recorded epsilon0 {epsilon0} disagrees with epsilon / N = {expected}"
            )));
        }
        Ok(Self::assemble(
            epsilon, delta, n_quantile, epsilon0, provenance,
        ))
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `N`, the `1 − δ` quantile of `W` (at least 1).
    pub fn n_quantile(&self) -> u64 {
        self.n_quantile
    }

    pub fn epsilon0(&self) -> f64 {
        self.epsilon0
    }

    pub fn keep_prob(&self) -> f64 {
        self.keep_prob
    }

    pub fn flip_prob(&self) -> f64 {
        self.flip_prob
    }

    pub fn provenance(&self) -> BudgetProvenance {
        self.provenance
    }
}

/// Calibrates `ε₀ = ε / N` for a filter with the given shape.
pub fn derive_budget(
    epsilon: f64,
    delta: f64,
    m: u64,
    k: usize,
    dataset_size: u64,
) -> Result<PrivacyBudget> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::domain(format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    // W is over neighboring datasets of the same size, so |A| = 0 is calibrated as |A| = 1
    let dist = dist_w_cached(m, k, dataset_size.max(1))?;
    let n = quantile_n(&dist, delta)? as u64;
    Ok(PrivacyBudget::assemble(
        epsilon,
        delta,
        n,
        epsilon / n as f64,
        BudgetProvenance { m, k, dataset_size },
    ))
}

/// The perturbed array `g̃` and everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct PrivateBloomFilter {
    params: FilterParams,
    hashes: HashFamily,
    bits: BitArray,
    budget: PrivacyBudget,
    rng_seed: u64,
    inserted_count: u64,
}

impl PrivateBloomFilter {
    /// Reassembles a private filter from stored parts.
    pub fn from_parts(
        params: FilterParams,
        bits: BitArray,
        budget: PrivacyBudget,
        rng_seed: u64,
        inserted_count: u64,
    ) -> Result<Self> {
        params.validate()?;
        if bits.len() != params.m {
            return Err(Error::domain("bit array length does not match m"));
        }
        let expected = BudgetProvenance {
            m: params.m as u64,
            k: params.k,
            dataset_size: inserted_count,
        };
        if budget.provenance() != expected {
            return Err(Error::domain("budget provenance does not match filter"));
        }
        Ok(PrivateBloomFilter {
            hashes: params.hash_family(),
            params,
            bits,
            budget,
            rng_seed,
            inserted_count,
        })
    }

    pub fn params(&self) -> &FilterParams {
        &self.params
    }

    pub fn bits(&self) -> &BitArray {
        &self.bits
    }

    pub fn budget(&self) -> &PrivacyBudget {
        &self.budget
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }

    pub fn inserted_count(&self) -> u64 {
        self.inserted_count
    }

    pub fn query(&self, y: u64) -> Result<bool> {
        self.params.check_element(y)?;
        Ok(self.contains(y))
    }

    #[inline]
    pub(crate) fn contains(&self, y: u64) -> bool {
        self.hashes.indices(y).all(|j| self.bits.get(j))
    }
}

/// Flips every bit of `filter` independently with `budget.flip_prob()`.
///
/// Draws come from a ChaCha20 stream seeded with `rng_seed`, exactly one
/// 64-bit draw per bit in index order `0..m`, so the output is a pure
/// function of `(filter, budget, rng_seed)`.
pub fn privatize(
    filter: &BloomFilter,
    budget: &PrivacyBudget,
    rng_seed: u64,
) -> Result<PrivateBloomFilter> {
    let provenance = BudgetProvenance::of(filter);
    if budget.provenance() != provenance {
        return Err(Error::domain(format!(
            "budget was derived for {:?} but filter is {:?}",
            budget.provenance(),
            provenance
        )));
    }
    let bits = flip_bits(filter.bits(), budget.flip_prob(), rng_seed)?;
    Ok(PrivateBloomFilter {
        params: *filter.params(),
        hashes: filter.hashes().clone(),
        bits,
        budget: *budget,
        rng_seed,
        inserted_count: filter.inserted_count(),
    })
}

pub(crate) fn flip_bits(source: &BitArray, flip_prob: f64, rng_seed: u64) -> Result<BitArray> {
    let coin = Bernoulli::new(flip_prob)
        .map_err(|_| Error::domain(format!("flip probability {flip_prob} not in [0, 1]")))?;
    let mut rng = ChaCha20Rng::seed_from_u64(rng_seed);
    let mut out = source.clone();
    for j in 0..source.len() {
        if coin.sample(&mut rng) {
            out.put(j, !source.get(j));
        }
    }
    Ok(out)
}

pub fn private_query(filter: &PrivateBloomFilter, y: u64) -> Result<bool> {
    filter.query(y)
}
