//! Exact distribution of `W`, the Hamming distance between the filters of two
//! neighboring datasets, and its `1 − δ` quantile `N`.
//!
//! Three layers, each feeding the next:
//!
//! 1. `|Y|`, the number of distinct positions among one element's `k` hash
//!    values ([`dist_y`]).
//! 2. `|Z|` given `|Y_x| = a` and `|Y_x'| = b`, the size of the union of the
//!    removed and the added element's position sets ([`dist_z_given_y`]).
//! 3. `W`: only the `n₂ = 2|Z| − a − b` positions in the symmetric difference
//!    can differ, and each does so when the remaining `|A| − 1` elements left
//!    it at zero, which is modelled as independent with probability
//!    `p0 = (1 − 1/m)^{(|A|−1)k}` ([`dist_w`]).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::filter::MAX_K;

/// Tolerance for a conditional `|Z|` slice to count as normalized.
pub const SLICE_TOLERANCE: f64 = 1e-6;
/// Tolerance for the `W` pmf to count as normalized.
pub const PMF_TOLERANCE: f64 = 1e-6;
/// Slack when comparing a CDF against `1 − δ`, absorbing summation rounding.
const QUANTILE_SLACK: f64 = 1e-12;

fn check_dims(m: u64, k: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::domain(format!("m must be at least 2, got {m}")));
    }
    if k == 0 || k > MAX_K {
        return Err(Error::domain(format!("k must be in 1..={MAX_K}, got {k}")));
    }
    Ok(())
}

/// Distribution of `|Y|` over `{1, …, k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct YDistribution {
    m: u64,
    k: usize,
    // index y, entry 0 unused
    pmf: Vec<f64>,
}

impl YDistribution {
    pub(crate) fn from_pmf(m: u64, k: usize, pmf: Vec<f64>) -> Self {
        debug_assert_eq!(pmf.len(), k + 1);
        YDistribution { m, k, pmf }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `Pr[|Y| = y]`, zero outside `1..=k`.
    pub fn pmf(&self, y: usize) -> f64 {
        if y == 0 {
            0.0
        } else {
            self.pmf.get(y).copied().unwrap_or(0.0)
        }
    }

    /// Probabilities for `y = 1..=k`.
    pub fn probabilities(&self) -> &[f64] {
        &self.pmf[1..]
    }
}

fn binomial_big(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for j in 0..r {
        acc *= BigUint::from(n - j);
        acc /= BigUint::from(j + 1);
    }
    acc
}

/// `num / den` as `f64`, keeping full relative precision for tiny ratios.
fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift_n = num.bits().saturating_sub(64);
    let shift_d = den.bits().saturating_sub(64);
    let n = (num >> shift_n).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift_d).to_f64().unwrap_or(f64::NAN);
    let exp = shift_n as i64 - shift_d as i64;
    (n / d) * 2f64.powi(exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Distribution of the number of distinct positions among `k` uniform hash
/// values in `[0, m)`.
///
/// Uses the inclusion recurrence
/// `Pr[|Y|=y] = C(m,y)·y^k/m^k − Σ_{i<y} C(m−i, y−i)·Pr[|Y|=i]`,
/// evaluated on the integer counts `m^k · Pr[|Y|=y]` so the subtraction is
/// exact at any `k`.
pub fn dist_y(m: u64, k: usize) -> Result<YDistribution> {
    check_dims(m, k)?;
    let total = BigUint::from(m).pow(k as u32);
    let mut counts: Vec<BigInt> = vec![BigInt::zero(); k + 1];
    for y in 1..=k {
        let yk = BigUint::from(y as u64).pow(k as u32);
        let mut c = BigInt::from(binomial_big(m, y as u64) * yk);
        for (i, prev) in counts.iter().enumerate().take(y).skip(1) {
            c -= BigInt::from(binomial_big(m - (i as u64).min(m), (y - i) as u64)) * prev;
        }
        if c.sign() == Sign::Minus {
            return Err(Error::Numerical(format!(
                "negative count for Pr[|Y|={y}] at m={m}, k={k}"
            )));
        }
        counts[y] = c;
    }
    let pmf = counts
        .iter()
        .map(|c| ratio_to_f64(c.magnitude(), &total))
        .collect();
    Ok(YDistribution { m, k, pmf })
}

/// Conditional distribution of `|Z|` given `(|Y_x|, |Y_x'|) = (a, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZConditional {
    m: u64,
    k: usize,
    table: Vec<f64>,
}

impl ZConditional {
    pub(crate) fn zeros(m: u64, k: usize) -> Self {
        ZConditional {
            m,
            k,
            table: vec![0.0; (k + 1) * (k + 1) * (2 * k + 1)],
        }
    }

    fn slot(&self, a: usize, b: usize, z: usize) -> usize {
        (a * (self.k + 1) + b) * (2 * self.k + 1) + z
    }

    pub(crate) fn set(&mut self, a: usize, b: usize, z: usize, p: f64) {
        let s = self.slot(a, b, z);
        self.table[s] = p;
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `Pr[|Z| = z | a, b]`; zero for out-of-range arguments.
    pub fn get(&self, a: usize, b: usize, z: usize) -> f64 {
        if a == 0 || b == 0 || a > self.k || b > self.k || z > 2 * self.k {
            return 0.0;
        }
        self.table[self.slot(a, b, z)]
    }

    /// Whether `(a, b)` can occur at all, i.e. `a, b ≤ min(k, m)`. Slices for
    /// infeasible pairs are identically zero.
    pub fn is_feasible(&self, a: usize, b: usize) -> bool {
        let cap = (self.k as u64).min(self.m) as usize;
        (1..=cap).contains(&a) && (1..=cap).contains(&b)
    }

    /// Overlap count `n₁ = a + b − z`.
    pub fn overlap(a: usize, b: usize, z: usize) -> usize {
        a + b - z
    }

    /// Symmetric-difference count `n₂ = 2z − a − b`.
    pub fn exclusive(a: usize, b: usize, z: usize) -> usize {
        2 * z - a - b
    }
}

/// `ln(n!/(n−r)!)`, or `None` when `r > n` (the falling factorial is zero).
fn ln_falling(n: u64, r: u64) -> Option<f64> {
    if r > n {
        return None;
    }
    Some((0..r).map(|i| ((n - i) as f64).ln()).sum())
}

fn ln_choose_small(n: usize, r: usize) -> f64 {
    debug_assert!(r <= n);
    let r = r.min(n - r);
    (0..r)
        .map(|j| ((n - j) as f64).ln() - ((j + 1) as f64).ln())
        .sum()
}

/// `Pr[|Z| = z | a, b]` in log space. With `a ≥ b` (swap otherwise) and
/// `t = z − a`, this is `C(b,t)·A_{m−a}^t·A_a^{b−t} / A_m^b`.
fn z_conditional_value(m: u64, a: usize, b: usize, z: usize) -> f64 {
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    if z < big || z > big + small || z as u64 > m {
        return 0.0;
    }
    let t = z - big;
    let terms = (
        ln_falling(m - big as u64, t as u64),
        ln_falling(big as u64, (small - t) as u64),
        ln_falling(m, small as u64),
    );
    match terms {
        (Some(fresh), Some(shared), Some(denom)) => {
            (ln_choose_small(small, t) + fresh + shared - denom).exp()
        }
        _ => 0.0,
    }
}

/// Table of `Pr[|Z| = z | |Y_x| = a, |Y_x'| = b]` for all `a, b ≤ k`.
///
/// Each feasible slice is checked to sum to one; a slice that does not is
/// reported as [`Error::Calibration`] rather than renormalized.
pub fn dist_z_given_y(m: u64, k: usize) -> Result<ZConditional> {
    check_dims(m, k)?;
    let mut table = ZConditional::zeros(m, k);
    for a in 1..=k {
        for b in 1..=k {
            if !table.is_feasible(a, b) {
                continue;
            }
            let hi = (a + b).min(m.min(usize::MAX as u64) as usize);
            let mut sum = 0.0;
            for z in a.max(b)..=hi {
                let p = z_conditional_value(m, a, b, z);
                table.set(a, b, z, p);
                sum += p;
            }
            if (sum - 1.0).abs() > SLICE_TOLERANCE {
                return Err(Error::Calibration { m, k, a, b, sum });
            }
        }
    }
    Ok(table)
}

/// Distribution of `W` over `{0, …, 2k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WDistribution {
    m: u64,
    k: usize,
    dataset_size: u64,
    p0: f64,
    pmf: Vec<f64>,
    cdf: Vec<f64>,
}

impl WDistribution {
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dataset_size(&self) -> u64 {
        self.dataset_size
    }

    /// Probability that a fixed bit is still zero after `|A| − 1` insertions.
    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn cdf(&self) -> &[f64] {
        &self.cdf
    }

    pub fn mean(&self) -> f64 {
        self.pmf.iter().enumerate().map(|(w, p)| w as f64 * p).sum()
    }

    /// Smallest `w` with `cdf[w] ≥ 1 − δ`, without the `N ≥ 1` clamp.
    pub fn raw_quantile(&self, delta: f64) -> Result<usize> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::domain(format!(
                "delta must lie in (0, 1), got {delta}"
            )));
        }
        let target = 1.0 - delta;
        Ok(self
            .cdf
            .iter()
            .position(|&c| c >= target - QUANTILE_SLACK)
            .unwrap_or(2 * self.k))
    }
}

/// `(1 − 1/m)^{(|A|−1)k}`.
pub fn p0(m: u64, k: usize, dataset_size: u64) -> f64 {
    let throws = dataset_size.saturating_sub(1) as f64 * k as f64;
    (throws * (-1.0 / m as f64).ln_1p()).exp()
}

/// `Binomial(n, p)` pmf rows for `n = 0..=max_n`.
fn binomial_rows(max_n: usize, p: f64) -> Vec<Vec<f64>> {
    let q = 1.0 - p;
    (0..=max_n)
        .map(|n| {
            (0..=n)
                .map(|w| ln_choose_small(n, w).exp() * p.powi(w as i32) * q.powi((n - w) as i32))
                .collect()
        })
        .collect()
}

/// Distribution of `W` for a filter with `m` bits and `k` hashes holding
/// `dataset_size` elements, under single-element substitution.
pub fn dist_w(m: u64, k: usize, dataset_size: u64) -> Result<WDistribution> {
    check_dims(m, k)?;
    if dataset_size == 0 {
        return Err(Error::domain("dataset_size must be at least 1"));
    }
    let y = dist_y(m, k)?;
    let z = dist_z_given_y(m, k)?;
    let p0 = p0(m, k, dataset_size);
    let binom = binomial_rows(2 * k, p0);
    let z_max = (2 * k as u64).min(m) as usize;

    let mut pmf = vec![0.0; 2 * k + 1];
    for a in 1..=k {
        let pa = y.pmf(a);
        if pa == 0.0 {
            continue;
        }
        for b in 1..=k {
            let pb = y.pmf(b);
            if pb == 0.0 {
                continue;
            }
            for zz in a.max(b)..=(a + b).min(z_max) {
                let weight = z.get(a, b, zz) * pa * pb;
                if weight == 0.0 {
                    continue;
                }
                let n2 = ZConditional::exclusive(a, b, zz);
                for (w, pw) in binom[n2].iter().enumerate() {
                    pmf[w] += weight * pw;
                }
            }
        }
    }

    let total: f64 = pmf.iter().sum();
    if total.is_nan() || (total - 1.0).abs() > PMF_TOLERANCE {
        return Err(Error::Numerical(format!(
            "W pmf for (m={m}, k={k}, |A|={dataset_size}) sums to {total}"
        )));
    }
    let mut acc = 0.0;
    let cdf = pmf
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect();
    Ok(WDistribution {
        m,
        k,
        dataset_size,
        p0,
        pmf,
        cdf,
    })
}

type WKey = (u64, usize, u64);

/// Memoized [`dist_w`]; safe to call from many threads.
pub fn dist_w_cached(m: u64, k: usize, dataset_size: u64) -> Result<Arc<WDistribution>> {
    static CACHE: OnceLock<Mutex<HashMap<WKey, Arc<WDistribution>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (m, k, dataset_size);
    if let Some(hit) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(Arc::clone(hit));
    }
    let fresh = Arc::new(dist_w(m, k, dataset_size)?);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    Ok(Arc::clone(guard.entry(key).or_insert(fresh)))
}

/// `N = F_W⁻¹(1 − δ)`, clamped to at least 1 so that `ε₀ = ε / N` is defined.
pub fn quantile_n(dist: &WDistribution, delta: f64) -> Result<usize> {
    Ok(dist.raw_quantile(delta)?.max(1))
}
