use std::collections::HashSet;

use rand::Rng;

/// A binomial proportion with its normal-approximation standard error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Proportion {
    pub hits: u64,
    pub total: u64,
}

impl Proportion {
    pub fn new(hits: u64, total: u64) -> Self {
        Proportion { hits, total }
    }

    pub fn rate(&self) -> f64 {
        if self.total == 0 {
            f64::NAN
        } else {
            self.hits as f64 / self.total as f64
        }
    }

    /// Standard error at the observed rate.
    pub fn sigma(&self) -> f64 {
        let p = self.rate();
        (p * (1.0 - p) / self.total as f64).sqrt()
    }

    /// Standard error if the true rate were `p`.
    pub fn sigma_at(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.total as f64).sqrt()
    }
}

/// Half the L1 distance between two pmfs; missing entries count as zero.
pub fn tv_distance(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().max(b.len());
    0.5 * (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}

/// Smallest `w` whose empirical CDF reaches `1 − δ`, computed on integer
/// counts so no rounding enters the comparison.
pub fn empirical_quantile(counts: &[u64], delta: f64) -> usize {
    let total: u64 = counts.iter().sum();
    let mut acc = 0u64;
    for (w, c) in counts.iter().enumerate() {
        acc += c;
        if acc as f64 >= (1.0 - delta) * total as f64 {
            return w;
        }
    }
    counts.len().saturating_sub(1)
}

/// `size` distinct elements of `[0, n)`, none of them in `exclude`.
pub(crate) fn sample_distinct<R: Rng>(
    rng: &mut R,
    size: usize,
    n: u64,
    exclude: &[u64],
) -> Vec<u64> {
    let mut seen: HashSet<u64> = exclude.iter().copied().collect();
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let x = rng.random_range(0..n);
        if seen.insert(x) {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tv_basics() {
        assert_eq!(tv_distance(&[0.5, 0.5], &[0.5, 0.5]), 0.0);
        assert_eq!(tv_distance(&[1.0], &[0.0, 1.0]), 1.0);
        assert!((tv_distance(&[0.2, 0.8], &[0.3, 0.7]) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn quantile_on_counts() {
        let counts = [10u64, 40, 45, 5];
        assert_eq!(empirical_quantile(&counts, 0.5), 1);
        assert_eq!(empirical_quantile(&counts, 0.05), 2);
        assert_eq!(empirical_quantile(&counts, 0.01), 3);
        assert_eq!(empirical_quantile(&counts, 0.95), 0);
    }

    #[test]
    fn proportion_sigma() {
        let p = Proportion::new(25, 100);
        assert_eq!(p.rate(), 0.25);
        assert!((p.sigma() - (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
    }
}
