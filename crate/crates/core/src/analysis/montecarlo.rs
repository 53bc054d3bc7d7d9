//! Monte Carlo sampling of `W` over neighboring datasets.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::stats::{empirical_quantile, sample_distinct};
use super::SIM_UNIVERSE;
use crate::calibration::{dist_y, dist_z_given_y, ZConditional};
use crate::error::{Error, Result};
use crate::filter::{BloomFilter, FilterParams};
use crate::hash::sub_seed;
use crate::parallel::fold_trials;

pub const MIN_MC_TRIALS: u64 = 10_000;

/// Histogram of sampled `W` values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McWResult {
    /// `counts[w]` for `w = 0..=2k`.
    pub counts: Vec<u64>,
    pub trials: u64,
    /// Inserted elements reported absent by their own filter (must be 0).
    pub false_negatives: u64,
    pub membership_checks: u64,
}

impl McWResult {
    pub fn pmf(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.trials as f64)
            .collect()
    }

    /// Empirical `1 − δ` quantile of `W` (no clamp).
    pub fn quantile(&self, delta: f64) -> usize {
        empirical_quantile(&self.counts, delta)
    }
}

/// One sampled neighboring pair: the two ground-truth filters.
pub(crate) struct NeighborPair {
    pub base: BloomFilter,
    pub neighbor: BloomFilter,
    pub base_set: Vec<u64>,
    pub neighbor_set: Vec<u64>,
}

/// Samples `A` of size `dataset_size`, replaces its first element by a fresh
/// one to get `A'`, and builds both filters under a fresh hash seed.
pub(crate) fn sample_neighbors(
    m: usize,
    k: usize,
    dataset_size: usize,
    rng: &mut ChaCha8Rng,
) -> Result<NeighborPair> {
    let params = FilterParams::new(m, k, SIM_UNIVERSE, rng.next_u64())?;
    let base_set = sample_distinct(rng, dataset_size, SIM_UNIVERSE, &[]);
    let added = sample_distinct(rng, 1, SIM_UNIVERSE, &base_set)[0];
    let mut neighbor_set = base_set.clone();
    neighbor_set[0] = added;
    Ok(NeighborPair {
        base: BloomFilter::build(params, &base_set)?,
        neighbor: BloomFilter::build(params, &neighbor_set)?,
        base_set,
        neighbor_set,
    })
}

fn check_args(m: u64, k: usize, dataset_size: u64, trials: u64) -> Result<()> {
    if dataset_size == 0 {
        return Err(Error::domain("dataset_size must be at least 1"));
    }
    if trials < MIN_MC_TRIALS {
        return Err(Error::domain(format!(
            "Monte Carlo needs at least {MIN_MC_TRIALS} trials, got {trials}"
        )));
    }
    FilterParams::new(m as usize, k, SIM_UNIVERSE, 0)?;
    if dataset_size >= SIM_UNIVERSE / 2 {
        return Err(Error::domain(
            "dataset_size too large for the simulation universe",
        ));
    }
    Ok(())
}

/// Empirical distribution of `W` from `trials` independent neighboring pairs,
/// each with its own dataset and hash seed. Every inserted element is also
/// queried against its own filter to count false negatives.
pub fn mc_w_distribution(
    m: u64,
    k: usize,
    dataset_size: u64,
    trials: u64,
    rng_seed: u64,
) -> Result<McWResult> {
    check_args(m, k, dataset_size, trials)?;
    let empty = || McWResult {
        counts: vec![0; 2 * k + 1],
        trials: 0,
        false_negatives: 0,
        membership_checks: 0,
    };
    fold_trials(
        trials,
        empty,
        |acc, t| {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(rng_seed, t));
            let pair = sample_neighbors(m as usize, k, dataset_size as usize, &mut rng)?;
            let w = pair.base.bits().hamming(pair.neighbor.bits());
            acc.counts[w] += 1;
            acc.trials += 1;
            for (filter, set) in [
                (&pair.base, &pair.base_set),
                (&pair.neighbor, &pair.neighbor_set),
            ] {
                acc.false_negatives += set.iter().filter(|&&x| !filter.contains(x)).count() as u64;
                acc.membership_checks += set.len() as u64;
            }
            Ok(())
        },
        |mut a, b| {
            for (x, y) in a.counts.iter_mut().zip(&b.counts) {
                *x += y;
            }
            a.trials += b.trials;
            a.false_negatives += b.false_negatives;
            a.membership_checks += b.membership_checks;
            a
        },
    )
}

/// Distribution of `W` under ideal uniform hashing without the independence
/// step: given the `n₂` symmetric-difference positions, the number of them
/// left empty by `(|A|−1)k` throws follows the exact occupancy law rather
/// than `Binomial(n₂, p0)`. Diagnostic only; calibration uses
/// [`dist_w`](crate::calibration::dist_w).
pub fn occupancy_w_distribution(m: u64, k: usize, dataset_size: u64) -> Result<Vec<f64>> {
    if dataset_size == 0 {
        return Err(Error::domain("dataset_size must be at least 1"));
    }
    let y = dist_y(m, k)?;
    let z = dist_z_given_y(m, k)?;
    let throws = (dataset_size - 1).saturating_mul(k as u64);
    let rows: Vec<Vec<f64>> = (0..=2 * k)
        .map(|n2| unhit_distribution(m, n2, throws))
        .collect();

    let mut pmf = vec![0.0; 2 * k + 1];
    for a in 1..=k {
        for b in 1..=k {
            for zz in a.max(b)..=(a + b) {
                let weight = z.get(a, b, zz) * y.pmf(a) * y.pmf(b);
                if weight == 0.0 {
                    continue;
                }
                let n2 = ZConditional::exclusive(a, b, zz);
                for (w, p) in rows[n2].iter().enumerate() {
                    pmf[w] += weight * p;
                }
            }
        }
    }
    Ok(pmf)
}

/// Law of the number of `n2` fixed cells left empty after `throws` uniform
/// throws into `m` cells.
fn unhit_distribution(m: u64, n2: usize, throws: u64) -> Vec<f64> {
    // hit[h]: probability that h of the n2 cells have been hit so far
    let mut hit = vec![0.0; n2 + 1];
    hit[0] = 1.0;
    let m = m as f64;
    for _ in 0..throws {
        for h in (0..=n2).rev() {
            let stay = hit[h] * (m - (n2 - h) as f64) / m;
            let arrive = if h > 0 {
                hit[h - 1] * (n2 - h + 1) as f64 / m
            } else {
                0.0
            };
            hit[h] = stay + arrive;
        }
    }
    // W = number of empty cells = n2 − hit
    hit.reverse();
    hit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::tv_distance;

    #[test]
    fn single_element_single_hash() {
        let m = 16u64;
        let r = mc_w_distribution(m, 1, 1, 40_000, 3).unwrap();
        assert_eq!(r.counts.len(), 3);
        assert_eq!(r.counts[1], 0);
        let p = 1.0 / m as f64;
        let sigma = (p * (1.0 - p) / r.trials as f64).sqrt();
        assert!((r.pmf()[0] - p).abs() <= 3.0 * sigma);
        let total: f64 = r.pmf().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(r.false_negatives, 0);
    }

    #[test]
    fn refuses_too_few_trials() {
        assert!(mc_w_distribution(32, 3, 5, 100, 0).is_err());
        assert!(mc_w_distribution(32, 3, 0, 20_000, 0).is_err());
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = mc_w_distribution(32, 3, 5, 10_000, 11).unwrap();
        let b = mc_w_distribution(32, 3, 5, 10_000, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn occupancy_law_small_case() {
        // one throw into 4 cells, two watched cells: both empty w.p. 1/2
        let d = unhit_distribution(4, 2, 1);
        assert!((d[2] - 0.5).abs() < 1e-15);
        assert!((d[1] - 0.5).abs() < 1e-15);
        assert_eq!(d[0], 0.0);
    }

    #[test]
    fn occupancy_matches_dist_w_for_single_element() {
        // with nothing else inserted both models put all mass at W = n2
        let a = occupancy_w_distribution(64, 4, 1).unwrap();
        let b = crate::calibration::dist_w(64, 4, 1).unwrap();
        assert!(tv_distance(&a, b.pmf()) < 1e-12);
    }

    #[test]
    fn simulation_follows_occupancy_law() {
        let r = mc_w_distribution(32, 3, 5, 200_000, 21).unwrap();
        let exact = occupancy_w_distribution(32, 3, 5).unwrap();
        let tv = tv_distance(&r.pmf(), &exact);
        assert!(tv <= 0.005, "tv {tv}");
    }
}
