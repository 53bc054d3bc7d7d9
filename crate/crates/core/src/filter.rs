//! The standard Bloom filter: an `m`-bit array, `k` hash functions, build
//! over a dataset and membership queries.

use std::collections::HashSet;
use std::hash::{BuildHasherDefault, Hasher};

use crate::bits::BitArray;
use crate::error::{Error, Result};
use crate::hash::{mix64, HashFamily};

pub const MAX_K: usize = 64;

/// Dimensions and hash seed shared by plain and private filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FilterParams {
    /// Bit-array length, at least 2.
    pub m: usize,
    /// Number of hash functions, `1..=64`.
    pub k: usize,
    /// Universe size; elements are integers in `[0, n)`.
    pub n: u64,
    /// Root seed for the hash family.
    pub seed: u64,
}

impl FilterParams {
    pub fn new(m: usize, k: usize, n: u64, seed: u64) -> Result<Self> {
        let params = FilterParams { m, k, n, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::domain(format!(
                "m must be at least 2, got {}",
                self.m
            )));
        }
        if self.k == 0 || self.k > MAX_K {
            return Err(Error::domain(format!(
                "k must be in 1..={MAX_K}, got {}",
                self.k
            )));
        }
        if self.n == 0 {
            return Err(Error::domain("universe size n must be at least 1"));
        }
        Ok(())
    }

    pub fn hash_family(&self) -> HashFamily {
        HashFamily::new(self.seed, self.k, self.m as u64)
    }

    pub(crate) fn check_element(&self, x: u64) -> Result<()> {
        if x >= self.n {
            return Err(Error::domain(format!(
                "element {x} outside universe [0, {})",
                self.n
            )));
        }
        Ok(())
    }
}

/// `h_i(x)` for the filter described by `params`.
pub fn hash_index(params: &FilterParams, i: usize, x: u64) -> Result<usize> {
    params.validate()?;
    if i >= params.k {
        return Err(Error::domain(format!(
            "hash index {i} out of range for k = {}",
            params.k
        )));
    }
    params.check_element(x)?;
    Ok(params.hash_family().index(i, x))
}

/// The ground-truth bit array `g` built from a dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BloomFilter {
    params: FilterParams,
    hashes: HashFamily,
    bits: BitArray,
    inserted_count: u64,
}

impl BloomFilter {
    /// Builds the filter over `dataset`. Duplicate entries are inserted once
    /// and counted once.
    pub fn build(params: FilterParams, dataset: &[u64]) -> Result<Self> {
        params.validate()?;
        let hashes = params.hash_family();
        let mut bits = BitArray::zeros(params.m);
        let mut seen: HashSet<u64, BuildHasherDefault<MixHasher>> =
            HashSet::with_capacity_and_hasher(dataset.len(), Default::default());
        for &x in dataset {
            params.check_element(x)?;
            if seen.insert(x) {
                for j in hashes.indices(x) {
                    bits.set(j);
                }
            }
        }
        Ok(BloomFilter {
            params,
            hashes,
            bits,
            inserted_count: seen.len() as u64,
        })
    }

    /// Reassembles a filter from stored parts (used when loading files).
    pub fn from_parts(params: FilterParams, bits: BitArray, inserted_count: u64) -> Result<Self> {
        params.validate()?;
        if bits.len() != params.m {
            return Err(Error::domain(format!(
                "bit array has {} bits, expected m = {}",
                bits.len(),
                params.m
            )));
        }
        let max_ones = (inserted_count as u128 * params.k as u128).min(params.m as u128);
        if bits.count_ones() as u128 > max_ones {
            return Err(Error::domain(
                "more bits set than inserted_count · k allows",
            ));
        }
        Ok(BloomFilter {
            hashes: params.hash_family(),
            params,
            bits,
            inserted_count,
        })
    }

    pub fn params(&self) -> &FilterParams {
        &self.params
    }

    pub fn hashes(&self) -> &HashFamily {
        &self.hashes
    }

    pub fn bits(&self) -> &BitArray {
        &self.bits
    }

    /// `|A|`, the number of distinct inserted elements.
    pub fn inserted_count(&self) -> u64 {
        self.inserted_count
    }

    /// Fraction of set bits.
    pub fn load_factor(&self) -> f64 {
        self.bits.count_ones() as f64 / self.params.m as f64
    }

    pub fn query(&self, y: u64) -> Result<bool> {
        self.params.check_element(y)?;
        Ok(self.contains(y))
    }

    /// Query without the universe check.
    #[inline]
    pub(crate) fn contains(&self, y: u64) -> bool {
        self.hashes.indices(y).all(|j| self.bits.get(j))
    }
}

/// Builds the filter for `dataset` (the `Init` step without perturbation).
pub fn bloom_init(dataset: &[u64], params: FilterParams) -> Result<BloomFilter> {
    BloomFilter::build(params, dataset)
}

pub fn bloom_query(filter: &BloomFilter, y: u64) -> Result<bool> {
    filter.query(y)
}

/// Hasher for `u64` keys that are already well spread after one mix.
#[derive(Default)]
pub(crate) struct MixHasher(u64);

impl Hasher for MixHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = mix64(self.0 ^ b as u64);
        }
    }

    fn write_u64(&mut self, i: u64) {
        self.0 = mix64(self.0 ^ i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash::sub_seed;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(m: usize, k: usize) -> FilterParams {
        FilterParams::new(m, k, 1 << 32, 99).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(FilterParams::new(1, 1, 10, 0).is_err());
        assert!(FilterParams::new(2, 0, 10, 0).is_err());
        assert!(FilterParams::new(2, 65, 10, 0).is_err());
        assert!(FilterParams::new(2, 64, 10, 0).is_ok());
        assert!(FilterParams::new(2, 1, 0, 0).is_err());
    }

    #[test]
    fn hash_index_is_deterministic() {
        let p = params(1000, 5);
        for x in [0u64, 1, 12345, (1 << 32) - 1] {
            for i in 0..5 {
                assert_eq!(hash_index(&p, i, x).unwrap(), hash_index(&p, i, x).unwrap());
                assert!(hash_index(&p, i, x).unwrap() < 1000);
            }
        }
    }

    #[test]
    fn hash_index_rejects_out_of_range() {
        let p = FilterParams::new(16, 3, 100, 1).unwrap();
        assert!(matches!(hash_index(&p, 3, 0), Err(Error::Domain(_))));
        assert!(matches!(hash_index(&p, 0, 100), Err(Error::Domain(_))));
    }

    #[test]
    fn hash_index_histogram_is_near_uniform() {
        let p = FilterParams::new(8, 3, 1 << 40, 2024).unwrap();
        let total = 1_000_000u64;
        for i in 0..3 {
            let mut counts = [0u64; 8];
            for x in 0..total {
                counts[hash_index(&p, i, x).unwrap()] += 1;
            }
            let expected = total as f64 / 8.0;
            let sigma = (total as f64 * (1.0 / 8.0) * (7.0 / 8.0)).sqrt();
            for c in counts {
                assert!(
                    (c as f64 - expected).abs() <= 3.0 * sigma,
                    "bucket count {c} vs {expected} ± {}",
                    3.0 * sigma
                );
            }
        }
    }

    #[test]
    fn different_seeds_give_different_indices() {
        let a = FilterParams::new(1 << 20, 1, 1 << 32, 1).unwrap();
        let b = FilterParams::new(1 << 20, 1, 1 << 32, 2).unwrap();
        let differ =
            (0..100).any(|x| hash_index(&a, 0, x).unwrap() != hash_index(&b, 0, x).unwrap());
        assert!(differ);
    }

    #[test]
    fn empty_dataset_gives_zero_filter() {
        let f = bloom_init(&[], params(64, 3)).unwrap();
        assert_eq!(f.bits().count_ones(), 0);
        assert_eq!(f.inserted_count(), 0);
        for y in 0..100 {
            assert!(!f.query(y).unwrap());
        }
    }

    #[test]
    fn single_element_sets_its_positions() {
        let p = params(4096, 2);
        let f = bloom_init(&[77], p).unwrap();
        let positions: HashSet<usize> = (0..2).map(|i| hash_index(&p, i, 77).unwrap()).collect();
        assert_eq!(f.bits().count_ones(), positions.len());
        for j in positions {
            assert!(f.bits().get(j));
        }
        assert!(f.query(77).unwrap());
    }

    #[test]
    fn duplicates_are_counted_once() {
        let f = bloom_init(&[5, 5, 6, 5], params(256, 3)).unwrap();
        assert_eq!(f.inserted_count(), 2);
        assert_eq!(f, bloom_init(&[5, 6], params(256, 3)).unwrap());
    }

    #[test]
    fn element_outside_universe_is_rejected() {
        let p = FilterParams::new(64, 2, 10, 0).unwrap();
        assert!(matches!(bloom_init(&[3, 10], p), Err(Error::Domain(_))));
        let f = bloom_init(&[3], p).unwrap();
        assert!(f.query(10).is_err());
    }

    fn random_dataset(rng: &mut ChaCha8Rng, size: usize, n: u64) -> Vec<u64> {
        let mut set = HashSet::new();
        while set.len() < size {
            set.insert(rng.random_range(0..n));
        }
        set.into_iter().collect()
    }

    #[test]
    fn zero_fraction_matches_occupancy_formula() {
        // (1 - 1/m)^{|A|k} for m=1024, k=4, |A|=100
        let expected = (1.0f64 - 1.0 / 1024.0).powi(400);
        assert!((expected - 0.676_504_716_737_242_3).abs() < 1e-12);
        let sigma = (expected * (1.0 - expected) / 1024.0).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for trial in 0..5 {
            let p = FilterParams::new(1024, 4, 1 << 32, sub_seed(11, trial)).unwrap();
            let f = bloom_init(&random_dataset(&mut rng, 100, 1 << 32), p).unwrap();
            let zeros = 1.0 - f.load_factor();
            assert!(
                (zeros - expected).abs() <= 3.0 * sigma,
                "zero fraction {zeros}"
            );
        }
    }

    #[test]
    fn false_positive_rate_matches_exact_formula() {
        let expected = crate::analysis::fpr_exact(1024, 4, 100).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let (filters, per_filter) = (100u64, 1000u64);
        let mut positives = 0u64;
        for t in 0..filters {
            let p = FilterParams::new(1024, 4, 1 << 32, sub_seed(5, t)).unwrap();
            let data = random_dataset(&mut rng, 100, 1 << 32);
            let members: HashSet<u64> = data.iter().copied().collect();
            let f = bloom_init(&data, p).unwrap();
            let mut issued = 0;
            while issued < per_filter {
                let y = rng.random_range(0..1u64 << 32);
                if members.contains(&y) {
                    continue;
                }
                issued += 1;
                positives += f.query(y).unwrap() as u64;
            }
        }
        let total = (filters * per_filter) as f64;
        let rate = positives as f64 / total;
        let sigma = (expected * (1.0 - expected) / total).sqrt();
        assert!(
            (rate - expected).abs() <= 3.0 * sigma,
            "fpr {rate} vs {expected}"
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn no_false_negatives(data in prop::collection::vec(0u64..1_000_000, 0..200),
                              m in 2usize..2048, k in 1usize..12, seed in any::<u64>()) {
            let p = FilterParams::new(m, k, 1_000_000, seed).unwrap();
            let f = bloom_init(&data, p).unwrap();
            for &x in &data {
                prop_assert!(f.query(x).unwrap());
            }
            let ones = f.bits().count_ones() as u64;
            prop_assert!(ones <= (f.inserted_count() * k as u64).min(m as u64));
        }

        #[test]
        fn superset_sets_every_bit_of_subset(a in prop::collection::vec(0u64..10_000, 0..80),
                                             extra in prop::collection::vec(0u64..10_000, 0..80),
                                             seed in any::<u64>()) {
            let p = FilterParams::new(512, 4, 10_000, seed).unwrap();
            let small = bloom_init(&a, p).unwrap();
            let mut b = a.clone();
            b.extend(&extra);
            let big = bloom_init(&b, p).unwrap();
            for j in 0..512 {
                prop_assert!(!small.bits().get(j) || big.bits().get(j));
            }
        }

        #[test]
        fn build_depends_only_on_the_set(mut data in prop::collection::vec(0u64..5000, 1..60),
                                         seed in any::<u64>()) {
            let p = FilterParams::new(300, 3, 5000, seed).unwrap();
            let f1 = bloom_init(&data, p).unwrap();
            data.reverse();
            data.push(data[0]);
            let f2 = bloom_init(&data, p).unwrap();
            prop_assert_eq!(f1, f2);
        }
    }
}
