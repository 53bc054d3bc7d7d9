use proptest::prelude::*;

use dpbloom::harness::FilterFile;
use dpbloom::{bloom_init, bloom_query, derive_budget, private_query, privatize, FilterParams};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn build_privatize_store_query(
        m in 8usize..512,
        k in 1usize..6,
        data in proptest::collection::hash_set(0u64..1_000_000, 1..40),
        hash_seed in any::<u64>(),
        flip_seed in any::<u64>(),
        eps in 0.1f64..8.0,
    ) {
        let data: Vec<u64> = data.into_iter().collect();
        let params = FilterParams::new(m, k, 1_000_000, hash_seed).unwrap();
        let filter = bloom_init(&data, params).unwrap();
        for &x in &data {
            prop_assert!(bloom_query(&filter, x).unwrap());
        }

        let budget = derive_budget(eps, 0.05, m as u64, k, data.len() as u64).unwrap();
        prop_assert!(budget.n_quantile() >= 1 && budget.n_quantile() <= 2 * k as u64);
        prop_assert!((budget.epsilon0() * budget.n_quantile() as f64 - eps).abs() < 1e-9);

        let private = privatize(&filter, &budget, flip_seed).unwrap();
        let stored = FilterFile::decode(&FilterFile::Private(private.clone()).encode().unwrap()).unwrap();
        for &x in &data {
            prop_assert_eq!(stored.query(x).unwrap(), private_query(&private, x).unwrap());
        }
        prop_assert!(private.query(1_000_000).is_err());
    }
}

#[test]
fn huge_budget_leaves_filter_untouched() {
    let params = FilterParams::new(4096, 5, 1 << 30, 3).unwrap();
    let data: Vec<u64> = (0..300).map(|i| i * 3571).collect();
    let filter = bloom_init(&data, params).unwrap();
    let budget = derive_budget(1e6, 0.05, 4096, 5, 300).unwrap();
    let private = privatize(&filter, &budget, 1).unwrap();
    assert_eq!(private.bits(), filter.bits());
}
