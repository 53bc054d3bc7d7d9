//! Differentially private Bloom filters.
//!
//! A standard Bloom filter is built over a dataset and then every bit of the
//! array is passed through randomized response. The per-bit budget `ε₀` is
//! calibrated from a global `(ε, δ)` budget as `ε₀ = ε / N`, where `N` is the
//! `1 − δ` quantile of `W`, the number of bits that differ between the
//! filters of two neighboring datasets (one element substituted).
//!
//! Module map:
//!
//! - [`filter`]: filter parameters, the hash family and the plain filter.
//! - [`calibration`]: exact distributions of `|Y|`, `|Z| given |Y|` and `W`,
//!   plus the quantile `N`.
//! - [`mechanism`]: privacy budgets, the bit-flip pass and private queries.
//! - [`analysis`]: closed-form utility bounds, brute-force and Monte Carlo
//!   oracles, the privacy audit and the utility experiment.
//! - [`harness`]: the filter file format, dataset ingestion, experiment
//!   configs and CSV-producing experiment runners used by the CLI.
//!
//! ```
//! use dpbloom::{derive_budget, privatize, BloomFilter, FilterParams};
//!
//! let params = FilterParams::new(1024, 4, 1 << 32, 7).unwrap();
//! let data: Vec<u64> = (0..100).map(|i| i * 7919).collect();
//! let filter = BloomFilter::build(params, &data).unwrap();
//! assert!(filter.query(7919).unwrap());
//!
//! let budget = derive_budget(1.0, 0.05, 1024, 4, filter.inserted_count()).unwrap();
//! let private = privatize(&filter, &budget, 42).unwrap();
//! let _maybe = private.query(7919).unwrap();
//! ```

pub mod analysis;
pub mod bits;
pub mod calibration;
mod error;
pub mod filter;
pub mod harness;
pub mod hash;
pub mod mechanism;
mod parallel;

pub use crate::calibration::{
    dist_w, dist_w_cached, dist_y, dist_z_given_y, quantile_n, WDistribution, YDistribution,
    ZConditional,
};
pub use crate::error::{Error, Result};
pub use crate::filter::{bloom_init, bloom_query, hash_index, BloomFilter, FilterParams};
pub use crate::hash::HashFamily;
pub use crate::mechanism::{
    derive_budget, private_query, privatize, BudgetProvenance, PrivacyBudget, PrivateBloomFilter,
};
pub use crate::parallel::configure_threads_from_env;
