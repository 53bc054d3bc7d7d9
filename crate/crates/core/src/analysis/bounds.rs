//! False-positive rates and accuracy lower bounds in closed form.

use crate::error::{Error, Result};

fn check(m: u64, k: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::domain(format!("m must be at least 2, got {m}")));
    }
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    Ok(())
}

fn check_prob(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("{name} must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// `(1 − (1 − 1/m)^{|A|k})^k`: false-positive probability under ideal hashing.
pub fn fpr_exact(m: u64, k: usize, dataset_size: u64) -> Result<f64> {
    check(m, k)?;
    let zero = (dataset_size as f64 * k as f64 * (-1.0 / m as f64).ln_1p()).exp();
    Ok((1.0 - zero).powi(k as i32))
}

/// The usual approximation `(1 − e^{−k|A|/m})^k`.
pub fn fpr_approx(m: u64, k: usize, dataset_size: u64) -> Result<f64> {
    check(m, k)?;
    Ok((-(-(k as f64) * dataset_size as f64 / m as f64).exp_m1()).powi(k as i32))
}

/// Upper bound `(1 − e^{−2|A|k/m})^k`, valid for `m ≥ 2`.
pub fn fpr_bound(m: u64, k: usize, dataset_size: u64) -> Result<f64> {
    check(m, k)?;
    Ok((-(-2.0 * k as f64 * dataset_size as f64 / m as f64).exp_m1()).powi(k as i32))
}

/// `Pr[ẑ = z] ≥ 1 − (1 − e^{−2|A|k/m})^k · α` for the plain filter, where α
/// is the share of non-member queries.
pub fn accuracy_bound_standard(m: u64, k: usize, dataset_size: u64, alpha: f64) -> Result<f64> {
    check_prob("alpha", alpha)?;
    Ok(1.0 - fpr_bound(m, k, dataset_size)? * alpha)
}

/// Inputs to the private-filter accuracy bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtilityParams {
    /// Share of non-member queries, `Pr[z = 0]`.
    pub alpha: f64,
    /// Keep probability `e^{ε₀}/(e^{ε₀}+1)`.
    pub t: f64,
    pub k: usize,
    /// False-positive mass of the plain filter.
    pub delta_err: f64,
}

impl UtilityParams {
    pub fn new(alpha: f64, t: f64, k: usize, delta_err: f64) -> Result<Self> {
        check_prob("alpha", alpha)?;
        check_prob("delta_err", delta_err)?;
        if !(0.5..1.0).contains(&t) {
            return Err(Error::domain(format!("t must lie in [1/2, 1), got {t}")));
        }
        if k == 0 {
            return Err(Error::domain("k must be at least 1"));
        }
        Ok(UtilityParams {
            alpha,
            t,
            k,
            delta_err,
        })
    }

    pub fn from_epsilon0(alpha: f64, epsilon0: f64, k: usize, delta_err: f64) -> Result<Self> {
        Self::new(alpha, 1.0 / (1.0 + (-epsilon0).exp()), k, delta_err)
    }
}

/// `Pr[z̃ = z] ≥ α(1 − t − t^k)·δ_err + α·t`.
pub fn accuracy_bound_private(u: &UtilityParams) -> f64 {
    u.alpha * (1.0 - u.t - u.t.powi(u.k as i32)) * u.delta_err + u.alpha * u.t
}

/// `Pr[z̃ = ẑ] ≥ t·α·(1 − δ_err)`.
pub fn accuracy_bound_vs_standard(u: &UtilityParams) -> f64 {
    u.t * u.alpha * (1.0 - u.delta_err)
}

/// Positive rate of a pure-noise (`ε₀ = 0`) filter: `1/2^k`.
pub fn random_guess_rate(k: usize) -> f64 {
    0.5f64.powi(k as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fpr_empty_filter() {
        assert_eq!(fpr_exact(100, 3, 0).unwrap(), 0.0);
        assert_eq!(fpr_approx(100, 3, 0).unwrap(), 0.0);
    }

    #[test]
    fn fpr_reference_point() {
        let exact = fpr_exact(1024, 4, 100).unwrap();
        let approx = fpr_approx(1024, 4, 100).unwrap();
        let bound = fpr_bound(1024, 4, 100).unwrap();
        assert!((exact - 0.010_951_454_703_420_34).abs() < 1e-15);
        assert!((approx - 0.010_933_979_227_141_1).abs() < 1e-15);
        assert!((bound - 0.086_403_465_263_543_44).abs() < 1e-15);
        assert!(exact <= bound);
    }

    #[test]
    fn exact_never_exceeds_bound() {
        for m in [2u64, 3, 10, 100, 4096] {
            for k in 1..12 {
                for ds in [0u64, 1, 5, 50, 1000] {
                    assert!(fpr_exact(m, k, ds).unwrap() <= fpr_bound(m, k, ds).unwrap() + 1e-15);
                }
            }
        }
    }

    #[test]
    fn fpr_grows_with_k_when_filter_is_crowded() {
        // m/|A| = 1: optimum k ≈ ln 2 < 1, so fpr rises over k ≥ 1
        let mut last = 0.0;
        for k in 1..10 {
            let f = fpr_exact(100, k, 100).unwrap();
            assert!(f > last);
            last = f;
        }
        assert!(last > 0.99);
    }

    #[test]
    fn standard_bound() {
        assert_eq!(accuracy_bound_standard(1024, 4, 100, 0.0).unwrap(), 1.0);
        let b = accuracy_bound_standard(1024, 4, 100, 1.0).unwrap();
        assert!((b - 0.913_596_534_736_456_5).abs() < 1e-12);
        assert!(accuracy_bound_standard(1024, 4, 100, 1.5).is_err());
    }

    #[test]
    fn private_bound_collapses_for_pure_noise() {
        let u = UtilityParams::new(0.8, 0.5, 1, 0.3).unwrap();
        assert!((accuracy_bound_private(&u) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn private_bound_reference_point() {
        let u = UtilityParams::from_epsilon0(0.9, 1.0, 4, 0.01).unwrap();
        assert!((u.t - 0.731_058_578_630_004_9).abs() < 1e-15);
        assert!((accuracy_bound_private(&u) - 0.657_802_494_608_431).abs() < 1e-12);
        assert!(
            (accuracy_bound_vs_standard(&u) - 0.731_058_578_630_004_9 * 0.9 * 0.99).abs() < 1e-15
        );
    }

    #[test]
    fn utility_params_validation() {
        assert!(UtilityParams::new(0.5, 0.4, 3, 0.1).is_err());
        assert!(UtilityParams::new(0.5, 1.0, 3, 0.1).is_err());
        assert!(UtilityParams::new(-0.1, 0.6, 3, 0.1).is_err());
        assert!(UtilityParams::new(0.5, 0.6, 0, 0.1).is_err());
    }

    #[test]
    fn random_guess() {
        assert_eq!(random_guess_rate(1), 0.5);
        assert_eq!(random_guess_rate(4), 0.0625);
    }
}
