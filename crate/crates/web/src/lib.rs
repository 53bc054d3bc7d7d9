//! Browser bindings for the demo page in `www/`.
//!
//! Each export has a plain Rust counterpart returning `Result<_, String>` so
//! the logic can be tested natively.

use wasm_bindgen::prelude::*;

use dpbloom::analysis::{run_utility_experiment, BudgetSpec, UtilityConfig};
use dpbloom::{derive_budget, dist_w, privatize, quantile_n, BloomFilter, FilterParams};

const UNIVERSE: u64 = 1 << 32;

/// The `W` distribution for one filter shape and the budget it implies.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pmf: Vec<f64>,
    cdf: Vec<f64>,
    n_quantile: usize,
    p0: f64,
    epsilon0: f64,
}

#[wasm_bindgen]
impl Calibration {
    #[wasm_bindgen(getter)]
    pub fn pmf(&self) -> Vec<f64> {
        self.pmf.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn cdf(&self) -> Vec<f64> {
        self.cdf.clone()
    }

    #[wasm_bindgen(getter, js_name = nQuantile)]
    pub fn n_quantile(&self) -> usize {
        self.n_quantile
    }

    #[wasm_bindgen(getter)]
    pub fn p0(&self) -> f64 {
        self.p0
    }

    #[wasm_bindgen(getter)]
    pub fn epsilon0(&self) -> f64 {
        self.epsilon0
    }
}

pub fn calibration(
    m: u32,
    k: u32,
    size: u32,
    epsilon: f64,
    delta: f64,
) -> Result<Calibration, String> {
    let dist = dist_w(m as u64, k as usize, size as u64).map_err(|e| e.to_string())?;
    let n = quantile_n(&dist, delta).map_err(|e| e.to_string())?;
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(format!(
            "epsilon must be positive and finite, got {epsilon}"
        ));
    }
    Ok(Calibration {
        pmf: dist.pmf().to_vec(),
        cdf: dist.cdf().to_vec(),
        n_quantile: n,
        p0: dist.p0(),
        epsilon0: epsilon / n as f64,
    })
}

#[wasm_bindgen]
pub fn calibrate(
    m: u32,
    k: u32,
    size: u32,
    epsilon: f64,
    delta: f64,
) -> Result<Calibration, JsError> {
    calibration(m, k, size, epsilon, delta).map_err(|e| JsError::new(&e))
}

/// A filter over `size` consecutive integers before and after the bit flips.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct PrivatizeDemo {
    original: Vec<u8>,
    noisy: Vec<u8>,
    n_quantile: u64,
    epsilon0: f64,
    flipped: usize,
}

#[wasm_bindgen]
impl PrivatizeDemo {
    /// Ground-truth bits `g`, one byte (0 or 1) per bit.
    #[wasm_bindgen(getter)]
    pub fn original(&self) -> Vec<u8> {
        self.original.clone()
    }

    /// Released bits `g̃`, one byte per bit.
    #[wasm_bindgen(getter)]
    pub fn noisy(&self) -> Vec<u8> {
        self.noisy.clone()
    }

    #[wasm_bindgen(getter, js_name = nQuantile)]
    pub fn n_quantile(&self) -> u64 {
        self.n_quantile
    }

    #[wasm_bindgen(getter)]
    pub fn epsilon0(&self) -> f64 {
        self.epsilon0
    }

    #[wasm_bindgen(getter)]
    pub fn flipped(&self) -> usize {
        self.flipped
    }
}

pub fn privatize_filter(
    m: u32,
    k: u32,
    size: u32,
    epsilon: f64,
    delta: f64,
    seed: u32,
) -> Result<PrivatizeDemo, String> {
    let err = |e: dpbloom::Error| e.to_string();
    let params = FilterParams::new(m as usize, k as usize, UNIVERSE, seed as u64).map_err(err)?;
    let data: Vec<u64> = (0..size as u64).collect();
    let filter = BloomFilter::build(params, &data).map_err(err)?;
    let budget = derive_budget(
        epsilon,
        delta,
        m as u64,
        k as usize,
        filter.inserted_count(),
    )
    .map_err(err)?;
    let private = privatize(&filter, &budget, seed as u64).map_err(err)?;
    let to_bytes = |bits: &dpbloom::bits::BitArray| bits.iter().map(u8::from).collect::<Vec<_>>();
    Ok(PrivatizeDemo {
        original: to_bytes(filter.bits()),
        noisy: to_bytes(private.bits()),
        n_quantile: budget.n_quantile(),
        epsilon0: budget.epsilon0(),
        flipped: filter.bits().hamming(private.bits()),
    })
}

#[wasm_bindgen(js_name = privatizeDemo)]
pub fn privatize_demo(
    m: u32,
    k: u32,
    size: u32,
    epsilon: f64,
    delta: f64,
    seed: u32,
) -> Result<PrivatizeDemo, JsError> {
    privatize_filter(m, k, size, epsilon, delta, seed).map_err(|e| JsError::new(&e))
}

/// Private-filter accuracy against `ε`, with the plain filter and the lower
/// bound for comparison.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityCurve {
    epsilon: Vec<f64>,
    private_accuracy: Vec<f64>,
    standard_accuracy: Vec<f64>,
    bound: Vec<f64>,
}

#[wasm_bindgen]
impl UtilityCurve {
    #[wasm_bindgen(getter)]
    pub fn epsilon(&self) -> Vec<f64> {
        self.epsilon.clone()
    }

    #[wasm_bindgen(getter, js_name = privateAccuracy)]
    pub fn private_accuracy(&self) -> Vec<f64> {
        self.private_accuracy.clone()
    }

    #[wasm_bindgen(getter, js_name = standardAccuracy)]
    pub fn standard_accuracy(&self) -> Vec<f64> {
        self.standard_accuracy.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn bound(&self) -> Vec<f64> {
        self.bound.clone()
    }
}

#[allow(clippy::too_many_arguments)]
pub fn utility_curve_points(
    m: u32,
    k: u32,
    size: u32,
    alpha: f64,
    delta: f64,
    epsilons: &[f64],
    queries: u32,
    seed: u32,
) -> Result<UtilityCurve, String> {
    let mut curve = UtilityCurve {
        epsilon: Vec::new(),
        private_accuracy: Vec::new(),
        standard_accuracy: Vec::new(),
        bound: Vec::new(),
    };
    for (i, &epsilon) in epsilons.iter().enumerate() {
        let r = run_utility_experiment(&UtilityConfig {
            m: m as u64,
            k: k as usize,
            dataset_size: size as u64,
            alpha,
            budget: BudgetSpec::Derived { epsilon, delta },
            query_count: queries as u64,
            trials: 10,
            rng_seed: seed as u64 + i as u64,
            universe: UNIVERSE,
        })
        .map_err(|e| e.to_string())?;
        curve.epsilon.push(epsilon);
        curve
            .private_accuracy
            .push(r.aggregate.private_accuracy().rate());
        curve
            .standard_accuracy
            .push(r.aggregate.standard_accuracy().rate());
        curve.bound.push(r.bound_private);
    }
    Ok(curve)
}

#[wasm_bindgen(js_name = utilityCurve)]
#[allow(clippy::too_many_arguments)]
pub fn utility_curve(
    m: u32,
    k: u32,
    size: u32,
    alpha: f64,
    delta: f64,
    epsilons: Vec<f64>,
    queries: u32,
    seed: u32,
) -> Result<UtilityCurve, JsError> {
    utility_curve_points(m, k, size, alpha, delta, &epsilons, queries, seed)
        .map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_matches_core() {
        let c = calibration(32, 3, 5, 1.0, 0.05).unwrap();
        assert_eq!(c.n_quantile(), 6);
        assert_eq!(c.pmf().len(), 7);
        assert!((c.cdf()[6] - 1.0).abs() < 1e-9);
        assert!((c.epsilon0() - 1.0 / 6.0).abs() < 1e-15);
        assert!(calibration(1, 3, 5, 1.0, 0.05).is_err());
        assert!(calibration(32, 3, 5, 0.0, 0.05).is_err());
    }

    #[test]
    fn privatize_demo_counts_flips() {
        let d = privatize_filter(256, 3, 20, 1.0, 0.05, 7).unwrap();
        assert_eq!(d.original().len(), 256);
        let diff = d
            .original()
            .iter()
            .zip(d.noisy())
            .filter(|(a, b)| **a != *b)
            .count();
        assert_eq!(diff, d.flipped());
        assert_eq!(d, privatize_filter(256, 3, 20, 1.0, 0.05, 7).unwrap());
    }

    #[test]
    fn utility_curve_rises_towards_standard() {
        let c = utility_curve_points(1024, 4, 100, 0.9, 0.05, &[0.5, 1e6], 500, 1).unwrap();
        assert_eq!(c.epsilon(), vec![0.5, 1e6]);
        assert_eq!(c.private_accuracy()[1], c.standard_accuracy()[1]);
        assert!(c.private_accuracy()[0] < c.private_accuracy()[1]);
        assert!(c.bound().iter().all(|b| (0.0..=1.0).contains(b)));
    }
}
