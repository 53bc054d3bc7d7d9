//! Brute-force enumeration of the `|Y|` and `|Z| given |Y|` distributions.

use crate::calibration::{YDistribution, ZConditional};
use crate::error::{Error, Result};

/// Largest `m^k` either enumerator will walk.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

fn guard(m: u64, k: usize) -> Result<()> {
    if m < 2 || k == 0 {
        return Err(Error::domain("enumeration needs m ≥ 2 and k ≥ 1"));
    }
    let size = (m as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > ENUMERATION_LIMIT as u128 {
        return Err(Error::domain(format!(
            "enumeration of m^k = {m}^{k} tuples exceeds the limit of {ENUMERATION_LIMIT}"
        )));
    }
    Ok(())
}

/// Counts distinct values over all `m^k` hash tuples.
pub fn enumerate_y(m: u64, k: usize) -> Result<YDistribution> {
    guard(m, k)?;
    let total = m.pow(k as u32);
    let mut counts = vec![0u64; k + 1];
    let mut tuple = vec![0u64; k];
    let mut scratch = Vec::with_capacity(k);
    for _ in 0..total {
        scratch.clear();
        scratch.extend_from_slice(&tuple);
        scratch.sort_unstable();
        scratch.dedup();
        counts[scratch.len()] += 1;
        // odometer increment
        for digit in tuple.iter_mut() {
            *digit += 1;
            if *digit < m {
                break;
            }
            *digit = 0;
        }
    }
    // counts and total are below 2^53, so each ratio is correctly rounded
    let pmf = counts.iter().map(|&c| c as f64 / total as f64).collect();
    Ok(YDistribution::from_pmf(m, k, pmf))
}

/// All injective `len`-tuples over `[0, m)`, as position bitmasks (one per
/// ordered tuple, so each set appears `len!` times).
fn injective_masks(m: u64, len: usize) -> Vec<u64> {
    fn rec(m: u64, left: usize, mask: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for p in 0..m {
            if mask & (1 << p) == 0 {
                rec(m, left - 1, mask | (1 << p), out);
            }
        }
    }
    let mut out = Vec::new();
    if len as u64 <= m {
        rec(m, len, 0, &mut out);
    }
    out
}

/// Union sizes over all ordered pairs of injective placements of sizes
/// `(a, b)`.
pub fn enumerate_z(m: u64, k: usize) -> Result<ZConditional> {
    guard(m, k)?;
    if m > 64 {
        return Err(Error::domain("enumerate_z supports m ≤ 64"));
    }
    let cap = (k as u64).min(m) as usize;
    let placements: Vec<Vec<u64>> = (0..=cap).map(|len| injective_masks(m, len)).collect();
    let pairs: u128 = (1..=cap)
        .map(|a| placements[a].len() as u128)
        .sum::<u128>()
        .pow(2);
    if pairs > 100 * ENUMERATION_LIMIT as u128 {
        return Err(Error::domain("enumerate_z pair count exceeds the limit"));
    }
    let mut table = ZConditional::zeros(m, k);
    for a in 1..=cap {
        for b in 1..=cap {
            let mut counts = vec![0u64; a + b + 1];
            for &x in &placements[a] {
                for &y in &placements[b] {
                    counts[(x | y).count_ones() as usize] += 1;
                }
            }
            let total = (placements[a].len() * placements[b].len()) as f64;
            for (z, &c) in counts.iter().enumerate() {
                table.set(a, b, z, c as f64 / total);
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_two_by_two() {
        let d = enumerate_y(2, 2).unwrap();
        assert_eq!(d.pmf(1), 0.5);
        assert_eq!(d.pmf(2), 0.5);
    }

    #[test]
    fn y_single_hash() {
        assert_eq!(enumerate_y(9, 1).unwrap().probabilities(), &[1.0]);
    }

    #[test]
    fn z_two_bins() {
        let z = enumerate_z(2, 1).unwrap();
        assert_eq!(z.get(1, 1, 1), 0.5);
        assert_eq!(z.get(1, 1, 2), 0.5);
    }

    #[test]
    fn z_no_mass_below_max() {
        let z = enumerate_z(5, 3).unwrap();
        for a in 1..=3 {
            for b in 1..=3 {
                for zz in 0..a.max(b) {
                    assert_eq!(z.get(a, b, zz), 0.0);
                }
            }
        }
    }

    #[test]
    fn guard_refuses_large_spaces() {
        assert!(enumerate_y(100, 4).is_err());
        assert!(enumerate_z(100, 4).is_err());
        assert!(enumerate_y(10, 7).is_ok());
    }
}
