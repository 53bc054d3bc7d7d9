//! Seeded hash family `h_0 … h_{k-1} : [n] → [m]` and seed derivation helpers.
//!
//! Each `h_i` uses its own 64-bit key derived from the root seed, and maps an
//! element through two rounds of a strong 64-bit finalizer before reducing to
//! `[0, m)` with a multiply-shift. The `h_i` are therefore independent mixes
//! rather than the `u + i·v` double-hashing scheme: double hashing with an odd
//! stride never produces repeated positions within one element when `m` is a
//! power of two, which would break the `|Y|` distribution the calibration
//! relies on.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
const TOKEN_DOMAIN: u64 = 0x5450_4b4e_5f44_5042; // "TPKN_DPB"
const SEED_DOMAIN: u64 = 0x5345_4544_5f44_5042;

/// SplitMix64 / Stafford variant 13 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Maps a uniform 64-bit value onto `[0, range)`.
#[inline]
pub fn reduce(hash: u64, range: u64) -> u64 {
    ((hash as u128 * range as u128) >> 64) as u64
}

/// Derives the seed of an independent sub-stream (trial, grid point, …).
pub fn sub_seed(root: u64, index: u64) -> u64 {
    mix64(mix64(root ^ SEED_DOMAIN).wrapping_add(index.wrapping_mul(GOLDEN)))
}

/// Maps an arbitrary text token into the universe `[0, n)`.
pub fn hash_token(token: &str, n: u64) -> u64 {
    let bytes = token.as_bytes();
    let mut h = mix64(TOKEN_DOMAIN ^ bytes.len() as u64);
    for chunk in bytes.chunks(8) {
        let mut word = [0u8; 8];
        word[..chunk.len()].copy_from_slice(chunk);
        h = mix64(h ^ u64::from_le_bytes(word)).wrapping_add(GOLDEN);
    }
    reduce(mix64(h), n)
}

/// The `k` hash functions of a filter, fully determined by `(seed, k, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashFamily {
    keys: Vec<u64>,
    m: u64,
}

impl HashFamily {
    pub fn new(seed: u64, k: usize, m: u64) -> Self {
        let keys = (0..k as u64)
            .map(|i| mix64(seed.wrapping_add((i + 1).wrapping_mul(GOLDEN))))
            .collect();
        HashFamily { keys, m }
    }

    pub fn k(&self) -> usize {
        self.keys.len()
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `h_i(x)`. Panics if `i >= k`.
    #[inline]
    pub fn index(&self, i: usize, x: u64) -> usize {
        let key = self.keys[i];
        reduce(mix64(mix64(x ^ key).wrapping_add(key)), self.m) as usize
    }

    /// All `k` positions of `x`, in hash order.
    pub fn indices(&self, x: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.keys.len()).map(move |i| self.index(i, x))
    }
}
