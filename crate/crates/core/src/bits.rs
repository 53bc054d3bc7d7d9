//! Fixed-length bit array backed by 64-bit words.

/// A bit array of exactly `len` bits. Bits past `len` in the last word are
/// always zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitArray {
    words: Vec<u64>,
    len: usize,
}

impl BitArray {
    pub fn zeros(len: usize) -> Self {
        BitArray {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut bits = BitArray {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        bits.clear_tail();
        bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn put(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of positions where `self` and `other` differ.
    pub fn hamming(&self, other: &BitArray) -> usize {
        assert_eq!(self.len, other.len, "bit arrays of different length");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Positions where `self` and `other` differ, ascending.
    pub fn differing_positions(&self, other: &BitArray) -> Vec<usize> {
        (0..self.len)
            .filter(|&i| self.get(i) != other.get(i))
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Packs the bits LSB-first: bit `j` lives in byte `j / 8` at position `j % 8`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len.div_ceil(8));
        for w in &self.words {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out.truncate(self.len.div_ceil(8));
        out
    }

    /// Inverse of [`to_bytes`](Self::to_bytes). Returns `None` on a length
    /// mismatch or when padding bits past `len` are set.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Option<Self> {
        if bytes.len() != len.div_ceil(8) {
            return None;
        }
        let mut words = vec![0u64; len.div_ceil(64)];
        for (i, chunk) in bytes.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            words[i] = u64::from_le_bytes(buf);
        }
        let bits = BitArray { words, len };
        let mut check = bits.clone();
        check.clear_tail();
        (check == bits).then_some(bits)
    }

    fn clear_tail(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ones_respects_length() {
        let b = BitArray::ones(70);
        assert_eq!(b.count_ones(), 70);
        assert_eq!(b.to_bytes().len(), 9);
        assert_eq!(b.to_bytes()[8], 0b0011_1111);
    }

    #[test]
    fn byte_layout_is_lsb_first() {
        let mut b = BitArray::zeros(16);
        b.set(0);
        b.set(9);
        assert_eq!(b.to_bytes(), vec![0b0000_0001, 0b0000_0010]);
    }

    #[test]
    fn padding_bits_are_rejected() {
        assert!(BitArray::from_bytes(&[0xff], 4).is_none());
        assert!(BitArray::from_bytes(&[0x0f], 4).is_some());
        assert!(BitArray::from_bytes(&[0x0f, 0], 4).is_none());
    }

    proptest! {
        #[test]
        fn bytes_round_trip(len in 1usize..300, seed in any::<u64>()) {
            let mut b = BitArray::zeros(len);
            let mut s = seed;
            for i in 0..len {
                s = crate::hash::mix64(s.wrapping_add(i as u64));
                b.put(i, s & 1 == 1);
            }
            let back = BitArray::from_bytes(&b.to_bytes(), len).unwrap();
            prop_assert_eq!(back, b);
        }
    }
}
