//! Binary filter file: a fixed 96-byte little-endian header and the bit
//! array, LSB-first.
//!
//! | offset | size | field                                  |
//! |--------|------|----------------------------------------|
//! | 0      | 8    | magic `DPBLOOM1`                       |
//! | 8      | 2    | version                                |
//! | 10     | 2    | flags (bit 0: privatized)              |
//! | 12     | 8    | m                                      |
//! | 20     | 4    | k                                      |
//! | 24     | 8    | n (universe size)                      |
//! | 32     | 8    | hash seed                              |
//! | 40     | 8    | inserted count                         |
//! | 48     | 8    | ε (f64, 0 when not privatized)         |
//! | 56     | 8    | δ (f64, 0 when not privatized)         |
//! | 64     | 8    | ε₀ (f64, 0 when not privatized)        |
//! | 72     | 8    | N (0 when not privatized)              |
//! | 80     | 8    | flip RNG seed (0 when not privatized)  |
//! | 88     | 8    | payload length `ceil(m/8)`             |

use std::fs;
use std::path::Path;

use crate::bits::BitArray;
use crate::error::{Error, Result};
use crate::filter::{BloomFilter, FilterParams};
use crate::mechanism::{BudgetProvenance, PrivacyBudget, PrivateBloomFilter};

pub const MAGIC: &[u8; 8] = b"DPBLOOM1";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 96;
const FLAG_PRIVATIZED: u16 = 1;

/// Either kind of filter as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub enum FilterFile {
    Plain(BloomFilter),
    Private(PrivateBloomFilter),
}

impl FilterFile {
    pub fn params(&self) -> &FilterParams {
        match self {
            FilterFile::Plain(f) => f.params(),
            FilterFile::Private(f) => f.params(),
        }
    }

    pub fn bits(&self) -> &BitArray {
        match self {
            FilterFile::Plain(f) => f.bits(),
            FilterFile::Private(f) => f.bits(),
        }
    }

    pub fn inserted_count(&self) -> u64 {
        match self {
            FilterFile::Plain(f) => f.inserted_count(),
            FilterFile::Private(f) => f.inserted_count(),
        }
    }

    pub fn query(&self, y: u64) -> Result<bool> {
        match self {
            FilterFile::Plain(f) => f.query(y),
            FilterFile::Private(f) => f.query(y),
        }
    }

    pub fn encode(&self) -> Result<Vec<u8>> {
        let params = self.params();
        let k = u32::try_from(params.k).map_err(|_| Error::domain("k does not fit the header"))?;
        let (flags, eps, delta, eps0, n_quantile, rng_seed) = match self {
            FilterFile::Plain(_) => (0, 0.0, 0.0, 0.0, 0, 0),
            FilterFile::Private(f) => {
                let b = f.budget();
                if !(b.epsilon0() > 0.0 && b.epsilon0().is_finite()) {
                    return Err(Error::domain(format!(
                        "a private filter file needs a positive, finite epsilon0, got {}",
                        b.epsilon0()
                    )));
                }
                (
                    FLAG_PRIVATIZED,
                    b.epsilon(),
                    b.delta(),
                    b.epsilon0(),
                    b.n_quantile(),
                    f.rng_seed(),
                )
            }
        };
        let payload = self.bits().to_bytes();
        let mut out = Vec::with_capacity(HEADER_LEN + payload.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&flags.to_le_bytes());
        out.extend_from_slice(&(params.m as u64).to_le_bytes());
        out.extend_from_slice(&k.to_le_bytes());
        out.extend_from_slice(&params.n.to_le_bytes());
        out.extend_from_slice(&params.seed.to_le_bytes());
        out.extend_from_slice(&self.inserted_count().to_le_bytes());
        out.extend_from_slice(&eps.to_le_bytes());
        out.extend_from_slice(&delta.to_le_bytes());
        out.extend_from_slice(&eps0.to_le_bytes());
        out.extend_from_slice(&n_quantile.to_le_bytes());
        out.extend_from_slice(&rng_seed.to_le_bytes());
        out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
        debug_assert_eq!(out.len(), HEADER_LEN);
        out.extend_from_slice(&payload);
        Ok(out)
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Format(format!(
                "file is {} bytes, shorter than the {HEADER_LEN}-byte header",
                bytes.len()
            )));
        }
        if &bytes[..8] != MAGIC {
            return Err(Error::Format(
                "bad magic, not a DPBLOOM1 filter file".into(),
            ));
        }
        let mut r = Reader { bytes, pos: 8 };
        let version = r.u16();
        if version != VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let flags = r.u16();
        if flags & !FLAG_PRIVATIZED != 0 {
            return Err(Error::Format(format!("unknown flags {flags:#06x}")));
        }
        let m = r.u64();
        let k = r.u32();
        let n = r.u64();
        let hash_seed = r.u64();
        let inserted_count = r.u64();
        let eps = r.f64();
        let delta = r.f64();
        let eps0 = r.f64();
        let n_quantile = r.u64();
        let rng_seed = r.u64();
        let payload_len = r.u64();

        let m = usize::try_from(m).map_err(|_| Error::Format(format!("m = {m} too large")))?;
        let params = FilterParams::new(m, k as usize, n, hash_seed)
            .map_err(|e| Error::Format(format!("invalid header parameters: {e}")))?;
        let expected = m.div_ceil(8);
        if payload_len != expected as u64 {
            return Err(Error::Format(format!(
                "payload length {payload_len} does not match ceil(m/8) = {expected}"
            )));
        }
        let payload = &bytes[HEADER_LEN..];
        if payload.len() != expected {
            return Err(Error::Format(format!(
                "payload is {} bytes, header says {expected}",
                payload.len()
            )));
        }
        let bits = BitArray::from_bytes(payload, m)
            .ok_or_else(|| Error::Format("padding bits past m are set".into()))?;

        let privatized = flags & FLAG_PRIVATIZED != 0;
        if privatized != (eps0 > 0.0) {
            return Err(Error::Format(
                "privatized flag disagrees with the recorded epsilon0".into(),
            ));
        }
        if !privatized {
            if eps != 0.0 || delta != 0.0 || n_quantile != 0 || rng_seed != 0 {
                return Err(Error::Format("plain filter carries privacy fields".into()));
            }
            let filter = BloomFilter::from_parts(params, bits, inserted_count)
                .map_err(|e| Error::Format(format!("inconsistent plain filter: {e}")))?;
            return Ok(FilterFile::Plain(filter));
        }
        let provenance = BudgetProvenance {
            m: m as u64,
            k: params.k,
            dataset_size: inserted_count,
        };
        // a fixed per-bit budget is recorded as (ε₀, 0, ε₀, 1)
        let budget = if delta == 0.0 && n_quantile == 1 && eps == eps0 {
            PrivacyBudget::with_epsilon0(eps0, provenance)
        } else {
            PrivacyBudget::from_recorded(eps, delta, eps0, n_quantile, provenance)
        }
        .map_err(|e| Error::Format(format!("inconsistent privacy fields: {e}")))?;
        let filter = PrivateBloomFilter::from_parts(params, bits, budget, rng_seed, inserted_count)
            .map_err(|e| Error::Format(format!("inconsistent private filter: {e}")))?;
        Ok(FilterFile::Private(filter))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.encode()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::decode(&fs::read(path)?)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take<const N: usize>(&mut self) -> [u8; N] {
        let out = self.bytes[self.pos..self.pos + N].try_into().unwrap();
        self.pos += N;
        out
    }

    fn u16(&mut self) -> u16 {
        u16::from_le_bytes(self.take())
    }

    fn u32(&mut self) -> u32 {
        u32::from_le_bytes(self.take())
    }

    fn u64(&mut self) -> u64 {
        u64::from_le_bytes(self.take())
    }

    fn f64(&mut self) -> f64 {
        f64::from_le_bytes(self.take())
    }
}
