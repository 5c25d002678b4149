//! Explicit encoder tables at small blocklengths.
//!
//! A table maps `n`-bit inputs to `ell`-bit codewords, either on all of
//! `{0,1}^n` or on a listed subset such as a constant-weight slice. The
//! decoder is the partial inverse of an injective table and is never
//! materialized.

mod search;
mod stability;

use std::io::{BufRead, Write};

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub use search::{
    find_stable_code, find_stable_code_on, SearchBudget, SearchOutcome, SearchStatus,
    DEFAULT_SEARCH_NODES, MAX_SEARCH_DOMAIN,
};
pub use stability::{check_stability, stability_profile, StabilityReport, Violation, MAX_PAIR_SCAN};

use crate::bits::{format_bits, low_mask, parse_bits};
use crate::{Error, Result};

/// Largest input length for tables over the full space.
pub const MAX_FULL_N: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableDomain {
    /// All of `{0,1}^n`.
    Full,
    /// Only the listed inputs.
    Listed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncoderTable {
    n: u32,
    ell: u32,
    domain: TableDomain,
    /// Sorted, distinct inputs.
    inputs: Vec<u64>,
    /// `images[i]` is the codeword of `inputs[i]`.
    images: Vec<u64>,
}

impl EncoderTable {
    /// Builds a table from `(input, codeword)` pairs.
    ///
    /// The domain is recorded as full when every `n`-bit input is present.
    pub fn from_pairs(n: u32, ell: u32, mut pairs: Vec<(u64, u64)>) -> Result<Self> {
        if n > 63 || ell > 64 {
            return Err(Error::Domain(format!(
                "tables hold n <= 63 and ell <= 64, got n = {n}, ell = {ell}"
            )));
        }
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Domain(format!(
                    "input {} listed twice",
                    format_bits(w[0].0, n)
                )));
            }
        }
        for &(x, y) in &pairs {
            if x & !low_mask(n) != 0 || y & !low_mask(ell) != 0 {
                return Err(Error::Domain(format!(
                    "entry ({x:#x}, {y:#x}) does not fit n = {n}, ell = {ell}"
                )));
            }
        }
        let domain = if n <= MAX_FULL_N && pairs.len() as u64 == 1u64 << n {
            TableDomain::Full
        } else {
            TableDomain::Listed
        };
        let (inputs, images) = pairs.into_iter().unzip();
        Ok(Self {
            n,
            ell,
            domain,
            inputs,
            images,
        })
    }

    fn full_from_fn(n: u32, ell: u32, f: impl FnMut(u64) -> u64) -> Result<Self> {
        if n > MAX_FULL_N {
            return Err(Error::Resource(format!(
                "full-space tables are capped at n = {MAX_FULL_N}, got {n}"
            )));
        }
        if ell > 64 {
            return Err(Error::Domain(format!("codewords hold at most 64 bits, got {ell}")));
        }
        let inputs: Vec<u64> = (0..1u64 << n).collect();
        let images = inputs.iter().copied().map(f).collect();
        Ok(Self {
            n,
            ell,
            domain: TableDomain::Full,
            inputs,
            images,
        })
    }

    /// `x -> x` on `{0,1}^n`.
    pub fn identity(n: u32) -> Result<Self> {
        Self::full_from_fn(n, n, |x| x)
    }

    /// `x -> 0^ell` on `{0,1}^n`.
    pub fn constant(n: u32, ell: u32) -> Result<Self> {
        Self::full_from_fn(n, ell, |_| 0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn domain(&self) -> TableDomain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn inputs(&self) -> &[u64] {
        &self.inputs
    }

    pub fn images(&self) -> &[u64] {
        &self.images
    }

    /// Codeword of `x`, or `None` outside the domain.
    pub fn encode(&self, x: u64) -> Option<u64> {
        match self.domain {
            TableDomain::Full => self.images.get(x as usize).copied(),
            TableDomain::Listed => self.inputs.binary_search(&x).ok().map(|i| self.images[i]),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.inputs.iter().copied().zip(self.images.iter().copied())
    }

    /// Whether distinct inputs always receive distinct codewords.
    pub fn is_injective(&self) -> bool {
        let mut seen = self.images.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Input recovered from a codeword, when the table is injective.
    pub fn decode(&self, y: u64) -> Option<u64> {
        let mut hits = self.entries().filter(|&(_, c)| c == y).map(|(x, _)| x);
        let x = hits.next()?;
        hits.next().is_none().then_some(x)
    }

    /// Restricts the table to the listed inputs; every one must be in the domain.
    pub fn restrict(&self, inputs: &[u64]) -> Result<Self> {
        let pairs = inputs
            .iter()
            .map(|&x| {
                self.encode(x).map(|y| (x, y)).ok_or_else(|| {
                    Error::Domain(format!("{} is outside the table's domain", format_bits(x, self.n)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(self.n, self.ell, pairs)
    }

    /// Writes the header `n ell` and one `input output` line per entry, bits
    /// most significant first.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{} {}", self.n, self.ell)?;
        for (x, y) in self.entries() {
            writeln!(out, "{} {}", format_bits(x, self.n), format_bits(y, self.ell))?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let header = match lines.next() {
            Some((_, l)) => l?,
            None => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "missing header".into(),
                })
            }
        };
        let head: Vec<u32> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse {
                line: 1,
                msg: format!("bad header {header:?}: {e}"),
            })?;
        let [n, ell] = head[..] else {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header must be \"n ell\", got {header:?}"),
            });
        };
        let mut pairs = Vec::new();
        for (i, l) in lines {
            let l = l?;
            let line = i + 1;
            let fields: Vec<&str> = l.split_whitespace().collect();
            match fields[..] {
                [] => continue,
                [a, b] => {
                    let (x, wx) = parse_bits(a, line)?;
                    let (y, wy) = parse_bits(b, line)?;
                    if wx != n || wy != ell {
                        return Err(Error::Parse {
                            line,
                            msg: format!("expected {n} and {ell} bits, got {wx} and {wy}"),
                        });
                    }
                    pairs.push((x, y));
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("expected \"input output\", got {l:?}"),
                    })
                }
            }
        }
        Self::from_pairs(n, ell, pairs)
    }
}

/// Random binning: every input of `{0,1}^n` receives an independent uniform
/// `ell`-bit codeword.
///
/// Codewords are the low `ell` bits of successive SplitMix64 outputs
/// (state initialized to `seed`), assigned to inputs in increasing order.
pub fn random_binning_encoder(n: u32, ell: u32, seed: u64) -> Result<EncoderTable> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mask = low_mask(ell);
    EncoderTable::full_from_fn(n, ell, |_| rng.next_u64() & mask)
}

/// Random binning restricted to the listed inputs, drawn in increasing input order.
pub fn random_binning_on(n: u32, inputs: &[u64], ell: u32, seed: u64) -> Result<EncoderTable> {
    let mut sorted = inputs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mask = low_mask(ell);
    let pairs = sorted.into_iter().map(|x| (x, rng.next_u64() & mask)).collect();
    EncoderTable::from_pairs(n, ell, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::weight_k_words;

    #[test]
    fn splitmix_reference_stream() {
        // First outputs of SplitMix64 from state 0 (Vigna's reference implementation).
        let t = random_binning_encoder(2, 64, 0).unwrap();
        assert_eq!(t.images()[0], 0xe220_a839_7b1d_cdaf);
        assert_eq!(t.images()[1], 0x6e78_9e6a_a1b9_65f4);
    }

    #[test]
    fn binning_is_reproducible() {
        let a = random_binning_encoder(8, 4, 1).unwrap();
        let b = random_binning_encoder(8, 4, 1).unwrap();
        let c = random_binning_encoder(8, 4, 2).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 256);
        assert!(a.images().iter().all(|&y| y < 16));
    }

    #[test]
    fn wide_binning_is_injective() {
        for seed in 0..20 {
            assert!(random_binning_encoder(3, 64, seed).unwrap().is_injective());
        }
    }

    #[test]
    fn domains_and_lookup() {
        let id = EncoderTable::identity(4).unwrap();
        assert_eq!(id.domain(), TableDomain::Full);
        assert_eq!(id.encode(9), Some(9));
        assert_eq!(id.decode(9), Some(9));
        let slice = id.restrict(&weight_k_words(4, 2)).unwrap();
        assert_eq!(slice.domain(), TableDomain::Listed);
        assert_eq!(slice.encode(1), None);
        assert_eq!(slice.encode(5), Some(5));
        assert!(!EncoderTable::constant(3, 2).unwrap().is_injective());
        assert_eq!(EncoderTable::constant(3, 2).unwrap().decode(0), None);
    }

    #[test]
    fn text_round_trip() {
        let t = random_binning_on(6, &weight_k_words(6, 3), 5, 11).unwrap();
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("6 5\n000111 "));
        assert_eq!(EncoderTable::read_from(&buf[..]).unwrap(), t);
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(EncoderTable::read_from(&b""[..]).is_err());
        assert!(EncoderTable::read_from(&b"2 2\n01 1\n"[..]).is_err());
        assert!(EncoderTable::read_from(&b"2 2\n01 10\n01 11\n"[..]).is_err());
        assert!(EncoderTable::read_from(&b"2\n"[..]).is_err());
        assert!(EncoderTable::from_pairs(2, 2, vec![(4, 0)]).is_err());
    }
}
