//! Packed binary words: sequences of length at most 64 stored in a `u64`,
//! bit `i` holding coordinate `i`.

use crate::{Error, Result};

/// Hamming distance between two packed words.
#[inline]
pub fn hamming(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}

/// Mask with the low `width` bits set.
#[inline]
pub fn low_mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// All `width`-bit words of weight exactly `k`, in increasing numeric order.
pub fn weight_k_words(width: u32, k: u32) -> Vec<u64> {
    assert!(width <= 63, "packed words hold at most 63 coordinates here");
    if k > width {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let limit = 1u64 << width;
    let mut w = low_mask(k);
    while w < limit {
        out.push(w);
        // Gosper's hack: next word with the same popcount.
        let c = w & w.wrapping_neg();
        let r = w + c;
        w = (((r ^ w) >> 2) / c) | r;
    }
    out
}

/// Every nonzero mask of weight at most `max_weight` on `width` bits,
/// grouped by weight and increasing within each weight.
pub fn ball_masks(width: u32, max_weight: u32) -> Vec<u64> {
    let top = max_weight.min(width);
    (1..=top).flat_map(|w| weight_k_words(width, w)).collect()
}

/// Renders the low `width` bits of `x` most significant bit first.
pub fn format_bits(x: u64, width: u32) -> String {
    (0..width)
        .rev()
        .map(|i| if (x >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a `0`/`1` string written most significant bit first.
pub fn parse_bits(s: &str, line: usize) -> Result<(u64, u32)> {
    if s.len() > 64 {
        return Err(Error::Parse {
            line,
            msg: format!("bitstring longer than 64: {s}"),
        });
    }
    let mut x = 0u64;
    for ch in s.chars() {
        x = match ch {
            '0' => x << 1,
            '1' => (x << 1) | 1,
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("not a bitstring: {s}"),
                })
            }
        };
    }
    Ok((x, s.len() as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_slices_have_binomial_sizes() {
        assert_eq!(weight_k_words(4, 2), vec![3, 5, 6, 9, 10, 12]);
        assert_eq!(weight_k_words(10, 5).len(), 252);
        assert_eq!(weight_k_words(3, 0), vec![0]);
        assert!(weight_k_words(3, 4).is_empty());
    }

    #[test]
    fn ball_mask_counts() {
        assert_eq!(ball_masks(4, 2).len(), 10);
        assert_eq!(ball_masks(3, 7).len(), 7);
        assert!(ball_masks(5, 0).is_empty());
    }

    #[test]
    fn bit_text() {
        assert_eq!(format_bits(5, 4), "0101");
        assert_eq!(parse_bits("0101", 1).unwrap(), (5, 4));
        assert!(parse_bits("01x", 3).is_err());
    }
}
