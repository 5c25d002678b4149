use std::fmt;

use super::{EncoderTable, TableDomain};
use crate::bits::{ball_masks, format_bits, hamming};
use crate::{Error, Result};

/// Cap on `|domain| * |ball|` for one scan.
pub const MAX_PAIR_SCAN: u64 = 1 << 32;

/// An input pair within distance `D` whose codewords are farther than `D'` apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub x: u64,
    pub x_tilde: u64,
    pub input_distance: u32,
    pub output_distance: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub n: u32,
    pub ell: u32,
    pub domain: TableDomain,
    pub d: u32,
    pub dp: u32,
    pub stable: bool,
    /// First violating pair in scan order (increasing `x`, then ball order).
    pub counterexample: Option<Violation>,
    pub violations: u64,
    /// Unordered in-domain pairs within distance `D`.
    pub pairs_checked: u64,
    /// Neighbors within distance `D` of a domain element that lie outside the domain.
    pub skipped_out_of_domain: u64,
    pub injective: bool,
}

impl fmt::Display for StabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let domain = match self.domain {
            TableDomain::Full => "full",
            TableDomain::Listed => "listed",
        };
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "ell: {}", self.ell)?;
        writeln!(f, "domain: {domain}")?;
        writeln!(f, "D: {}", self.d)?;
        writeln!(f, "D': {}", self.dp)?;
        writeln!(f, "stable: {}", self.stable)?;
        writeln!(f, "injective: {}", self.injective)?;
        writeln!(f, "pairs_checked: {}", self.pairs_checked)?;
        writeln!(f, "violations: {}", self.violations)?;
        writeln!(f, "skipped_out_of_domain: {}", self.skipped_out_of_domain)?;
        if let Some(v) = &self.counterexample {
            writeln!(
                f,
                "counterexample: {} {} input_distance={} output_distance={}",
                format_bits(v.x, self.n),
                format_bits(v.x_tilde, self.n),
                v.input_distance,
                v.output_distance
            )?;
        }
        Ok(())
    }
}

fn scan_masks(enc: &EncoderTable, radius: u32) -> Result<Vec<u64>> {
    let masks = ball_masks(enc.n(), radius);
    let cost = enc.len() as u64 * masks.len() as u64;
    if cost > MAX_PAIR_SCAN {
        return Err(Error::Resource(format!(
            "stability scan needs {cost} lookups, cap is {MAX_PAIR_SCAN}"
        )));
    }
    Ok(masks)
}

/// Checks `d_H(x, x~) <= D  =>  d_H(f(x), f(x~)) <= D'` over every domain
/// pair, by walking the radius-`D` Hamming ball around each input.
pub fn check_stability(enc: &EncoderTable, d: u32, dp: u32) -> Result<StabilityReport> {
    let masks = scan_masks(enc, d)?;
    let mut report = StabilityReport {
        n: enc.n(),
        ell: enc.ell(),
        domain: enc.domain(),
        d,
        dp,
        stable: true,
        counterexample: None,
        violations: 0,
        pairs_checked: 0,
        skipped_out_of_domain: 0,
        injective: enc.is_injective(),
    };
    for (x, fx) in enc.entries() {
        for &m in &masks {
            let y = x ^ m;
            let Some(fy) = enc.encode(y) else {
                report.skipped_out_of_domain += 1;
                continue;
            };
            if y < x {
                continue;
            }
            report.pairs_checked += 1;
            let out = hamming(fx, fy);
            if out > dp {
                report.violations += 1;
                report.counterexample.get_or_insert(Violation {
                    x,
                    x_tilde: y,
                    input_distance: m.count_ones(),
                    output_distance: out,
                });
            }
        }
    }
    report.stable = report.violations == 0;
    Ok(report)
}

/// For `D = 1..=d_max`, the largest codeword distance over domain pairs at
/// input distance at most `D` (0 when there are none).
pub fn stability_profile(enc: &EncoderTable, d_max: u32) -> Result<Vec<(u32, u32)>> {
    let masks = scan_masks(enc, d_max)?;
    let mut by_distance = vec![0u32; d_max as usize + 1];
    for (x, fx) in enc.entries() {
        for &m in &masks {
            let y = x ^ m;
            if y < x {
                continue;
            }
            if let Some(fy) = enc.encode(y) {
                let slot = &mut by_distance[m.count_ones() as usize];
                *slot = (*slot).max(hamming(fx, fy));
            }
        }
    }
    let mut running = 0;
    Ok((1..=d_max)
        .map(|d| {
            running = running.max(by_distance[d as usize]);
            (d, running)
        })
        .collect())
}
