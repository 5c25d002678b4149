use crate::bounds::{h2, min_rate, BoundKind, MinRate};
use crate::{Error, Result};

/// Grid points scanned for sign changes before bisection.
pub const CROSSOVER_SCAN_POINTS: usize = 2000;
/// Bisection tolerance in `p`.
pub const CROSSOVER_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverRoot {
    pub p: f64,
    /// `true` when the bound's minimum rate drops below `h2(p)` as `p` grows,
    /// i.e. the bound stops binding.
    pub falling: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crossover {
    pub which: BoundKind,
    /// Every sign change of `min_rate - h2(p)` on the scanned interval, increasing in `p`.
    pub roots: Vec<CrossoverRoot>,
    /// The last point where the bound stops binding; `None` reports no crossover.
    pub primary: Option<f64>,
}

/// Finds where the minimum rate allowed by one converse meets `R = h2(p)`
/// on `d1/2 < p <= 1/2`.
///
/// A bound whose minimum rate sits at the floor `R = d2` is not binding there
/// and counts as lying below the curve.
pub fn crossover(d1: f64, d2: f64, which: BoundKind) -> Result<Crossover> {
    if !matches!(which, BoundKind::Degree | BoundKind::Clique) {
        return Err(Error::Config("crossover is defined for the degree and clique bounds".into()));
    }
    let floor = d2.max(1e-12);
    let gap = |p: f64| -> Result<f64> {
        let h = h2(p);
        Ok(match min_rate(d1, d2, p, which)? {
            MinRate::Unbounded => f64::INFINITY,
            MinRate::Finite(r) if r <= floor => -h.max(f64::MIN_POSITIVE),
            MinRate::Finite(r) => r - h,
        })
    };
    // Open at the left end, where the clique bound is undefined.
    let a = d1 / 2.0 + 1e-9;
    let b = 0.5;
    if !(a < b) {
        return Err(Error::Domain(format!("no p range above d1/2 = {}", d1 / 2.0)));
    }
    let step = (b - a) / CROSSOVER_SCAN_POINTS as f64;
    let mut roots = Vec::new();
    let mut prev_p = a;
    let mut prev = gap(a)?;
    for i in 1..=CROSSOVER_SCAN_POINTS {
        let p = if i == CROSSOVER_SCAN_POINTS { b } else { a + step * i as f64 };
        let cur = gap(p)?;
        if (prev > 0.0) != (cur > 0.0) {
            let (mut lo, mut hi) = (prev_p, p);
            let lo_positive = prev > 0.0;
            while hi - lo > CROSSOVER_TOLERANCE {
                let mid = 0.5 * (lo + hi);
                if (gap(mid)? > 0.0) == lo_positive {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push(CrossoverRoot {
                p: 0.5 * (lo + hi),
                falling: lo_positive,
            });
        }
        prev_p = p;
        prev = cur;
    }
    let primary = roots.iter().rev().find(|r| r.falling).map(|r| r.p);
    Ok(Crossover {
        which,
        roots,
        primary,
    })
}
