//! Asymptotic converse bounds in the linear and sublinear regimes.
//!
//! All entropies are evaluated in nats internally and reported in bits.
//! `h2(0) = h2(1) = 0` by continuity.

mod lambda;
mod pmf;
mod sublinear;

pub use lambda::{DEFAULT_GRID_STEP, lambda_grid, lambda_maximizer, lambda_objective, LambdaMax, LambdaPoint};
pub use pmf::{cond_entropy_bound_check, BinaryJointPmf};
pub use sublinear::{
    sublinear_feasible, sublinear_log_expression, EpsSchedule, SublinearReport, SublinearSpec,
    SublinearVerdict,
};

use crate::error::domain;
use crate::{Error, Result};

/// Hard cap on the rate searched by [`min_rate`].
pub const DEFAULT_RATE_CAP: f64 = 4.0;
/// Absolute bisection tolerance of [`min_rate`].
pub const RATE_TOLERANCE: f64 = 1e-9;

/// `-x ln x`, with `0 ln 0 = 0`.
#[inline]
fn neg_xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln()
    }
}

/// Binary entropy in nats, clamping the argument into `[0, 1]`.
#[inline]
pub(crate) fn h2_nats(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    neg_xlnx(x) + neg_xlnx(1.0 - x)
}

/// Binary entropy in bits without domain checks (argument clamped).
#[inline]
pub(crate) fn h2(x: f64) -> f64 {
    h2_nats(x) / std::f64::consts::LN_2
}

/// Binary entropy `h2(x)` in bits.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("binary entropy needs 0 <= x <= 1, got {x}"));
    }
    Ok(h2(x))
}

/// Exponent of the number of weight-`pn` neighbours reached by swapping
/// `xn` ones with `xn` zeros: `s(x) = p h2(x/p) + (1-p) h2(x/(1-p))`.
pub fn s_func(x: f64, p: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&p) {
        return domain(format!("s(x) needs 0 <= p <= 1/2, got p = {p}"));
    }
    if x < 0.0 || x > p {
        return domain(format!("s(x) needs 0 <= x <= p, got x = {x}, p = {p}"));
    }
    Ok(s_unchecked(x, p))
}

fn s_unchecked(x: f64, p: f64) -> f64 {
    let a = if p > 0.0 { p * h2_nats(x / p) } else { 0.0 };
    let b = (1.0 - p) * h2_nats(x / (1.0 - p));
    (a + b) / std::f64::consts::LN_2
}

/// Source-side degree exponent `F(d1, p)`.
pub fn f_bound(d1: f64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 0.5) {
        return domain(format!("F needs 0 < p <= 1/2, got {p}"));
    }
    if d1 < 0.0 {
        return domain(format!("F needs d1 >= 0, got {d1}"));
    }
    let half = d1 / 2.0;
    if half <= p * (1.0 - p) {
        Ok(s_unchecked(half.min(p), p))
    } else {
        Ok(h2(p))
    }
}

/// Codeword-side degree exponent `G(d2, R)`.
pub fn g_bound(d2: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0) {
        return domain(format!("G needs R > 0, got {rate}"));
    }
    if d2 < 0.0 || d2 > rate {
        return domain(format!("G needs 0 <= d2 <= R, got d2 = {d2}, R = {rate}"));
    }
    if d2 < rate / 2.0 {
        Ok(rate * h2(d2 / rate))
    } else {
        Ok(rate)
    }
}

/// Codeword-side clique exponent `Psi(d2, R)` (Kleitman's diameter bound).
pub fn psi_bound(d2: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0) {
        return domain(format!("Psi needs R > 0, got {rate}"));
    }
    if d2 < 0.0 {
        return domain(format!("Psi needs d2 >= 0, got {d2}"));
    }
    if d2 < rate {
        Ok(rate * h2(d2 / (2.0 * rate)))
    } else {
        Ok(rate)
    }
}

/// Linear-regime operating point: `D_n ~ d1 n`, `D'_n ~ d2 n`, `P(X=1) = p`, rate `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearParams {
    pub d1: f64,
    pub d2: f64,
    pub p: f64,
    pub rate: f64,
}

impl LinearParams {
    /// Validates `0 <= d1/2 <= p <= 1/2`, `p > 0` and `0 <= d2 <= R`.
    pub fn new(d1: f64, d2: f64, p: f64, rate: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 0.5) {
            return domain(format!("p must lie in (0, 1/2], got {p}"));
        }
        if !(d1 >= 0.0 && d1 / 2.0 <= p) {
            return domain(format!("need 0 <= d1/2 <= p, got d1 = {d1}, p = {p}"));
        }
        if !(rate > 0.0) {
            return domain(format!("rate must be positive, got {rate}"));
        }
        if !(d2 >= 0.0 && d2 <= rate) {
            return domain(format!("need 0 <= d2 <= R, got d2 = {d2}, R = {rate}"));
        }
        Ok(Self { d1, d2, p, rate })
    }

    pub fn f(&self) -> f64 {
        f_bound(self.d1, self.p).expect("validated parameters")
    }

    pub fn g(&self) -> f64 {
        g_bound(self.d2, self.rate).expect("validated parameters")
    }

    pub fn psi(&self) -> f64 {
        psi_bound(self.d2, self.rate).expect("validated parameters")
    }
}

/// Degree bound: `F(d1, p) <= G(d2, R)`. `false` rules the rate point out.
pub fn theorem1_feasible(params: &LinearParams) -> bool {
    params.f() <= params.g()
}

/// Clique bound: `h2(d1/2) <= Psi(d2, R)`; requires `d1/2 < p`.
pub fn theorem2_feasible(params: &LinearParams) -> Result<bool> {
    if params.d1 / 2.0 >= params.p {
        return Err(Error::Precondition(format!(
            "clique bound needs d1/2 < p, got d1 = {}, p = {}",
            params.d1, params.p
        )));
    }
    Ok(h2(params.d1 / 2.0) <= params.psi())
}

/// Trivial converse `R >= h2(p)`.
pub fn trivial_feasible(params: &LinearParams) -> bool {
    params.rate >= h2(params.p)
}

/// Which converse [`min_rate`] inverts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Degree,
    Clique,
    Trivial,
    All,
}

impl std::str::FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree" => Ok(Self::Degree),
            "clique" => Ok(Self::Clique),
            "trivial" => Ok(Self::Trivial),
            "all" => Ok(Self::All),
            other => Err(Error::Config(format!(
                "unknown bound {other:?} (expected degree, clique, trivial or all)"
            ))),
        }
    }
}

/// Smallest rate allowed by a converse, or `Unbounded` when none up to the cap works.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinRate {
    Finite(f64),
    Unbounded,
}

impl MinRate {
    pub fn value(self) -> Option<f64> {
        match self {
            MinRate::Finite(r) => Some(r),
            MinRate::Unbounded => None,
        }
    }
}

/// Smallest rate `R` (at least `d2`) satisfying the selected converse, with the default cap.
pub fn min_rate(d1: f64, d2: f64, p: f64, which: BoundKind) -> Result<MinRate> {
    min_rate_with_cap(d1, d2, p, which, DEFAULT_RATE_CAP)
}

pub fn min_rate_with_cap(d1: f64, d2: f64, p: f64, which: BoundKind, cap: f64) -> Result<MinRate> {
    // Validates the (d1, d2, p) part of the regime; the rate is the unknown.
    LinearParams::new(d1, d2, p, cap.max(d2).max(f64::MIN_POSITIVE))?;
    let lo = d2.max(1e-12);
    match which {
        BoundKind::Trivial => {
            let r = h2(p);
            Ok(if r <= cap { MinRate::Finite(r) } else { MinRate::Unbounded })
        }
        BoundKind::Degree => {
            let f = f_bound(d1, p)?;
            Ok(bisect_rate(lo, cap, |r| f <= g_bound(d2, r).unwrap_or(f64::NEG_INFINITY)))
        }
        BoundKind::Clique => {
            if d1 / 2.0 >= p {
                return Err(Error::Precondition(format!(
                    "clique bound needs d1/2 < p, got d1 = {d1}, p = {p}"
                )));
            }
            let target = h2(d1 / 2.0);
            Ok(bisect_rate(lo, cap, |r| target <= psi_bound(d2, r).unwrap_or(f64::NEG_INFINITY)))
        }
        BoundKind::All => {
            let mut best = 0.0f64;
            for kind in [BoundKind::Degree, BoundKind::Clique, BoundKind::Trivial] {
                match min_rate_with_cap(d1, d2, p, kind, cap)? {
                    MinRate::Finite(r) => best = best.max(r),
                    MinRate::Unbounded => return Ok(MinRate::Unbounded),
                }
            }
            Ok(MinRate::Finite(best))
        }
    }
}

/// Bisection for the infimum of a predicate that is monotone (false then true) in the rate.
fn bisect_rate(lo: f64, cap: f64, holds: impl Fn(f64) -> bool) -> MinRate {
    if lo > cap || !holds(cap) {
        return MinRate::Unbounded;
    }
    if holds(lo) {
        return MinRate::Finite(lo);
    }
    let (mut a, mut b) = (lo, cap);
    while b - a > RATE_TOLERANCE {
        let mid = 0.5 * (a + b);
        if holds(mid) {
            b = mid;
        } else {
            a = mid;
        }
    }
    MinRate::Finite(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // -0.1 log2 0.1 - 0.9 log2 0.9
        assert!(close(binary_entropy(0.1).unwrap(), 0.468_995_593_589_281_2, 1e-15));
        assert!(binary_entropy(-0.01).is_err());
        assert!(binary_entropy(1.01).is_err());
    }

    #[test]
    fn s_endpoints() {
        assert_eq!(s_func(0.0, 0.3).unwrap(), 0.0);
        assert!(close(s_func(0.3 * 0.7, 0.3).unwrap(), h2(0.3), 1e-14));
        assert!(close(h2(0.3), 0.881_290_899_230_692_6, 1e-14));
        assert!(s_func(0.31, 0.3).is_err());
    }

    #[test]
    fn s_at_a_tenth() {
        // 0.3 h2(1/3) + 0.7 h2(1/7), 30-digit reference evaluation
        let v = s_func(0.1, 0.3).unwrap();
        assert!(close(v, 0.689_659_695_223_976_0, 1e-14), "{v}");
    }

    #[test]
    fn f_cases() {
        assert!(close(f_bound(0.5, 0.3).unwrap(), h2(0.3), 1e-15));
        assert_eq!(f_bound(0.0, 0.2).unwrap(), 0.0);
        assert!(close(f_bound(0.2, 0.2).unwrap(), 0.634_851_554_559_677_1, 1e-14));
    }

    #[test]
    fn g_and_psi_cases() {
        assert_eq!(g_bound(0.5, 1.0).unwrap(), 1.0);
        assert_eq!(g_bound(0.0, 1.0).unwrap(), 0.0);
        assert!(close(g_bound(0.21, 1.0).unwrap(), 0.741_482_739_931_273_7, 1e-14));
        assert!(g_bound(1.1, 1.0).is_err());
        assert_eq!(psi_bound(0.8, 0.8).unwrap(), 0.8);
        assert_eq!(psi_bound(0.0, 1.0).unwrap(), 0.0);
        assert!(close(psi_bound(0.21, 0.9).unwrap(), 0.9 * h2(0.21 / 1.8), 1e-15));
        assert!(close(psi_bound(0.21, 0.9).unwrap(), 0.467_732_507_853_874_9, 1e-14));
        assert!(psi_bound(0.1, 0.0).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let ok = LinearParams::new(0.2, 0.21, 0.2, 1.0).unwrap();
        assert!(theorem1_feasible(&ok));
        let bad = LinearParams::new(0.2, 0.21, 0.2, 0.42).unwrap();
        assert!(!theorem1_feasible(&bad));
        let zero = LinearParams::new(0.0, 0.0, 0.3, 0.7).unwrap();
        assert!(theorem1_feasible(&zero));
        assert!(theorem2_feasible(&zero).unwrap());

        assert!(theorem2_feasible(&LinearParams::new(0.2, 0.21, 0.3, 0.95).unwrap()).unwrap());
        assert!(!theorem2_feasible(&LinearParams::new(0.2, 0.21, 0.3, 0.6).unwrap()).unwrap());
        let edge = LinearParams::new(0.4, 0.21, 0.2, 1.0).unwrap();
        assert!(matches!(theorem2_feasible(&edge), Err(Error::Precondition(_))));
    }

    #[test]
    fn params_reject_bad_regimes() {
        assert!(LinearParams::new(0.5, 0.1, 0.2, 1.0).is_err());
        assert!(LinearParams::new(0.1, 1.1, 0.2, 1.0).is_err());
        assert!(LinearParams::new(0.1, 0.1, 0.0, 1.0).is_err());
        assert!(LinearParams::new(0.1, 0.1, 0.6, 1.0).is_err());
    }

    #[test]
    fn min_rate_examples() {
        let t = min_rate(0.2, 0.21, 0.3, BoundKind::Trivial).unwrap().value().unwrap();
        assert!(close(t, h2(0.3), 1e-15));
        let d = min_rate(0.2, 0.21, 0.239, BoundKind::Degree).unwrap().value().unwrap();
        assert!(close(d, h2(0.239), 2e-3), "{d} vs {}", h2(0.239));
        let c = min_rate(0.2, 0.21, 0.321, BoundKind::Clique).unwrap().value().unwrap();
        assert!(close(c, h2(0.321), 2e-3), "{c} vs {}", h2(0.321));
        let all = min_rate(0.2, 0.21, 0.3, BoundKind::All).unwrap().value().unwrap();
        assert!(close(all, t.max(c).max(min_rate(0.2, 0.21, 0.3, BoundKind::Degree).unwrap().value().unwrap()), 0.0));
    }

    #[test]
    fn min_rate_reports_unbounded() {
        // Psi(d2, R) <= R, so a tiny cap cannot reach h2(d1/2).
        let r = min_rate_with_cap(0.2, 0.01, 0.3, BoundKind::Clique, 0.1).unwrap();
        assert_eq!(r, MinRate::Unbounded);
    }

    #[test]
    fn min_rate_is_tight() {
        for &(d1, d2, p) in &[(0.2, 0.21, 0.25), (0.1, 0.3, 0.4), (0.3, 0.25, 0.45)] {
            let r = min_rate(d1, d2, p, BoundKind::Degree).unwrap().value().unwrap();
            let at = LinearParams::new(d1, d2, p, r).unwrap();
            assert!(theorem1_feasible(&at));
            if r - 1e-8 > d2 {
                let below = LinearParams::new(d1, d2, p, r - 1e-8).unwrap();
                assert!(!theorem1_feasible(&below));
            }
        }
    }
}
