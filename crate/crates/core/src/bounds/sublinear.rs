//! Constant-tolerance (sublinear) regime.
//!
//! The degree comparison at blocklength `n` reads `L(n) <= 0` with
//!
//! ```text
//! L(n) = (D - D') ln n + D' ln D' + (D/2) ln((p - e_n)(1 - p - e_n))
//!        - D ln(D/2) - D' ln(e^2 R)
//! ```
//!
//! so for constant `D > D'` the sequence diverges to `+inf` whatever the rate.

use crate::error::domain;
use crate::{Error, Result};

/// Typicality slack schedule `n -> e_n` with `e_n -> 0` and `e_n sqrt(n) -> inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsSchedule {
    /// `e_n = n^(-exponent)`, `0 < exponent < 1/2`.
    PowerLaw { exponent: f64 },
}

impl Default for EpsSchedule {
    fn default() -> Self {
        EpsSchedule::PowerLaw { exponent: 0.25 }
    }
}

impl EpsSchedule {
    pub fn eps(&self, n: u64) -> f64 {
        match *self {
            EpsSchedule::PowerLaw { exponent } => (n as f64).powf(-exponent),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            EpsSchedule::PowerLaw { exponent } if exponent > 0.0 && exponent < 0.5 => Ok(()),
            EpsSchedule::PowerLaw { exponent } => domain(format!(
                "power-law schedule needs 0 < exponent < 1/2, got {exponent}"
            )),
        }
    }

    /// First `n` with `e_n < p`.
    fn onset(&self, p: f64) -> u64 {
        match *self {
            EpsSchedule::PowerLaw { exponent } => {
                let mut n = p.powf(-1.0 / exponent).floor().max(1.0) as u64;
                while self.eps(n) >= p {
                    n += 1;
                }
                while n > 1 && self.eps(n - 1) < p {
                    n -= 1;
                }
                n
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SublinearSpec {
    /// Constant input tolerance `D` (even, at least 2).
    pub d: u32,
    /// Constant output tolerance `D'` (at least 1).
    pub dp: u32,
    pub p: f64,
    pub rate: f64,
    pub schedule: EpsSchedule,
    /// First blocklength evaluated; defaults to the first `n` with `e_n < p`.
    pub n_start: Option<u64>,
}

impl SublinearSpec {
    pub fn new(d: u32, dp: u32, p: f64, rate: f64) -> Self {
        Self {
            d,
            dp,
            p,
            rate,
            schedule: EpsSchedule::default(),
            n_start: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d < 2 || self.d % 2 != 0 {
            return domain(format!("D must be even and at least 2, got {}", self.d));
        }
        if self.dp < 1 {
            return domain("D' must be at least 1");
        }
        if !(self.p > 0.0 && self.p < 0.5) {
            return domain(format!("p must lie in (0, 1/2), got {}", self.p));
        }
        if !(self.rate > 0.0) {
            return domain(format!("rate must be positive, got {}", self.rate));
        }
        self.schedule.validate()
    }

    /// `ln` of the expression that must stay at most one, `n -> inf` limit aside.
    fn residual_limit(&self) -> f64 {
        let (d, dp) = (self.d as f64, self.dp as f64);
        dp * dp.ln() + d / 2.0 * (self.p * (1.0 - self.p)).ln()
            - d * (d / 2.0).ln()
            - dp * (2.0 + self.rate.ln())
    }
}

/// `L(n)`, the natural log of the sublinear degree expression at blocklength `n`.
pub fn sublinear_log_expression(spec: &SublinearSpec, n: u64) -> Result<f64> {
    spec.validate()?;
    log_expression(spec, n)
}

fn log_expression(spec: &SublinearSpec, n: u64) -> Result<f64> {
    let eps = spec.schedule.eps(n);
    let lo = spec.p - eps;
    if lo <= 0.0 {
        return Err(Error::Domain(format!(
            "schedule error: p - e_n = {lo} <= 0 at n = {n}"
        )));
    }
    let (d, dp) = (spec.d as f64, spec.dp as f64);
    let exponent = d - dp;
    Ok(exponent * (n as f64).ln() + dp * dp.ln() + d / 2.0 * (lo * (1.0 - spec.p - eps)).ln()
        - d * (d / 2.0).ln()
        - dp * (2.0 + spec.rate.ln()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SublinearVerdict {
    /// `L(n) -> +inf` (or converges to a positive constant): no such code sequence.
    Infeasible,
    /// `L(n)` stays bounded above by zero in the limit.
    FeasibleConsistent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SublinearReport {
    pub verdict: SublinearVerdict,
    /// `D <= D'`.
    pub corollary_holds: bool,
    /// Coefficient `D - D'` of `ln n`.
    pub n_exponent: i64,
    /// `lim L(n) - (D - D') ln n`.
    pub residual_limit: f64,
    pub n_start: u64,
    pub n_max: u64,
    pub max_log: f64,
    pub final_log: f64,
    /// `(L(n_max) - L(n_max / 10)) / ln 10`, which tends to `D - D'`.
    pub tail_slope: f64,
    /// `L(n)` at `n_start` and at each power of ten up to `n_max`.
    pub samples: Vec<(u64, f64)>,
}

/// Evaluates `L(n)` for `n = n_start..=n_max` and classifies the sequence.
///
/// The verdict follows the split `L(n) = (D - D') ln n + c(n)` with
/// `c(n)` convergent: divergence iff `D > D'`; for `D = D'` the limit
/// `c(inf)` decides.
pub fn sublinear_feasible(spec: &SublinearSpec, n_max: u64) -> Result<SublinearReport> {
    spec.validate()?;
    let n_start = match spec.n_start {
        Some(n) => n.max(1),
        None => spec.schedule.onset(spec.p),
    };
    if n_start > n_max {
        return Err(Error::Domain(format!(
            "schedule error: p - e_n <= 0 for every n <= {n_max} (first valid n is {n_start})"
        )));
    }

    let mut max_log = f64::NEG_INFINITY;
    let mut final_log = f64::NEG_INFINITY;
    let mut samples = Vec::new();
    let mut next_sample = 10u64;
    for n in n_start..=n_max {
        let v = log_expression(spec, n)?;
        max_log = max_log.max(v);
        final_log = v;
        if n == n_start {
            samples.push((n, v));
        }
        while next_sample < n {
            next_sample = next_sample.saturating_mul(10);
        }
        if n == next_sample {
            samples.push((n, v));
        }
    }
    let tail_from = (n_max / 10).max(n_start);
    let tail_slope = if n_max > tail_from {
        (final_log - log_expression(spec, tail_from)?) / ((n_max as f64) / (tail_from as f64)).ln()
    } else {
        f64::NAN
    };

    let n_exponent = spec.d as i64 - spec.dp as i64;
    let residual_limit = spec.residual_limit();
    let verdict = match n_exponent {
        e if e > 0 => SublinearVerdict::Infeasible,
        0 if residual_limit > 0.0 => SublinearVerdict::Infeasible,
        _ => SublinearVerdict::FeasibleConsistent,
    };
    Ok(SublinearReport {
        verdict,
        corollary_holds: spec.d <= spec.dp,
        n_exponent,
        residual_limit,
        n_start,
        n_max,
        max_log,
        final_log,
        tail_slope,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn larger_input_tolerance_diverges() {
        let r = sublinear_feasible(&SublinearSpec::new(4, 2, 0.3, 1.0), 1_000_000).unwrap();
        assert_eq!(r.verdict, SublinearVerdict::Infeasible);
        assert!(!r.corollary_holds);
        // c(n) still creeps up with e_n = n^(-1/4), so the slope approaches 2 from above.
        assert!(r.tail_slope > 2.0 && r.tail_slope < 2.2, "{}", r.tail_slope);
        assert!(r.final_log > r.samples[0].1);
    }

    #[test]
    fn equal_tolerances_stay_bounded() {
        let r = sublinear_feasible(&SublinearSpec::new(2, 2, 0.3, 1.0), 1_000_000).unwrap();
        assert_eq!(r.verdict, SublinearVerdict::FeasibleConsistent);
        assert!(r.corollary_holds);
        // 2 ln 2 + ln 0.21 - 2 ln 1 - 4
        assert!((r.residual_limit - (2.0 * 2f64.ln() + 0.21f64.ln() - 4.0)).abs() < 1e-12);
        assert!(r.max_log < 0.0);
        assert!(r.max_log <= r.residual_limit + 1e-9);
    }

    #[test]
    fn smaller_input_tolerance_vanishes() {
        let r = sublinear_feasible(&SublinearSpec::new(2, 4, 0.3, 1.0), 100_000).unwrap();
        assert_eq!(r.verdict, SublinearVerdict::FeasibleConsistent);
        assert!(r.tail_slope < -1.5 && r.tail_slope > -2.0, "{}", r.tail_slope);
    }

    #[test]
    fn schedule_onset() {
        let spec = SublinearSpec::new(2, 2, 0.1, 1.0);
        let r = sublinear_feasible(&spec, 20_000).unwrap();
        assert_eq!(r.n_start, 10_001);
        assert!(sublinear_feasible(&spec, 10_000).is_err());
        let forced = SublinearSpec {
            n_start: Some(5),
            ..spec
        };
        assert!(sublinear_feasible(&forced, 100).is_err());
    }

    #[test]
    fn rejects_odd_input_tolerance() {
        assert!(sublinear_feasible(&SublinearSpec::new(3, 2, 0.3, 1.0), 100).is_err());
        assert!(sublinear_feasible(&SublinearSpec::new(2, 0, 0.3, 1.0), 100).is_err());
    }
}
