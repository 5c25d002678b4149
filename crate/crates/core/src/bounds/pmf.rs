use super::h2;
use crate::error::domain;
use crate::{Error, Result};

const SUM_TOL: f64 = 1e-12;

/// Joint distribution of a binary pair `(X, Y)`; `p10 = P[X=1, Y=0]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryJointPmf {
    pub p11: f64,
    pub p10: f64,
    pub p01: f64,
    pub p00: f64,
}

impl BinaryJointPmf {
    pub fn new(p11: f64, p10: f64, p01: f64, p00: f64) -> Result<Self> {
        let entries = [p11, p10, p01, p00];
        if entries.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return domain(format!("pmf entries must lie in [0, 1], got {entries:?}"));
        }
        let total: f64 = entries.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return domain(format!("pmf entries sum to {total}, not 1"));
        }
        Ok(Self { p11, p10, p01, p00 })
    }

    /// `P[X = 1]`.
    pub fn p_x1(&self) -> f64 {
        self.p11 + self.p10
    }

    /// `P[Y = 1]`.
    pub fn p_y1(&self) -> f64 {
        self.p11 + self.p01
    }

    /// `P[X != Y]`.
    pub fn mismatch(&self) -> f64 {
        self.p10 + self.p01
    }

    /// `H(X | Y)` in bits, computed as `E[h2(e(Y))]` with `e(y) = P[X != Y | Y = y]`.
    pub fn cond_entropy(&self) -> f64 {
        let y1 = self.p_y1();
        let y0 = self.p10 + self.p00;
        let mut h = 0.0;
        if y1 > 0.0 {
            h += y1 * h2(self.p01 / y1);
        }
        if y0 > 0.0 {
            h += y0 * h2(self.p10 / y0);
        }
        h
    }
}

/// Checks `H(X|Y) <= h2(d1/2) + 1e-12` for a pair with mismatch at most `d1/2`.
///
/// The inequality always holds (concavity of `h2`); `false` signals a bug.
pub fn cond_entropy_bound_check(pmf: &BinaryJointPmf, d1: f64) -> Result<bool> {
    if !(0.0..=1.0).contains(&d1) {
        return domain(format!("need 0 <= d1 <= 1, got {d1}"));
    }
    if pmf.mismatch() > d1 / 2.0 + SUM_TOL {
        return Err(Error::Precondition(format!(
            "mismatch {} exceeds d1/2 = {}",
            pmf.mismatch(),
            d1 / 2.0
        )));
    }
    Ok(pmf.cond_entropy() <= h2(d1 / 2.0) + 1e-12)
}
