//! Exact-arithmetic verification of the four binomial estimates used by
//! the degree bounds. Powers of two of entropies are cleared into integers:
//! `2^{n h2(k/n)} = n^n / (k^k (n-k)^(n-k))`, with `0^0 = 1`.

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

/// Rational bracket of Euler's number, `E_LO / 10^9 < e < E_HI / 10^9`.
const E_LO: u64 = 2_718_281_828;
const E_HI: u64 = 2_718_281_829;
const E_DEN: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinomialInequality {
    /// `C(n,k) >= 2^{n h2(k/n)} / (n+1)`, `0 <= k <= n`.
    EntropyLower,
    /// `C(n,k) >= n^k / k^k`, `1 <= k <= n`.
    PowerLower,
    /// `sum_{i<=k} C(n,i) <= 2^{n h2(k/n)}`, `k <= n/2`.
    BallEntropyUpper,
    /// `sum_{i<=k} C(n,i) <= (k+1) C(n,k)`, `k <= n/2`.
    BallTermUpper,
    /// `(k+1) C(n,k) <= (k+1) (e n)^k / k^k`, `k <= n/2`.
    TermPowerUpper,
}

impl BinomialInequality {
    pub const ALL: [BinomialInequality; 5] = [
        Self::EntropyLower,
        Self::PowerLower,
        Self::BallEntropyUpper,
        Self::BallTermUpper,
        Self::TermPowerUpper,
    ];
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InequalityReport {
    /// Number of `(n, k)` instances checked, per inequality in [`BinomialInequality::ALL`] order.
    pub checked: [u64; 5],
    pub violations: Vec<(BinomialInequality, u64, u64)>,
    /// Instances the rational bracket of `e` could not decide.
    pub undecided: Vec<(u64, u64)>,
}

impl InequalityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.undecided.is_empty()
    }
}

/// Checks every inequality for all admissible `(n, k)` with `1 <= n <= n_max`.
pub fn check_binomial_inequalities(n_max: u64) -> InequalityReport {
    let mut report = InequalityReport::default();
    // self_pow[m] = m^m
    let self_pow: Vec<BigUint> = (0..=n_max)
        .map(|m| if m == 0 { BigUint::one() } else { Pow::pow(BigUint::from(m), m) })
        .collect();
    let e_lo = BigUint::from(E_LO);
    let e_hi = BigUint::from(E_HI);
    let e_den = BigUint::from(E_DEN);

    for n in 1..=n_max {
        let nn = &self_pow[n as usize];
        let mut c = BigUint::one(); // C(n, k)
        let mut ball = BigUint::zero(); // sum_{i<=k} C(n, i)
        let mut n_pow_k = BigUint::one();
        let mut lo_pow = BigUint::one(); // E_LO^k
        let mut hi_pow = BigUint::one();
        let mut den_pow = BigUint::one();
        for k in 0..=n {
            if k > 0 {
                c = c * (n - k + 1) / k;
                n_pow_k *= n;
                lo_pow *= &e_lo;
                hi_pow *= &e_hi;
                den_pow *= &e_den;
            }
            ball += &c;
            let kk = &self_pow[k as usize];
            let entropy_den = kk * &self_pow[(n - k) as usize];

            report.checked[0] += 1;
            if (n + 1) * &c * &entropy_den < *nn {
                report.violations.push((BinomialInequality::EntropyLower, n, k));
            }
            if k >= 1 {
                report.checked[1] += 1;
                if &c * kk < n_pow_k {
                    report.violations.push((BinomialInequality::PowerLower, n, k));
                }
            }
            if 2 * k <= n {
                report.checked[2] += 1;
                if &ball * &entropy_den > *nn {
                    report.violations.push((BinomialInequality::BallEntropyUpper, n, k));
                }
                report.checked[3] += 1;
                if ball > (k + 1) * &c {
                    report.violations.push((BinomialInequality::BallTermUpper, n, k));
                }
                // C(n,k) k^k <= e^k n^k: holds if it holds with E_LO in place
                // of e, fails if it fails with E_HI.
                report.checked[4] += 1;
                let lhs = &c * kk * &den_pow;
                if lhs > &hi_pow * &n_pow_k {
                    report.violations.push((BinomialInequality::TermPowerUpper, n, k));
                } else if lhs > &lo_pow * &n_pow_k {
                    report.undecided.push((n, k));
                }
            }
        }
    }
    report
}
