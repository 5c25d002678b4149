use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

/// Exact binomial coefficient; zero when `k > n`.
pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient for signed arguments. Out-of-range `(n, k)` yields
/// zero together with `false`.
pub fn binom_flagged(n: i64, k: i64) -> (BigUint, bool) {
    if n < 0 || k < 0 || k > n {
        (BigUint::zero(), false)
    } else {
        (binom(n as u64, k as u64), true)
    }
}

/// `ln C(n, k)` via log-gamma; `-inf` when `k > n`.
pub fn ln_binom(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if k == 0 || k == n {
        return 0.0;
    }
    let (n, k) = (n as f64, k as f64);
    ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
}

/// `log2` of a big integer; `-inf` for zero.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits");
    (top as f64).log2() + shift as f64
}

/// Table of `ln m!` for `m <= n_max`, accumulated with Neumaier-compensated summation.
#[derive(Debug, Clone)]
pub struct LnFactorials {
    table: Vec<f64>,
}

impl LnFactorials {
    pub fn new(n_max: u64) -> Self {
        let mut table = Vec::with_capacity(n_max as usize + 1);
        table.push(0.0);
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for m in 1..=n_max {
            let term = (m as f64).ln();
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            table.push(sum + comp);
        }
        Self { table }
    }

    pub fn ln_fact(&self, m: u64) -> f64 {
        self.table[m as usize]
    }

    /// `ln C(n, k)`; `-inf` when `k > n`.
    pub fn ln_binom(&self, n: u64, k: u64) -> f64 {
        if k > n {
            f64::NEG_INFINITY
        } else {
            self.ln_fact(n) - self.ln_fact(k) - self.ln_fact(n - k)
        }
    }
}

/// Streaming `ln(sum exp(x_i))`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogSumExp {
    max: f64,
    scaled: f64,
}

impl LogSumExp {
    pub(crate) fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }

    pub(crate) fn add(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x > self.max {
            self.scaled = self.scaled * (self.max - x).exp() + 1.0;
            self.max = x;
        } else {
            self.scaled += (x - self.max).exp();
        }
    }

    pub(crate) fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled.ln()
        }
    }
}
