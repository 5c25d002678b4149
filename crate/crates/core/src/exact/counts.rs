//! Degrees and clique numbers of the source graph `G(n, k, D)` (weight-`k`
//! slice, edges at Hamming distance `<= D`) and of the codeword graph
//! `H(ell, D')` (`D'`-th power of the `ell`-cube).

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::binom::{binom, log2_big, LnFactorials, LogSumExp};
use crate::error::domain;
use crate::{Error, Result};

/// Largest blocklength handled with exact big integers by the `log2_*` helpers.
pub const EXACT_THRESHOLD: u64 = 2000;

/// Finite-blocklength parameters: blocklength `n`, type weight `k`, input
/// tolerance `D`, codeword length `ell` and output tolerance `D'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombinatorialSpec {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub ell: u64,
    pub dp: u64,
}

impl CombinatorialSpec {
    /// Checks `0 < k < n`, `floor(D/2) <= k` and `ell >= 1`.
    pub fn new(n: u64, k: u64, d: u64, ell: u64, dp: u64) -> Result<Self> {
        if !(0 < k && k < n) {
            return domain(format!("need 0 < k < n, got n = {n}, k = {k}"));
        }
        if d / 2 > k {
            return domain(format!("need floor(D/2) <= k, got D = {d}, k = {k}"));
        }
        if ell == 0 {
            return domain("codeword length must be positive");
        }
        Ok(Self { n, k, d, ell, dp })
    }

    /// Type-class probability `k / n`.
    pub fn p_n(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn degree_gn(&self) -> BigUint {
        degree_gn(self.n, self.k, self.d)
    }

    pub fn degree_hn(&self) -> BigUint {
        degree_hn(self.ell, self.dp)
    }

    pub fn omega_gn(&self) -> OmegaGn {
        omega_gn(self.n, self.k, self.d)
    }

    pub fn omega_hn(&self) -> BigUint {
        omega_hn(self.ell, self.dp)
    }

    /// The clique obstruction (`omega_gn > omega_hn`) or degree obstruction
    /// (`degree_gn > degree_hn`) rules out a stable injective encoder on the full slice.
    pub fn obstructed(&self) -> bool {
        self.degree_gn() > self.degree_hn() || self.omega_gn().value > self.omega_hn()
    }
}

/// Regular degree of `G(n, k, D)`: `sum_{j=1}^{floor(D/2)} C(k, j) C(n-k, j)`.
/// Zero when `D < 2`.
pub fn degree_gn(n: u64, k: u64, d: u64) -> BigUint {
    assert!(k <= n, "weight exceeds length");
    let top = (d / 2).min(k).min(n - k);
    let mut sum = BigUint::zero();
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for j in 1..=top {
        // a = C(k, j), b = C(n-k, j), updated multiplicatively.
        a = a * (k - j + 1) / j;
        b = b * (n - k - j + 1) / j;
        sum += &a * &b;
    }
    sum
}

/// Regular degree of `H(ell, D')`: `sum_{i=1}^{min(D', ell)} C(ell, i)`.
pub fn degree_hn(ell: u64, dp: u64) -> BigUint {
    let mut sum = BigUint::zero();
    let mut c = BigUint::one();
    for i in 1..=dp.min(ell) {
        c = c * (ell - i + 1) / i;
        sum += &c;
    }
    sum
}

/// Hamming ball volume `B(ell, v) = sum_{i<=v} C(ell, i)`.
pub fn hamming_ball(ell: u64, v: u64) -> BigUint {
    degree_hn(ell, v) + 1u32
}

/// Clique number of `H(ell, D')` (maximum size of a set of diameter `<= D'`, Kleitman).
pub fn omega_hn(ell: u64, dp: u64) -> BigUint {
    if dp >= ell {
        return BigUint::one() << ell;
    }
    let v = dp / 2;
    if dp % 2 == 0 {
        hamming_ball(ell, v)
    } else {
        hamming_ball(ell, v) + binom(ell - 1, v)
    }
}

/// `|F_r| = sum_{j=t+r}^{min(k, t+2r)} C(t+2r, j) C(n-t-2r, k-j)`, the size of the
/// family of `k`-sets meeting `[t+2r]` in at least `t+r` points.
pub fn ak_family_size(n: u64, k: u64, t: u64, r: u64) -> BigUint {
    let head = t + 2 * r;
    if head > n {
        return BigUint::zero();
    }
    let tail = n - head;
    // j ranges over t+r..=min(k, head) with k - j <= tail.
    let lo = (t + r).max(k.saturating_sub(tail));
    let hi = k.min(head);
    if lo > hi {
        return BigUint::zero();
    }
    // Walk j upwards, updating C(head, j) and C(tail, k - j) by ratios.
    let mut a = binom(head, lo);
    let mut b = binom(tail, k - lo);
    let mut sum = &a * &b;
    for j in lo..hi {
        a = a * (head - j) / (j + 1);
        b = b * (k - j) / (tail - (k - j) + 1);
        sum += &a * &b;
    }
    sum
}

/// The generator index predicted in closed form, when `n > 2(k - t + 1)`.
///
/// `ceil((k-t+1)(t-1) / (n - 2(k-t+1)) - 1)`, clipped to the valid range.
pub fn ak_closed_form_r(n: u64, k: u64, t: u64) -> Option<u64> {
    let a = k - t + 1;
    if n <= 2 * a {
        return None;
    }
    let num = a * (t - 1);
    let den = n - 2 * a;
    // ceil(num/den - 1) = ceil(num/den) - 1, floored at zero.
    let r = num.div_ceil(den).saturating_sub(1);
    Some(r.min((n - t) / 2))
}

/// Maximum `t`-intersecting family of `k`-subsets of `[n]` (Ahlswede-Khachatrian).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AkMax {
    pub size: BigUint,
    /// Smallest `r` attaining the maximum.
    pub argmax_r: u64,
    pub closed_form_r: Option<u64>,
    /// Whether `F_{closed_form_r}` attains the maximum.
    pub closed_form_attains: Option<bool>,
}

/// `M(n, k, t) = max_{0 <= r <= floor((n-t)/2)} |F_r|`, maximized over the full range.
pub fn ak_max_family(n: u64, k: u64, t: u64) -> Result<AkMax> {
    if !(1 <= t && t <= k && k <= n) {
        return domain(format!("need 1 <= t <= k <= n, got n = {n}, k = {k}, t = {t}"));
    }
    let mut best = BigUint::zero();
    let mut argmax_r = 0;
    let mut sizes = Vec::new();
    for r in 0..=(n - t) / 2 {
        let s = ak_family_size(n, k, t, r);
        if s > best {
            best = s.clone();
            argmax_r = r;
        }
        sizes.push(s);
    }
    let closed_form_r = ak_closed_form_r(n, k, t);
    let closed_form_attains = closed_form_r.map(|r| sizes[r as usize] == best);
    Ok(AkMax {
        size: best,
        argmax_r,
        closed_form_r,
        closed_form_attains,
    })
}

/// Clique number of `G(n, k, D)` together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaGn {
    pub value: BigUint,
    /// Intersection parameter `t = k - floor(D/2)`; may be `<= 0`.
    pub t: i64,
    /// `false` when `t < 1`: every pair is adjacent and the clique is the whole slice.
    pub via_ak: bool,
}

/// Both forms of the intersection parameter: `(ceil(k - D/2), k - floor(D/2))`.
pub fn intersection_params(k: u64, d: u64) -> (i64, i64) {
    let twice = 2 * k as i64 - d as i64;
    let ceil = twice.div_euclid(2) + i64::from(twice.rem_euclid(2) != 0);
    (ceil, k as i64 - (d / 2) as i64)
}

/// `omega(G(n, k, D)) = M(n, k, k - floor(D/2))`, or `C(n, k)` when `t < 1`.
pub fn omega_gn(n: u64, k: u64, d: u64) -> OmegaGn {
    assert!(k <= n, "weight exceeds length");
    let (t_ceil, t) = intersection_params(k, d);
    debug_assert_eq!(t_ceil, t);
    if t < 1 {
        return OmegaGn {
            value: binom(n, k),
            t,
            via_ak: false,
        };
    }
    let m = ak_max_family(n, k, t as u64).expect("1 <= t <= k <= n");
    OmegaGn {
        value: m.size,
        t,
        via_ak: true,
    }
}

fn log_table_for(n: u64) -> LnFactorials {
    LnFactorials::new(n)
}

/// `log2 Delta(G(n, k, D))`, exact up to [`EXACT_THRESHOLD`], log-domain above.
pub fn log2_degree_gn(n: u64, k: u64, d: u64) -> f64 {
    if n <= EXACT_THRESHOLD {
        return log2_big(&degree_gn(n, k, d));
    }
    let lf = log_table_for(n);
    let mut acc = LogSumExp::new();
    for j in 1..=(d / 2).min(k).min(n - k) {
        acc.add(lf.ln_binom(k, j) + lf.ln_binom(n - k, j));
    }
    acc.value() / std::f64::consts::LN_2
}

/// `log2 Delta(H(ell, D'))`.
pub fn log2_degree_hn(ell: u64, dp: u64) -> f64 {
    if ell <= EXACT_THRESHOLD {
        return log2_big(&degree_hn(ell, dp));
    }
    let lf = log_table_for(ell);
    let mut acc = LogSumExp::new();
    for i in 1..=dp.min(ell) {
        acc.add(lf.ln_binom(ell, i));
    }
    acc.value() / std::f64::consts::LN_2
}

/// `log2 omega(H(ell, D'))`.
pub fn log2_omega_hn(ell: u64, dp: u64) -> f64 {
    if ell <= EXACT_THRESHOLD {
        return log2_big(&omega_hn(ell, dp));
    }
    if dp >= ell {
        return ell as f64;
    }
    let lf = log_table_for(ell);
    let v = dp / 2;
    let mut acc = LogSumExp::new();
    for i in 0..=v {
        acc.add(lf.ln_binom(ell, i));
    }
    if dp % 2 == 1 {
        acc.add(lf.ln_binom(ell - 1, v));
    }
    acc.value() / std::f64::consts::LN_2
}

/// `log2 omega(G(n, k, D))`.
pub fn log2_omega_gn(n: u64, k: u64, d: u64) -> f64 {
    if n <= EXACT_THRESHOLD {
        return log2_big(&omega_gn(n, k, d).value);
    }
    let lf = log_table_for(n);
    let t = k as i64 - (d / 2) as i64;
    if t < 1 {
        return lf.ln_binom(n, k) / std::f64::consts::LN_2;
    }
    let t = t as u64;
    let mut best = f64::NEG_INFINITY;
    for r in 0..=(n - t) / 2 {
        let head = t + 2 * r;
        let tail = n - head;
        let mut acc = LogSumExp::new();
        for j in (t + r)..=k.min(head) {
            if k - j <= tail {
                acc.add(lf.ln_binom(head, j) + lf.ln_binom(tail, k - j));
            }
        }
        best = best.max(acc.value());
    }
    best / std::f64::consts::LN_2
}

/// Rejects specs whose `t = k - floor(D/2)` is below one.
pub fn require_ak_hypothesis(k: u64, d: u64) -> Result<u64> {
    let t = k as i64 - (d / 2) as i64;
    if t < 1 {
        Err(Error::Precondition(format!(
            "t = k - floor(D/2) = {t} < 1: every pair in the slice is adjacent"
        )))
    } else {
        Ok(t as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_gn(4, 2, 2), big(4));
        assert_eq!(degree_gn(4, 2, 0), big(0));
        assert_eq!(degree_gn(4, 2, 1), big(0));
        assert_eq!(degree_gn(6, 3, 4), big(18));
        assert_eq!(degree_hn(3, 1), big(3));
        assert_eq!(degree_hn(3, 3), big(7));
        assert_eq!(degree_hn(3, 9), big(7));
        assert_eq!(degree_hn(10, 4), big(385));
    }

    #[test]
    fn ak_examples() {
        for k in 1..6 {
            assert_eq!(ak_max_family(9, k, k).unwrap().size, big(1));
        }
        assert_eq!(ak_max_family(7, 3, 1).unwrap().size, big(15));
        let m = ak_max_family(4, 2, 1).unwrap();
        assert_eq!(m.size, big(3));
        assert_eq!(m.closed_form_r, None);
        assert!(ak_max_family(4, 2, 3).is_err());
        assert!(ak_max_family(4, 2, 0).is_err());
    }

    #[test]
    fn closed_form_r_attains_maximum_whenever_defined() {
        for n in 1..=40u64 {
            for k in 1..=n {
                for t in 1..=k {
                    let m = ak_max_family(n, k, t).unwrap();
                    if let Some(ok) = m.closed_form_attains {
                        assert!(ok, "n={n} k={k} t={t}: {m:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn max_dominates_each_family() {
        for &(n, k, t) in &[(12u64, 5u64, 2u64), (15, 6, 3), (20, 8, 4)] {
            let m = ak_max_family(n, k, t).unwrap();
            for r in 0..=(n - t) / 2 {
                assert!(ak_family_size(n, k, t, r) <= m.size);
            }
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_gn(4, 2, 2).value, big(3));
        assert_eq!(omega_gn(5, 2, 0).value, big(1));
        let o = omega_gn(8, 4, 4);
        assert_eq!(o.value, ak_max_family(8, 4, 2).unwrap().size);
        let full = omega_gn(6, 2, 6);
        assert!(!full.via_ak);
        assert_eq!(full.value, big(15));

        assert_eq!(omega_hn(5, 5), big(32));
        assert_eq!(omega_hn(4, 2), big(5));
        assert_eq!(omega_hn(4, 3), big(8));
        assert_eq!(omega_hn(4, 0), big(1));
    }

    #[test]
    fn both_intersection_forms_agree() {
        for k in 0..30 {
            for d in 0..70 {
                let (a, b) = intersection_params(k, d);
                assert_eq!(a, b, "k={k} d={d}");
            }
        }
    }

    #[test]
    fn log_domain_matches_exact_path() {
        let lf_n = 2400u64;
        let (k, d) = (700u64, 300u64);
        let exact = log2_big(&degree_gn(lf_n, k, d));
        assert!((log2_degree_gn(lf_n, k, d) - exact).abs() / exact < 1e-9);
        let exact = log2_big(&omega_hn(lf_n, 301));
        assert!((log2_omega_hn(lf_n, 301) - exact).abs() / exact < 1e-9);
        let exact = log2_big(&degree_hn(lf_n, 301));
        assert!((log2_degree_hn(lf_n, 301) - exact).abs() / exact < 1e-9);
    }

    #[test]
    fn log_domain_ak_matches_exact() {
        let (n, k, d) = (2100u64, 600u64, 200u64);
        let exact = log2_big(&omega_gn(n, k, d).value);
        let approx = log2_omega_gn(n, k, d);
        assert!((approx - exact).abs() / exact < 1e-9, "{approx} vs {exact}");
    }

    #[test]
    fn spec_validation() {
        assert!(CombinatorialSpec::new(4, 2, 2, 4, 2).is_ok());
        assert!(CombinatorialSpec::new(4, 0, 2, 4, 2).is_err());
        assert!(CombinatorialSpec::new(4, 1, 4, 4, 2).is_err());
        assert!(CombinatorialSpec::new(4, 2, 4, 4, 2).unwrap().obstructed());
        assert!(!CombinatorialSpec::new(4, 2, 2, 4, 2).unwrap().obstructed());
    }
}
