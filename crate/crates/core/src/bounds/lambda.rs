//! Grid-plus-refinement maximization of the two-weight entropy functional
//! that lower-bounds the clique exponent of the source graph.
//!
//! With `q = p - d1/2 + 2 alpha` the maximand is
//! `q h2(beta/q) + (1-q) h2((p-beta)/(1-q))` over
//! `0 <= alpha`, `p - d1/2 + alpha <= beta <= min(p, q)`.
//! It is searched in `(alpha, slack)` coordinates where
//! `beta = p - d1/2 + alpha + slack`, so the lower constraint on `beta`
//! is the axis `slack = 0`.

use super::h2;
use crate::error::domain;
use crate::Result;

/// Default grid spacing in both coordinates.
pub const DEFAULT_GRID_STEP: f64 = 1e-3;
const REFINE_TOL: f64 = 1e-9;
const MAX_SWEEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaPoint {
    pub alpha: f64,
    pub beta: f64,
    /// Maximand value in bits.
    pub value: f64,
}

/// Result of [`lambda_grid`]: the raw grid maximum and its local refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaMax {
    pub grid: LambdaPoint,
    pub refined: LambdaPoint,
    pub grid_step: f64,
}

impl LambdaMax {
    pub fn value(&self) -> f64 {
        self.refined.value
    }
}

/// The maximand in bits at `(alpha, beta)`; no feasibility check.
pub fn lambda_objective(d1: f64, p: f64, alpha: f64, beta: f64) -> f64 {
    let q = p - d1 / 2.0 + 2.0 * alpha;
    let ones = if q > 0.0 { q * h2(beta / q) } else { 0.0 };
    let zeros = if q < 1.0 { (1.0 - q) * h2((p - beta) / (1.0 - q)) } else { 0.0 };
    ones + zeros
}

/// Closed-form maximizer `(alpha*, beta*)`, attaining `h2(d1/2)`.
pub fn lambda_maximizer(d1: f64, p: f64) -> Result<(f64, f64)> {
    check_domain(d1, p)?;
    if d1 >= 1.0 {
        // Only p = 1/2 is admissible there and the closed form divides by 1 - d1.
        return domain("closed-form maximizer needs d1 < 1");
    }
    let base = p - d1 / 2.0;
    let alpha = base * d1 / (2.0 * (1.0 - d1));
    let beta = (1.0 - d1 / 2.0) * base / (1.0 - d1);
    Ok((alpha, beta))
}

fn check_domain(d1: f64, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&d1) {
        return domain(format!("need 0 <= d1 <= 1, got {d1}"));
    }
    if !(p >= d1 / 2.0 && p <= 1.0 - d1 / 2.0) {
        return domain(format!(
            "feasible set empty: need d1/2 <= p <= 1 - d1/2, got d1 = {d1}, p = {p}"
        ));
    }
    Ok(())
}

struct Feasible {
    d1: f64,
    p: f64,
    alpha_max: f64,
}

impl Feasible {
    fn new(d1: f64, p: f64) -> Self {
        let half = d1 / 2.0;
        Self {
            d1,
            p,
            alpha_max: half.min((1.0 - p + half) / 2.0).max(0.0),
        }
    }

    fn beta_lo(&self, alpha: f64) -> f64 {
        self.p - self.d1 / 2.0 + alpha
    }

    fn slack_max(&self, alpha: f64) -> f64 {
        (self.d1 / 2.0 - alpha).min(alpha).max(0.0)
    }

    fn eval(&self, alpha: f64, slack: f64) -> LambdaPoint {
        let beta = self.beta_lo(alpha) + slack;
        LambdaPoint {
            alpha,
            beta,
            value: lambda_objective(self.d1, self.p, alpha, beta),
        }
    }
}

/// Grid points `0, h, 2h, ...` up to and including `hi`.
fn axis(hi: f64, step: f64) -> impl Iterator<Item = f64> {
    let count = (hi / step).floor() as usize;
    let extra = hi - count as f64 * step > 1e-15;
    (0..=count)
        .map(move |i| i as f64 * step)
        .chain(extra.then_some(hi))
}

/// Maximizes the clique-exponent functional on a grid of spacing `grid_step`,
/// then refines the best grid point by golden-section search along each axis.
///
/// Returns a domain error when `d1/2 <= p <= 1 - d1/2` fails (empty feasible set).
/// When `d1 = 2p` the feasible set degenerates to a segment and is evaluated
/// on that boundary.
pub fn lambda_grid(d1: f64, p: f64, grid_step: f64) -> Result<LambdaMax> {
    check_domain(d1, p)?;
    if !(grid_step > 0.0) {
        return domain(format!("grid step must be positive, got {grid_step}"));
    }
    let fs = Feasible::new(d1, p);

    let mut best = fs.eval(0.0, 0.0);
    let mut best_slack = 0.0;
    for alpha in axis(fs.alpha_max, grid_step) {
        for slack in axis(fs.slack_max(alpha), grid_step) {
            let pt = fs.eval(alpha, slack);
            if pt.value > best.value {
                best = pt;
                best_slack = slack;
            }
        }
    }
    let grid = best;

    // Coordinate ascent; the maximand is concave in (alpha, slack), so each
    // one-dimensional golden-section search finds the exact line maximum.
    let (mut alpha, mut slack) = (grid.alpha, best_slack);
    let mut current = grid.value;
    for _ in 0..MAX_SWEEPS {
        let before = current;
        let smax = fs.slack_max(alpha);
        slack = golden_max(0.0, smax, |s| fs.eval(alpha, s).value);
        // alpha range keeping `slack` feasible: slack <= alpha <= d1/2 - slack.
        let lo = slack.min(fs.alpha_max);
        let hi = (d1 / 2.0 - slack).min(fs.alpha_max).max(lo);
        alpha = golden_max(lo, hi, |a| fs.eval(a, slack).value);
        current = fs.eval(alpha, slack).value;
        if current - before <= 1e-15 {
            break;
        }
    }
    let mut refined = fs.eval(alpha, slack);
    if refined.value < grid.value {
        refined = grid;
    }
    Ok(LambdaMax {
        grid,
        refined,
        grid_step,
    })
}

/// Golden-section search for the maximum of a unimodal function on `[a, b]`.
fn golden_max(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    if b - a <= REFINE_TOL {
        return if f(a) >= f(b) { a } else { b };
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > REFINE_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    // Endpoints matter when the maximum sits on the boundary.
    let mid = 0.5 * (a + b);
    [a, mid, b]
        .into_iter()
        .max_by(|x, y| f(*x).total_cmp(&f(*y)))
        .expect("three candidates")
}
