//! Adaptive composite Gauss–Legendre quadrature.
//!
//! Integrates on a bounded interval with 64-node Gauss–Legendre panels.
//! Initial panel boundaries are placed at caller-supplied breakpoints (step
//! discontinuities of the integrand); the panel with the largest local
//! error estimate is then bisected until the estimated total error drops
//! below the tolerance or the refinement depth cap is reached.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

/// Nodes per panel.
const GL_POINTS: usize = 64;

/// Maximum bisection depth below an initial panel.
pub const MAX_REFINEMENT_DEPTH: usize = 20;

/// Default convergence target for the total error estimate.
pub const DEFAULT_TOL: f64 = 1e-8;

fn gauss_legendre_64() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Newton iteration on the Legendre recurrence; standard construction.
        let n = GL_POINTS;
        let mut table = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            table.push((x, w));
        }
        table
    })
}

fn panel_integral(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    gauss_legendre_64()
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

struct Leaf {
    a: f64,
    b: f64,
    depth: usize,
    /// two-half composite value over [a, b]
    refined: f64,
    left: f64,
    right: f64,
    /// |single-panel value - two-half value|
    est: f64,
}

impl Leaf {
    fn build(f: &impl Fn(f64) -> f64, a: f64, b: f64, depth: usize, whole: f64) -> Self {
        let mid = 0.5 * (a + b);
        let left = panel_integral(f, a, mid);
        let right = panel_integral(f, mid, b);
        let refined = left + right;
        Leaf {
            a,
            b,
            depth,
            refined,
            left,
            right,
            est: (whole - refined).abs(),
        }
    }
}

impl PartialEq for Leaf {
    fn eq(&self, other: &Self) -> bool {
        self.est.total_cmp(&other.est) == Ordering::Equal
    }
}
impl Eq for Leaf {}
impl PartialOrd for Leaf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Leaf {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.total_cmp(&other.est)
    }
}

/// Outcome of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureResult {
    pub value: f64,
    /// Estimated absolute error of `value`.
    pub error_estimate: f64,
    /// False when the depth cap stopped refinement before the tolerance was
    /// met.
    pub converged: bool,
    /// Number of panels in the final composite rule.
    pub panels: usize,
}

/// Integrate `f` over `[lo, hi]` with initial panel boundaries at the given
/// breakpoints (values outside `(lo, hi)` are ignored).
pub fn integrate_adaptive(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    tol: f64,
    max_depth: usize,
) -> QuadratureResult {
    assert!(lo < hi, "empty integration interval");
    let mut edges: Vec<f64> = std::iter::once(lo)
        .chain(breakpoints.iter().copied().filter(|&x| x > lo && x < hi))
        .chain(std::iter::once(hi))
        .collect();
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Leaf> = Vec::new();
    let mut value = 0.0;
    let mut total_est = 0.0;
    let width_floor = 1e-15 * (hi - lo).abs().max(1.0);
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b - a <= width_floor {
            continue;
        }
        let whole = panel_integral(&f, a, b);
        let leaf = Leaf::build(&f, a, b, 0, whole);
        value += leaf.refined;
        total_est += leaf.est;
        heap.push(leaf);
    }

    while total_est > tol {
        let Some(leaf) = heap.pop() else { break };
        if leaf.depth >= max_depth || (leaf.b - leaf.a) <= width_floor {
            frozen.push(leaf);
            continue;
        }
        let mid = 0.5 * (leaf.a + leaf.b);
        let l = Leaf::build(&f, leaf.a, mid, leaf.depth + 1, leaf.left);
        let r = Leaf::build(&f, mid, leaf.b, leaf.depth + 1, leaf.right);
        value += l.refined + r.refined - leaf.refined;
        total_est += l.est + r.est - leaf.est;
        heap.push(l);
        heap.push(r);
    }

    QuadratureResult {
        value,
        error_estimate: total_est.max(0.0),
        converged: total_est <= tol,
        panels: 2 * (heap.len() + frozen.len()),
    }
}
