//! Dense Phase-I simplex for equality-form feasibility.
//!
//! Decides whether `A x = b, x >= 0` has a solution by minimizing the sum of
//! one artificial variable per row, starting from the trivially feasible
//! basis x = 0, z = |b|. The system is feasible iff the optimal objective is
//! zero (within tolerance). On success the structural solution is read off
//! the final basis; on failure the final dual values form a Farkas
//! certificate y with yᵀA <= 0 and yᵀb > 0.
//!
//! The tableau is dense and row-major. Row counts here are small (at most
//! n(n-1)/2 + 1 for the vertex system) while columns grow exponentially, so
//! a dense tableau stays simple and fast enough through the n = 15 range.

use crate::error::{Error, Result};
use crate::pairs::CorrelationVector;
use crate::polytope::VertexMatrix;

/// Reduced-cost threshold for entering-column selection.
const COST_EPS: f64 = 1e-10;
/// Minimum magnitude accepted for a ratio-test pivot element.
const PIVOT_EPS: f64 = 1e-9;
/// A pivot whose ratio is below this is counted as degenerate.
const DEGENERATE_EPS: f64 = 1e-12;
/// Verdicts with Phase-I objective in (MARGINAL_FLOOR, feasibility_tol] are
/// flagged marginal.
const MARGINAL_FLOOR: f64 = 1e-12;

/// Pivot selection strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Bland's rule: smallest eligible index. Terminating but slow.
    Bland,
    /// Most-negative reduced cost, switching to Bland's rule after
    /// 10 * rows degenerate pivots.
    #[default]
    DantzigWithBlandFallback,
}

/// Solver knobs. `max_pivots` of `None` means 50 * (rows + cols), counting
/// the artificial columns.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub feasibility_tol: f64,
    pub max_pivots: Option<usize>,
    pub pivot_rule: PivotRule,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            feasibility_tol: 1e-9,
            max_pivots: None,
            pivot_rule: PivotRule::default(),
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if !self.feasibility_tol.is_finite() || self.feasibility_tol <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "feasibility_tol must be positive, got {}",
                self.feasibility_tol
            )));
        }
        if self.max_pivots == Some(0) {
            return Err(Error::InvalidConfig("max_pivots must be positive".into()));
        }
        Ok(())
    }
}

/// An equality-form LP `A x = b, x >= 0` with the implicit Phase-I
/// objective of minimizing the artificial-variable sum.
#[derive(Clone, Debug)]
pub struct StandardFormLp {
    rows: usize,
    cols: usize,
    a: Vec<f64>,
    rhs: Vec<f64>,
}

impl StandardFormLp {
    /// `a` is row-major with `rows * cols` entries; `rhs` has one entry per
    /// row.
    pub fn new(rows: usize, cols: usize, a: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!(
                "LP needs at least one row and one column, got {rows} x {cols}"
            )));
        }
        if a.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "matrix storage has {} entries, expected {}",
                a.len(),
                rows * cols
            )));
        }
        if rhs.len() != rows {
            return Err(Error::ShapeMismatch(format!(
                "rhs has {} entries, expected {rows}",
                rhs.len()
            )));
        }
        Ok(Self { rows, cols, a, rhs })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// Outcome of a Phase-I solve.
#[derive(Clone, Debug)]
pub struct Phase1Solution {
    pub feasible: bool,
    /// Structural solution with x >= 0 and A x ~ b; present iff feasible.
    pub x: Option<Vec<f64>>,
    /// Farkas witness y with yᵀA <= 0 entrywise and yᵀb > 0; present iff
    /// infeasible.
    pub certificate: Option<Vec<f64>>,
    /// Optimal Phase-I objective (sum of artificials).
    pub objective: f64,
    /// True when the objective landed between the marginal floor and the
    /// feasibility tolerance: the verdict is tolerance-sensitive.
    pub marginal: bool,
    pub pivots: usize,
}

struct Tableau {
    rows: usize,
    /// structural column count
    ncols: usize,
    /// ncols + rows + 1 (artificials, then rhs)
    width: usize,
    t: Vec<f64>,
    /// Phase-I reduced costs; last entry holds -objective.
    cost: Vec<f64>,
    basis: Vec<usize>,
    /// artificial columns barred from re-entering once they leave the basis
    frozen: Vec<bool>,
    /// sign flips applied to rows so the rhs starts nonnegative
    flipped: Vec<bool>,
}

impl Tableau {
    fn build(lp: &StandardFormLp) -> Self {
        let rows = lp.rows;
        let ncols = lp.cols;
        let width = ncols + rows + 1;
        let mut t = vec![0.0; rows * width];
        let mut flipped = vec![false; rows];
        for r in 0..rows {
            let sign = if lp.rhs[r] < 0.0 {
                flipped[r] = true;
                -1.0
            } else {
                1.0
            };
            let src = &lp.a[r * ncols..(r + 1) * ncols];
            let dst = &mut t[r * width..r * width + ncols];
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = sign * s;
            }
            t[r * width + ncols + r] = 1.0;
            t[r * width + width - 1] = sign * lp.rhs[r];
        }
        // Reduced costs for min(sum of artificials) with the artificial
        // basis: r_j = -sum_i a_ij on structural columns, 0 on artificials,
        // and -sum b_i in the objective cell.
        let mut cost = vec![0.0; width];
        for r in 0..rows {
            let row = &t[r * width..(r + 1) * width];
            for j in 0..ncols {
                cost[j] -= row[j];
            }
            cost[width - 1] -= row[width - 1];
        }
        let basis = (ncols..ncols + rows).collect();
        Tableau {
            rows,
            ncols,
            width,
            t,
            cost,
            basis,
            frozen: vec![false; rows],
            flipped,
        }
    }

    fn objective(&self) -> f64 {
        -self.cost[self.width - 1]
    }

    fn is_artificial(&self, var: usize) -> bool {
        var >= self.ncols
    }

    fn column_enterable(&self, j: usize) -> bool {
        if j >= self.ncols {
            let art = j - self.ncols;
            if self.frozen[art] {
                return false;
            }
        }
        self.cost[j] < -COST_EPS
    }

    fn entering_bland(&self) -> Option<usize> {
        (0..self.width - 1).find(|&j| self.column_enterable(j))
    }

    fn entering_dantzig(&self) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.width - 1 {
            if !self.column_enterable(j) {
                continue;
            }
            match best {
                Some((_, c)) if self.cost[j] >= c => {}
                _ => best = Some((j, self.cost[j])),
            }
        }
        best.map(|(j, _)| j)
    }

    /// Leaving row by minimum ratio; ties broken toward the smallest basic
    /// variable index, which is what makes Bland's rule terminating.
    fn leaving_row(&self, entering: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for r in 0..self.rows {
            let a = self.t[r * self.width + entering];
            if a <= PIVOT_EPS {
                continue;
            }
            let ratio = self.t[r * self.width + self.width - 1] / a;
            match best {
                None => best = Some((r, ratio)),
                Some((br, bratio)) => {
                    if ratio < bratio - DEGENERATE_EPS
                        || ((ratio - bratio).abs() <= DEGENERATE_EPS
                            && self.basis[r] < self.basis[br])
                    {
                        best = Some((r, ratio));
                    }
                }
            }
        }
        best.map(|(r, _)| r)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.width;
        let pivot = self.t[row * width + col];
        debug_assert!(pivot.abs() > 0.0);
        let inv = 1.0 / pivot;
        for v in &mut self.t[row * width..(row + 1) * width] {
            *v *= inv;
        }
        self.t[row * width + col] = 1.0;
        // split borrow: pivot row vs the rest
        let (head, tail) = self.t.split_at_mut(row * width);
        let (prow, rest) = tail.split_at_mut(width);
        for chunk in head
            .chunks_exact_mut(width)
            .chain(rest.chunks_exact_mut(width))
        {
            let factor = chunk[col];
            if factor != 0.0 {
                for (v, &p) in chunk.iter_mut().zip(prow.iter()) {
                    *v -= factor * p;
                }
                chunk[col] = 0.0;
            }
        }
        let factor = self.cost[col];
        if factor != 0.0 {
            for (v, &p) in self.cost.iter_mut().zip(prow.iter()) {
                *v -= factor * p;
            }
            self.cost[col] = 0.0;
        }
        let leaving = self.basis[row];
        if self.is_artificial(leaving) {
            self.frozen[leaving - self.ncols] = true;
        }
        self.basis[row] = col;
    }

    /// Pivot basic artificials out on structural columns where possible.
    /// Rows where every structural coefficient vanishes are redundant and
    /// keep their artificial at value ~0.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.rows {
            if !self.is_artificial(self.basis[r]) {
                continue;
            }
            let row = &self.t[r * self.width..r * self.width + self.ncols];
            let mut best: Option<(usize, f64)> = None;
            for (j, &a) in row.iter().enumerate() {
                let mag = a.abs();
                if mag > 1e-7 {
                    match best {
                        Some((_, b)) if mag <= b => {}
                        _ => best = Some((j, mag)),
                    }
                }
            }
            if let Some((j, _)) = best {
                self.pivot(r, j);
            }
        }
    }

    fn extract_x(&self, tol: f64) -> Vec<f64> {
        let mut x = vec![0.0; self.ncols];
        for r in 0..self.rows {
            let var = self.basis[r];
            if var < self.ncols {
                let mut v = self.t[r * self.width + self.width - 1];
                if v < 0.0 && v >= -tol {
                    v = 0.0; // LP roundoff
                }
                x[var] = v;
            }
        }
        x
    }

    fn extract_certificate(&self) -> Vec<f64> {
        // Dual values from the artificial reduced costs: y_i = 1 - r_{a_i},
        // unflipped back to the original row signs.
        (0..self.rows)
            .map(|i| {
                let y = 1.0 - self.cost[self.ncols + i];
                if self.flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }
}

/// Solve the Phase-I program for `lp`.
pub fn solve_phase1(lp: &StandardFormLp, cfg: &SolverConfig) -> Result<Phase1Solution> {
    cfg.validate()?;
    let mut tab = Tableau::build(lp);
    // structural + artificial columns
    let total_cols = lp.cols + lp.rows;
    let max_pivots = cfg.max_pivots.unwrap_or(50 * (lp.rows + total_cols));
    let degenerate_switch = 10 * lp.rows;

    let mut pivots = 0usize;
    let mut degenerate = 0usize;
    let mut bland_mode = cfg.pivot_rule == PivotRule::Bland;

    loop {
        let entering = if bland_mode {
            tab.entering_bland()
        } else {
            tab.entering_dantzig()
        };
        let Some(col) = entering else { break };
        let Some(row) = tab.leaving_row(col) else {
            // The Phase-I objective is bounded below by zero, so a missing
            // ratio-test row can only be numerical breakdown.
            return Err(Error::Numerical(
                "phase-I ratio test found no pivot row".into(),
            ));
        };
        if tab.t[row * tab.width + tab.width - 1] <= DEGENERATE_EPS {
            degenerate += 1;
            if !bland_mode && degenerate > degenerate_switch {
                bland_mode = true;
            }
        }
        tab.pivot(row, col);
        pivots += 1;
        if pivots >= max_pivots {
            return Err(Error::PivotLimit {
                pivots,
                limit: max_pivots,
            });
        }
    }

    let objective = tab.objective().max(0.0);
    let feasible = objective <= cfg.feasibility_tol;
    let marginal = objective > MARGINAL_FLOOR && objective <= cfg.feasibility_tol;

    if feasible {
        tab.drive_out_artificials();
        let x = tab.extract_x(cfg.feasibility_tol);
        Ok(Phase1Solution {
            feasible: true,
            x: Some(x),
            certificate: None,
            objective,
            marginal,
            pivots,
        })
    } else {
        Ok(Phase1Solution {
            feasible: false,
            x: None,
            certificate: Some(tab.extract_certificate()),
            objective,
            marginal,
            pivots,
        })
    }
}

/// Verdict for the vertex system `M alpha = [rho, 1], alpha >= 0`.
#[derive(Clone, Debug)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// Mixing weights over the diagonal distributions; present iff feasible.
    pub alpha: Option<Vec<f64>>,
    /// Final Phase-I objective.
    pub objective_residual: f64,
    /// Farkas witness against `[M; 1] alpha = [rho, 1]`; present iff
    /// infeasible.
    pub certificate: Option<Vec<f64>>,
    /// Verdict is tolerance-sensitive (objective in (1e-12, tol]).
    pub marginal: bool,
    pub pivots: usize,
}

fn augmented_rhs(rho: &CorrelationVector) -> Vec<f64> {
    let mut rhs = rho.values().to_vec();
    rhs.push(1.0);
    rhs
}

/// Decide whether `rho` is a convex combination of the vertex columns of
/// `m`, i.e. whether it is attainable as the correlation vector of an
/// n-variate symmetric Bernoulli distribution.
pub fn phase1_feasibility(
    m: &VertexMatrix,
    rho: &CorrelationVector,
    cfg: &SolverConfig,
) -> Result<FeasibilityResult> {
    if rho.n() != m.n() {
        return Err(Error::ShapeMismatch(format!(
            "correlation vector has n = {}, vertex matrix has n = {}",
            rho.n(),
            m.n()
        )));
    }
    let lp = StandardFormLp::new(m.rows(), m.cols(), m.data().to_vec(), augmented_rhs(rho))?;
    let sol = solve_phase1(&lp, cfg)?;
    Ok(FeasibilityResult {
        feasible: sol.feasible,
        alpha: sol.x,
        objective_residual: sol.objective,
        certificate: sol.certificate,
        marginal: sol.marginal,
        pivots: sol.pivots,
    })
}

/// True iff `alpha >= -tol` entrywise and `|M alpha - [rho, 1]|_inf <= tol`.
///
/// Dimensions must agree; this is a caller contract.
pub fn check_solution(
    m: &VertexMatrix,
    rho: &CorrelationVector,
    alpha: &[f64],
    tol: f64,
) -> bool {
    assert_eq!(alpha.len(), m.cols(), "alpha length must match column count");
    assert_eq!(rho.n(), m.n(), "dimension mismatch");
    if alpha.iter().any(|&a| !a.is_finite() || a < -tol) {
        return false;
    }
    let rhs = augmented_rhs(rho);
    let cols = m.cols();
    let data = m.data();
    for (r, &b) in rhs.iter().enumerate() {
        let row = &data[r * cols..(r + 1) * cols];
        let dot: f64 = row.iter().zip(alpha).map(|(a, w)| a * w).sum();
        if (dot - b).abs() > tol {
            return false;
        }
    }
    true
}
