//! Brute-force feasibility over the atoms of a candidate distribution.
//!
//! Instead of the vertex characterization, this oracle asks directly
//! whether some probability vector mu on {0,1}^n has Bernoulli(1/2)
//! marginals and the requested pairwise correlations. The constraints are
//! linear in the 2^n atom probabilities:
//!
//! - total mass:      sum_x mu(x) = 1
//! - marginals:       sum_{x : x(k) = 0} mu(x) = 1/2        for each k
//! - cross moments:   sum_{x : x(i) = x(j) = 1} mu(x) = (1 + rho_ij)/4
//!
//! The moment right-hand side comes from E[B_i B_j] = (1 + rho)/4 for
//! symmetric Bernoullis, equivalently the agreement probability
//! lambda = (1 + rho)/2 split evenly between the both-one and both-zero
//! cells. The oracle shares the Phase-I engine but solves a structurally
//! different system (atoms, not diagonal vertices), which makes it an
//! independent check of the vertex reduction on small n.

use crate::error::{Error, Result};
use crate::pairs::CorrelationVector;
use crate::simplex::{solve_phase1, FeasibilityResult, SolverConfig, StandardFormLp};

/// Largest dimension the oracle accepts; 2^12 atom variables.
pub const ORACLE_DIMENSION_CAP: usize = 12;

fn atom_lp(rho: &CorrelationVector) -> StandardFormLp {
    let n = rho.n();
    let atoms = 1usize << n;
    let rows = 1 + n + rho.values().len();
    let mut a = vec![0.0; rows * atoms];
    let mut rhs = vec![0.0; rows];

    // total mass
    for v in a.iter_mut().take(atoms) {
        *v = 1.0;
    }
    rhs[0] = 1.0;

    // marginal rows: coordinate k is zero (bits big-endian, coordinate 1
    // carries the top bit)
    for k in 1..=n {
        let row = k;
        for x in 0..atoms {
            if (x >> (n - k)) & 1 == 0 {
                a[row * atoms + x] = 1.0;
            }
        }
        rhs[row] = 0.5;
    }

    // cross-moment rows
    let mut row = 1 + n;
    let mut pair = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            for x in 0..atoms {
                if (x >> (n - i)) & 1 == 1 && (x >> (n - j)) & 1 == 1 {
                    a[row * atoms + x] = 1.0;
                }
            }
            rhs[row] = (1.0 + rho.values()[pair]) / 4.0;
            row += 1;
            pair += 1;
        }
    }

    StandardFormLp::new(rows, atoms, a, rhs).expect("atom system dimensions are consistent")
}

/// Decide feasibility of `rho` by the atom LP. On success the `alpha` field
/// carries the atom probabilities mu, indexed by the big-endian vertex
/// label minus one.
pub fn oracle_feasible(rho: &CorrelationVector, cfg: &SolverConfig) -> Result<FeasibilityResult> {
    let n = rho.n();
    if n > ORACLE_DIMENSION_CAP {
        return Err(Error::OracleCap {
            n,
            cap: ORACLE_DIMENSION_CAP,
        });
    }
    let lp = atom_lp(rho);
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
