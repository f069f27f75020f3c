//! Decide whether a correlation matrix is attainable for symmetric
//! Bernoulli marginals, and show the witness either way: mixing weights
//! over the cube diagonals when feasible, a Farkas certificate when not.
//!
//! ```bash
//! cargo run --example check_feasibility
//! ```

use berncut::{phase1_feasibility, CorrelationVector, SolverConfig, VertexMatrix};

fn report(label: &str, rho: &CorrelationVector) -> berncut::Result<()> {
    let m = VertexMatrix::build(rho.n())?;
    let res = phase1_feasibility(&m, rho, &SolverConfig::default())?;
    println!("{label}: rho = {:?}", rho.values());
    if res.feasible {
        let alpha = res.alpha.unwrap();
        println!("  feasible ({} pivots); mixing weights over diagonals:", res.pivots);
        for (k, a) in alpha.iter().enumerate() {
            if *a > 1e-12 {
                println!("    alpha_{} = {a:.6}", k + 1);
            }
        }
    } else {
        println!(
            "  infeasible ({} pivots); Farkas certificate y with y'M <= 0, y'[rho,1] > 0:",
            res.pivots
        );
        println!("    y = {:?}", res.certificate.unwrap());
    }
    Ok(())
}

fn main() -> berncut::Result<()> {
    // The classic impossible matrix: pairwise correlation -0.4 among three
    // fair bits sits inside the elliptope but outside the Bernoulli
    // polytope.
    let infeasible = CorrelationVector::new(3, vec![-0.4, -0.4, -0.4])?;
    report("equicorrelation -0.4", &infeasible)?;

    // -1/3 is the extreme exchangeable case: the uniform mixture of the
    // three anti-diagonal vertices.
    let boundary = CorrelationVector::new(3, vec![-1.0 / 3.0; 3])?;
    report("equicorrelation -1/3", &boundary)?;

    // An asymmetric feasible point.
    let inner = CorrelationVector::new(3, vec![0.5, -0.2, 0.1])?;
    report("mixed signs", &inner)?;
    Ok(())
}
