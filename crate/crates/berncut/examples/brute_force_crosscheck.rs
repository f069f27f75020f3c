//! Cross-check the vertex LP against the brute-force atom oracle on random
//! instances. The two decide the same question through structurally
//! different systems: convex combinations of 2^(n-1) diagonal vertices
//! versus probability mass on all 2^n atoms.
//!
//! ```bash
//! cargo run --example brute_force_crosscheck
//! ```

use berncut::{
    oracle_feasible, pair_count, phase1_feasibility, CorrelationVector, SolverConfig,
    VertexMatrix,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn main() -> berncut::Result<()> {
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 2..=5 {
        let m = VertexMatrix::build(n)?;
        let trials = 400;
        let mut feasible = 0;
        for _ in 0..trials {
            let values: Vec<f64> = (0..pair_count(n))
                .map(|_| rng.random_range(-1.0..=1.0))
                .collect();
            let rho = CorrelationVector::new(n, values)?;
            let lp = phase1_feasibility(&m, &rho, &cfg)?;
            let oracle = oracle_feasible(&rho, &cfg)?;
            assert_eq!(lp.feasible, oracle.feasible, "disagreement at n = {n}");
            if lp.feasible {
                feasible += 1;
            }
        }
        println!(
            "n = {n}: {trials} uniform draws, verdicts agree on all; {feasible} feasible \
             ({:.1}% of the cube)",
            100.0 * feasible as f64 / trials as f64
        );
    }
    println!("\nthe feasible fraction shrinks fast: the polytope occupies an");
    println!("exponentially small corner of the correlation cube");
    Ok(())
}
