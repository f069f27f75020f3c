//! The full general-marginal pipeline: convert a target correlation matrix
//! for mixed marginals into a symmetric Bernoulli target, solve for mixing
//! weights, and drive joint draws from a single uniform per row.
//!
//! The instance: X1 uniform on [0,1], X2 exponential with mean 2, X3 a
//! two-point variable (1 w.p. 0.3, 4 w.p. 0.7), X4 standard normal.
//!
//! ```bash
//! cargo run --example general_marginals
//! ```

use berncut::{
    build_transform_plan, pair_indices, phase1_feasibility, sample_general, CorrelationVector,
    Marginal, MixingWeights, RandomSource, SolverConfig, VertexMatrix,
};

fn main() -> berncut::Result<()> {
    let marginals = vec![
        Marginal::Uniform { a: 0.0, b: 1.0 },
        Marginal::Exponential { mean: 2.0 },
        Marginal::FiniteDiscrete {
            values: vec![1.0, 4.0],
            probs: vec![0.3, 0.7],
        },
        Marginal::Normal { mu: 0.0, sigma: 1.0 },
    ];
    let n = marginals.len();
    let target = CorrelationVector::new(n, vec![0.2, -0.1, -0.4, -0.4, 0.3, -0.2])?;

    // Per-pair Fréchet–Hoeffding check and conversion to the Bernoulli scale.
    let plan = build_transform_plan(&marginals, &target)?;
    println!("per-pair conversion:");
    for p in plan.pairs() {
        println!(
            "  ({},{}): target {:+.3} in [{:+.5}, {:+.5}]  ->  w = {:.6}, bern rho = {:+.6}",
            p.pair.i(),
            p.pair.j(),
            target.get(p.pair.i(), p.pair.j()),
            p.bounds.rho_min,
            p.bounds.rho_max,
            p.weight,
            p.bern_rho
        );
    }

    // Joint feasibility of the Bernoulli target is a vertex-LP question.
    let m = VertexMatrix::build(n)?;
    let res = phase1_feasibility(&m, plan.bernoulli_target(), &SolverConfig::default())?;
    assert!(res.feasible, "per-pair feasibility does not guarantee this");
    let weights = MixingWeights::new(n, res.alpha.unwrap())?;
    println!("\njointly feasible; diagonal mixing weights:");
    for (k, a) in weights.alpha().iter().enumerate() {
        if *a > 1e-9 {
            println!("  alpha_{} = {a:.6}", k + 1);
        }
    }

    let count = 400_000;
    let mut rng = RandomSource::new(0x5EED);
    let batch = sample_general(&plan, &weights, count, &mut rng)?;
    let emp = batch.empirical_correlation();

    println!("\n{count} joint draws; marginal means (exact in parentheses):");
    for (i, m) in marginals.iter().enumerate() {
        println!("  X{}: {:.4} ({:.4})", i + 1, batch.column_mean(i + 1), m.mean());
    }
    println!("pairwise correlations (empirical vs target):");
    for p in pair_indices(n) {
        let (i, j) = (p.i(), p.j());
        println!(
            "  ({i},{j}): {:+.4}  vs  {:+.4}",
            emp.get(i, j),
            target.get(i, j)
        );
    }
    Ok(())
}
