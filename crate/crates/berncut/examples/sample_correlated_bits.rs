//! Draw correlated Bernoulli(1/2) vectors realizing a feasible correlation
//! matrix, then verify the empirical correlations against the target.
//!
//! ```bash
//! cargo run --example sample_correlated_bits
//! ```

use berncut::{
    empirical_correlation, pair_indices, phase1_feasibility, sample_bernoulli,
    CorrelationVector, MixingWeights, RandomSource, SolverConfig, VertexMatrix,
};

fn main() -> berncut::Result<()> {
    let n = 4;
    let target = CorrelationVector::new(
        n,
        vec![0.230940, -0.125988, -0.409330, -0.417582, 0.332154, -0.263598],
    )?;

    let m = VertexMatrix::build(n)?;
    let res = phase1_feasibility(&m, &target, &SolverConfig::default())?;
    assert!(res.feasible, "target must be feasible to sample");
    let weights = MixingWeights::new(n, res.alpha.unwrap())?;

    let mut rng = RandomSource::new(0x5EED);
    let count = 500_000;
    let batch = sample_bernoulli(&weights, count, &mut rng)?;
    let emp = empirical_correlation(&batch)?;

    println!("{count} draws; column means:");
    for i in 1..=n {
        println!("  B{i}: {:.4}", batch.column_mean(i));
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
