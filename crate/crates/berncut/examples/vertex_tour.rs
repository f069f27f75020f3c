//! A tour of the polytope combinatorics: cube diagonals, their correlation
//! vectors, agreement probabilities, and the cut-vector correspondence
//! rho <-> 1 - 2 delta.
//!
//! ```bash
//! cargo run --example vertex_tour
//! ```

use berncut::{cut_vector, CorrelationVector, DiagonalIndex, VertexMatrix};

fn main() -> berncut::Result<()> {
    let n = 4;
    println!("diagonals of the {n}-cube and their correlation vectors:");
    println!("  k   bits    rho (pair order 12,13,14,23,24,34)   delta(S)");
    for d in DiagonalIndex::all(n) {
        let v = d.vertex();
        let bits: String = v.bits().iter().map(|b| b.to_string()).collect();
        let rho = d.correlation();
        let delta = cut_vector(&v.support(), n)?;
        let rho_s: Vec<String> = rho.values().iter().map(|r| format!("{r:+.0}")).collect();
        let delta_s: Vec<String> = delta.values().iter().map(|b| b.to_string()).collect();
        println!(
            "  {:<3} {bits}    [{}]              [{}]",
            d.k(),
            rho_s.join(","),
            delta_s.join(",")
        );
    }

    // The vertex matrix stacks those columns with a final ones row; a
    // correlation vector is attainable iff it is a convex combination of
    // the columns.
    let m = VertexMatrix::build(3)?;
    println!(
        "\nvertex matrix for n = 3 ({} rows x {} cols):",
        m.rows(),
        m.cols()
    );
    for r in 0..m.rows() {
        let row: Vec<String> = (1..=m.cols())
            .map(|k| format!("{:+.0}", m.column(k)[r]))
            .collect();
        println!("  [{}]", row.join(" "));
    }

    // Membership transfers to the cut polytope through delta = (1 - rho)/2:
    // rho is attainable iff that image is a convex combination of cut
    // vectors. For n = 3 the binding facet is the triangle inequality
    // d12 + d13 + d23 <= 2.
    println!("\ndelta = (1 - rho)/2 and the triangle facet d12 + d13 + d23 <= 2:");
    for values in [vec![0.0, 0.0, 0.0], vec![-1.0 / 3.0; 3], vec![-0.4; 3]] {
        let rho = CorrelationVector::new(3, values.clone())?;
        let delta: Vec<f64> = rho.values().iter().map(|&r| (1.0 - r) / 2.0).collect();
        let sum: f64 = delta.iter().sum();
        println!(
            "  rho = {values:?}  ->  delta = {delta:?}, sum {sum:.2} {}",
            if sum <= 2.0 + 1e-12 { "(inside)" } else { "(outside: infeasible)" }
        );
    }
    Ok(())
}
