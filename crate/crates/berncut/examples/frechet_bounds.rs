//! Pairwise correlation extremes for fixed marginals: the comonotone
//! coupling (same uniform) maximizes the correlation, the antithetic
//! coupling (U vs 1-U) minimizes it. Anything in between is reachable.
//!
//! ```bash
//! cargo run --example frechet_bounds
//! ```

use berncut::{bern_pair_bounds, fh_bounds, pair_mixing_weight, Marginal};

fn main() -> berncut::Result<()> {
    let uniform = Marginal::Uniform { a: 0.0, b: 1.0 };
    let exponential = Marginal::Exponential { mean: 2.0 };
    let two_point = Marginal::FiniteDiscrete {
        values: vec![1.0, 4.0],
        probs: vec![0.3, 0.7],
    };
    let normal = Marginal::Normal { mu: 0.0, sigma: 1.0 };

    for (label, a, b) in [
        ("uniform x exponential", &uniform, &exponential),
        ("exponential x two-point", &exponential, &two_point),
        ("uniform x normal", &uniform, &normal),
        ("exponential x normal", &exponential, &normal),
        ("two-point x normal", &two_point, &normal),
    ] {
        let bounds = fh_bounds(a, b)?;
        println!(
            "{label:24} rho in [{:+.6}, {:+.6}]",
            bounds.rho_min, bounds.rho_max
        );
    }

    // A target inside the bounds splits into a convex combination of the
    // two extreme couplings; the weight is the agreement probability of the
    // underlying Bernoulli pair.
    let bounds = fh_bounds(&exponential, &two_point)?;
    let (w, bern_rho) = pair_mixing_weight(-0.4, &bounds)?;
    println!("\ntarget -0.4 for exponential x two-point:");
    println!("  share the uniform with probability w = {w:.6}");
    println!("  i.e. Bernoulli-scale correlation 2w - 1 = {bern_rho:+.6}");

    // Equal-parameter Bernoulli pairs have a closed form; the quadrature
    // route reproduces it.
    for p in [0.25, 0.5, 0.75] {
        let (lo, hi) = bern_pair_bounds(p)?;
        let q = fh_bounds(&Marginal::Bernoulli { p }, &Marginal::Bernoulli { p })?;
        println!(
            "Bernoulli({p}) pair: closed form [{lo:+.4}, {hi:+.4}], quadrature [{:+.4}, {:+.4}]",
            q.rho_min, q.rho_max
        );
    }
    Ok(())
}
