//! Feasibility and sampling for correlation matrices of multivariate
//! symmetric Bernoulli distributions.
//!
//! The attainable correlation vectors of an n-variate random vector with
//! Bernoulli(1/2) marginals form a polytope whose 2^(n-1) vertices are the
//! correlation vectors of the uniform distributions on cube diagonals, and
//! the entrywise map `rho -> 1 - 2 rho` carries this polytope onto the cut
//! polytope of the complete graph K_n. Membership therefore reduces to a
//! small Phase-I linear program, and any feasible correlation comes with
//! mixing weights over the diagonals that make exact joint sampling
//! immediate. An antithetic inverse-transform coupling extends the sampler
//! to arbitrary marginals whose pairwise targets fit inside their
//! Fréchet–Hoeffding correlation bounds.
//!
//! # Modules
//!
//! - [`pairs`]: pair indexing, correlation and agreement vectors
//! - [`polytope`]: cube diagonals, cut vectors, the vertex matrix
//! - [`simplex`]: dense Phase-I simplex feasibility solver
//! - [`oracle`]: brute-force feasibility over the 2^n atoms (small n)
//! - [`sampler`]: correlated symmetric Bernoulli sampling
//! - [`marginal`]: univariate marginals and inverse CDFs
//! - [`quadrature`]: adaptive composite Gauss–Legendre integration
//! - [`transform`]: Fréchet–Hoeffding bounds and general-marginal sampling
//! - [`cli`]: the `berncut` command-line interface
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --example check_feasibility   # polytope membership + weights
//! cargo run --example sample_correlated_bits
//! cargo run --example frechet_bounds      # pairwise correlation extremes
//! cargo run --example general_marginals   # full mixed-marginal pipeline
//! cargo run --example vertex_tour         # vertices and the cut-vector map
//! cargo run --example brute_force_crosscheck
//! ```
//!
//! # Quick start
//!
//! ```
//! use berncut::{phase1_feasibility, CorrelationVector, SolverConfig, VertexMatrix};
//!
//! let m = VertexMatrix::build(3)?;
//! let rho = CorrelationVector::new(3, vec![-0.4, -0.4, -0.4])?;
//! let verdict = phase1_feasibility(&m, &rho, &SolverConfig::default())?;
//! assert!(!verdict.feasible); // equicorrelation -0.4 is not attainable
//! # Ok::<(), berncut::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod io;
pub mod marginal;
pub mod oracle;
pub mod pairs;
pub mod polytope;
pub mod quadrature;
pub mod sampler;
pub mod simplex;
pub mod transform;

pub use error::{Error, Result};
pub use marginal::Marginal;
pub use oracle::{oracle_feasible, ORACLE_DIMENSION_CAP};
pub use pairs::{pair_count, pair_indices, AgreementVector, CorrelationVector, PairIndex};
pub use polytope::{
    bern_pair_bounds, cut_vector, diagonal_count, BitVector, CutVector, DiagonalIndex,
    VertexMatrix, DEFAULT_DIMENSION_CAP,
};
pub use sampler::{
    empirical_correlation, sample_bernoulli, BernoulliSampleBatch, MixingWeights, RandomSource,
};
pub use simplex::{
    check_solution, phase1_feasibility, solve_phase1, FeasibilityResult, Phase1Solution,
    PivotRule, SolverConfig, StandardFormLp,
};
pub use transform::{
    build_transform_plan, fh_bounds, pair_mixing_weight, sample_general, FHBounds,
    GeneralSampleBatch, TransformPlan,
};
