//! General-marginal sampling via Fréchet–Hoeffding-bounded antithetic
//! coupling.
//!
//! For a pair of marginals, the attainable Pearson correlation is maximized
//! by the comonotone coupling `(F_a^{-1}(U), F_b^{-1}(U))` and minimized by
//! the antithetic coupling `(F_a^{-1}(U), F_b^{-1}(1-U))`. Any target inside
//! those bounds is hit by mixing the two couplings: give the pair a
//! probability w of sharing the uniform, i.e. make the underlying symmetric
//! Bernoulli pair agree with probability w, which is a Bernoulli correlation
//! of 2w - 1. Doing this for every pair converts a target correlation
//! matrix on the X scale into one on the Bernoulli scale; joint feasibility
//! of the converted matrix is then a vertex-LP question, and a feasible
//! mixing drives the whole joint sampler with a single uniform per draw.

use crate::error::{Error, Result};
use crate::marginal::Marginal;
use crate::pairs::{pair_count, pair_indices, CorrelationVector, PairIndex};
use crate::quadrature::{integrate_adaptive, QuadratureResult, DEFAULT_TOL, MAX_REFINEMENT_DEPTH};
use crate::sampler::{DiagonalSampler, MixingWeights, RandomSource};

/// u-space truncation for marginals with unbounded support.
const TRUNCATION_EPS: f64 = 1e-12;

/// Allowed gap between the expected correlation of supplied mixing weights
/// and the plan's Bernoulli target in [`sample_general`].
const WEIGHT_MATCH_TOL: f64 = 1e-6;

/// Extreme attainable correlations for a pair of marginals.
#[derive(Clone, Copy, Debug)]
pub struct FHBounds {
    /// Correlation of the antithetic coupling.
    pub rho_min: f64,
    /// Correlation of the comonotone coupling.
    pub rho_max: f64,
    /// Estimated absolute error of the two bounds (quadrature + truncated
    /// tails), on the correlation scale.
    pub error_estimate: f64,
    /// False when the quadrature depth cap was hit before the internal
    /// tolerance.
    pub converged: bool,
}

fn cross_moment(
    a: &Marginal,
    b: &Marginal,
    antithetic: bool,
) -> QuadratureResult {
    let unbounded = a.is_unbounded() || b.is_unbounded();
    let (lo, hi) = if unbounded {
        (TRUNCATION_EPS, 1.0 - TRUNCATION_EPS)
    } else {
        (0.0, 1.0)
    };
    let mut breaks = a.jump_points();
    if antithetic {
        breaks.extend(b.jump_points().iter().map(|&x| 1.0 - x));
    } else {
        breaks.extend(b.jump_points());
    }
    let f = |u: f64| {
        let ub = if antithetic { 1.0 - u } else { u };
        a.inverse_cdf_unchecked(u) * b.inverse_cdf_unchecked(ub)
    };
    integrate_adaptive(f, lo, hi, &breaks, DEFAULT_TOL, MAX_REFINEMENT_DEPTH)
}

/// Fréchet–Hoeffding correlation bounds for the pair `(a, b)`.
///
/// The cross moments are computed by adaptive composite Gauss–Legendre
/// quadrature in u-space, split at every discontinuity of either step
/// inverse; means and variances are closed-form. Unbounded supports are
/// truncated at u = 1e-12 with an analytic tail bound folded into the error
/// estimate.
pub fn fh_bounds(a: &Marginal, b: &Marginal) -> Result<FHBounds> {
    a.validate()?;
    b.validate()?;
    let (mean_a, mean_b) = (a.mean(), b.mean());
    let (var_a, var_b) = (a.variance(), b.variance());
    if !(var_a.is_finite() && var_b.is_finite()) {
        return Err(Error::Numerical("non-finite marginal variance".into()));
    }
    let scale = (var_a * var_b).sqrt();
    if scale <= 0.0 {
        return Err(Error::InvalidMarginal(
            "degenerate marginal: zero variance".into(),
        ));
    }

    let hi = cross_moment(a, b, false);
    let lo = cross_moment(a, b, true);

    let tail_bound = if a.is_unbounded() || b.is_unbounded() {
        // Cauchy-Schwarz over the truncated tails, using closed-form
        // second-moment bounds per marginal kind.
        (a.tail_second_moment_bound(TRUNCATION_EPS)
            * b.tail_second_moment_bound(TRUNCATION_EPS))
        .sqrt()
    } else {
        0.0
    };

    let mut rho_max = ((hi.value - mean_a * mean_b) / scale).clamp(-1.0, 1.0);
    let mut rho_min = ((lo.value - mean_a * mean_b) / scale).clamp(-1.0, 1.0);
    if !(rho_max.is_finite() && rho_min.is_finite()) {
        return Err(Error::Numerical(
            "cross-moment quadrature diverged".into(),
        ));
    }
    let error_estimate = (hi.error_estimate + lo.error_estimate + tail_bound) / scale;
    // The true bounds live in [-1, 1]; a computed bound that misses an
    // endpoint by no more than the quadrature error is the endpoint.
    let snap = error_estimate + 1e-8;
    if 1.0 - rho_max <= snap {
        rho_max = 1.0;
    }
    if rho_min + 1.0 <= snap {
        rho_min = -1.0;
    }
    Ok(FHBounds {
        rho_min: rho_min.min(rho_max),
        rho_max,
        error_estimate,
        converged: hi.converged && lo.converged,
    })
}

/// Invert the convex combination: the coupling weight `w` with
/// `rho_min (1 - w) + rho_max w = target_rho`, and the implied Bernoulli
/// correlation `2 w - 1`.
pub fn pair_mixing_weight(target_rho: f64, bounds: &FHBounds) -> Result<(f64, f64)> {
    let span = bounds.rho_max - bounds.rho_min;
    if span <= 0.0 {
        return Err(Error::DegenerateBounds {
            value: bounds.rho_min,
        });
    }
    // Targets may overshoot a numerically computed bound by its own error
    // estimate; the weight is clamped back into [0, 1] in that case.
    let slack = bounds.error_estimate.max(1e-9);
    if !target_rho.is_finite()
        || target_rho < bounds.rho_min - slack
        || target_rho > bounds.rho_max + slack
    {
        return Err(Error::TargetOutsideBounds {
            target: target_rho,
            rho_min: bounds.rho_min,
            rho_max: bounds.rho_max,
        });
    }
    let w = ((target_rho - bounds.rho_min) / span).clamp(0.0, 1.0);
    Ok((w, 2.0 * w - 1.0))
}

/// Per-pair piece of a transform plan.
#[derive(Clone, Debug)]
pub struct PairPlan {
    pub pair: PairIndex,
    pub bounds: FHBounds,
    /// Probability that the pair shares the uniform.
    pub weight: f64,
    /// Bernoulli-scale correlation 2 * weight - 1.
    pub bern_rho: f64,
}

/// A checked conversion of an X-scale correlation target into a
/// Bernoulli-scale target, with the per-pair bounds and weights retained.
#[derive(Clone, Debug)]
pub struct TransformPlan {
    n: usize,
    marginals: Vec<Marginal>,
    target: CorrelationVector,
    bernoulli_target: CorrelationVector,
    pairs: Vec<PairPlan>,
}

impl TransformPlan {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn marginals(&self) -> &[Marginal] {
        &self.marginals
    }

    pub fn target(&self) -> &CorrelationVector {
        &self.target
    }

    pub fn bernoulli_target(&self) -> &CorrelationVector {
        &self.bernoulli_target
    }

    pub fn pairs(&self) -> &[PairPlan] {
        &self.pairs
    }
}

/// Build the transform plan for the given marginals and X-scale target.
///
/// Fails with the offending pair when a target entry falls outside its
/// Fréchet–Hoeffding bounds. Per-pair feasibility does not imply joint
/// feasibility of the Bernoulli target; that is decided downstream by the
/// vertex LP.
pub fn build_transform_plan(
    marginals: &[Marginal],
    target: &CorrelationVector,
) -> Result<TransformPlan> {
    let n = marginals.len();
    if n < 1 {
        return Err(Error::DimensionTooSmall { n, min: 1 });
    }
    if target.n() != n {
        return Err(Error::ShapeMismatch(format!(
            "target has n = {}, but {} marginals were given",
            target.n(),
            n
        )));
    }
    for m in marginals {
        m.validate()?;
    }
    let mut pairs = Vec::with_capacity(pair_count(n));
    let mut bern_values = Vec::with_capacity(pair_count(n));
    for pair in pair_indices(n) {
        let (i, j) = (pair.i(), pair.j());
        let bounds = fh_bounds(&marginals[i - 1], &marginals[j - 1])?;
        let t = target.get(i, j);
        let (weight, bern_rho) = pair_mixing_weight(t, &bounds).map_err(|e| match e {
            Error::TargetOutsideBounds {
                target,
                rho_min,
                rho_max,
            } => Error::InfeasiblePair {
                i,
                j,
                target,
                rho_min,
                rho_max,
            },
            other => other,
        })?;
        bern_values.push(bern_rho);
        pairs.push(PairPlan {
            pair,
            bounds,
            weight,
            bern_rho,
        });
    }
    Ok(TransformPlan {
        n,
        marginals: marginals.to_vec(),
        target: target.clone(),
        bernoulli_target: CorrelationVector::new(n, bern_values)?,
        pairs,
    })
}

/// Joint draws with the plan's marginals; `count` rows of n reals.
#[derive(Clone, Debug)]
pub struct GeneralSampleBatch {
    n: usize,
    count: usize,
    data: Vec<f64>,
}

impl GeneralSampleBatch {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    /// Mean of column `i` (1-based).
    pub fn column_mean(&self, i: usize) -> f64 {
        let idx = i - 1;
        self.rows().map(|row| row[idx]).sum::<f64>() / self.count as f64
    }

    /// Sample Pearson correlations per pair, in pair order.
    pub fn empirical_correlation(&self) -> CorrelationVector {
        let n = self.n;
        let means: Vec<f64> = (1..=n).map(|i| self.column_mean(i)).collect();
        let mut cov = vec![0.0; pair_count(n)];
        let mut var = vec![0.0; n];
        for row in self.rows() {
            for i in 0..n {
                let di = row[i] - means[i];
                var[i] += di * di;
                let base = i * (2 * n - i - 1) / 2;
                for (off, &xj) in row[i + 1..].iter().enumerate() {
                    cov[base + off] += di * (xj - means[i + 1 + off]);
                }
            }
        }
        let mut values = Vec::with_capacity(pair_count(n));
        let mut idx = 0;
        for i in 0..n {
            for j in i + 1..n {
                let denom = (var[i] * var[j]).sqrt();
                values.push((cov[idx] / denom).clamp(-1.0, 1.0));
                idx += 1;
            }
        }
        CorrelationVector::new(n, values).expect("Pearson estimates are within range")
    }
}

/// Draw `count` joint rows: per draw one uniform U, one Bernoulli row B from
/// the diagonal mixture, then `X_i = F_i^{-1}(U)` where the pair-coupling
/// bit B_i decides between U and 1 - U.
///
/// The supplied weights must realize the plan's Bernoulli target (expected
/// correlation within 1e-6 entrywise), which holds for any weights accepted
/// by the feasibility check.
pub fn sample_general(
    plan: &TransformPlan,
    weights: &MixingWeights,
    count: usize,
    rng: &mut RandomSource,
) -> Result<GeneralSampleBatch> {
    if count < 1 {
        return Err(Error::SampleCount { min: 1, got: count });
    }
    if weights.n() != plan.n {
        return Err(Error::ShapeMismatch(format!(
            "weights are for n = {}, plan has n = {}",
            weights.n(),
            plan.n
        )));
    }
    let expected = weights.expected_correlation();
    let worst = expected
        .values()
        .iter()
        .zip(plan.bernoulli_target.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    if worst > WEIGHT_MATCH_TOL {
        return Err(Error::InvalidWeights(format!(
            "weights miss the Bernoulli target by {worst:.3e} (tolerance {WEIGHT_MATCH_TOL:.0e})"
        )));
    }

    let n = plan.n;
    let sampler = DiagonalSampler::new(weights);
    let mut bits = Vec::with_capacity(n);
    let mut data = Vec::with_capacity(count * n);
    for _ in 0..count {
        let u = rng.next_open_uniform();
        bits.clear();
        sampler.draw_row(rng, &mut bits);
        for (i, &b) in bits.iter().enumerate() {
            let ui = if b == 1 { u } else { 1.0 - u };
            data.push(plan.marginals[i].inverse_cdf_unchecked(ui));
        }
    }
    Ok(GeneralSampleBatch { n, count, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::bern_pair_bounds;
    use proptest::prelude::*;

    fn exp2() -> Marginal {
        Marginal::Exponential { mean: 2.0 }
    }

    fn two_point() -> Marginal {
        Marginal::FiniteDiscrete {
            values: vec![1.0, 4.0],
            probs: vec![0.3, 0.7],
        }
    }

    #[test]
    fn published_exponential_discrete_bounds() {
        let b = fh_bounds(&exp2(), &two_point()).unwrap();
        assert!(
            (b.rho_max - 0.544828).abs() < 1e-4,
            "rho_max = {}",
            b.rho_max
        );
        assert!(
            (b.rho_min - (-0.78818)).abs() < 1e-4,
            "rho_min = {}",
            b.rho_min
        );
        assert!(b.converged, "error estimate {}", b.error_estimate);
    }

    #[test]
    fn self_coupling_reaches_one() {
        for m in [
            Marginal::Uniform { a: -1.0, b: 3.0 },
            exp2(),
            Marginal::Normal { mu: 1.0, sigma: 2.0 },
            two_point(),
            Marginal::Bernoulli { p: 0.3 },
        ] {
            let b = fh_bounds(&m, &m).unwrap();
            assert!((b.rho_max - 1.0).abs() < 1e-8, "{m:?}: {}", b.rho_max);
        }
    }

    #[test]
    fn symmetric_two_point_attains_full_range() {
        let m = Marginal::FiniteDiscrete {
            values: vec![-3.0, 7.0],
            probs: vec![0.5, 0.5],
        };
        let b = fh_bounds(&m, &m).unwrap();
        assert!((b.rho_max - 1.0).abs() < 1e-8);
        assert!((b.rho_min + 1.0).abs() < 1e-8);
    }

    #[test]
    fn bernoulli_pair_matches_closed_form() {
        for p in [0.25, 0.5, 0.6, 0.75, 0.9] {
            let m = Marginal::Bernoulli { p };
            let b = fh_bounds(&m, &m).unwrap();
            let (lo, hi) = bern_pair_bounds(p).unwrap();
            assert!((b.rho_min - lo).abs() < 1e-8, "p = {p}: {} vs {lo}", b.rho_min);
            assert!((b.rho_max - hi).abs() < 1e-8);
        }
    }

    #[test]
    fn bounds_are_symmetric_in_arguments() {
        let pairs = [
            (exp2(), two_point()),
            (Marginal::Uniform { a: 0.0, b: 1.0 }, Marginal::Normal { mu: 0.0, sigma: 1.0 }),
            (Marginal::Bernoulli { p: 0.3 }, exp2()),
        ];
        for (a, b) in pairs {
            let ab = fh_bounds(&a, &b).unwrap();
            let ba = fh_bounds(&b, &a).unwrap();
            assert!((ab.rho_min - ba.rho_min).abs() < 1e-8);
            assert!((ab.rho_max - ba.rho_max).abs() < 1e-8);
        }
    }

    #[test]
    fn mixing_weight_published_example() {
        let b = fh_bounds(&exp2(), &two_point()).unwrap();
        let (w, bern) = pair_mixing_weight(-0.4, &b).unwrap();
        assert!((w - 0.291209).abs() < 1e-4, "w = {w}");
        assert!((bern - (-0.417582)).abs() < 1e-4, "bern = {bern}");
    }

    #[test]
    fn mixing_weight_endpoints() {
        let b = FHBounds {
            rho_min: -0.7,
            rho_max: 0.5,
            error_estimate: 0.0,
            converged: true,
        };
        assert_eq!(pair_mixing_weight(0.5, &b).unwrap(), (1.0, 1.0));
        assert_eq!(pair_mixing_weight(-0.7, &b).unwrap(), (0.0, -1.0));
        assert!(matches!(
            pair_mixing_weight(0.6, &b),
            Err(Error::TargetOutsideBounds { .. })
        ));
        let degenerate = FHBounds {
            rho_min: 0.2,
            rho_max: 0.2,
            error_estimate: 0.0,
            converged: true,
        };
        assert!(matches!(
            pair_mixing_weight(0.2, &degenerate),
            Err(Error::DegenerateBounds { .. })
        ));
    }

    proptest! {
        /// w is the exact affine inverse of the convex combination.
        #[test]
        fn mixing_weight_is_affine_inverse(
            lo in -1.0f64..0.0,
            span in 0.1f64..2.0,
            t in 0.0f64..=1.0,
        ) {
            let hi = (lo + span).min(1.0);
            prop_assume!(hi > lo);
            let bounds = FHBounds { rho_min: lo, rho_max: hi, error_estimate: 0.0, converged: true };
            let target = lo + t * (hi - lo);
            let (w, bern) = pair_mixing_weight(target, &bounds).unwrap();
            prop_assert!((lo * (1.0 - w) + hi * w - target).abs() < 1e-12);
            prop_assert!((bern - (2.0 * w - 1.0)).abs() < 1e-15);
        }
    }

    fn published_marginals() -> Vec<Marginal> {
        vec![
            Marginal::Uniform { a: 0.0, b: 1.0 },
            exp2(),
            two_point(),
            Marginal::Normal { mu: 0.0, sigma: 1.0 },
        ]
    }

    fn published_target() -> CorrelationVector {
        CorrelationVector::new(4, vec![0.2, -0.1, -0.4, -0.4, 0.3, -0.2]).unwrap()
    }

    #[test]
    fn plan_reproduces_published_bernoulli_target() {
        let plan = build_transform_plan(&published_marginals(), &published_target()).unwrap();
        let want = [0.230940, -0.125988, -0.409330, -0.417582, 0.332154, -0.263598];
        for (got, want) in plan.bernoulli_target().values().iter().zip(want) {
            assert!((got - want).abs() < 1e-4, "got {got}, want {want}");
        }
    }

    #[test]
    fn plan_rejects_out_of_bounds_pair() {
        let marginals = vec![exp2(), two_point()];
        let target = CorrelationVector::new(2, vec![-0.9]).unwrap();
        match build_transform_plan(&marginals, &target) {
            Err(Error::InfeasiblePair { i: 1, j: 2, target, .. }) => {
                assert_eq!(target, -0.9);
            }
            other => panic!("expected InfeasiblePair, got {other:?}"),
        }
    }

    #[test]
    fn identical_marginals_all_ones_target() {
        let marginals = vec![exp2(), exp2(), exp2()];
        let target = CorrelationVector::new(3, vec![1.0, 1.0, 1.0]).unwrap();
        let plan = build_transform_plan(&marginals, &target).unwrap();
        for p in plan.pairs() {
            assert!((p.weight - 1.0).abs() < 1e-8);
            assert!((p.bern_rho - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn single_marginal_plan_samples_uniform() {
        let marginals = vec![Marginal::Uniform { a: 0.0, b: 1.0 }];
        let target = CorrelationVector::new(1, vec![]).unwrap();
        let plan = build_transform_plan(&marginals, &target).unwrap();
        let weights = MixingWeights::new(1, vec![1.0]).unwrap();
        let mut rng = RandomSource::new(9);
        let batch = sample_general(&plan, &weights, 50_000, &mut rng).unwrap();
        let mean = batch.column_mean(1);
        assert!((mean - 0.5).abs() < 0.01, "mean = {mean}");
        for row in batch.rows() {
            assert!(row[0] > 0.0 && row[0] < 1.0);
        }
    }

    #[test]
    fn comonotone_round_trip_has_identical_columns() {
        // identical marginals, target 1 everywhere: w = 1 on every pair, the
        // feasible mixing is the all-agree diagonal, and every column of the
        // batch coincides
        let marginals = vec![exp2(), exp2()];
        let target = CorrelationVector::new(2, vec![1.0]).unwrap();
        let plan = build_transform_plan(&marginals, &target).unwrap();
        let weights = MixingWeights::new(2, vec![1.0, 0.0]).unwrap();
        let mut rng = RandomSource::new(10);
        let batch = sample_general(&plan, &weights, 1000, &mut rng).unwrap();
        for row in batch.rows() {
            assert_eq!(row[0], row[1]);
        }
        let emp = batch.empirical_correlation();
        assert!((emp.values()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mismatched_weights_are_rejected() {
        let marginals = vec![exp2(), exp2()];
        let target = CorrelationVector::new(2, vec![1.0]).unwrap();
        let plan = build_transform_plan(&marginals, &target).unwrap();
        // anti-diagonal weights give correlation -1, not the required +1
        let weights = MixingWeights::new(2, vec![0.0, 1.0]).unwrap();
        let mut rng = RandomSource::new(11);
        assert!(matches!(
            sample_general(&plan, &weights, 10, &mut rng),
            Err(Error::InvalidWeights(_))
        ));
    }
}
