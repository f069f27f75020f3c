//! Sampling correlated symmetric Bernoulli vectors.
//!
//! Given mixing weights alpha over the cube diagonals, a draw picks diagonal
//! k with probability alpha_k and then emits its representative vertex or
//! the antipodal complement with probability 1/2 each, which is exactly the
//! mixture `sum_k alpha_k pi_k`. Marginals are Bernoulli(1/2) by
//! construction and the pairwise correlations equal the weighted vertex
//! correlations.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pairs::{pair_count, CorrelationVector};
use crate::polytope::diagonal_count;

/// Seeded uniform generator. Identical seed and stream produce identical
/// output on every platform. A single source must not be shared across
/// threads; parallel use goes through distinct stream indices.
#[derive(Clone, Debug)]
pub struct RandomSource {
    rng: ChaCha8Rng,
    seed: u64,
    stream: u64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// Independent stream `stream` of the same seed.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng, seed, stream }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform draw in [0, 1).
    pub fn next_uniform(&mut self) -> f64 {
        self.rng.random()
    }

    /// Uniform draw in the open interval (0, 1); rejects the single atom 0.
    pub fn next_open_uniform(&mut self) -> f64 {
        loop {
            let u: f64 = self.rng.random();
            if u > 0.0 {
                return u;
            }
        }
    }

    fn next_index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }
}

/// Past this support size, categorical selection uses an alias table
/// instead of a linear cumulative scan.
const ALIAS_THRESHOLD: usize = 64;

/// Nonnegative mixing weights over the 2^(n-1) diagonals, summing to one.
///
/// Construction renormalizes the sum to exactly 1 and zeroes entries within
/// LP tolerance below zero; anything worse is rejected.
#[derive(Clone, Debug)]
pub struct MixingWeights {
    n: usize,
    alpha: Vec<f64>,
}

const WEIGHT_TOL: f64 = 1e-9;

impl MixingWeights {
    pub fn new(n: usize, alpha: Vec<f64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::DimensionTooSmall { n, min: 1 });
        }
        let expected = diagonal_count(n);
        if alpha.len() != expected {
            return Err(Error::VectorLength {
                n,
                expected,
                got: alpha.len(),
            });
        }
        let mut alpha = alpha;
        for (k, a) in alpha.iter_mut().enumerate() {
            if !a.is_finite() || *a < -WEIGHT_TOL {
                return Err(Error::InvalidWeights(format!(
                    "weight {a} at index {k} is negative beyond tolerance"
                )));
            }
            if *a < 0.0 {
                *a = 0.0;
            }
        }
        let total: f64 = alpha.iter().sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {total}, expected 1 within {WEIGHT_TOL}"
            )));
        }
        for a in &mut alpha {
            *a /= total;
        }
        Ok(Self { n, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Expected pairwise correlation of the mixture: the weighted sum of
    /// vertex correlations, computed directly from the diagonal bit
    /// patterns.
    pub fn expected_correlation(&self) -> CorrelationVector {
        let n = self.n;
        let mut values = Vec::with_capacity(pair_count(n));
        for i in 1..=n {
            for j in i + 1..=n {
                let mut acc = 0.0;
                for (k, &a) in self.alpha.iter().enumerate() {
                    let bi = (k >> (n - i)) & 1;
                    let bj = (k >> (n - j)) & 1;
                    acc += if bi == bj { a } else { -a };
                }
                values.push(acc.clamp(-1.0, 1.0));
            }
        }
        CorrelationVector::new(n, values).expect("mixture correlations are within range")
    }
}

enum Categorical {
    Linear { weights: Vec<f64> },
    Alias { prob: Vec<f64>, alias: Vec<usize> },
}

impl Categorical {
    fn build(weights: &[f64]) -> Self {
        if weights.len() <= ALIAS_THRESHOLD {
            return Categorical::Linear {
                weights: weights.to_vec(),
            };
        }
        // Vose's alias method.
        let k = weights.len();
        let mut prob = vec![0.0; k];
        let mut alias = vec![0usize; k];
        let mut scaled: Vec<f64> = weights.iter().map(|&w| w * k as f64).collect();
        let mut small: Vec<usize> = Vec::with_capacity(k);
        let mut large: Vec<usize> = Vec::with_capacity(k);
        for (i, &s) in scaled.iter().enumerate() {
            if s < 1.0 {
                small.push(i);
            } else {
                large.push(i);
            }
        }
        while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
            small.pop();
            prob[s] = scaled[s];
            alias[s] = l;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            if scaled[l] < 1.0 {
                large.pop();
                small.push(l);
            }
        }
        for &i in small.iter().chain(large.iter()) {
            prob[i] = 1.0;
        }
        Categorical::Alias { prob, alias }
    }

    fn draw(&self, rng: &mut RandomSource) -> usize {
        match self {
            Categorical::Linear { weights } => {
                let u = rng.next_uniform();
                let mut acc = 0.0;
                for (i, &w) in weights.iter().enumerate() {
                    acc += w;
                    if u < acc {
                        return i;
                    }
                }
                weights.len() - 1
            }
            Categorical::Alias { prob, alias } => {
                let i = rng.next_index(prob.len());
                if rng.next_uniform() < prob[i] {
                    i
                } else {
                    alias[i]
                }
            }
        }
    }
}

/// Draws whole rows `(B_1, ..., B_n)` from a diagonal mixture: a categorical
/// pick of the diagonal followed by a fair complement coin.
pub(crate) struct DiagonalSampler {
    n: usize,
    categorical: Categorical,
}

impl DiagonalSampler {
    pub(crate) fn new(weights: &MixingWeights) -> Self {
        Self {
            n: weights.n(),
            categorical: Categorical::build(weights.alpha()),
        }
    }

    /// Appends one row of n bits to `out`. The complement coin consumes its
    /// own uniform, after the categorical draw.
    pub(crate) fn draw_row(&self, rng: &mut RandomSource, out: &mut Vec<u8>) {
        let k = self.categorical.draw(rng);
        let flip = if rng.next_uniform() < 0.5 { 1u8 } else { 0u8 };
        let n = self.n;
        for i in 0..n {
            let bit = ((k >> (n - 1 - i)) & 1) as u8;
            out.push(bit ^ flip);
        }
    }
}

/// A batch of joint draws with Bernoulli marginals; `count` rows of n bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliSampleBatch {
    n: usize,
    count: usize,
    bits: Vec<u8>,
}

impl BernoulliSampleBatch {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.bits[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.bits.chunks_exact(self.n)
    }

    /// Mean of column `i` (1-based).
    pub fn column_mean(&self, i: usize) -> f64 {
        let idx = i - 1;
        let total: u64 = self.rows().map(|row| u64::from(row[idx])).sum();
        total as f64 / self.count as f64
    }
}

/// Draw `count` i.i.d. rows from the diagonal mixture given by `weights`.
pub fn sample_bernoulli(
    weights: &MixingWeights,
    count: usize,
    rng: &mut RandomSource,
) -> Result<BernoulliSampleBatch> {
    if count < 1 {
        return Err(Error::SampleCount { min: 1, got: count });
    }
    let sampler = DiagonalSampler::new(weights);
    let n = weights.n();
    let mut bits = Vec::with_capacity(count * n);
    for _ in 0..count {
        sampler.draw_row(rng, &mut bits);
    }
    Ok(BernoulliSampleBatch { n, count, bits })
}

/// Sample Pearson correlation per pair, in pair order. Exact integer
/// accumulation under the hood; requires at least two rows and no constant
/// column.
pub fn empirical_correlation(batch: &BernoulliSampleBatch) -> Result<CorrelationVector> {
    if batch.count < 2 {
        return Err(Error::SampleCount {
            min: 2,
            got: batch.count,
        });
    }
    let n = batch.n;
    let count = batch.count as u64;
    let mut ones = vec![0u64; n];
    let mut pair_ones = vec![0u64; pair_count(n)];
    for row in batch.rows() {
        for (i, &b) in row.iter().enumerate() {
            if b == 1 {
                ones[i] += 1;
                let idx = i * (2 * n - i - 1) / 2; // linearized (i, i+1)
                for (off, &b2) in row[i + 1..].iter().enumerate() {
                    if b2 == 1 {
                        pair_ones[idx + off] += 1;
                    }
                }
            }
        }
    }
    for (i, &s) in ones.iter().enumerate() {
        if s == 0 || s == count {
            return Err(Error::ConstantColumn { column: i + 1 });
        }
    }
    let nf = count as f64;
    let mut values = Vec::with_capacity(pair_count(n));
    let mut idx = 0usize;
    for i in 0..n {
        let sx = ones[i] as f64;
        for &oj in &ones[i + 1..] {
            let sy = oj as f64;
            let sxy = pair_ones[idx] as f64;
            idx += 1;
            // Pearson on 0/1 data: x^2 = x, so the variance sums collapse.
            let cov = nf * sxy - sx * sy;
            let vx = nf * sx - sx * sx;
            let vy = nf * sy - sy * sy;
            values.push((cov / (vx * vy).sqrt()).clamp(-1.0, 1.0));
        }
    }
    CorrelationVector::new(n, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::DiagonalIndex;
    use std::collections::HashSet;

    fn weights(n: usize, alpha: &[f64]) -> MixingWeights {
        MixingWeights::new(n, alpha.to_vec()).unwrap()
    }

    #[test]
    fn weights_validation() {
        assert!(MixingWeights::new(3, vec![0.25; 4]).is_ok());
        assert!(MixingWeights::new(3, vec![0.5; 4]).is_err());
        assert!(MixingWeights::new(3, vec![0.25; 3]).is_err());
        assert!(MixingWeights::new(3, vec![1.0 + 5e-10, -5e-10, 0.0, 0.0]).is_ok());
        assert!(MixingWeights::new(3, vec![1.1, -0.1, 0.0, 0.0]).is_err());
    }

    #[test]
    fn weights_renormalize_exactly() {
        let w = MixingWeights::new(2, vec![0.5 + 4e-10, 0.5 + 4e-10]).unwrap();
        let total: f64 = w.alpha().iter().sum();
        assert_eq!(total, 1.0);
    }

    #[test]
    fn comonotone_pair() {
        let w = weights(2, &[1.0, 0.0]);
        let mut rng = RandomSource::new(1);
        let batch = sample_bernoulli(&w, 20_000, &mut rng).unwrap();
        for row in batch.rows() {
            assert_eq!(row[0], row[1]);
        }
        let mean = batch.column_mean(1);
        assert!((mean - 0.5).abs() < 0.02);
    }

    #[test]
    fn rows_are_diagonal_vertices_or_complements() {
        let w = weights(4, &[0.1, 0.2, 0.05, 0.05, 0.15, 0.15, 0.2, 0.1]);
        let mut rng = RandomSource::new(2);
        let batch = sample_bernoulli(&w, 5_000, &mut rng).unwrap();
        let mut allowed = HashSet::new();
        for d in DiagonalIndex::all(4) {
            let v = d.vertex();
            allowed.insert(v.bits().to_vec());
            allowed.insert(v.complement().bits().to_vec());
        }
        for row in batch.rows() {
            assert!(allowed.contains(row));
        }
    }

    #[test]
    fn reproducibility_same_seed_same_bits() {
        let w = weights(3, &[0.4, 0.3, 0.2, 0.1]);
        let a = sample_bernoulli(&w, 1000, &mut RandomSource::new(42)).unwrap();
        let b = sample_bernoulli(&w, 1000, &mut RandomSource::new(42)).unwrap();
        assert_eq!(a, b);
        let c = sample_bernoulli(&w, 1000, &mut RandomSource::new(43)).unwrap();
        assert_ne!(a, c);
        let d = sample_bernoulli(&w, 1000, &mut RandomSource::with_stream(42, 1)).unwrap();
        assert_ne!(a, d);
    }

    #[test]
    fn empirical_correlation_exact_small_batches() {
        // rows (0,0) and (1,1) equally often: correlation 1
        let batch = BernoulliSampleBatch {
            n: 2,
            count: 4,
            bits: vec![0, 0, 1, 1, 0, 0, 1, 1],
        };
        assert_eq!(empirical_correlation(&batch).unwrap().values(), [1.0]);
        // alternating (0,1), (1,0): correlation -1
        let batch = BernoulliSampleBatch {
            n: 2,
            count: 4,
            bits: vec![0, 1, 1, 0, 0, 1, 1, 0],
        };
        assert_eq!(empirical_correlation(&batch).unwrap().values(), [-1.0]);
    }

    #[test]
    fn constant_column_is_detected() {
        let batch = BernoulliSampleBatch {
            n: 2,
            count: 3,
            bits: vec![0, 1, 0, 0, 0, 1],
        };
        assert!(matches!(
            empirical_correlation(&batch),
            Err(Error::ConstantColumn { column: 1 })
        ));
    }

    #[test]
    fn mixture_statistics_converge() {
        // equal mixture of the three anti-diagonal vertices of n = 3:
        // expected pairwise correlation -1/3
        let w = weights(3, &[0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
        let expect = w.expected_correlation();
        for &e in expect.values() {
            assert!((e - (-1.0 / 3.0)).abs() < 1e-12);
        }
        let mut rng = RandomSource::new(3);
        let batch = sample_bernoulli(&w, 200_000, &mut rng).unwrap();
        let emp = empirical_correlation(&batch).unwrap();
        for (&got, &want) in emp.values().iter().zip(expect.values()) {
            assert!((got - want).abs() < 0.01, "got {got}, want {want}");
        }
        for i in 1..=3 {
            assert!((batch.column_mean(i) - 0.5).abs() < 0.005);
        }
    }

    /// The alias path (support > 64) matches the mixture law too.
    #[test]
    fn alias_path_statistics() {
        let n = 8; // 128 diagonals
        let cols = diagonal_count(n);
        let mut alpha = vec![0.0; cols];
        // skewed but full-support weights
        let mut total = 0.0;
        for (k, a) in alpha.iter_mut().enumerate() {
            *a = 1.0 / ((k + 1) as f64);
            total += *a;
        }
        for a in &mut alpha {
            *a /= total;
        }
        let w = MixingWeights::new(n, alpha).unwrap();
        let expect = w.expected_correlation();
        let mut rng = RandomSource::new(5);
        let batch = sample_bernoulli(&w, 300_000, &mut rng).unwrap();
        let emp = empirical_correlation(&batch).unwrap();
        for (&got, &want) in emp.values().iter().zip(expect.values()) {
            assert!((got - want).abs() < 0.012, "got {got}, want {want}");
        }
    }

    /// Two routes to the expected mixture correlation agree: the direct bit
    /// loop and the vertex-matrix product.
    #[test]
    fn expected_correlation_matches_matrix_mix() {
        let mut rng = RandomSource::new(8);
        for n in [2usize, 3, 5, 7] {
            let cols = diagonal_count(n);
            let mut alpha = vec![0.0; cols];
            for a in &mut alpha {
                *a = rng.next_uniform();
            }
            let total: f64 = alpha.iter().sum();
            for a in &mut alpha {
                *a /= total;
            }
            let w = MixingWeights::new(n, alpha).unwrap();
            let direct = w.expected_correlation();
            let via_matrix = crate::polytope::VertexMatrix::build(n)
                .unwrap()
                .mix(w.alpha())
                .unwrap();
            for (a, b) in direct.values().iter().zip(via_matrix.values()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn count_zero_rejected() {
        let w = weights(2, &[0.5, 0.5]);
        assert!(matches!(
            sample_bernoulli(&w, 0, &mut RandomSource::new(0)),
            Err(Error::SampleCount { .. })
        ));
    }
}
