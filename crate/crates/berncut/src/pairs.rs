//! Coordinate pairs and the correlation / agreement vector types.
//!
//! A symmetric n x n correlation matrix is handled throughout as the vector
//! of its above-diagonal entries in row-by-row order:
//! (1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n). All coordinate indices in
//! the public API are 1-based.

use crate::error::{Error, Result};

/// Unordered coordinate pair `(i, j)` with `1 <= i < j <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairIndex {
    i: usize,
    j: usize,
}

impl PairIndex {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || j <= i || j > n {
            return Err(Error::ShapeMismatch(format!(
                "pair ({i},{j}) is not a valid upper-triangular pair for n = {n}"
            )));
        }
        Ok(Self { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }
}

/// Number of coordinate pairs for dimension `n`: n(n-1)/2.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// All pairs of `1..=n` in row-by-row upper-triangular order.
pub fn pair_indices(n: usize) -> impl Iterator<Item = PairIndex> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| PairIndex { i, j }))
}

/// Position of the pair `(i, j)` in the row-by-row linearization.
pub fn linear_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i >= 1 && i < j && j <= n);
    (i - 1) * n - i * (i - 1) / 2 + (j - i - 1)
}

/// A vector of pairwise correlations, one entry per [`PairIndex`], each in
/// [-1, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationVector {
    n: usize,
    values: Vec<f64>,
}

impl CorrelationVector {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::DimensionTooSmall { n, min: 1 });
        }
        let expected = pair_count(n);
        if values.len() != expected {
            return Err(Error::VectorLength {
                n,
                expected,
                got: values.len(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || !(-1.0..=1.0).contains(&value) {
                return Err(Error::CorrelationRange { index, value });
            }
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Entry for the pair `(i, j)`, 1-based with i < j.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[linear_index(i, j, self.n)]
    }

    /// Entrywise agreement probabilities lambda = (1 + rho) / 2.
    pub fn to_agreement(&self) -> AgreementVector {
        AgreementVector {
            n: self.n,
            values: self.values.iter().map(|&r| (1.0 + r) / 2.0).collect(),
        }
    }

    /// The affine image `1 - 2 rho`, entrywise; values in [-1, 3] for
    /// arbitrary input, no clamping.
    ///
    /// This is the map carrying the cut polytope onto the feasibility
    /// polytope (a vertex delta(S) goes to the corresponding vertex
    /// correlation). Membership itself is decided by the inverse direction:
    /// rho is attainable iff `(1 - rho)/2` lies in the cut polytope, so this
    /// image alone does not decide membership.
    pub fn cut_image(&self) -> Vec<f64> {
        self.values.iter().map(|&r| 1.0 - 2.0 * r).collect()
    }
}

/// A vector of pairwise agreement probabilities, one entry per
/// [`PairIndex`], each in [0, 1]. Related to correlations by
/// lambda = (1 + rho) / 2.
#[derive(Clone, Debug, PartialEq)]
pub struct AgreementVector {
    n: usize,
    values: Vec<f64>,
}

impl AgreementVector {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n < 1 {
            return Err(Error::DimensionTooSmall { n, min: 1 });
        }
        let expected = pair_count(n);
        if values.len() != expected {
            return Err(Error::VectorLength {
                n,
                expected,
                got: values.len(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(Error::AgreementRange { index, value });
            }
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Entrywise correlations rho = 2 lambda - 1. Exact inverse of
    /// [`CorrelationVector::to_agreement`].
    pub fn to_correlation(&self) -> CorrelationVector {
        CorrelationVector {
            n: self.n,
            values: self.values.iter().map(|&l| 2.0 * l - 1.0).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pair_order_is_row_by_row() {
        let pairs: Vec<(usize, usize)> = pair_indices(4).map(|p| (p.i(), p.j())).collect();
        assert_eq!(pairs, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(pair_count(4), 6);
    }

    #[test]
    fn linear_index_matches_enumeration() {
        for n in 1..=12 {
            for (pos, p) in pair_indices(n).enumerate() {
                assert_eq!(linear_index(p.i(), p.j(), n), pos);
            }
            assert_eq!(pair_indices(n).count(), pair_count(n));
        }
    }

    #[test]
    fn correlation_validation() {
        assert!(CorrelationVector::new(3, vec![0.0, 0.5, -1.0]).is_ok());
        assert!(matches!(
            CorrelationVector::new(3, vec![0.0, 1.5, 0.0]),
            Err(Error::CorrelationRange { index: 1, .. })
        ));
        assert!(matches!(
            CorrelationVector::new(3, vec![0.0, 0.0]),
            Err(Error::VectorLength { .. })
        ));
        assert!(CorrelationVector::new(3, vec![0.0, f64::NAN, 0.0]).is_err());
        // n = 1 has zero pairs
        assert!(CorrelationVector::new(1, vec![]).is_ok());
    }

    #[test]
    fn agreement_examples() {
        let rho = CorrelationVector::new(3, vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(rho.to_agreement().values(), [1.0, 1.0, 1.0]);
        let rho = CorrelationVector::new(3, vec![-1.0, -1.0, -1.0]).unwrap();
        assert_eq!(rho.to_agreement().values(), [0.0, 0.0, 0.0]);
        let rho = CorrelationVector::new(3, vec![-0.4, -0.4, -0.4]).unwrap();
        for &l in rho.to_agreement().values() {
            assert!((l - 0.3).abs() < 1e-15);
        }
    }

    #[test]
    fn cut_image_examples() {
        let rho = CorrelationVector::new(3, vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(rho.cut_image(), [-1.0, -1.0, -1.0]);
        let rho = CorrelationVector::new(3, vec![0.0, 0.0, 0.0]).unwrap();
        assert_eq!(rho.cut_image(), [1.0, 1.0, 1.0]);
        // infeasible point whose image escapes [0,1]: the map alone does not
        // decide membership
        let third = -1.0 / 3.0;
        let rho = CorrelationVector::new(3, vec![third, third, third]).unwrap();
        for &v in &rho.cut_image() {
            assert!((v - 5.0 / 3.0).abs() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn agreement_round_trip(values in proptest::collection::vec(-1.0f64..=1.0, 3)) {
            let rho = CorrelationVector::new(3, values).unwrap();
            let back = rho.to_agreement().to_correlation();
            for (a, b) in rho.values().iter().zip(back.values()) {
                prop_assert!((a - b).abs() <= 1e-15);
            }
        }
    }
}
