//! Cube diagonals, cut vectors, and the vertex matrix.
//!
//! The correlation vectors attainable by an n-variate symmetric Bernoulli
//! vector form a polytope whose 2^(n-1) vertices are the correlation vectors
//! of the diagonal distributions: the uniform laws on antipodal vertex pairs
//! {x, 1-x} of the cube {0,1}^n. Each diagonal is named by the label of its
//! representative vertex with first bit 0, and the vertex correlation vector
//! has entry +1 where the representative's bits agree and -1 where they
//! differ. The same data, mapped entrywise by rho -> (1 - rho)/2, enumerates
//! the cut vectors of the complete graph K_n.

use crate::error::{Error, Result};
use crate::pairs::{pair_count, CorrelationVector};

/// Default upper bound on `n` for vertex-matrix construction. The matrix has
/// 2^(n-1) columns, so memory and LP cost grow exponentially past this point.
pub const DEFAULT_DIMENSION_CAP: usize = 20;

/// Number of cube diagonals in dimension `n`: 2^(n-1).
pub fn diagonal_count(n: usize) -> usize {
    1usize << (n - 1)
}

/// A vertex of the cube {0,1}^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: Vec<u8>,
}

impl BitVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        for (index, &value) in bits.iter().enumerate() {
            if value > 1 {
                return Err(Error::BitRange { index, value });
            }
        }
        Ok(Self { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Bit at 1-based coordinate `i`.
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }

    /// The antipodal vertex `1 - x`.
    pub fn complement(&self) -> BitVector {
        BitVector {
            bits: self.bits.iter().map(|&b| 1 - b).collect(),
        }
    }

    /// The cube-vertex label b(x) = 1 + sum_j x_j 2^(n-j); the first
    /// coordinate carries the most significant bit.
    pub fn label(&self) -> usize {
        let n = self.bits.len();
        1 + self
            .bits
            .iter()
            .enumerate()
            .map(|(idx, &b)| (b as usize) << (n - 1 - idx))
            .sum::<usize>()
    }

    /// 1-based coordinates whose bit is set.
    pub fn support(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(idx, _)| idx + 1)
            .collect()
    }
}

/// Label `k` of a cube diagonal, `1 <= k <= 2^(n-1)`.
///
/// Each diagonal contains exactly one vertex whose first coordinate is 0;
/// `k` is the label b(y) of that representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalIndex {
    k: usize,
    n: usize,
}

impl DiagonalIndex {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::DimensionTooSmall { n, min: 1 });
        }
        let max = diagonal_count(n);
        if k < 1 || k > max {
            return Err(Error::DiagonalIndexRange { k, n, max });
        }
        Ok(Self { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All diagonals of the n-cube in label order.
    pub fn all(n: usize) -> impl Iterator<Item = DiagonalIndex> {
        (1..=diagonal_count(n)).map(move |k| DiagonalIndex { k, n })
    }

    /// The representative vertex y with y(1) = 0 and b(y) = k: the bits of
    /// k - 1 written big-endian in n positions.
    pub fn vertex(&self) -> BitVector {
        let v = self.k - 1;
        let bits = (0..self.n)
            .map(|idx| ((v >> (self.n - 1 - idx)) & 1) as u8)
            .collect();
        BitVector { bits }
    }

    /// Correlation vector of the diagonal distribution: +1 on pairs whose
    /// bits agree in the representative vertex, -1 otherwise.
    pub fn correlation(&self) -> CorrelationVector {
        let v = self.k - 1;
        let n = self.n;
        let mut values = Vec::with_capacity(pair_count(n));
        for i in 1..=n {
            let bi = (v >> (n - i)) & 1;
            for j in i + 1..=n {
                let bj = (v >> (n - j)) & 1;
                values.push(if bi == bj { 1.0 } else { -1.0 });
            }
        }
        CorrelationVector::new(n, values).expect("vertex correlations are within range")
    }
}

/// A cut vector of the complete graph K_n: entry 1 on every pair separated
/// by the partition (S, S^c).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CutVector {
    n: usize,
    values: Vec<u8>,
}

impl CutVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }
}

/// The cut vector delta(S) for `S` a subset of {1, ..., n}; entry (i,j) is 1
/// iff exactly one of i, j lies in S. Satisfies delta(S) = delta(S^c).
pub fn cut_vector(s: &[usize], n: usize) -> Result<CutVector> {
    if n < 1 {
        return Err(Error::DimensionTooSmall { n, min: 1 });
    }
    let mut member = vec![false; n + 1];
    for &element in s {
        if element < 1 || element > n {
            return Err(Error::CutSetElement { element, n });
        }
        member[element] = true;
    }
    let mut values = Vec::with_capacity(pair_count(n));
    for i in 1..=n {
        for j in i + 1..=n {
            values.push(u8::from(member[i] != member[j]));
        }
    }
    Ok(CutVector { n, values })
}

/// The stacked system matrix for feasibility: column k holds the vertex
/// correlation vector of diagonal k, with a final all-ones row so that
/// `M alpha = [rho, 1]` expresses "rho is a convex combination of the
/// vertices".
#[derive(Clone, Debug)]
pub struct VertexMatrix {
    n: usize,
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl VertexMatrix {
    /// Build the matrix for dimension `n` under [`DEFAULT_DIMENSION_CAP`].
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with_cap(n, DEFAULT_DIMENSION_CAP)
    }

    /// Build with an explicit cap. Raising the cap past the default accepts
    /// exponential memory and solve cost; callers owning a user interface
    /// should warn before doing so.
    pub fn build_with_cap(n: usize, cap: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { n, min: 2 });
        }
        if n > cap {
            return Err(Error::DimensionCap { n, cap });
        }
        let rows = pair_count(n) + 1;
        let cols = diagonal_count(n);
        let mut data = vec![0.0; rows * cols];
        let mut row = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                let base = row * cols;
                for k in 0..cols {
                    let bi = (k >> (n - i)) & 1;
                    let bj = (k >> (n - j)) & 1;
                    data[base + k] = if bi == bj { 1.0 } else { -1.0 };
                }
                row += 1;
            }
        }
        for k in 0..cols {
            data[(rows - 1) * cols + k] = 1.0;
        }
        Ok(Self { n, rows, cols, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows: n(n-1)/2 + 1.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns: 2^(n-1).
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major storage, `rows x cols`.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Column `k` (1-based diagonal label) including the trailing 1.
    pub fn column(&self, k: usize) -> Vec<f64> {
        assert!(k >= 1 && k <= self.cols, "column label out of range");
        (0..self.rows)
            .map(|r| self.data[r * self.cols + (k - 1)])
            .collect()
    }

    /// Column `k` restricted to the correlation rows.
    pub fn column_correlation(&self, k: usize) -> CorrelationVector {
        let mut column = self.column(k);
        column.pop();
        CorrelationVector::new(self.n, column).expect("vertex column is a correlation vector")
    }

    /// The correlation vector `M w` restricted to the correlation rows:
    /// the expected pairwise correlation under mixing weights `w`.
    pub fn mix(&self, weights: &[f64]) -> Result<CorrelationVector> {
        if weights.len() != self.cols {
            return Err(Error::VectorLength {
                n: self.n,
                expected: self.cols,
                got: weights.len(),
            });
        }
        let mut values = Vec::with_capacity(self.rows - 1);
        for r in 0..self.rows - 1 {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            let dot: f64 = row.iter().zip(weights).map(|(a, w)| a * w).sum();
            values.push(dot.clamp(-1.0, 1.0));
        }
        CorrelationVector::new(self.n, values)
    }
}

/// Attainable correlation range for a pair of Bernoulli(p) variables with
/// equal parameter, from the extreme couplings: rho_max = 1 always, and
/// rho_min = -(1-p)/p for p >= 1/2, -p/(1-p) for p <= 1/2. Only p = 1/2
/// reaches the full interval [-1, 1].
pub fn bern_pair_bounds(p: f64) -> Result<(f64, f64)> {
    if !p.is_finite() || p <= 0.0 || p >= 1.0 {
        return Err(Error::ProbabilityRange { p });
    }
    let rho_min = if p >= 0.5 {
        -(1.0 - p) / p
    } else {
        -p / (1.0 - p)
    };
    Ok((rho_min, 1.0))
}
