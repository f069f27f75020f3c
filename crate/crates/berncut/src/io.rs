//! File formats used by the command-line interface.
//!
//! Correlation targets arrive either as an n x n CSV matrix (symmetric, unit
//! diagonal, no header) or as a compact JSON document
//! `{"n": 4, "rho": [...]}` with the upper triangle in row-by-row order.
//! Marginal specifications are a JSON array of tagged descriptors, e.g.
//! `{"kind": "exponential", "mean": 2.0}`. All floating-point output is
//! printed with 9 significant digits; reports re-serialize byte-identically
//! after a parse round trip.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::marginal::Marginal;
use crate::pairs::{linear_index, pair_count, CorrelationVector};
use crate::sampler::BernoulliSampleBatch;
use crate::transform::GeneralSampleBatch;

/// Symmetry / unit-diagonal tolerance for CSV matrices.
const MATRIX_TOL: f64 = 1e-9;

/// Round to 9 significant digits. The rounded value re-serializes to the
/// same shortest decimal, which is what makes reports round-trip
/// byte-identically.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exp = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(8 - exp);
    (x * scale).round() / scale
}

fn sig9_vec(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| sig9(x)).collect()
}

/// Format one float with 9 significant digits for CSV output.
pub fn fmt_sig9(x: f64) -> String {
    format!("{}", sig9(x))
}

#[derive(Debug, Deserialize)]
struct JsonMatrix {
    n: usize,
    rho: Vec<f64>,
}

/// Parse a correlation target from CSV (full symmetric matrix) or JSON
/// (upper-triangular vector); the format is sniffed from the leading
/// character.
pub fn parse_matrix_file(path: &Path) -> Result<CorrelationVector> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        parse_matrix_json(&text)
    } else {
        parse_matrix_csv(&text)
    }
}

fn parse_matrix_json(text: &str) -> Result<CorrelationVector> {
    let m: JsonMatrix =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON matrix: {e}")))?;
    if m.n < 2 {
        return Err(Error::Parse(format!(
            "matrix dimension must be at least 2, got {}",
            m.n
        )));
    }
    if m.rho.len() != pair_count(m.n) {
        return Err(Error::Parse(format!(
            "\"rho\" has {} entries, expected n(n-1)/2 = {} for n = {}",
            m.rho.len(),
            pair_count(m.n),
            m.n
        )));
    }
    CorrelationVector::new(m.n, m.rho)
}

fn parse_matrix_csv(text: &str) -> Result<CorrelationVector> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for field in line.split(',') {
            let field = field.trim();
            let value: f64 = field.parse().map_err(|_| {
                if lineno == 0 {
                    Error::Parse(format!(
                        "line 1 field {field:?} is not a number; headers are not accepted"
                    ))
                } else {
                    Error::Parse(format!("line {}: {field:?} is not a number", lineno + 1))
                }
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    let n = rows.len();
    if n < 2 {
        return Err(Error::Parse(format!(
            "matrix must be at least 2 x 2, got {n} rows"
        )));
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} columns, expected {n}",
                r + 1,
                row.len()
            )));
        }
    }
    for (i, row) in rows.iter().enumerate() {
        if (row[i] - 1.0).abs() > MATRIX_TOL {
            return Err(Error::Parse(format!(
                "diagonal entry ({},{}) is {}, expected 1",
                i + 1,
                i + 1,
                row[i]
            )));
        }
    }
    let mut values = vec![0.0; pair_count(n)];
    for i in 1..=n {
        for j in i + 1..=n {
            let a = rows[i - 1][j - 1];
            let b = rows[j - 1][i - 1];
            if (a - b).abs() > MATRIX_TOL {
                return Err(Error::Parse(format!(
                    "asymmetric at ({i},{j}): {a} vs {b}"
                )));
            }
            values[linear_index(i, j, n)] = 0.5 * (a + b);
        }
    }
    CorrelationVector::new(n, values)
}

/// Parse a JSON array of marginal descriptors, validating each.
pub fn parse_marginals_file(path: &Path) -> Result<Vec<Marginal>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let marginals: Vec<Marginal> = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("invalid marginal specification: {e}")))?;
    if marginals.is_empty() {
        return Err(Error::Parse("marginal specification is empty".into()));
    }
    for m in &marginals {
        m.validate()?;
    }
    Ok(marginals)
}

/// Write a bit batch as CSV, one row per draw, columns B1..Bn, no header.
pub fn write_bits_csv<W: Write + ?Sized>(out: &mut W, batch: &BernoulliSampleBatch) -> Result<()> {
    let mut buf = String::with_capacity(batch.n() * 2);
    for row in batch.rows() {
        buf.clear();
        for (i, &b) in row.iter().enumerate() {
            if i > 0 {
                buf.push(',');
            }
            buf.push(if b == 1 { '1' } else { '0' });
        }
        buf.push('\n');
        out.write_all(buf.as_bytes())?;
    }
    Ok(())
}

/// Write a real-valued batch as CSV, one row per draw, no header.
pub fn write_reals_csv<W: Write + ?Sized>(out: &mut W, batch: &GeneralSampleBatch) -> Result<()> {
    for row in batch.rows() {
        let line: Vec<String> = row.iter().map(|&x| fmt_sig9(x)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

/// Report for `check`: verdict, weights or certificate, oracle agreement.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckReport {
    pub feasible: bool,
    pub objective: f64,
    pub marginal: bool,
    pub pivots: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OracleReport {
    pub feasible: bool,
    pub agrees: bool,
}

impl CheckReport {
    pub fn rounded(mut self) -> Self {
        self.objective = sig9(self.objective);
        self.alpha = self.alpha.map(|v| sig9_vec(&v));
        self.certificate = self.certificate.map(|v| sig9_vec(&v));
        self
    }
}

/// Report for `bounds`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BoundsReport {
    pub rho_min: f64,
    pub rho_max: f64,
}

impl BoundsReport {
    pub fn rounded(self) -> Self {
        Self {
            rho_min: sig9(self.rho_min),
            rho_max: sig9(self.rho_max),
        }
    }
}

/// Per-pair entry of a transform report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    pub rho_min: f64,
    pub rho_max: f64,
    pub weight: f64,
    pub bern_rho: f64,
}

/// Report for `transform`: per-pair bounds and weights, the Bernoulli-scale
/// target, and the mixing weights driving the sampler.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TransformReport {
    pub n: usize,
    pub pairs: Vec<PairReport>,
    pub bernoulli_target: Vec<f64>,
    pub alpha: Vec<f64>,
}

impl TransformReport {
    pub fn rounded(mut self) -> Self {
        for p in &mut self.pairs {
            p.rho_min = sig9(p.rho_min);
            p.rho_max = sig9(p.rho_max);
            p.weight = sig9(p.weight);
            p.bern_rho = sig9(p.bern_rho);
        }
        self.bernoulli_target = sig9_vec(&self.bernoulli_target);
        self.alpha = sig9_vec(&self.alpha);
        self
    }
}

/// Vertex-dump report for `vertices --format json`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerticesReport {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    pub vertices: Vec<VertexEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cuts: Option<Vec<CutEntry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VertexEntry {
    pub k: usize,
    pub bits: String,
    pub rho: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CutEntry {
    pub k: usize,
    pub delta: Vec<u8>,
}

/// Serialize a report as one line of compact JSON.
pub fn to_json_line<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string(report).expect("reports serialize");
    s.push('\n');
    s
}
