//! The `berncut` command-line interface.
//!
//! Commands: `check` (polytope membership of a correlation matrix),
//! `sample` (correlated symmetric Bernoulli draws), `transform`
//! (general-marginal joint draws), `bounds` (pairwise correlation
//! extremes), and `vertices` (vertex / cut-vector dumps).
//!
//! Exit codes are stable: 0 feasible/success, 1 infeasible or
//! bound-violation, 2 malformed input, 3 solver stall.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::io::{
    fmt_sig9, parse_marginals_file, parse_matrix_file, to_json_line, write_bits_csv,
    write_reals_csv, BoundsReport, CheckReport, CutEntry, OracleReport, PairReport,
    TransformReport, VertexEntry, VerticesReport,
};
use crate::oracle::oracle_feasible;
use crate::pairs::pair_indices;
use crate::polytope::{cut_vector, DiagonalIndex, VertexMatrix, DEFAULT_DIMENSION_CAP};
use crate::sampler::{empirical_correlation, sample_bernoulli, MixingWeights, RandomSource};
use crate::simplex::{phase1_feasibility, FeasibilityResult, SolverConfig};
use crate::transform::{build_transform_plan, fh_bounds, sample_general};

/// Fixed default seed so documented invocations reproduce exactly;
/// `--entropy` opts into OS randomness.
pub const DEFAULT_SEED: u64 = 0x5EED;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INFEASIBLE: u8 = 1;
pub const EXIT_BAD_INPUT: u8 = 2;
pub const EXIT_SOLVER_STALL: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "berncut",
    version,
    about = "Feasibility and sampling for symmetric Bernoulli correlation matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a correlation matrix is attainable for symmetric
    /// Bernoulli marginals; prints a JSON verdict.
    Check(CheckArgs),
    /// Draw correlated Bernoulli(1/2) rows realizing a feasible matrix.
    Sample(SampleArgs),
    /// Draw joint rows with arbitrary marginals matching a target
    /// correlation matrix via antithetic coupling.
    Transform(TransformArgs),
    /// Fréchet–Hoeffding correlation bounds for one pair of marginals.
    Bounds(BoundsArgs),
    /// Dump the polytope vertices (and optionally cut vectors) for a
    /// dimension.
    Vertices(VerticesArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Correlation matrix file (CSV matrix or JSON {"n", "rho"}).
    pub matrix: PathBuf,
    /// Feasibility tolerance on the Phase-I objective.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Also run the brute-force atom oracle (n <= 12) and report agreement.
    #[arg(long)]
    pub oracle: bool,
    /// Include mixing weights in the report.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub emit_alpha: bool,
    /// Raise the dimension cap (default 20); exponential cost.
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Correlation matrix file (CSV matrix or JSON {"n", "rho"}).
    pub matrix: PathBuf,
    /// Number of rows to draw.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    /// RNG seed.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Seed from OS entropy instead of the fixed default.
    #[arg(long)]
    pub entropy: bool,
    /// Write draws to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Feasibility tolerance on the Phase-I objective.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Target correlation matrix for the X variables.
    pub matrix: PathBuf,
    /// JSON array of marginal descriptors.
    pub marginals: PathBuf,
    /// Number of rows to draw.
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    /// RNG seed.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Seed from OS entropy instead of the fixed default.
    #[arg(long)]
    pub entropy: bool,
    /// Write draws to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the plan report to this file instead of stderr.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Feasibility tolerance on the Phase-I objective.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// JSON array of marginal descriptors.
    pub marginals: PathBuf,
    /// First coordinate of the pair (1-based).
    pub i: usize,
    /// Second coordinate of the pair (1-based).
    pub j: usize,
}

#[derive(Debug, Args)]
pub struct VerticesArgs {
    /// Dimension n (2 <= n <= cap).
    pub n: usize,
    #[arg(long, value_enum, default_value_t = DumpFormat::Csv)]
    pub format: DumpFormat,
    /// Also dump the cut vectors (the vertices under rho -> (1 - rho)/2).
    #[arg(long)]
    pub cuts: bool,
    /// Raise the dimension cap (default 20); exponential cost.
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DumpFormat {
    Csv,
    Json,
}

/// Dispatch a parsed invocation, writing reports to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let outcome = match &cli.command {
        Command::Check(args) => cmd_check(args, out, err),
        Command::Sample(args) => cmd_sample(args, out, err),
        Command::Transform(args) => cmd_transform(args, out, err),
        Command::Bounds(args) => cmd_bounds(args, out, err),
        Command::Vertices(args) => cmd_vertices(args, out, err),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::PivotLimit { .. } => EXIT_SOLVER_STALL,
        Error::InfeasiblePair { .. } => EXIT_INFEASIBLE,
        _ => EXIT_BAD_INPUT,
    }
}

fn build_matrix(n: usize, max_n: Option<usize>, err: &mut dyn Write) -> Result<VertexMatrix> {
    let cap = max_n.unwrap_or(DEFAULT_DIMENSION_CAP);
    if n > DEFAULT_DIMENSION_CAP && n <= cap {
        let _ = writeln!(
            err,
            "warning: n = {n} exceeds the default cap {DEFAULT_DIMENSION_CAP}; \
             building 2^{} columns, memory and solve time grow exponentially",
            n - 1
        );
    }
    VertexMatrix::build_with_cap(n, cap)
}

fn seed_of(seed: u64, entropy: bool) -> u64 {
    if entropy {
        rand::random()
    } else {
        seed
    }
}

fn warn_marginal_verdict(res: &FeasibilityResult, err: &mut dyn Write) {
    if res.marginal {
        let _ = writeln!(
            err,
            "warning: Phase-I objective {} sits between 1e-12 and the tolerance; \
             the verdict is tolerance-sensitive",
            res.objective_residual
        );
    }
}

fn cmd_check(args: &CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let rho = parse_matrix_file(&args.matrix)?;
    let m = build_matrix(rho.n(), args.max_n, err)?;
    let cfg = SolverConfig {
        feasibility_tol: args.tol,
        ..SolverConfig::default()
    };
    let res = phase1_feasibility(&m, &rho, &cfg)?;
    warn_marginal_verdict(&res, err);

    let oracle = if args.oracle {
        let orc = oracle_feasible(&rho, &cfg)?;
        Some(OracleReport {
            feasible: orc.feasible,
            agrees: orc.feasible == res.feasible,
        })
    } else {
        None
    };
    if let Some(o) = &oracle {
        if !o.agrees {
            let _ = writeln!(
                err,
                "warning: atom oracle disagrees with the vertex LP; verdict from the vertex LP"
            );
        }
    }

    let report = CheckReport {
        feasible: res.feasible,
        objective: res.objective_residual,
        marginal: res.marginal,
        pivots: res.pivots,
        alpha: if args.emit_alpha { res.alpha } else { None },
        certificate: res.certificate,
        oracle,
    }
    .rounded();
    out.write_all(to_json_line(&report).as_bytes())?;
    Ok(if report.feasible {
        EXIT_OK
    } else {
        EXIT_INFEASIBLE
    })
}

fn cmd_sample(args: &SampleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let rho = parse_matrix_file(&args.matrix)?;
    let m = build_matrix(rho.n(), None, err)?;
    let cfg = SolverConfig {
        feasibility_tol: args.tol,
        ..SolverConfig::default()
    };
    let res = phase1_feasibility(&m, &rho, &cfg)?;
    warn_marginal_verdict(&res, err);
    if !res.feasible {
        let report = CheckReport {
            feasible: false,
            objective: res.objective_residual,
            marginal: res.marginal,
            pivots: res.pivots,
            alpha: None,
            certificate: res.certificate,
            oracle: None,
        }
        .rounded();
        err.write_all(to_json_line(&report).as_bytes())?;
        return Ok(EXIT_INFEASIBLE);
    }

    let weights = MixingWeights::new(rho.n(), res.alpha.expect("feasible result carries alpha"))?;
    let mut rng = RandomSource::new(seed_of(args.seed, args.entropy));
    let batch = sample_bernoulli(&weights, args.count, &mut rng)?;
    match &args.out {
        Some(path) => {
            let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
            write_bits_csv(&mut f, &batch)?;
        }
        None => write_bits_csv(out, &batch)?,
    }

    if batch.count() >= 2 {
        match empirical_correlation(&batch) {
            Ok(emp) => {
                let mut worst = 0.0f64;
                for p in pair_indices(rho.n()) {
                    let (i, j) = (p.i(), p.j());
                    let e = emp.get(i, j);
                    let t = rho.get(i, j);
                    worst = worst.max((e - t).abs());
                    let _ = writeln!(
                        err,
                        "pair ({i},{j}): empirical {} target {}",
                        fmt_sig9(e),
                        fmt_sig9(t)
                    );
                }
                let _ = writeln!(err, "max |empirical - target| = {}", fmt_sig9(worst));
            }
            Err(e) => {
                let _ = writeln!(err, "note: no correlation summary ({e})");
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_transform(args: &TransformArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let target = parse_matrix_file(&args.matrix)?;
    let marginals = parse_marginals_file(&args.marginals)?;
    if marginals.len() != target.n() {
        return Err(Error::Parse(format!(
            "matrix is {0} x {0} but {1} marginals were given",
            target.n(),
            marginals.len()
        )));
    }
    let plan = build_transform_plan(&marginals, &target)?;
    for p in plan.pairs() {
        if !p.bounds.converged {
            let _ = writeln!(
                err,
                "warning: quadrature for pair ({},{}) stopped at the depth cap; \
                 bound error estimate {:.2e}",
                p.pair.i(),
                p.pair.j(),
                p.bounds.error_estimate
            );
        }
    }

    let m = build_matrix(plan.n(), None, err)?;
    let cfg = SolverConfig {
        feasibility_tol: args.tol,
        ..SolverConfig::default()
    };
    let res = phase1_feasibility(&m, plan.bernoulli_target(), &cfg)?;
    warn_marginal_verdict(&res, err);
    if !res.feasible {
        let _ = writeln!(
            err,
            "the per-pair targets are attainable, but the implied Bernoulli matrix is \
             jointly infeasible"
        );
        let report = CheckReport {
            feasible: false,
            objective: res.objective_residual,
            marginal: res.marginal,
            pivots: res.pivots,
            alpha: None,
            certificate: res.certificate,
            oracle: None,
        }
        .rounded();
        err.write_all(to_json_line(&report).as_bytes())?;
        return Ok(EXIT_INFEASIBLE);
    }
    let alpha = res.alpha.expect("feasible result carries alpha");

    let report = TransformReport {
        n: plan.n(),
        pairs: plan
            .pairs()
            .iter()
            .map(|p| PairReport {
                i: p.pair.i(),
                j: p.pair.j(),
                rho_min: p.bounds.rho_min,
                rho_max: p.bounds.rho_max,
                weight: p.weight,
                bern_rho: p.bern_rho,
            })
            .collect(),
        bernoulli_target: plan.bernoulli_target().values().to_vec(),
        alpha: alpha.clone(),
    }
    .rounded();
    match &args.report {
        Some(path) => {
            let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
            f.write_all(to_json_line(&report).as_bytes())?;
        }
        None => err.write_all(to_json_line(&report).as_bytes())?,
    }

    let weights = MixingWeights::new(plan.n(), alpha)?;
    let mut rng = RandomSource::new(seed_of(args.seed, args.entropy));
    let batch = sample_general(&plan, &weights, args.count, &mut rng)?;
    match &args.out {
        Some(path) => {
            let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
            write_reals_csv(&mut f, &batch)?;
        }
        None => write_reals_csv(out, &batch)?,
    }
    Ok(EXIT_OK)
}

fn cmd_bounds(args: &BoundsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let marginals = parse_marginals_file(&args.marginals)?;
    let n = marginals.len();
    if args.i < 1 || args.j <= args.i || args.j > n {
        return Err(Error::Parse(format!(
            "pair ({}, {}) is not a valid 1-based pair for {n} marginals",
            args.i, args.j
        )));
    }
    let bounds = fh_bounds(&marginals[args.i - 1], &marginals[args.j - 1])?;
    if !bounds.converged {
        let _ = writeln!(
            err,
            "warning: quadrature stopped at the depth cap; error estimate {:.2e}",
            bounds.error_estimate
        );
    }
    let report = BoundsReport {
        rho_min: bounds.rho_min,
        rho_max: bounds.rho_max,
    }
    .rounded();
    out.write_all(to_json_line(&report).as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_vertices(args: &VerticesArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let m = build_matrix(args.n, args.max_n, err)?;
    let n = args.n;
    match args.format {
        DumpFormat::Csv => {
            for k in 1..=m.cols() {
                let rho = m.column_correlation(k);
                let fields: Vec<String> =
                    rho.values().iter().map(|&v| fmt_sig9(v)).collect();
                writeln!(out, "{k},{}", fields.join(","))?;
            }
            if args.cuts {
                writeln!(out)?;
                for k in 1..=m.cols() {
                    let support = DiagonalIndex::new(k, n)?.vertex().support();
                    let delta = cut_vector(&support, n)?;
                    let fields: Vec<String> =
                        delta.values().iter().map(|&b| b.to_string()).collect();
                    writeln!(out, "{k},{}", fields.join(","))?;
                }
            }
        }
        DumpFormat::Json => {
            let vertices = (1..=m.cols())
                .map(|k| {
                    let d = DiagonalIndex::new(k, n)?;
                    let bits: String = d
                        .vertex()
                        .bits()
                        .iter()
                        .map(|&b| if b == 1 { '1' } else { '0' })
                        .collect();
                    Ok(VertexEntry {
                        k,
                        bits,
                        rho: m.column_correlation(k).values().to_vec(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let cuts = if args.cuts {
                Some(
                    (1..=m.cols())
                        .map(|k| {
                            let support = DiagonalIndex::new(k, n)?.vertex().support();
                            Ok(CutEntry {
                                k,
                                delta: cut_vector(&support, n)?.values().to_vec(),
                            })
                        })
                        .collect::<Result<Vec<_>>>()?,
                )
            } else {
                None
            };
            let report = VerticesReport {
                n,
                pairs: pair_indices(n).map(|p| (p.i(), p.j())).collect(),
                vertices,
                cuts,
            };
            out.write_all(to_json_line(&report).as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let cli = Cli::try_parse_from(args).expect("arguments parse");
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&cli, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn check_infeasible_exit_one() {
        let f = write_temp("1,-0.4,-0.4\n-0.4,1,-0.4\n-0.4,-0.4,1\n");
        let (code, out, _) = run_args(&["berncut", "check", f.path().to_str().unwrap()]);
        assert_eq!(code, EXIT_INFEASIBLE);
        let report: CheckReport = serde_json::from_str(out.trim()).unwrap();
        assert!(!report.feasible);
        assert!(report.certificate.is_some());
    }

    #[test]
    fn check_identity_feasible_any_n() {
        for n in [2usize, 3, 5] {
            let mut lines = Vec::new();
            for i in 0..n {
                let row: Vec<String> = (0..n)
                    .map(|j| if i == j { "1".into() } else { "0".into() })
                    .collect();
                lines.push(row.join(","));
            }
            let f = write_temp(&(lines.join("\n") + "\n"));
            let (code, out, _) = run_args(&["berncut", "check", f.path().to_str().unwrap()]);
            assert_eq!(code, EXIT_OK, "n = {n}");
            let report: CheckReport = serde_json::from_str(out.trim()).unwrap();
            assert!(report.feasible);
            assert!(report.alpha.is_some());
        }
    }

    #[test]
    fn check_with_oracle_agrees() {
        let f = write_temp(r#"{"n": 3, "rho": [-0.4, -0.4, -0.4]}"#);
        let (code, out, _) = run_args(&[
            "berncut",
            "check",
            f.path().to_str().unwrap(),
            "--oracle",
        ]);
        assert_eq!(code, EXIT_INFEASIBLE);
        let report: CheckReport = serde_json::from_str(out.trim()).unwrap();
        let oracle = report.oracle.unwrap();
        assert!(!oracle.feasible);
        assert!(oracle.agrees);
    }

    #[test]
    fn check_malformed_matrix_exit_two() {
        let f = write_temp("rho12,rho13\n1,0\n");
        let (code, _, err) = run_args(&["berncut", "check", f.path().to_str().unwrap()]);
        assert_eq!(code, EXIT_BAD_INPUT);
        assert!(err.contains("headers are not accepted"));
    }

    #[test]
    fn check_missing_file_exit_two() {
        let (code, _, err) = run_args(&["berncut", "check", "/nonexistent/matrix.csv"]);
        assert_eq!(code, EXIT_BAD_INPUT);
        assert!(err.contains("error:"));
    }

    #[test]
    fn check_no_alpha_when_disabled() {
        let f = write_temp(r#"{"n": 2, "rho": [0.5]}"#);
        let (code, out, _) = run_args(&[
            "berncut",
            "check",
            f.path().to_str().unwrap(),
            "--emit-alpha",
            "false",
        ]);
        assert_eq!(code, EXIT_OK);
        let report: CheckReport = serde_json::from_str(out.trim()).unwrap();
        assert!(report.alpha.is_none());
    }

    #[test]
    fn sample_writes_rows_and_summary() {
        let f = write_temp(r#"{"n": 2, "rho": [1.0]}"#);
        let (code, out, err) = run_args(&[
            "berncut",
            "sample",
            f.path().to_str().unwrap(),
            "--count",
            "100",
        ]);
        assert_eq!(code, EXIT_OK);
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows.len(), 100);
        for row in rows {
            assert!(row == "0,0" || row == "1,1");
        }
        assert!(err.contains("pair (1,2)"));
    }

    #[test]
    fn sample_infeasible_exits_before_writing() {
        let f = write_temp("1,-0.4,-0.4\n-0.4,1,-0.4\n-0.4,-0.4,1\n");
        let (code, out, err) = run_args(&[
            "berncut",
            "sample",
            f.path().to_str().unwrap(),
            "--count",
            "10",
        ]);
        assert_eq!(code, EXIT_INFEASIBLE);
        assert!(out.is_empty());
        assert!(err.contains("\"feasible\":false"));
    }

    #[test]
    fn sample_seed_is_reproducible() {
        let f = write_temp(r#"{"n": 2, "rho": [0.0]}"#);
        let path = f.path().to_str().unwrap().to_string();
        let a = run_args(&["berncut", "sample", &path, "--count", "50", "--seed", "7"]);
        let b = run_args(&["berncut", "sample", &path, "--count", "50", "--seed", "7"]);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn bounds_published_pair() {
        let f = write_temp(
            r#"[{"kind": "exponential", "mean": 2.0},
                {"kind": "finite_discrete", "values": [1.0, 4.0], "probs": [0.3, 0.7]}]"#,
        );
        let (code, out, _) =
            run_args(&["berncut", "bounds", f.path().to_str().unwrap(), "1", "2"]);
        assert_eq!(code, EXIT_OK);
        let report: BoundsReport = serde_json::from_str(out.trim()).unwrap();
        assert!((report.rho_max - 0.544828).abs() < 1e-4);
        assert!((report.rho_min + 0.78818).abs() < 1e-4);
    }

    #[test]
    fn bounds_bad_pair_exit_two() {
        let f = write_temp(r#"[{"kind": "exponential", "mean": 2.0}]"#);
        let (code, _, _) = run_args(&["berncut", "bounds", f.path().to_str().unwrap(), "1", "2"]);
        assert_eq!(code, EXIT_BAD_INPUT);
    }

    #[test]
    fn vertices_csv_n2() {
        let (code, out, _) = run_args(&["berncut", "vertices", "2"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "1,1\n2,-1\n");
    }

    #[test]
    fn vertices_over_cap_exit_two() {
        let (code, _, err) = run_args(&["berncut", "vertices", "21"]);
        assert_eq!(code, EXIT_BAD_INPUT);
        assert!(err.contains("cap"));
        let (code, _, _) = run_args(&["berncut", "vertices", "5", "--max-n", "4"]);
        assert_eq!(code, EXIT_BAD_INPUT);
    }

    #[test]
    fn vertices_json_with_cuts() {
        let (code, out, _) = run_args(&[
            "berncut", "vertices", "3", "--format", "json", "--cuts",
        ]);
        assert_eq!(code, EXIT_OK);
        let report: VerticesReport = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(report.n, 3);
        assert_eq!(report.vertices.len(), 4);
        let cuts = report.cuts.unwrap();
        // delta = (1 - rho)/2 columnwise
        for (v, c) in report.vertices.iter().zip(&cuts) {
            for (&r, &d) in v.rho.iter().zip(&c.delta) {
                assert_eq!(((1.0 - r) / 2.0) as u8, d);
            }
        }
    }

    #[test]
    fn transform_full_pipeline() {
        let matrix = write_temp(
            "1,0.2,-0.1,-0.4\n0.2,1,-0.4,0.3\n-0.1,-0.4,1,-0.2\n-0.4,0.3,-0.2,1\n",
        );
        let marginals = write_temp(
            r#"[{"kind": "uniform", "a": 0.0, "b": 1.0},
                {"kind": "exponential", "mean": 2.0},
                {"kind": "finite_discrete", "values": [1.0, 4.0], "probs": [0.3, 0.7]},
                {"kind": "normal", "mu": 0.0, "sigma": 1.0}]"#,
        );
        let report_file = tempfile::NamedTempFile::new().unwrap();
        let (code, out, _err) = run_args(&[
            "berncut",
            "transform",
            matrix.path().to_str().unwrap(),
            marginals.path().to_str().unwrap(),
            "--count",
            "200",
            "--report",
            report_file.path().to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 200);
        let report_text = std::fs::read_to_string(report_file.path()).unwrap();
        let report: TransformReport = serde_json::from_str(report_text.trim()).unwrap();
        assert_eq!(report.n, 4);
        let want = [0.230940, -0.125988, -0.409330, -0.417582, 0.332154, -0.263598];
        for (got, want) in report.bernoulli_target.iter().zip(want) {
            assert!((got - want).abs() < 1e-4);
        }
    }

    #[test]
    fn transform_out_of_bounds_pair_exit_one() {
        let matrix = write_temp(r#"{"n": 2, "rho": [-0.9]}"#);
        let marginals = write_temp(
            r#"[{"kind": "exponential", "mean": 2.0},
                {"kind": "finite_discrete", "values": [1.0, 4.0], "probs": [0.3, 0.7]}]"#,
        );
        let (code, _, err) = run_args(&[
            "berncut",
            "transform",
            matrix.path().to_str().unwrap(),
            marginals.path().to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_INFEASIBLE);
        assert!(err.contains("pair (1,2)"), "{err}");
        assert!(err.contains("-0.9"));
    }

    #[test]
    fn transform_jointly_infeasible_target_exit_one() {
        // symmetric two-point marginals have pair bounds (-1, 1), so every
        // per-pair check passes and the Bernoulli target equals the X-scale
        // target: equicorrelation -0.4 survives the pair stage and must be
        // caught by the joint LP
        let matrix = write_temp(r#"{"n": 3, "rho": [-0.4, -0.4, -0.4]}"#);
        let marginals = write_temp(
            r#"[{"kind": "finite_discrete", "values": [-1.0, 1.0], "probs": [0.5, 0.5]},
                {"kind": "finite_discrete", "values": [-1.0, 1.0], "probs": [0.5, 0.5]},
                {"kind": "finite_discrete", "values": [-1.0, 1.0], "probs": [0.5, 0.5]}]"#,
        );
        let (code, out, err) = run_args(&[
            "berncut",
            "transform",
            matrix.path().to_str().unwrap(),
            marginals.path().to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_INFEASIBLE);
        assert!(out.is_empty());
        assert!(err.contains("jointly infeasible"), "{err}");
        assert!(err.contains("\"certificate\""), "{err}");
    }

    /// Every dumped vertex column, fed back as a matrix, is feasible with
    /// weights reproducing it exactly.
    #[test]
    fn check_accepts_every_dumped_vertex_column() {
        let (code, out, _) = run_args(&["berncut", "vertices", "3", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let report: VerticesReport = serde_json::from_str(out.trim()).unwrap();
        let m = VertexMatrix::build(3).unwrap();
        for v in report.vertices {
            let doc = serde_json::json!({ "n": 3, "rho": v.rho });
            let f = write_temp(&doc.to_string());
            let (code, out, _) = run_args(&["berncut", "check", f.path().to_str().unwrap()]);
            assert_eq!(code, EXIT_OK, "vertex {} must be feasible", v.k);
            let report: CheckReport = serde_json::from_str(out.trim()).unwrap();
            let alpha = report.alpha.unwrap();
            let rho = crate::pairs::CorrelationVector::new(3, v.rho.clone()).unwrap();
            assert!(crate::simplex::check_solution(&m, &rho, &alpha, 1e-8));
        }
    }

    #[test]
    fn transform_identity_target_splits_evenly() {
        // symmetric two-point marginals span (-1, 1), so zero correlation
        // means an even split between the extreme couplings
        let matrix = write_temp(r#"{"n": 2, "rho": [0.0]}"#);
        let marginals = write_temp(
            r#"[{"kind": "finite_discrete", "values": [-1.0, 1.0], "probs": [0.5, 0.5]},
                {"kind": "finite_discrete", "values": [-1.0, 1.0], "probs": [0.5, 0.5]}]"#,
        );
        let report_file = tempfile::NamedTempFile::new().unwrap();
        let (code, _, _) = run_args(&[
            "berncut",
            "transform",
            matrix.path().to_str().unwrap(),
            marginals.path().to_str().unwrap(),
            "--count",
            "10",
            "--report",
            report_file.path().to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK);
        let report: TransformReport = serde_json::from_str(
            std::fs::read_to_string(report_file.path()).unwrap().trim(),
        )
        .unwrap();
        assert!((report.pairs[0].weight - 0.5).abs() < 1e-8);
        assert!((report.pairs[0].rho_min + 1.0).abs() < 1e-8);
        assert!((report.pairs[0].rho_max - 1.0).abs() < 1e-8);
    }

    #[test]
    fn vertices_csv_cuts_block() {
        let (code, out, _) = run_args(&["berncut", "vertices", "2", "--cuts"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "1,1\n2,-1\n\n1,0\n2,1\n");
    }

    #[test]
    fn transform_marginal_count_mismatch_exit_two() {
        let matrix = write_temp(r#"{"n": 3, "rho": [0.0, 0.0, 0.0]}"#);
        let marginals = write_temp(r#"[{"kind": "exponential", "mean": 2.0}]"#);
        let (code, _, _) = run_args(&[
            "berncut",
            "transform",
            matrix.path().to_str().unwrap(),
            marginals.path().to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_BAD_INPUT);
    }

    #[test]
    fn solver_stall_exit_three() {
        // unreachable through the public flags in normal use; force it with
        // a direct call
        let m = VertexMatrix::build(4).unwrap();
        let rho = crate::pairs::CorrelationVector::new(4, vec![0.1; 6]).unwrap();
        let cfg = SolverConfig {
            max_pivots: Some(1),
            ..SolverConfig::default()
        };
        let e = phase1_feasibility(&m, &rho, &cfg).unwrap_err();
        assert_eq!(exit_code_for(&e), EXIT_SOLVER_STALL);
    }
}
