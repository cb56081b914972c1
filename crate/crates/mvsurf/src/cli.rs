//! Command-line surface: `mvsurf build` dumps matrix templates or
//! specialized matrices, `mvsurf verify` runs identity checks and writes
//! JSON reports.
//!
//! Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
//! parse error, 3 inconclusive (every trial degenerate). The environment
//! variable `MVSURF_SEED` overrides `--seed`.

use crate::builders::{
    corner_template, general_moving_plane, general_moving_quadric, tensor_moving_plane,
    tensor_moving_quadric, Axis, CoefficientIndex, DeletionSpec, FieldAssignment, MatrixDump,
    TemplateDump,
};
use crate::exactalg::{FieldMatrix, PrimeField, DEFAULT_PRIME};
use crate::latticegeom::{EdgeChain, LatticePoint, SupportFile, SupportSpec};
use crate::resultant::{dixon_matrix, dixon_polynomial, CoefficientGrid};
use crate::verify::{
    self, trial_rng, DetTarget, ScalingWeight, Status, TrialConfig, VerificationReport,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(
    name = "mvsurf",
    version,
    about = "Build and verify the moving-plane / moving-quadric determinant identities"
)]
pub struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a matrix and dump it (template, or specialized values)
    Build(BuildArgs),
    /// Run one check or the whole suite; writes a JSON report
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BuildKind {
    /// Moving-plane matrix
    F,
    /// Moving-quadric matrix
    Q,
    /// 4x4 corner-coefficient matrix
    Corner,
    /// Dixon matrix of a specialized system (needs an assignment or seed)
    Dixon,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// What to build: f, q, corner, dixon
    kind: BuildKind,
    /// Bidegree in x1 (rectangular support)
    #[arg(long)]
    m: Option<i64>,
    /// Bidegree in x2 (rectangular support)
    #[arg(long)]
    n: Option<i64>,
    /// Support JSON file: {"points": [[a1,a2],...], "chain": {"start": s, "edges": e}}
    #[arg(long)]
    support: Option<PathBuf>,
    /// Edge chain as "start:edges" (overrides the support file's chain)
    #[arg(long)]
    chain: Option<String>,
    /// Deletion set as a point list, e.g. "(1,0),(0,1)"
    #[arg(long)]
    delete: Option<String>,
    /// Assignment JSON file; produces a specialized numeric matrix
    #[arg(long)]
    assignment: Option<PathBuf>,
    /// Specialize with seeded random values instead of an assignment file
    #[arg(long)]
    random_seed: Option<u64>,
    /// Prime modulus for random specialization (default: largest prime < 2^62)
    #[arg(long)]
    prime: Option<u64>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// identity | multidegree | isobaric | corner | valuation | general | symbolic | scan | all
    check: CheckName,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    n: Option<i64>,
    /// Grid bound when --m/--n are omitted: (m,n) ranges over 1..=max-mn
    #[arg(long, default_value_t = 4)]
    max_mn: i64,
    #[arg(long)]
    support: Option<PathBuf>,
    #[arg(long)]
    chain: Option<String>,
    #[arg(long)]
    delete: Option<String>,
    /// Trials per check (per-check defaults when omitted)
    #[arg(long)]
    trials: Option<u32>,
    /// RNG seed (MVSURF_SEED overrides)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Scanner cap on the number of deletion sets
    #[arg(long, default_value_t = 100)]
    cap: usize,
    /// Valuation axis (1 or 2); both when omitted
    #[arg(long)]
    axis: Option<u8>,
    /// Multidegree block (1..=4); all when omitted
    #[arg(long)]
    block: Option<u8>,
    /// Multidegree target (F, Q, or Res); all when omitted
    #[arg(long)]
    target: Option<String>,
    /// Isobaric weight (axis1, axis2, uniform); all when omitted
    #[arg(long)]
    weight: Option<String>,
    /// Inject a seeded single-entry corruption (the check must then fail)
    #[arg(long)]
    mutation: Option<u64>,
    /// Report file (JSON)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stdout format for the report summary
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CheckName {
    Identity,
    Multidegree,
    Isobaric,
    Corner,
    Valuation,
    General,
    Symbolic,
    Scan,
    All,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// JSON form of a coefficient assignment.
#[derive(Debug, Serialize, Deserialize)]
pub struct AssignmentFile {
    pub prime: String,
    pub values: Vec<AssignmentEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AssignmentEntry {
    pub block: u8,
    pub point: [i64; 2],
    pub value: String,
}

impl AssignmentFile {
    pub fn to_assignment(&self) -> Result<(PrimeField, FieldAssignment), String> {
        let p: u64 = self
            .prime
            .parse()
            .map_err(|_| format!("bad prime {:?}", self.prime))?;
        let field = PrimeField::new(p).map_err(|e| e.to_string())?;
        let mut asg = FieldAssignment::new(field);
        for e in &self.values {
            if !(1..=4).contains(&e.block) {
                return Err(format!("block {} out of range 1..=4", e.block));
            }
            let v: u64 = e
                .value
                .parse()
                .map_err(|_| format!("bad value {:?}", e.value))?;
            if v >= p {
                return Err(format!("value {v} not reduced mod {p}"));
            }
            asg.set(
                CoefficientIndex {
                    block: e.block,
                    point: LatticePoint::new(e.point[0], e.point[1]),
                },
                v,
            );
        }
        Ok((field, asg))
    }

    pub fn from_assignment(asg: &FieldAssignment) -> Self {
        AssignmentFile {
            prime: asg.field().modulus().to_string(),
            values: asg
                .iter()
                .map(|(idx, v)| AssignmentEntry {
                    block: idx.block,
                    point: [idx.point.a1, idx.point.a2],
                    value: v.to_string(),
                })
                .collect(),
        }
    }
}

/// Parse "start:edges".
fn parse_chain(s: &str) -> Result<EdgeChain, CliError> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("bad chain {s:?}: expected \"start:edges\"")))?;
    let start = a
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad chain start {a:?}")))?;
    let edges = b
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad chain edge count {b:?}")))?;
    Ok(EdgeChain::new(start, edges))
}

/// Parse "(a,b),(c,d),..." into points.
fn parse_points(s: &str) -> Result<Vec<LatticePoint>, CliError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let rest2 = rest
            .strip_prefix('(')
            .ok_or_else(|| CliError::Usage(format!("bad point list {s:?}: expected '('")))?;
        let (body, tail) = rest2
            .split_once(')')
            .ok_or_else(|| CliError::Usage(format!("bad point list {s:?}: missing ')'")))?;
        let (x, y) = body
            .split_once(',')
            .ok_or_else(|| CliError::Usage(format!("bad point {body:?}")))?;
        let a1 = x
            .parse()
            .map_err(|_| CliError::Usage(format!("bad coordinate {x:?}")))?;
        let a2 = y
            .parse()
            .map_err(|_| CliError::Usage(format!("bad coordinate {y:?}")))?;
        out.push(LatticePoint::new(a1, a2));
        rest = tail.strip_prefix(',').unwrap_or(tail);
    }
    Ok(out)
}

struct GeneralInputs {
    spec: SupportSpec,
    chain: EdgeChain,
    deletion: DeletionSpec,
}

fn load_support(
    path: &Path,
    chain_flag: &Option<String>,
    delete_flag: &Option<String>,
) -> Result<GeneralInputs, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file: SupportFile = serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!(
            "cannot parse {} (line {}, column {}): {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    let spec = file.to_spec()?;
    let chain = match chain_flag {
        Some(s) => parse_chain(s)?,
        None => file.chain.ok_or_else(|| {
            CliError::Usage("no chain: pass --chain start:edges or put one in the file".into())
        })?,
    };
    let deletion = match delete_flag {
        Some(s) => DeletionSpec::new(parse_points(s)?),
        None => DeletionSpec::empty(),
    };
    Ok(GeneralInputs {
        spec,
        chain,
        deletion,
    })
}

fn effective_seed(seed: u64) -> u64 {
    match std::env::var("MVSURF_SEED") {
        Ok(v) => v.parse().unwrap_or(seed),
        Err(_) => seed,
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn template_text(d: &TemplateDump) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} x {}", d.rows, d.cols);
    let _ = writeln!(s, "columns: {}", d.col_labels.join("  "));
    for (r, label) in d.row_labels.iter().enumerate() {
        let _ = writeln!(s, "{label}: [{}]", d.entries[r].join(", "));
    }
    s
}

fn template_csv(d: &TemplateDump) -> String {
    let mut s = String::new();
    for row in &d.entries {
        let _ = writeln!(s, "{}", row.join(","));
    }
    s
}

enum Built {
    Template(TemplateDump),
    Matrix(FieldMatrix),
}

fn run_build(args: &BuildArgs) -> Result<i32, CliError> {
    // choose tensor vs general construction
    let assignment: Option<(PrimeField, FieldAssignment)> = match (&args.assignment, args.random_seed)
    {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let file: AssignmentFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))?;
            Some(file.to_assignment().map_err(CliError::Usage)?)
        }
        (None, Some(seed)) => {
            let field = PrimeField::new(args.prime.unwrap_or(DEFAULT_PRIME))?;
            // support points are needed to draw; resolved below per kind
            let mut rng = trial_rng(seed, "cli/random-assignment", 0);
            let support = if let Some(path) = &args.support {
                load_support(path, &args.chain, &args.delete)?.spec.points().to_vec()
            } else {
                let (m, n) = require_mn(args.m, args.n)?;
                SupportSpec::rectangle(m, n).points().to_vec()
            };
            Some((field, FieldAssignment::random(field, &support, &mut rng)))
        }
        (None, None) => None,
    };

    let built = match args.kind {
        BuildKind::F => {
            let template = match &args.support {
                Some(path) => {
                    let g = load_support(path, &args.chain, &args.delete)?;
                    general_moving_plane(&g.spec, &g.chain, &g.deletion)?
                }
                None => {
                    let (m, n) = require_mn(args.m, args.n)?;
                    tensor_moving_plane(m, n)?
                }
            };
            match &assignment {
                Some((_, asg)) => Built::Matrix(template.specialize(asg)?),
                None => Built::Template(template.dump()),
            }
        }
        BuildKind::Q => {
            let template = match &args.support {
                Some(path) => {
                    let g = load_support(path, &args.chain, &args.delete)?;
                    general_moving_quadric(&g.spec, &g.chain, &g.deletion)?
                }
                None => {
                    let (m, n) = require_mn(args.m, args.n)?;
                    tensor_moving_quadric(m, n)?
                }
            };
            match &assignment {
                Some((_, asg)) => Built::Matrix(template.specialize(asg)?),
                None => Built::Template(template.dump()),
            }
        }
        BuildKind::Corner => {
            let (m, n) = require_mn(args.m, args.n)?;
            let template = corner_template(m, n)?;
            match &assignment {
                Some((_, asg)) => Built::Matrix(template.specialize(asg)?),
                None => Built::Template(template.dump()),
            }
        }
        BuildKind::Dixon => {
            let (m, n) = require_mn(args.m, args.n)?;
            let (_, asg) = assignment.as_ref().ok_or_else(|| {
                CliError::Usage(
                    "build dixon needs specialized coefficients: pass --assignment or --random-seed"
                        .into(),
                )
            })?;
            let g1 = CoefficientGrid::from_assignment(asg, 1, m, n)?;
            let g2 = CoefficientGrid::from_assignment(asg, 2, m, n)?;
            let g3 = CoefficientGrid::from_assignment(asg, 3, m, n)?;
            Built::Matrix(dixon_matrix(&dixon_polynomial(&g1, &g2, &g3)?, m, n))
        }
    };

    let (dims, content) = match &built {
        Built::Template(d) => (
            (d.rows, d.cols),
            match args.format {
                Format::Json => serde_json::to_string_pretty(d).expect("dump serializes") + "\n",
                Format::Csv => template_csv(d),
                Format::Text => template_text(d),
            },
        ),
        Built::Matrix(m) => (
            (m.rows(), m.cols()),
            match args.format {
                Format::Json => {
                    serde_json::to_string_pretty(&MatrixDump::from_matrix(m))
                        .expect("dump serializes")
                        + "\n"
                }
                Format::Csv => m.to_csv(),
                Format::Text => m.to_csv(),
            },
        ),
    };
    write_output(&args.out, &content)?;
    eprintln!("{} x {}", dims.0, dims.1);
    Ok(0)
}

fn require_mn(m: Option<i64>, n: Option<i64>) -> Result<(i64, i64), CliError> {
    match (m, n) {
        (Some(m), Some(n)) if m >= 1 && n >= 1 => Ok((m, n)),
        (Some(m), Some(n)) => Err(CliError::Usage(format!(
            "bidegree ({m},{n}) must have positive components"
        ))),
        _ => Err(CliError::Usage(
            "missing bidegree: pass --m and --n (or --support for general builds)".into(),
        )),
    }
}

/// Per-check default trial counts when --trials is not given; these mirror
/// the acceptance tolerances.
fn default_trials(check: CheckName) -> u32 {
    match check {
        CheckName::Identity => 20,
        CheckName::Corner => 10,
        CheckName::Isobaric | CheckName::Multidegree => 3,
        CheckName::Valuation => 5,
        CheckName::General => 5,
        CheckName::Scan => 3,
        CheckName::Symbolic => 1,
        CheckName::All => 0, // per-check defaults apply
    }
}

fn grid(args: &VerifyArgs) -> Vec<(i64, i64)> {
    match (args.m, args.n) {
        (Some(m), Some(n)) => vec![(m, n)],
        _ => {
            let k = args.max_mn.max(1);
            (1..=k)
                .flat_map(|m| (1..=k).map(move |n| (m, n)))
                .collect()
        }
    }
}

/// The valuation grid is asymmetric: interpolated determinants grow fast in
/// the row count, so n stays within 1..=3 unless given explicitly.
fn valuation_grid(args: &VerifyArgs) -> Vec<(i64, i64)> {
    match (args.m, args.n) {
        (Some(m), Some(n)) => vec![(m, n)],
        _ => {
            let k = args.max_mn.max(1);
            (1..=k)
                .flat_map(|m| (1..=k.min(3)).map(move |n| (m, n)))
                .collect()
        }
    }
}

fn parse_target(s: &str) -> Result<DetTarget, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "f" | "plane" => Ok(DetTarget::Plane),
        "q" | "quadric" => Ok(DetTarget::Quadric),
        "res" | "resultant" => Ok(DetTarget::Resultant),
        _ => Err(CliError::Usage(format!(
            "bad target {s:?}: expected F, Q, or Res"
        ))),
    }
}

fn parse_weight(s: &str) -> Result<ScalingWeight, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "axis1" | "1" => Ok(ScalingWeight::Axis(Axis::One)),
        "axis2" | "2" => Ok(ScalingWeight::Axis(Axis::Two)),
        "uniform" => Ok(ScalingWeight::Uniform),
        _ => Err(CliError::Usage(format!(
            "bad weight {s:?}: expected axis1, axis2, or uniform"
        ))),
    }
}

fn parse_axis(v: u8) -> Result<Axis, CliError> {
    match v {
        1 => Ok(Axis::One),
        2 => Ok(Axis::Two),
        _ => Err(CliError::Usage(format!("bad axis {v}: expected 1 or 2"))),
    }
}

/// Suite report: overall status plus the individual check reports, ordered
/// by parameter order (never completion order).
#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub status: Status,
    pub checks: Vec<VerificationReport>,
}

fn run_checks(args: &VerifyArgs, check: CheckName, reports: &mut Vec<VerificationReport>) -> Result<(), CliError> {
    let cfg = TrialConfig {
        prime: args.prime,
        trials: args.trials.unwrap_or_else(|| default_trials(check)),
        seed: effective_seed(args.seed),
        mutation: args.mutation,
    };
    match check {
        CheckName::Identity => {
            for (m, n) in grid(args) {
                reports.push(verify::factorization_identity(m, n, &cfg)?);
            }
        }
        CheckName::Multidegree => {
            let targets = match &args.target {
                Some(t) => vec![parse_target(t)?],
                None => vec![DetTarget::Plane, DetTarget::Quadric, DetTarget::Resultant],
            };
            let blocks: Vec<u8> = match args.block {
                Some(b) => vec![b],
                None => vec![1, 2, 3, 4],
            };
            for (m, n) in grid(args) {
                for &target in &targets {
                    for &block in &blocks {
                        reports.push(verify::block_degree(m, n, target, block, &cfg)?);
                    }
                }
            }
        }
        CheckName::Isobaric => {
            let weights = match &args.weight {
                Some(w) => vec![parse_weight(w)?],
                None => vec![
                    ScalingWeight::Uniform,
                    ScalingWeight::Axis(Axis::One),
                    ScalingWeight::Axis(Axis::Two),
                ],
            };
            for (m, n) in grid(args) {
                for &w in &weights {
                    reports.push(verify::weight_homogeneity(m, n, w, &cfg)?);
                }
            }
        }
        CheckName::Corner => {
            for (m, n) in grid(args) {
                reports.push(verify::corner_power(m, n, &cfg)?);
            }
        }
        CheckName::Valuation => {
            let axes = match args.axis {
                Some(a) => vec![parse_axis(a)?],
                None => vec![Axis::One, Axis::Two],
            };
            for (m, n) in valuation_grid(args) {
                for &axis in &axes {
                    reports.push(verify::t_valuation(m, n, axis, &cfg)?);
                }
            }
        }
        CheckName::General => match &args.support {
            Some(path) => {
                let g = load_support(path, &args.chain, &args.delete)?;
                reports.push(verify::general_support(&g.spec, &g.chain, &g.deletion, &cfg)?);
            }
            None => {
                for entry in verify::general_catalog() {
                    reports.push(verify::general_support(
                        &entry.spec,
                        &entry.chain,
                        &entry.deletion,
                        &cfg,
                    )?);
                }
            }
        },
        CheckName::Symbolic => {
            reports.push(verify::symbolic_base_case(&cfg)?);
        }
        CheckName::Scan => {
            let g = match &args.support {
                Some(path) => load_support(path, &args.chain, &args.delete)?,
                None => {
                    return Err(CliError::Usage(
                        "scan needs --support (and a chain)".into(),
                    ))
                }
            };
            reports.push(verify::deletion_scan(&g.spec, &g.chain, args.cap, &cfg)?);
        }
        CheckName::All => {
            for sub in [
                CheckName::Symbolic,
                CheckName::Identity,
                CheckName::Corner,
                CheckName::Isobaric,
                CheckName::Multidegree,
                CheckName::Valuation,
                CheckName::General,
            ] {
                run_checks(args, sub, reports)?;
            }
            // the scanner needs a support; default to the degree-3 triangle
            let tri3: Vec<LatticePoint> = (0..=3)
                .flat_map(|a| (0..=3 - a).map(move |b| LatticePoint::new(a, b)))
                .collect();
            let spec = SupportSpec::new(tri3)?;
            let scan_cfg = TrialConfig {
                trials: args.trials.unwrap_or_else(|| default_trials(CheckName::Scan)),
                ..cfg
            };
            reports.push(verify::deletion_scan(
                &spec,
                &EdgeChain::new(1, 1),
                args.cap,
                &scan_cfg,
            )?);
        }
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let mut reports = Vec::new();
    run_checks(args, args.check, &mut reports)?;
    let any_fail = reports.iter().any(|r| r.status == Status::Fail);
    let any_inconclusive = reports.iter().any(|r| r.status == Status::Inconclusive);
    let status = if any_fail {
        Status::Fail
    } else if any_inconclusive {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    // stdout summary
    match args.format {
        Format::Json => {
            let json = if reports.len() == 1 {
                reports[0].to_json_pretty()
            } else {
                serde_json::to_string_pretty(&SuiteReport {
                    status,
                    checks: reports.clone(),
                })
                .expect("suite serializes")
            };
            println!("{json}");
        }
        _ => {
            for r in &reports {
                println!("{}", r.summary_line());
            }
            println!(
                "overall: {}",
                match status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Inconclusive => "INCONCLUSIVE",
                    Status::ZeroBranch => "zero-branch",
                }
            );
        }
    }
    if let Some(path) = &args.out {
        let json = if reports.len() == 1 {
            reports[0].to_json_pretty()
        } else {
            serde_json::to_string_pretty(&SuiteReport {
                status,
                checks: reports,
            })
            .expect("suite serializes")
        };
        std::fs::write(path, json + "\n")
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(match status {
        Status::Pass | Status::ZeroBranch => 0,
        Status::Fail => 1,
        Status::Inconclusive => 3,
    })
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = CliArgs::parse();
    let result = match &cli.command {
        Command::Build(args) => run_build(args),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_point_parsing() {
        assert_eq!(parse_chain("1:2").unwrap(), EdgeChain::new(1, 2));
        assert!(parse_chain("12").is_err());
        assert!(parse_chain("a:2").is_err());
        assert_eq!(
            parse_points("(1,0),(0,1)").unwrap(),
            vec![LatticePoint::new(1, 0), LatticePoint::new(0, 1)]
        );
        assert_eq!(
            parse_points(" (2, 3) ").unwrap(),
            vec![LatticePoint::new(2, 3)]
        );
        assert!(parse_points("1,0").is_err());
        assert!(parse_points("(1,0").is_err());
    }

    #[test]
    fn assignment_file_round_trip() {
        let field = PrimeField::new(101).unwrap();
        let support = SupportSpec::rectangle(1, 1);
        let mut rng = trial_rng(5, "cli-test", 0);
        let asg = FieldAssignment::random(field, support.points(), &mut rng);
        let file = AssignmentFile::from_assignment(&asg);
        let (field2, asg2) = file.to_assignment().unwrap();
        assert_eq!(field, field2);
        assert_eq!(asg, asg2);
    }

    #[test]
    fn assignment_file_rejects_unreduced_values() {
        let file = AssignmentFile {
            prime: "101".into(),
            values: vec![AssignmentEntry {
                block: 1,
                point: [0, 0],
                value: "101".into(),
            }],
        };
        assert!(file.to_assignment().is_err());
        let file = AssignmentFile {
            prime: "101".into(),
            values: vec![AssignmentEntry {
                block: 5,
                point: [0, 0],
                value: "1".into(),
            }],
        };
        assert!(file.to_assignment().is_err());
    }
}
