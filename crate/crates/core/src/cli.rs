//! The `lbforge` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cobracket::{axiom_sweep, AxiomCheck};
use crate::error::Error;
use crate::lagrangian::{catalog_w, dual_basis};
use crate::lie::{build_sl, jordanian, r_dj, ConstTensor2, LieAlgebraData};
use crate::pairing::{admissible_degree, validate_case, AForm, CaseSpec, DoubleType, Vertex};
use crate::rat::{self, Rat};
use crate::rmatrix::{build_r, catalog_constant, cyb_spectral, expand_region, sum_dual_series, RKind, SpectralTensor2};
use crate::twist::{solve_pq, substitute_affine_tensor};
use crate::wire;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub const MAX_DEGREE_ENV: &str = "LBFORGE_MAX_DEGREE";

#[derive(Debug, Parser)]
#[command(name = "lbforge", version, about = "Exact r-matrices for Lie bialgebra structures on g[u]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the closed-form r(u,v) as JSON.
    Build(CommonArgs),
    /// Check a tensor document and print a JSON report.
    Verify(CommonArgs),
    /// Emit the catalog W and its dual basis up to the truncation degree.
    Dualbasis(CommonArgs),
    /// Solve for the affine change relating two two-point families.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        c1: String,
        #[arg(allow_hyphen_values = true)]
        c2: String,
        #[arg(allow_hyphen_values = true)]
        d1: String,
        #[arg(allow_hyphen_values = true)]
        d2: String,
    },
    /// Admissible degree of 1/a(u); prints the full table without arguments.
    Table {
        /// I, II or III
        double_type: Option<String>,
        /// `max` (the lowest root) or `simple`
        vertex: Option<String>,
        /// Coefficient of the simple root in the highest root.
        k: Option<u32>,
    },
}

#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    /// `A:n` for the rank-n algebra sl_{n+1}.
    #[arg(long, default_value = "A:1")]
    pub algebra: String,
    /// Case in text form, e.g. `I:two-points:1,2`.
    #[arg(long)]
    pub case: Option<String>,
    /// zero | dj | dj21 | jordanian[:i,j] | file:path
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long, default_value_t = 6)]
    pub degree: u32,
    /// Degree of the canonical elements in the cobracket sweep.
    #[arg(long, default_value_t = 2)]
    pub sweep_degree: u32,
    /// Comma-separated subset of cybe,skew,duality,delta-axioms,equiv.
    #[arg(long, default_value = "cybe,skew")]
    pub checks: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Cybe,
    Skew,
    Duality,
    DeltaAxioms,
    Equiv,
}

impl std::str::FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s.trim() {
            "cybe" => Check::Cybe,
            "skew" => Check::Skew,
            "duality" => Check::Duality,
            "delta-axioms" => Check::DeltaAxioms,
            "equiv" => Check::Equiv,
            other => return Err(Error::InvalidInput(format!("unknown check {other:?}"))),
        })
    }
}

/// Source of the constant part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstantSource {
    Zero,
    DrinfeldJimbo,
    DrinfeldJimboSwapped,
    /// Index into the positive roots.
    Jordanian(usize),
    File(PathBuf),
}

/// Validated command configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub rank: usize,
    pub case: Option<CaseSpec>,
    pub constant_r: Option<ConstantSource>,
    pub truncation: u32,
    pub sweep_degree: u32,
    pub checks: Vec<Check>,
    pub out: Option<PathBuf>,
    pub input: Option<PathBuf>,
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Config(_) => EXIT_INVALID_CONFIG,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Io(e.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

pub fn parse_algebra(text: &str) -> CmdResult<usize> {
    let rank = text
        .trim()
        .strip_prefix("A:")
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| Failure::Config(format!("--algebra expects A:n, got {text:?}")))?;
    if rank == 0 {
        return Err(Failure::Config("--algebra rank must be at least 1".into()));
    }
    Ok(rank)
}

fn parse_constant(text: &str, alg: &LieAlgebraData) -> CmdResult<ConstantSource> {
    Ok(match text.trim() {
        "zero" => ConstantSource::Zero,
        "dj" => ConstantSource::DrinfeldJimbo,
        "dj21" => ConstantSource::DrinfeldJimboSwapped,
        "jordanian" => ConstantSource::Jordanian(0),
        other => {
            if let Some(root) = other.strip_prefix("jordanian:") {
                let label = format!("E({})", root.trim());
                let idx = alg
                    .index_of(&label)
                    .filter(|&i| i < alg.positive_roots().len())
                    .ok_or_else(|| Failure::Config(format!("no positive root {root:?}")))?;
                ConstantSource::Jordanian(idx)
            } else if let Some(path) = other.strip_prefix("file:") {
                ConstantSource::File(PathBuf::from(path))
            } else {
                return Err(Failure::Config(format!("unknown --r value {other:?}")));
            }
        }
    })
}

fn max_degree_cap() -> CmdResult<Option<u32>> {
    match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .map(Some)
            .map_err(|_| Failure::Config(format!("{MAX_DEGREE_ENV} must be a non-negative integer"))),
        Err(_) => Ok(None),
    }
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> CmdResult<(Self, LieAlgebraData)> {
        let rank = parse_algebra(&args.algebra)?;
        let alg = build_sl(rank + 1)?;
        let case = match &args.case {
            Some(text) => {
                let spec: CaseSpec = text.parse().map_err(|e: Error| Failure::Config(e.to_string()))?;
                validate_case(&spec).map_err(|r| Failure::Config(format!("rejected case: {r}")))?;
                Some(spec)
            }
            None => None,
        };
        let constant_r = args.r.as_deref().map(|t| parse_constant(t, &alg)).transpose()?;
        if args.degree < 1 {
            return Err(Failure::Config("--degree must be at least 1".into()));
        }
        if let Some(cap) = max_degree_cap()? {
            for (name, d) in [("--degree", args.degree), ("--sweep-degree", args.sweep_degree)] {
                if d > cap {
                    return Err(Failure::Config(format!("{name} {d} exceeds {MAX_DEGREE_ENV}={cap}")));
                }
            }
        }
        let checks = args
            .checks
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.parse::<Check>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok((
            Self {
                rank,
                case,
                constant_r,
                truncation: args.degree,
                sweep_degree: args.sweep_degree,
                checks,
                out: args.out.clone(),
                input: args.input.clone(),
            },
            alg,
        ))
    }

    fn require_case(&self) -> CmdResult<&CaseSpec> {
        self.case
            .as_ref()
            .ok_or_else(|| Failure::Config("--case is required".into()))
    }
}

fn read_file(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> CmdResult<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}").map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn resolve_constant(cfg: &RunConfig, alg: &LieAlgebraData, spec: &CaseSpec) -> CmdResult<RKind> {
    let value: ConstTensor2 = match &cfg.constant_r {
        None => return Ok(catalog_constant(alg, spec)?),
        Some(ConstantSource::Zero) => ConstTensor2::zero(),
        Some(ConstantSource::DrinfeldJimbo) => r_dj(alg),
        Some(ConstantSource::DrinfeldJimboSwapped) => r_dj(alg).swap(),
        Some(ConstantSource::Jordanian(a)) => jordanian(alg, *a),
        Some(ConstantSource::File(path)) => {
            let (file_alg, t) = wire::constant_from_json(&read_file(path)?)?;
            if file_alg.rank() != alg.rank() {
                return Err(Failure::Config(format!(
                    "constant part is for rank {}, --algebra has rank {}",
                    file_alg.rank(),
                    alg.rank()
                )));
            }
            t
        }
    };
    Ok(RKind::classify(alg, value)?)
}

pub fn cmd_build(cfg: &RunConfig, alg: &LieAlgebraData) -> CmdResult<i32> {
    let spec = cfg.require_case()?;
    let r = resolve_constant(cfg, alg, spec)?;
    let tensor = build_r(alg, spec, &r)?;
    emit(&cfg.out, &wire::tensor_to_json(alg, &tensor))?;
    Ok(EXIT_PASS)
}

/// Outcome of one verification check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

fn pair_witness(alg: &LieAlgebraData, i: usize, j: usize, exps: &[i32], c: &Rat) -> Value {
    json!({
        "entry": [alg.label(i), alg.label(j)],
        "term": {"exponents": exps, "coefficient": rat::fmt(c)},
    })
}

fn first_term<const N: usize>(p: &crate::poly::LaurentPoly<N>) -> (Vec<i32>, Rat) {
    let (e, c) = p.terms().next().expect("nonzero polynomial");
    (e.to_vec(), c.clone())
}

fn check_cybe(alg: &LieAlgebraData, r: &SpectralTensor2) -> CheckReport {
    let t = cyb_spectral(alg, r);
    let witness = t.entries.iter().next().map(|((i, j, k), p)| {
        let (e, c) = first_term(p);
        json!({
            "entry": [alg.label(*i), alg.label(*j), alg.label(*k)],
            "term": {"exponents": e, "coefficient": rat::fmt(&c)},
            "den_power": t.den_power,
        })
    });
    CheckReport {
        check: Check::Cybe,
        pass: witness.is_none(),
        witness,
        detail: None,
    }
}

fn check_skew(alg: &LieAlgebraData, r: &SpectralTensor2) -> CheckReport {
    let sum = r.add(&r.swap_legs_and_vars());
    let witness = sum.entries().next().map(|((i, j), f)| {
        let (e, c) = first_term(f.num());
        let mut w = pair_witness(alg, i, j, &e, &c);
        w["den_power"] = json!(f.den_power());
        w
    });
    CheckReport {
        check: Check::Skew,
        pass: witness.is_none(),
        witness,
        detail: None,
    }
}

fn diff_witness(
    alg: &LieAlgebraData,
    a: &crate::rmatrix::TruncTensor2,
    b: &crate::rmatrix::TruncTensor2,
) -> Option<Value> {
    let mut keys: Vec<(usize, usize)> = a.entries().map(|(k, _)| k).collect();
    keys.extend(b.entries().map(|(k, _)| k));
    keys.sort();
    keys.dedup();
    keys.into_iter().find_map(|(i, j)| {
        let d = &a.get(i, j) - &b.get(i, j);
        if d.is_zero() {
            None
        } else {
            let (e, c) = first_term(&d);
            Some(pair_witness(alg, i, j, &e, &c))
        }
    })
}

fn check_duality(alg: &LieAlgebraData, spec: &CaseSpec, r: &SpectralTensor2, n: u32) -> CmdResult<CheckReport> {
    let w = catalog_w(alg, spec)?;
    let series = sum_dual_series(alg, &w, n)?;
    let closed = expand_region(r, n);
    let witness = diff_witness(alg, &closed, &series);
    Ok(CheckReport {
        check: Check::Duality,
        pass: witness.is_none(),
        witness,
        detail: Some(json!({"case": spec.to_string(), "truncation": n})),
    })
}

fn check_axioms(alg: &LieAlgebraData, r: &SpectralTensor2, degree: u32) -> CheckReport {
    let records = axiom_sweep(alg, &[("input".to_string(), r.clone())], degree);
    let total = records.len();
    let failed: Vec<_> = records.iter().filter(|x| !x.pass).collect();
    let witness = failed.first().map(|x| json!({"element": x.element, "check": x.check}));
    let count = |c: AxiomCheck| records.iter().filter(|x| x.check == c).count();
    CheckReport {
        check: Check::DeltaAxioms,
        pass: failed.is_empty(),
        witness,
        detail: Some(json!({
            "degree": degree,
            "records": total,
            "failed": failed.len(),
            "cocycle_pairs": count(AxiomCheck::Cocycle),
        })),
    }
}

/// Compares the input with the reference two-point r-matrix for `(1, −1)`
/// moved by the affine change onto the case constants.
fn check_equiv(alg: &LieAlgebraData, spec: &CaseSpec, r: &SpectralTensor2) -> CmdResult<CheckReport> {
    let (d1, d2) = match &spec.a_form {
        AForm::TwoPoints(d1, d2) if spec.double_type == DoubleType::I => (d1, d2),
        _ => {
            return Err(Failure::Config(
                "the equiv check applies to I:two-points cases only".into(),
            ))
        }
    };
    let (c1, c2) = (Rat::from_integer(1.into()), Rat::from_integer((-1).into()));
    let change = solve_pq(&c1, &c2, d1, d2)?;
    let scaling = change.scaling(&c1, &c2)?;
    let reference_spec = CaseSpec::new(DoubleType::I, AForm::TwoPoints(c1.clone(), c2.clone()));
    let reference = build_r(alg, &reference_spec, &RKind::mcybe(alg, r_dj(alg))?)?;
    let moved = substitute_affine_tensor(&reference, &change)?.scale(&scaling);
    let diff = moved.sub(r);
    let witness = diff.entries().next().map(|((i, j), f)| {
        let (e, c) = first_term(f.num());
        pair_witness(alg, i, j, &e, &c)
    });
    Ok(CheckReport {
        check: Check::Equiv,
        pass: witness.is_none(),
        witness,
        detail: Some(json!({
            "p": rat::fmt(change.p()),
            "q": rat::fmt(change.q()),
            "C": rat::fmt(&scaling),
        })),
    })
}

pub fn cmd_verify(cfg: &RunConfig) -> CmdResult<i32> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| Failure::Config("--in is required".into()))?;
    let (alg, r) = wire::tensor_from_json(&read_file(path)?).map_err(|e| match e {
        Error::Parse(_) => Failure::Io(e.to_string()),
        other => Failure::Io(format!("invalid tensor document: {other}")),
    })?;
    let needs_case = cfg.checks.iter().any(|c| matches!(c, Check::Duality | Check::Equiv));
    if needs_case {
        cfg.require_case()?;
    }
    let mut checks = Vec::new();
    for check in &cfg.checks {
        checks.push(match check {
            Check::Cybe => check_cybe(&alg, &r),
            Check::Skew => check_skew(&alg, &r),
            Check::Duality => check_duality(&alg, cfg.require_case()?, &r, cfg.truncation)?,
            Check::DeltaAxioms => check_axioms(&alg, &r, cfg.sweep_degree),
            Check::Equiv => check_equiv(&alg, cfg.require_case()?, &r)?,
        });
    }
    let report = VerifyReport {
        pass: checks.iter().all(|c| c.pass),
        checks,
    };
    emit(&cfg.out, &serde_json::to_string_pretty(&report).expect("report serializes"))?;
    Ok(if report.pass { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

pub fn cmd_dualbasis(cfg: &RunConfig, alg: &LieAlgebraData) -> CmdResult<i32> {
    let spec = cfg.require_case()?;
    let w = catalog_w(alg, spec)?;
    let duals = dual_basis(alg, &w, cfg.truncation)?;
    let doc = json!({
        "presentation": wire::presentation_doc(alg, &w),
        "dual_basis": wire::dual_basis_doc(alg, spec, &duals),
    });
    emit(&cfg.out, &serde_json::to_string_pretty(&doc).expect("document serializes"))?;
    Ok(EXIT_PASS)
}

pub fn cmd_equiv(c1: &str, c2: &str, d1: &str, d2: &str) -> CmdResult<i32> {
    let parse = |s: &str| rat::parse(s).map_err(|e| Failure::Config(e.to_string()));
    let (c1, c2, d1, d2) = (parse(c1)?, parse(c2)?, parse(d1)?, parse(d2)?);
    let report = crate::twist::quasi_twist_verify(&c1, &c2, &d1, &d2)?;
    println!(
        "p={} q={} C={} {}",
        report.change.p(),
        report.change.q(),
        report.scaling,
        if report.equal { "equal" } else { "not-equal" }
    );
    Ok(if report.equal { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

fn parse_vertex(vertex: &str, k: Option<u32>) -> CmdResult<Vertex> {
    match (vertex, k) {
        ("max" | "alpha-max" | "-alpha-max", None) => Ok(Vertex::MinusAlphaMax),
        ("simple", Some(k)) => Ok(Vertex::Simple(k)),
        ("simple", None) => Err(Failure::Config("simple vertex needs its coefficient k".into())),
        _ => Err(Failure::Config(format!("unknown vertex {vertex:?}"))),
    }
}

pub fn cmd_table(double_type: Option<&str>, vertex: Option<&str>, k: Option<u32>) -> CmdResult<i32> {
    match (double_type, vertex) {
        (Some(dt), Some(v)) => {
            let dt: DoubleType = dt.parse().map_err(|e: Error| Failure::Config(e.to_string()))?;
            println!("{}", admissible_degree(dt, parse_vertex(v, k)?)?);
        }
        (None, None) => {
            println!("type\t-alpha_max\tsimple k=1\tsimple k>1");
            for dt in [DoubleType::I, DoubleType::II, DoubleType::III] {
                println!(
                    "{dt}\t{}\t{}\t{}",
                    admissible_degree(dt, Vertex::MinusAlphaMax)?,
                    admissible_degree(dt, Vertex::Simple(1))?,
                    admissible_degree(dt, Vertex::Simple(2))?
                );
            }
        }
        _ => return Err(Failure::Config("table needs both a double type and a vertex".into())),
    }
    Ok(EXIT_PASS)
}

pub fn run(cli: Cli) -> CmdResult<i32> {
    match cli.command {
        Command::Build(args) => {
            let (cfg, alg) = RunConfig::from_args(&args)?;
            cmd_build(&cfg, &alg)
        }
        Command::Verify(args) => {
            let (cfg, _) = RunConfig::from_args(&args)?;
            cmd_verify(&cfg)
        }
        Command::Dualbasis(args) => {
            let (cfg, alg) = RunConfig::from_args(&args)?;
            cmd_dualbasis(&cfg, &alg)
        }
        Command::Equiv { c1, c2, d1, d2 } => cmd_equiv(&c1, &c2, &d1, &d2),
        Command::Table { double_type, vertex, k } => {
            cmd_table(double_type.as_deref(), vertex.as_deref(), k)
        }
    }
}

pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID_CONFIG } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            let msg = match &f {
                Failure::Config(m) | Failure::Io(m) => m,
            };
            eprintln!("error: {msg}");
            f.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_flag() {
        assert_eq!(parse_algebra("A:1").unwrap(), 1);
        assert_eq!(parse_algebra("A:3").unwrap(), 3);
        assert!(parse_algebra("A:0").is_err());
        assert!(parse_algebra("B:2").is_err());
    }

    #[test]
    fn constant_flag() {
        let g = build_sl(3).unwrap();
        assert_eq!(parse_constant("jordanian:1,3", &g).unwrap(), ConstantSource::Jordanian(2));
        assert!(parse_constant("jordanian:3,1", &g).is_err());
        assert!(parse_constant("nonsense", &g).is_err());
    }

    #[test]
    fn rejected_case_cites_degree_bound() {
        let args = CommonArgs {
            algebra: "A:1".into(),
            case: Some("II:two-points:1,2".into()),
            r: None,
            degree: 6,
            sweep_degree: 2,
            checks: "cybe".into(),
            out: None,
            input: None,
        };
        match RunConfig::from_args(&args) {
            Err(Failure::Config(m)) => assert!(m.contains("degree at most 1"), "{m}"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
