//! Command-line front end: `fillings`, `basis`, `tree`, `certify`, `hilbert`,
//! `jtable`, `oracle` and `verify-all`.

pub mod suite;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::combinat::{enumerate_standard_fillings, ParamError, Parameters, Shape, ShapeError};
use crate::hilbert::{
    check_shape_symmetry, degree_polynomial_with_cap, j_enumerated_all, HilbertError, JIndex, JRecurrence,
    Recurrence,
};
use crate::kicking::{build_kicking_tree, phi, sort_in_order, FillingOrder, KickingError};
use crate::linfactor::Rational;
use crate::oracle::{harmonic_hilbert_with_cap, OracleError, DEFAULT_ORACLE_CAP};
use crate::orbit::{
    certify_nonsingular, check_block_triangular_by_largest, check_hook_triangularity, evaluation_matrix_with,
    Certificate, NonsingularWitness, OrbitError, TriangularityReport, DEFAULT_MATRIX_CAP,
};

pub const SCHEMA: &str = "kicking/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Kicking(#[from] KickingError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Shape(_) | CliError::Param(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "kicking", version, about = "Kicking bases for two-column and hook orbit modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum KindArg {
    Auto,
    TwoColumn,
    Hook,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum OrderArg {
    Kicking,
    Block,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct ShapeArgs {
    /// Row lengths, largest first: `2,2,1` or `2^2,1`.
    #[arg(long)]
    pub shape: String,
    /// Rules to apply when a shape is both two-column and a hook.
    #[arg(long, value_enum, default_value_t = KindArg::Auto)]
    pub kind: KindArg,
}

#[derive(Debug, clap::Args)]
pub struct ParamArgs {
    /// Comma-separated alpha values as `p/q`.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Comma-separated beta values as `p/q`.
    #[arg(long)]
    pub beta: Option<String>,
    /// Seeded random distinct parameters instead of the defaults.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Standard fillings in kicking order.
    Fillings {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = OrderArg::Kicking)]
        order: OrderArg,
    },
    /// One line per basis element: filling, factors, bidegree.
    Basis {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Kicking tree of a two-column shape.
    Tree {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Certifies the evaluation matrix nonsingular; JSON report.
    Certify {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = OrderArg::Kicking)]
        order: OrderArg,
        /// Largest allowed matrix dimension.
        #[arg(long, default_value_t = DEFAULT_MATRIX_CAP)]
        cap: usize,
    },
    /// Degree polynomial, its symmetry box and verdict.
    Hilbert {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = crate::hilbert::DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// All `J^m_{a,b}` with `a + b <= amax` and agreement of the three computations.
    Jtable {
        #[arg(long, default_value_t = 7)]
        amax: usize,
    },
    /// Hilbert series of the derivative closure of the determinant.
    Oracle {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Also compute the degree polynomial and compare.
        #[arg(long)]
        compare: bool,
        /// Largest n accepted (at most 6).
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Runs the acceptance suite.
    VerifyAll {
        /// Caps every size bound of the suite.
        #[arg(long)]
        nmax: Option<usize>,
        /// First seed for the random parameter trials.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

pub fn resolve_shape(args: &ShapeArgs) -> Result<Shape, CliError> {
    let shape: Shape = args.shape.parse()?;
    let resolved = match args.kind {
        KindArg::Auto => Some(shape),
        KindArg::TwoColumn => shape.as_two_column(),
        KindArg::Hook => shape.as_hook(),
    };
    resolved.ok_or_else(|| CliError::Usage(format!("shape {} cannot be read as {:?}", args.shape, args.kind)))
}

fn parse_rationals(list: &str) -> Result<Vec<Rational>, CliError> {
    list.split(',')
        .map(|s| s.trim().parse::<Rational>().map_err(|_| CliError::Usage(format!("bad rational '{s}'"))))
        .collect()
}

pub fn resolve_params(shape: &Shape, args: &ParamArgs) -> Result<Parameters, CliError> {
    let base = match args.seed {
        Some(seed) => Parameters::random(shape, seed),
        None => Parameters::default_for(shape),
    };
    let alpha = match &args.alpha {
        Some(a) => parse_rationals(a)?,
        None => base.alphas().to_vec(),
    };
    let beta = match &args.beta {
        Some(b) => parse_rationals(b)?,
        None => base.betas().to_vec(),
    };
    let params = Parameters::new(alpha, beta)?;
    params.check_for(shape)?;
    Ok(params)
}

fn filling_order(o: OrderArg) -> FillingOrder {
    match o {
        OrderArg::Kicking => FillingOrder::Kicking,
        OrderArg::Block => FillingOrder::Block,
    }
}

fn order_name(o: OrderArg) -> &'static str {
    match o {
        OrderArg::Kicking => "kicking",
        OrderArg::Block => "block",
    }
}

/// Parses `argv` and runs; returns the process exit code.
pub fn main_with_args<I, T>(argv: I, out: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command, out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cmd: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Fillings { shape, order } => {
            let shape = resolve_shape(shape)?;
            let mut all = enumerate_standard_fillings(&shape);
            sort_in_order(&shape, filling_order(*order), &mut all);
            for s in all {
                writeln!(out, "{s}")?;
            }
        }
        Command::Basis { shape, params, format } => {
            let shape = resolve_shape(shape)?;
            let params = resolve_params(&shape, params)?;
            let mut rows = Vec::new();
            for s in enumerate_standard_fillings(&shape) {
                let p = phi(&s, &params)?;
                let (dx, dy) = p.bidegree();
                match format {
                    FormatArg::Text => writeln!(out, "{s}\t{p}\t({dx},{dy})")?,
                    FormatArg::Json => rows.push(json!({
                        "filling": s.to_string(),
                        "factors": p.to_string(),
                        "bidegree": [dx, dy],
                    })),
                }
            }
            if *format == FormatArg::Json {
                let doc = json!({"schema": SCHEMA, "shape": shape.to_string(), "basis": rows});
                writeln!(out, "{doc}")?;
            }
        }
        Command::Tree { shape, params } => {
            let shape = resolve_shape(shape)?;
            let params = resolve_params(&shape, params)?;
            let tree = build_kicking_tree(&shape, &params)?;
            write!(out, "{}", tree.render())?;
        }
        Command::Certify { shape, params, order, cap } => certify(resolve_shape(shape)?, params, *order, *cap, out)?,
        Command::Hilbert { shape, cap } => {
            let shape = resolve_shape(shape)?;
            let f = degree_polynomial_with_cap(&shape, &Parameters::default_for(&shape), *cap)?;
            let r = check_shape_symmetry(&shape, &f);
            let (n, m) = r.expected;
            let verdict = if r.passed() { "yes" } else { "no" };
            writeln!(out, "{f}  symmetric:{verdict}  (N,M)=({n},{m})")?;
            let doc = json!({
                "schema": SCHEMA,
                "shape": shape.to_string(),
                "polynomial": f.json_form(),
                "N": n,
                "M": m,
                "symmetric": r.passed(),
            });
            writeln!(out, "{doc}")?;
            if !r.passed() {
                return Err(CliError::Failed(format!("degree polynomial of {shape} is not symmetric in ({n},{m})")));
            }
        }
        Command::Jtable { amax } => jtable(*amax, out)?,
        Command::Oracle { shape, compare, cap } => {
            let shape = resolve_shape(shape)?;
            if *cap > DEFAULT_ORACLE_CAP && shape.size() > DEFAULT_ORACLE_CAP {
                eprintln!("warning: oracle above n = {DEFAULT_ORACLE_CAP} is slow");
            }
            let h = harmonic_hilbert_with_cap(&shape, *cap)?;
            writeln!(out, "harmonic: {h}")?;
            if *compare {
                let f = degree_polynomial_with_cap(&shape, &Parameters::default_for(&shape), *cap)?;
                writeln!(out, "degree:   {f}")?;
                if h == f {
                    writeln!(out, "MATCH")?;
                } else {
                    writeln!(out, "MISMATCH")?;
                    return Err(CliError::Failed(format!("Hilbert series and degree polynomial differ for {shape}")));
                }
            }
        }
        Command::VerifyAll { nmax, seed } => {
            let bounds = match nmax {
                Some(n) => suite::SuiteBounds::capped(*n),
                None => suite::SuiteBounds::default(),
            }
            .with_seed(*seed);
            let results = suite::run_all(&bounds);
            for r in &results {
                writeln!(out, "{r}")?;
            }
            let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
            if !failed.is_empty() {
                return Err(CliError::Failed(format!("criteria failed: {}", failed.join(", "))));
            }
        }
    }
    Ok(())
}

fn violations_json(r: &TriangularityReport) -> Vec<serde_json::Value> {
    r.violations
        .iter()
        .map(|v| json!({"kind": format!("{:?}", v.kind), "basis": v.basis.to_string(), "point": v.point.to_string()}))
        .collect()
}

fn certify(shape: Shape, params: &ParamArgs, order: OrderArg, cap: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let start = Instant::now();
    let params = resolve_params(&shape, params)?;
    let m = evaluation_matrix_with(&shape, &params, filling_order(order), cap)?;
    let cert = certify_nonsingular(&m);
    let structure = match shape {
        Shape::Hook { .. } if order == OrderArg::Kicking => Some(("triangular", check_hook_triangularity(&shape, &params)?)),
        Shape::TwoColumn { .. } => Some(("block-triangular", check_block_triangular_by_largest(&shape, &params)?)),
        _ => None,
    };
    let witness = match &cert {
        Certificate::Nonsingular(NonsingularWitness::Determinant(d)) => json!({"determinant": d.to_string()}),
        Certificate::Nonsingular(NonsingularWitness::Modular { prime, residue }) => {
            json!({"prime": prime, "residue": residue})
        }
        Certificate::Singular { rank, kernel } => {
            json!({"rank": rank, "kernel": kernel.iter().map(|v| v.to_string()).collect::<Vec<_>>()})
        }
    };
    let violations = structure.as_ref().map(|(_, r)| violations_json(r)).unwrap_or_default();
    let mut doc = json!({
        "schema": SCHEMA,
        "shape": shape.to_string(),
        "n": shape.size(),
        "order": order_name(order),
        "verdict": if cert.is_nonsingular() { "nonsingular" } else { "singular" },
        "method": cert.method(),
        "witness": witness,
        "violations": violations,
    });
    if let Some((name, r)) = &structure {
        doc[*name] = json!(r.passed());
    }
    doc["elapsed"] = json!(start.elapsed().as_secs_f64());
    writeln!(out, "{doc}")?;
    if !cert.is_nonsingular() {
        return Err(CliError::Failed(format!("evaluation matrix of {shape} is singular")));
    }
    if structure.is_some_and(|(_, r)| !r.passed()) {
        return Err(CliError::Failed(format!("evaluation matrix of {shape} is not triangular as expected")));
    }
    Ok(())
}

fn jtable(amax: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let mut first = JRecurrence::new(Recurrence::First);
    let mut second = JRecurrence::new(Recurrence::Second);
    let mut bad = 0;
    for a in 0..=amax {
        for b in 0..=a.min(amax - a) {
            let shape = Shape::TwoColumn { a, b };
            let enumerated = j_enumerated_all(a, b, &Parameters::default_for(&shape))?;
            for (m, e) in enumerated.iter().enumerate() {
                let idx = JIndex::new(a, b, m);
                let ok = *e == first.get(idx) && *e == second.get(idx);
                if !ok {
                    bad += 1;
                }
                let status = if ok { "agree" } else { "DISAGREE" };
                writeln!(out, "J^{m}_{{{a},{b}}}\t{e}\t{status}")?;
            }
        }
    }
    if bad > 0 {
        return Err(CliError::Failed(format!("{bad} J values disagree between enumeration and recurrences")));
    }
    Ok(())
}
