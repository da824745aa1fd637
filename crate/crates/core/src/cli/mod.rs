//! Command-line front end: problem files in, reports and certificates out.
//!
//! Exit codes: 0 success, 1 verdict or membership failure, 2 input error.

pub mod expr;
pub mod json;
pub mod problem;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::invariants::det_group_order;
use crate::poly::monomials_of_degree;
use crate::pv::{check_group_stable, check_v_stable, LocalizedPoly};
use crate::relations::{constructive_certificate, verify_theorem, PVContext};
use crate::tensor::{induced_system_on_monomials, symmetric_power_system};
use crate::Error;

pub use json::{CertificateJson, CheckJson, VerifyJson};
pub use problem::Problem;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure(_) => 1,
            _ => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionMismatch { .. } | Error::FieldMismatch | Error::Unsupported(_) | Error::DegreeOutOfRange(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "galrel", version, about = "Algebraic relations among solutions of linear systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check v-stability, G-stability and finiteness of the determinant group.
    Check {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Verify that I is the radical of the ideal generated by P_i - f_i.
    Verify {
        file: PathBuf,
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Express a power of Q in terms of G-invariants lying in I.
    Certificate {
        file: PathBuf,
        /// Element of I in the expression grammar.
        q: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the certificate here instead of standard output.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Print the symmetric power system of degree d.
    Sympower {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Use the system induced on degree-d monomials in the X[i][j].
        #[arg(long)]
        monomials: bool,
    },
}

fn read_problem(path: &Path) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Problem::parse(&text).map_err(|e| match e {
        CliError::Parse { line, col, msg } => CliError::Input(format!("{}:{line}:{col}: {msg}", path.display())),
        other => other,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn yes(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

/// Runs a parsed command line, writing the report to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Input(e.to_string())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Check { file, json } => cmd_check(&read_problem(file)?, json.as_deref(), out),
        Command::Verify { file, json } => cmd_verify(&read_problem(file)?, json.as_deref(), out),
        Command::Certificate { file, q, seed, json } => {
            cmd_certificate(&read_problem(file)?, q, *seed, json.as_deref(), out)
        }
        Command::Sympower { file, degree, monomials } => cmd_sympower(&read_problem(file)?, *degree, *monomials, out),
    }
}

pub fn cmd_check(p: &Problem, json: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let ideal = p.ideal_presentation();
    let proper = !ideal.is_unit();
    let v_stable = check_v_stable(&ideal, &p.system)?;
    let g_stable = check_group_stable(&ideal, &p.group.generators());
    let order = det_group_order(&p.group);
    writeln!(out, "proper ideal: {}", yes(proper)).map_err(io)?;
    writeln!(out, "v-stable: {}", yes(v_stable)).map_err(io)?;
    writeln!(out, "G-stable: {}", yes(g_stable)).map_err(io)?;
    match order {
        Some(k) => writeln!(out, "determinant group: finite, order {k}"),
        None => writeln!(out, "determinant group: infinite"),
    }
    .map_err(io)?;
    if let Some(path) = json {
        let report = CheckJson {
            proper,
            v_stable,
            g_stable,
            determinant_group_order: order,
        };
        write_file(path, &json::render(&report))?;
    }
    Ok(if proper && v_stable && g_stable && order.is_some() { 0 } else { 1 })
}

pub fn cmd_verify(p: &Problem, json: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let invariants = p
        .invariant_polys()
        .ok_or_else(|| CliError::Input("verify needs an 'invariants' section".into()))?;
    let ctx = PVContext::new(p.system.clone(), p.ideal_presentation(), p.group.clone())?;
    let report = verify_theorem(&ctx, &invariants)?;
    writeln!(out, "relations:").map_err(io)?;
    for (r, inside) in report.relations.iter().zip(&report.relations_in_i) {
        writeln!(out, "  {r}    in I: {}", yes(*inside)).map_err(io)?;
    }
    writeln!(out, "(a) relations lie in I: {}", yes(report.verdict_a())).map_err(io)?;
    writeln!(out, "(b) I lies in the radical of the relations: {}", yes(report.verdict_b())).map_err(io)?;
    match report.exact_generation_witness() {
        None => writeln!(out, "(c) relations generate I exactly: yes"),
        Some(w) => writeln!(out, "(c) relations generate I exactly: no (witness {w})"),
    }
    .map_err(io)?;
    writeln!(out, "generators of I:").map_err(io)?;
    for g in &report.generators {
        writeln!(out, "  {}    radical: {}, exact: {}", g.generator, yes(g.in_radical), yes(g.in_ideal)).map_err(io)?;
    }
    if let Some(path) = json {
        write_file(path, &json::render(&VerifyJson::new(&report)))?;
    }
    Ok(if report.verdict_a() && report.verdict_b() { 0 } else { 1 })
}

pub fn cmd_certificate(
    p: &Problem,
    q: &str,
    seed: Option<u64>,
    json: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let q = parse_q(p, q)?;
    let seed = seed.or(p.seed).unwrap_or(0);
    let ctx = PVContext::new(p.system.clone(), p.ideal_presentation(), p.group.clone())?;
    if !ctx.ideal().contains(&q) {
        return Err(CliError::Failure(format!(
            "Q is not in I: its normal form is {}",
            ctx.ideal().normal_form(q.numerator())
        )));
    }
    let cert = constructive_certificate(&q, &ctx, seed)?;
    let doc = json::render(&CertificateJson::new(&cert, p));
    match json {
        Some(path) => {
            writeln!(out, "N0: {}", cert.n0).map_err(io)?;
            writeln!(out, "f: {}", cert.f).map_err(io)?;
            writeln!(out, "terms: {}", cert.terms.len()).map_err(io)?;
            write_file(path, &doc)?;
        }
        None => out.write_all(doc.as_bytes()).map_err(io)?,
    }
    Ok(0)
}

/// Parses `Q` from the command line, reporting the column on failure.
pub fn parse_q(p: &Problem, q: &str) -> Result<LocalizedPoly, CliError> {
    let origin = expr::Pos { line: 1, col: 1 };
    expr::parse_expr(q, origin)
        .and_then(|e| expr::eval_localized(&e, p.space(), &p.field))
        .map_err(|e| match e {
            CliError::Parse { col, msg, .. } => CliError::Input(format!("Q:{col}: {msg}")),
            other => other,
        })
}

pub fn cmd_sympower(p: &Problem, degree: usize, monomials: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    if degree == 0 {
        return Err(CliError::Input("--degree must be at least 1".into()));
    }
    let sys = if monomials {
        let space = p.space();
        let labels: Vec<String> = monomials_of_degree(space.nvars(), degree as u32)
            .into_iter()
            .map(|m| crate::poly::MultiPoly::term(space, &p.field, m, crate::algebra::RatFunc::one(&p.field)).to_string())
            .collect();
        writeln!(out, "# basis: {}", labels.join(", ")).map_err(io)?;
        induced_system_on_monomials(&p.system, degree)?
    } else {
        symmetric_power_system(&p.system, degree)?
    };
    for row in sys.matrix().rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", cells.join(", ")).map_err(io)?;
    }
    Ok(0)
}
