//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code, so it can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num::Signed;

use crate::complex::{trace_word, Chain, WindowComplex};
use crate::error::{Error, Result};
use crate::filling::{
    filling_norm_with, finite_linear_constant, finite_window, integer_cycles,
    isoperimetric_lower_bounds, nu_auto, nu_witness, Candidate, CommutatorFamily, CycleFamily,
    FillingValue, IsoperimetricSample, NuWitness,
};
use crate::group::{Presentation, DEFAULT_BALL_CAP};
use crate::lp::{SolverConfig, DEFAULT_PIVOT_LIMIT};
use crate::rational::{parse_rational, Exact, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_FILLING: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "isofill",
    version,
    about = "Exact l1 filling norms for finitely presented groups"
)]
struct Cli {
    /// Increase log verbosity (-v info, -vv debug, -vvv trace).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Filling norm of a 1-cycle.
    Fill(FillArgs),
    /// Table of certified lower bounds for the isoperimetric function.
    Isoperimetric(IsoArgs),
    /// Build and verify the blow-up chain ν_l.
    Nu(NuArgs),
    /// Exact linear constant of a finite group.
    FiniteConstant(CommonArgs),
    /// Report whether ∂₂ is injective on a window.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Presentation file.
    #[arg(long)]
    presentation: PathBuf,
    /// Maximum number of group elements enumerated in any ball.
    #[arg(long, default_value_t = DEFAULT_BALL_CAP, value_parser = positive_usize)]
    ball_cap: usize,
    /// Maximum number of simplex pivots per solve.
    #[arg(long, default_value_t = DEFAULT_PIVOT_LIMIT, value_parser = positive_u64)]
    pivot_limit: u64,
}

#[derive(Args, Debug)]
struct FillArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Cycle as a word traced from the identity vertex.
    #[arg(long, conflicts_with = "chain", required_unless_present = "chain")]
    cycle: Option<String>,
    /// Cycle as a JSON chain file.
    #[arg(long)]
    chain: Option<PathBuf>,
    /// Rational multiplier applied to the cycle.
    #[arg(long, value_parser = parse_rational)]
    scale: Option<Rational>,
    /// Window radius (default: the cycle's reach).
    #[arg(long, value_parser = positive_usize)]
    radius: Option<usize>,
    /// Write the optimal filling chain here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IsoArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated ℓ¹ budgets.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_rational)]
    budgets: Vec<Rational>,
    /// Cycle family: commutator, scaled-commutator or none.
    #[arg(long, default_value = "commutator")]
    family: String,
    /// Per-row largest family member; must match the number of budgets.
    #[arg(long, value_delimiter = ',', value_parser = positive_usize)]
    scales: Vec<usize>,
    /// Largest family member used on every row when --scales is absent.
    #[arg(long, default_value_t = 4, value_parser = positive_usize)]
    members: usize,
    /// Also enumerate integer cycles of at most this ℓ¹ norm.
    #[arg(long)]
    exhaustive_norm: Option<u32>,
    /// Ball radius for the integer cycle enumeration.
    #[arg(long, default_value_t = 1)]
    exhaustive_radius: usize,
    /// Node cap for the integer cycle enumeration.
    #[arg(long, default_value_t = 1_000_000, value_parser = positive_usize)]
    exhaustive_cap: usize,
    #[arg(long, value_parser = positive_usize)]
    radius: Option<usize>,
    /// Write the CSV table here as well.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct NuArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, value_parser = positive_usize)]
    l: usize,
    #[arg(long, default_value = "0", value_parser = parse_rational)]
    epsilon: Rational,
    /// Fixed window radius (default: grow until the construction fits).
    #[arg(long, value_parser = positive_usize)]
    radius: Option<usize>,
    /// Write ν_l as a JSON chain here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, value_parser = positive_usize)]
    radius: usize,
}

fn positive_usize(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u64(s: &str) -> std::result::Result<u64, String> {
    positive_usize(s).map(|v| v as u64)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    init_logging(cli.verbose);
    let result = match &cli.command {
        Command::Fill(a) => cmd_fill(a, out),
        Command::Isoperimetric(a) => cmd_isoperimetric(a, out),
        Command::Nu(a) => cmd_nu(a, out),
        Command::FiniteConstant(a) => cmd_finite_constant(a, out),
        Command::Check(a) => cmd_check(a, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(CliError::NoFilling(detail)) => {
            let _ = match detail {
                Some(d) => writeln!(err, "no in-window filling ({d})"),
                None => writeln!(err, "no in-window filling"),
            };
            EXIT_NO_FILLING
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .try_init();
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_resource_cap() || matches!(e, Error::TooLarge(_)) {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

enum CliError {
    Lib(Error),
    Io(std::io::Error),
    NoFilling(Option<String>),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult = std::result::Result<i32, CliError>;

impl CommonArgs {
    fn load(&self) -> Result<Presentation> {
        let text = fs::read_to_string(&self.presentation).map_err(|e| {
            Error::Parse(format!("cannot read {}: {e}", self.presentation.display()))
        })?;
        Presentation::parse_with_cap(&text, self.ball_cap)
    }

    fn solver(&self) -> SolverConfig {
        SolverConfig {
            pivot_limit: self.pivot_limit,
        }
    }
}

fn write_file(path: &Path, contents: &str) -> std::io::Result<()> {
    fs::write(path, contents)
}

fn cmd_fill(a: &FillArgs, out: &mut dyn Write) -> CliResult {
    let p = a.common.load()?;
    let (mut cycle, reach) = match (&a.cycle, &a.chain) {
        (Some(text), _) => {
            let word = p.parse_word(text)?;
            let (c, _) = trace_word(&p, &word, &p.identity())?;
            (c, word.len())
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let c = Chain::from_json(&p, &text, 1)?;
            let mut reach = 0;
            for (cell, _) in c.iter() {
                reach = reach.max(p.word_length(&cell.translate)?);
            }
            (c, reach)
        }
        (None, None) => unreachable!("clap requires --cycle or --chain"),
    };
    if let Some(q) = &a.scale {
        cycle = cycle.scaled(q);
    }
    let radius = a.radius.unwrap_or(reach.max(1));
    let w = WindowComplex::build(&p, radius)?;
    let result = match filling_norm_with(&w, &cycle, &a.common.solver()) {
        Ok(r) => r,
        Err(Error::OutOfWindow(msg)) => return Err(CliError::NoFilling(Some(msg))),
        Err(e) => return Err(e.into()),
    };
    let FillingValue::Finite(value) = &result.value else {
        return Err(CliError::NoFilling(None));
    };
    writeln!(out, "{}", Exact(value))?;
    if let (Some(path), Some(witness)) = (&a.out, &result.witness) {
        write_file(path, &witness.to_json(&p)?)?;
    }
    Ok(EXIT_OK)
}

fn family_by_name(name: &str) -> Result<Option<Box<dyn CycleFamily>>> {
    match name {
        "commutator" => Ok(Some(Box::new(CommutatorFamily { normalized: false }))),
        "scaled-commutator" => Ok(Some(Box::new(CommutatorFamily { normalized: true }))),
        "none" => Ok(None),
        other => Err(Error::InvalidArgument(format!(
            "unknown cycle family {other:?}"
        ))),
    }
}

const CSV_HEADER: [&str; 5] = [
    "budget",
    "lower_bound_num",
    "lower_bound_den",
    "witness_id",
    "radius",
];

fn write_csv(
    rows: &[IsoperimetricSample],
    sink: &mut dyn Write,
) -> std::result::Result<(), csv::Error> {
    let mut wr = csv::Writer::from_writer(sink);
    wr.write_record(CSV_HEADER)?;
    for r in rows {
        wr.write_record([
            Exact(&r.budget).to_string(),
            r.lower_bound.numer().to_string(),
            r.lower_bound.denom().to_string(),
            r.witness_id.clone(),
            r.radius.to_string(),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

fn cmd_isoperimetric(a: &IsoArgs, out: &mut dyn Write) -> CliResult {
    if a.budgets.iter().any(|b| !b.is_positive()) {
        return Err(Error::InvalidArgument("budgets must be positive".into()).into());
    }
    if !a.scales.is_empty() && a.scales.len() != a.budgets.len() {
        return Err(Error::InvalidArgument(format!(
            "{} scales given for {} budgets",
            a.scales.len(),
            a.budgets.len()
        ))
        .into());
    }
    let p = a.common.load()?;
    let config = a.common.solver();
    let family = family_by_name(&a.family)?;

    if p.is_finite() {
        let w = finite_window(&p)?;
        let k = finite_linear_constant(&w, &config)?;
        let rows: Vec<IsoperimetricSample> = a
            .budgets
            .iter()
            .map(|l| IsoperimetricSample {
                budget: l.clone(),
                lower_bound: &k.constant * l,
                witness_id: "vertex".into(),
                radius: w.radius(),
            })
            .collect();
        emit_table(a, &rows, out)?;
        writeln!(out, "f1(l) = ({}) l", Exact(&k.constant))?;
        return Ok(EXIT_OK);
    }

    let row_members: Vec<usize> = if a.scales.is_empty() {
        vec![a.members; a.budgets.len()]
    } else {
        a.scales.clone()
    };
    let max_member = row_members.iter().copied().max().unwrap_or(1);
    let mut radius = a.radius.unwrap_or_else(|| {
        let fam = family.as_ref().map_or(1, |f| f.radius_for(&p, max_member));
        fam.max(a.exhaustive_radius)
    });
    radius = radius.max(1);
    let w = WindowComplex::build(&p, radius)?;
    let mut shared: Vec<Candidate> = Vec::new();
    if let Some(norm) = a.exhaustive_norm {
        shared = integer_cycles(&p, a.exhaustive_radius, norm, a.exhaustive_cap)?;
    }
    let family_cands = match &family {
        Some(f) => {
            let members: Vec<usize> = (1..=max_member).collect();
            f.candidates(&p, &members)?
        }
        None => Vec::new(),
    };
    let mut rows = Vec::new();
    for (budget, &limit) in a.budgets.iter().zip(&row_members) {
        let mut cands: Vec<Candidate> = family_cands
            .iter()
            .filter(|c| c.member.is_some_and(|m| m <= limit))
            .cloned()
            .collect();
        cands.extend(shared.iter().cloned());
        rows.extend(isoperimetric_lower_bounds(
            &w,
            std::slice::from_ref(budget),
            &cands,
            &config,
        )?);
    }
    emit_table(a, &rows, out)?;
    writeln!(out, "{}", verdict(&w, &rows))?;
    Ok(EXIT_OK)
}

fn emit_table(a: &IsoArgs, rows: &[IsoperimetricSample], out: &mut dyn Write) -> CliResult {
    write_csv(rows, out)?;
    if let Some(path) = &a.out {
        let mut buf = Vec::new();
        write_csv(rows, &mut buf)?;
        fs::write(path, buf)?;
    }
    Ok(EXIT_OK)
}

/// The verdict line for an infinite group's lower-bound table.
fn verdict(w: &WindowComplex, rows: &[IsoperimetricSample]) -> String {
    if w.d2().nnz() == 0 {
        return "LINEARLY BOUNDED (image is zero)".into();
    }
    let ratios: Vec<Rational> = rows.iter().map(|r| &r.lower_bound / &r.budget).collect();
    let growing = ratios.len() >= 2 && ratios.windows(2).all(|p| p[0] < p[1]);
    match (growing, w.is_injective()) {
        (true, true) => "NOT LINEARLY BOUNDED (Theorem ⇒ f₁(l₀) = ∞ for some l₀)".into(),
        (true, false) => {
            "INCONCLUSIVE (bounds grow superlinearly but ∂₂ is not injective on the window)".into()
        }
        (false, _) => "INCONCLUSIVE (lower bounds do not grow faster than l)".into(),
    }
}

fn cmd_nu(a: &NuArgs, out: &mut dyn Write) -> CliResult {
    let p = a.common.load()?;
    let config = a.common.solver();
    let family = CommutatorFamily::default();
    let nu = match a.radius {
        Some(r) => nu_witness(
            &WindowComplex::build(&p, r)?,
            a.l,
            &a.epsilon,
            &family,
            &config,
        )?,
        None => nu_auto(&p, a.l, &a.epsilon, &family, &config)?,
    };
    write_nu_report(&p, &nu, out)?;
    if let Some(path) = &a.out {
        write_file(path, &nu.nu.to_json(&p)?)?;
    }
    Ok(EXIT_OK)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_nu_report(p: &Presentation, nu: &NuWitness, out: &mut dyn Write) -> CliResult {
    writeln!(out, "nu_l witness")?;
    writeln!(out, "l = {}", nu.l)?;
    writeln!(out, "epsilon = {}", Exact(&nu.epsilon))?;
    writeln!(out, "radius = {}", nu.radius)?;
    for t in &nu.terms {
        let at = p.render(&t.translate)?;
        writeln!(
            out,
            "term {}: member = {}, n_k = {}, |alpha_k| = {}, fill(alpha_k) = {}, translate = \"{}\"",
            t.k,
            t.member,
            t.n,
            Exact(&t.alpha.l1_norm()),
            Exact(&t.fill),
            at
        )?;
    }
    writeln!(out, "|nu_l| = {}", Exact(&nu.nu_norm))?;
    writeln!(out, "|boundary(nu_l)| = {}", Exact(&nu.boundary_norm))?;
    writeln!(
        out,
        "filling_norm(boundary(nu_l)) = {}",
        Exact(&nu.filling_value)
    )?;
    writeln!(
        out,
        "{} |boundary(nu_l)| <= 1: {} <= 1/1",
        mark(nu.boundary_bound_holds),
        Exact(&nu.boundary_norm)
    )?;
    writeln!(
        out,
        "{} |nu_l| >= (l+1)/2 - 2 epsilon: {} >= {}",
        mark(nu.norm_bound_holds),
        Exact(&nu.nu_norm),
        Exact(&nu.lower_target)
    )?;
    writeln!(
        out,
        "{} filling_norm(boundary(nu_l)) = |nu_l|: {} = {}",
        mark(nu.filling_equality_holds),
        Exact(&nu.filling_value),
        Exact(&nu.nu_norm)
    )?;
    Ok(EXIT_OK)
}

fn cmd_finite_constant(a: &CommonArgs, out: &mut dyn Write) -> CliResult {
    let p = a.load()?;
    let w = finite_window(&p)?;
    let k = finite_linear_constant(&w, &a.solver())?;
    log::info!("{} vertices of the unit ball of image(∂₂)", k.vertex_count);
    writeln!(out, "{}", Exact(&k.constant))?;
    Ok(EXIT_OK)
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> CliResult {
    let p = a.common.load()?;
    let w = WindowComplex::build(&p, a.radius)?;
    let red = w.reduction();
    log::info!(
        "window r={}: {} faces, {} edges, rank {}",
        a.radius,
        w.cells(2).len(),
        w.cells(1).len(),
        red.rank()
    );
    writeln!(out, "injective: {}", red.is_injective())?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use num::Zero;

    use super::*;
    use crate::rational::int;

    #[test]
    fn verdict_needs_growth() {
        let p = crate::group::presets::torus();
        let w = WindowComplex::build(&p, 2).unwrap();
        let row = |b: i64, lb: i64| IsoperimetricSample {
            budget: int(b),
            lower_bound: int(lb),
            witness_id: "x".into(),
            radius: 2,
        };
        assert!(verdict(&w, &[row(4, 1), row(8, 4)]).starts_with("NOT LINEARLY BOUNDED"));
        assert!(verdict(&w, &[row(4, 1), row(8, 2)]).starts_with("INCONCLUSIVE"));
        assert!(verdict(&w, &[row(4, 1)]).starts_with("INCONCLUSIVE"));
        let f = crate::group::presets::free(2);
        let wf = WindowComplex::build(&f, 1).unwrap();
        assert_eq!(
            verdict(&wf, &[row(1, 0)]),
            "LINEARLY BOUNDED (image is zero)"
        );
    }

    #[test]
    fn usage_errors_exit_one() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(
            run(["isofill", "frobnicate"], &mut out, &mut err),
            EXIT_USAGE
        );
        assert_eq!(
            run(
                [
                    "isofill",
                    "check",
                    "--presentation",
                    "x.grp",
                    "--radius",
                    "0"
                ],
                &mut out,
                &mut err
            ),
            EXIT_USAGE
        );
        assert_eq!(run(["isofill", "--help"], &mut out, &mut err), EXIT_OK);
        assert!(!Rational::zero().is_positive());
    }
}
