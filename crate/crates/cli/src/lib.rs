//! The `bergman` command-line tool: closed-form content and torsion, oracle
//! verification, epicycloid sweeps and data export for plotting.
//!
//! Exit status: 0 success or PASS, 1 invalid input, 2 a verification check
//! failed, 3 a numerical routine failed.

pub mod commands;
pub mod domain;
pub mod json;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use domain::DomainSpec;
use json::{csv_escape, Json};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Numerical(_) => "numerical",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<bergman_core::Error> for CliError {
    fn from(e: bergman_core::Error) -> Self {
        CliError::Numerical(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "bergman", version, about = "Bergman analytic content and torsional rigidity of planar domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form content, best approximation and torsion for a domain.
    Compute(ComputeArgs),
    /// Compare closed forms against the numerical oracles.
    Verify(VerifyArgs),
    /// Table of (a, λ, λ²) for the epicycloids z + a zⁿ, 0 ≤ a ≤ 1/n.
    SweepEpicycloid(SweepArgs),
    /// Boundary curves or best-approximation samples for plotting.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct DomainArgs {
    /// Domain document: a file path or inline JSON.
    #[arg(long)]
    pub domain: Option<String>,
    /// Polynomial map coefficients a₁,…,aₙ (comma list or JSON array).
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Annulus r,R.
    #[arg(long)]
    pub annulus: Option<String>,
    /// Confocal-ellipse domain r,R (Joukowski image of r < |ζ| < R).
    #[arg(long)]
    pub confocal: Option<String>,
    /// Level set C·Re(zⁿ) − |z|² + 1 > 0, given as n,C.
    #[arg(long)]
    pub monomial: Option<String>,
}

impl DomainArgs {
    pub fn spec(&self) -> Result<DomainSpec, CliError> {
        if let Some(d) = &self.domain {
            DomainSpec::from_arg(d)
        } else if let Some(c) = &self.coeffs {
            domain::coeffs_flag(c)
        } else if let Some(a) = &self.annulus {
            domain::annulus_flag(a)
        } else if let Some(c) = &self.confocal {
            domain::confocal_flag(c)
        } else if let Some(m) = &self.monomial {
            domain::monomial_flag(m)
        } else {
            Err(CliError::Validation("no domain given".into()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Tolerances {
    /// Relative tolerance for closed-form identities.
    #[arg(long = "tol-closed", default_value_t = 1e-12)]
    pub closed: f64,
    /// Relative tolerance for Gram-oracle agreement.
    #[arg(long = "tol-oracle", default_value_t = 1e-6)]
    pub oracle: f64,
    /// Relative tolerance for quadrature-vs-Gram agreement.
    #[arg(long = "tol-quad", default_value_t = 1e-8)]
    pub quad: f64,
    /// Relative tolerance for the finite-difference torsion check.
    #[arg(long = "tol-fd", default_value_t = 2e-2)]
    pub fd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            closed: 1e-12,
            oracle: 1e-6,
            quad: 1e-8,
            fd: 2e-2,
        }
    }
}

impl Tolerances {
    pub fn to_json(&self) -> Json {
        Json::obj()
            .num("closed", self.closed)
            .num("oracle", self.oracle)
            .num("quad", self.quad)
            .num("fd", self.fd)
            .build()
    }
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub tol: Tolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    PulledBack,
    Monomial,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub tol: Tolerances,
    /// Gram basis size (polymap), or Laurent degree span (annulus, confocal).
    #[arg(long, default_value_t = 24)]
    pub basis_size: usize,
    /// Basis for the disk oracles.
    #[arg(long, value_enum, default_value_t = BasisArg::PulledBack)]
    pub basis: BasisArg,
    /// Finite-difference grid spacing; defaults to diam(Ω)/400.
    #[arg(long)]
    pub fd_h: Option<f64>,
    /// Skip the finite-difference torsion solve.
    #[arg(long)]
    pub skip_fd: bool,
    #[arg(long, default_value_t = 64)]
    pub radial_nodes: usize,
    #[arg(long, default_value_t = 256)]
    pub angular_nodes: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportWhat {
    Boundary,
    Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridKind {
    /// Uniform polar grid in the parameter domain, pushed forward.
    Polar,
    /// Uniform Cartesian grid in Ω, pulled back by Newton inversion.
    Cartesian,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum)]
    pub what: ExportWhat,
    /// Boundary samples per curve, or grid points per axis for fields.
    #[arg(long, default_value_t = 360)]
    pub resolution: usize,
    #[arg(long, value_enum, default_value_t = GridKind::Polar)]
    pub grid: GridKind,
}

/// A finished command: a JSON document, optionally with a table used for
/// CSV output, and whether every check passed.
pub struct Report {
    pub doc: Json,
    pub table: Option<Table>,
    pub passed: bool,
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Json>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.iter().map(|c| csv_escape(c)).collect::<Vec<_>>().join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Json::csv_cell).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Json {
        Json::obj()
            .field("columns", Json::Arr(self.columns.iter().map(|c| Json::str(c.as_str())).collect()))
            .field("rows", Json::Arr(self.rows.iter().map(|r| Json::Arr(r.clone())).collect()))
            .build()
    }
}

fn render(report: &Report, format: Format) -> String {
    match (format, &report.table) {
        (Format::Json, _) => report.doc.render(),
        (Format::Csv, Some(table)) => table.to_csv(),
        (Format::Csv, None) => {
            let mut out = String::from("key,value\n");
            for (k, v) in report.doc.flatten() {
                out.push_str(&format!("{},{v}\n", csv_escape(&k)));
            }
            out
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .or_else(|e| match e.kind() {
                    // reader went away, e.g. piped into `head`
                    std::io::ErrorKind::BrokenPipe => Ok(()),
                    _ => Err(e),
                })
                .map_err(|e| CliError::Numerical(format!("cannot write output: {e}")))
        }
    }
}

fn error_doc(err: &CliError) -> String {
    Json::obj()
        .field(
            "error",
            Json::obj()
                .str("code", err.code())
                .int("exit_status", err.exit_code() as i64)
                .str("message", err.message())
                .build(),
        )
        .build()
        .render()
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (result, output) = match &cli.command {
        Command::Compute(a) => (commands::compute(a), &a.output),
        Command::Verify(a) => (commands::verify(a), &a.output),
        Command::SweepEpicycloid(a) => (commands::sweep_epicycloid(a), &a.output),
        Command::Export(a) => (commands::export(a), &a.output),
    };
    match result.and_then(|report| emit(&render(&report, output.format), &output.out).map(|_| report)) {
        Ok(report) if report.passed => 0,
        Ok(_) => 2,
        Err(err) => {
            eprint!("{}", error_doc(&err));
            err.exit_code()
        }
    }
}
