//! Command-line parsing and dispatch.
//!
//! Exit codes: 0 on success, 1 when a mathematical check fails (the report carries a
//! witness), 2 on unusable input.

mod checks;
mod convert;
mod fixture;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use koszul_core::{Error, Field};

use crate::doc::{self, Document};
pub use output::Output;

pub const DEFAULT_BUDGET: u128 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EtaKind {
    Pointed,
    Free,
}

#[derive(Debug, Parser)]
#[command(name = "koszul", version, about = "Exact bar/cobar, curved coalgebra and dg nerve computations")]
pub struct Cli {
    /// Field for inputs that carry none (Q or Fp).
    #[arg(long, global = true, env = "KOSZUL_FIELD", value_parser = parse_field)]
    pub field: Option<Field>,
    /// Word-length bound W (η-count for `uncurve`, bar bound for `counit-check`).
    #[arg(long = "word-bound", short = 'W', global = true)]
    pub word_bound: Option<usize>,
    /// Degree window `a:b`.
    #[arg(long = "degree-window", global = true, allow_hyphen_values = true, value_parser = parse_window)]
    pub degree_window: Option<(i32, i32)>,
    /// Largest candidate set an enumeration may scan.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of any document.
    Validate { file: PathBuf },
    /// Bar coalgebra of a dg category.
    Bar {
        file: PathBuf,
        #[arg(long)]
        nonreduced: bool,
    },
    /// Cobar category of a pointed curved coalgebra.
    Cobar { file: PathBuf },
    /// Uncurving of the dual algebra of a coalgebra, as a truncated dg category.
    Uncurve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = EtaKind::Pointed)]
        eta: EtaKind,
    },
    /// Twisted chain coalgebra of a simplicial set.
    TwistedChains { file: PathBuf },
    /// Normalized chains of a simplicial set.
    Chains { file: PathBuf },
    /// Lurie and MC descriptions of nerve simplices agree on every candidate.
    NerveCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Simplices of the dg nerve at one level.
    NerveEnum {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Coalgebra maps from the twisted chains of the standard simplex.
    #[command(name = "F-level")]
    FLevel {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    /// Left adjoint of the dg nerve applied to a simplicial set.
    #[command(name = "L")]
    L {
        file: PathBuf,
        /// Print the homology table in the degree window instead of the category.
        #[arg(long)]
        homology: bool,
    },
    /// MC equation for an MC document.
    McCheck { file: PathBuf },
    /// All MC elements between a coalgebra and a dg category.
    McEnum { coalgebra: PathBuf, category: PathBuf },
    /// MC elements, cobar functors and bar maps in bijection.
    AdjunctionRoundtrip { coalgebra: PathBuf, category: PathBuf },
    /// Counit of the bar-cobar adjunction on homology.
    CounitCheck { file: PathBuf },
    /// Twisted module of a comodule, or twisted comodule of a module.
    Twist { mc: PathBuf, file: PathBuf },
    /// Adjunction certificate between twisted modules and comodules.
    FgAdjoint { mc: PathBuf, comodule: PathBuf, module: PathBuf },
    /// The acceptance suite.
    Acceptance {
        /// Comma-separated criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u64>>,
        /// Report the determinism criterion as skipped instead of re-running.
        #[arg(long)]
        skip_determinism: bool,
    },
    /// Print a built-in fixture document.
    Fixture { name: String },
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

fn parse_window(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once(':').ok_or("expected a:b")?;
    let a: i32 = a.trim().parse().map_err(|_| format!("bad lower bound {a}"))?;
    let b: i32 = b.trim().parse().map_err(|_| format!("bad upper bound {b}"))?;
    if a > b {
        return Err(format!("empty window {a}:{b}"));
    }
    Ok((a, b))
}

/// Unusable input; exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {source}")]
    Parse { path: String, source: doc::ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(Error),
}

impl From<Error> for InputError {
    fn from(e: Error) -> InputError {
        InputError::Core(e)
    }
}

pub(crate) struct Ctx<'a> {
    pub cli: &'a Cli,
    /// This program, for commands that re-run themselves.
    pub exe: Option<PathBuf>,
}

impl Ctx<'_> {
    pub fn load(&self, path: &PathBuf) -> Result<Document, InputError> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| InputError::Io { path: name.clone(), message: e.to_string() })?;
        doc::parse(&text, self.cli.field).map_err(|source| InputError::Parse { path: name, source })
    }

    pub fn field(&self) -> Field {
        self.cli.field.unwrap_or(Field::Rational)
    }

    pub fn bound(&self, default: usize) -> usize {
        self.cli.word_bound.unwrap_or(default)
    }

    pub fn window(&self, default: (i32, i32)) -> (i32, i32) {
        self.cli.degree_window.unwrap_or(default)
    }
}

/// Mathematical failures exit with 1; everything else a core call rejects is input.
pub(crate) fn core_error_code(e: &Error) -> i32 {
    match e {
        Error::NotAComplex { .. }
        | Error::NotCurvedMap { .. }
        | Error::ComparisonFailure { .. }
        | Error::NotSimplicial { .. }
        | Error::IllFormedDifferential(_) => 1,
        _ => 2,
    }
}

fn dispatch(ctx: &Ctx) -> Result<Output, InputError> {
    use Command::*;
    match &ctx.cli.command {
        Validate { file } => checks::validate(ctx, file),
        Bar { file, nonreduced } => convert::bar(ctx, file, *nonreduced),
        Cobar { file } => convert::cobar(ctx, file),
        Uncurve { file, eta } => convert::uncurve(ctx, file, *eta),
        TwistedChains { file } => convert::twisted_chains(ctx, file),
        Chains { file } => checks::chains(ctx, file),
        NerveCheck { file, level } => checks::nerve_check(ctx, file, *level),
        NerveEnum { file, level } => checks::nerve_enum(ctx, file, *level),
        FLevel { file, level } => checks::f_level(ctx, file, *level),
        L { file, homology } => convert::l(ctx, file, *homology),
        McCheck { file } => checks::mc_check(ctx, file),
        McEnum { coalgebra, category } => checks::mc_enum(ctx, coalgebra, category),
        AdjunctionRoundtrip { coalgebra, category } => checks::adjunction_roundtrip(ctx, coalgebra, category),
        CounitCheck { file } => checks::counit_check(ctx, file),
        Twist { mc, file } => convert::twist(ctx, mc, file),
        FgAdjoint { mc, comodule, module } => checks::fg_adjoint(ctx, mc, comodule, module),
        Acceptance { only, skip_determinism } => checks::acceptance(ctx, only.as_deref(), *skip_determinism),
        Fixture { name } => fixture::fixture(ctx, name),
    }
}

/// Parses `args` (program name first) and runs the command in-process. The acceptance
/// determinism criterion is skipped, since it needs a second process.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_exe(args, None)
}

/// As [`run`], with the path of the `koszul` executable for re-invocation.
pub fn run_with_exe<I, T>(args: I, exe: Option<PathBuf>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Output::success(text) } else { Output::error(2, text) };
        }
    };
    let ctx = Ctx { cli: &cli, exe };
    match dispatch(&ctx) {
        Ok(out) => out,
        Err(InputError::Core(e)) => Output::error(core_error_code(&e), format!("error: {e}\n")),
        Err(e) => Output::error(2, format!("error: {e}\n")),
    }
}
