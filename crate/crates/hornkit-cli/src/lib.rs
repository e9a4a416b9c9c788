//! Command-line front end for `hornkit`: JSON system descriptions in, JSON
//! reports and SVG figures out.

pub mod render;
pub mod report;
pub mod wire;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hornkit::series::default_window;
use hornkit::{build_polygon, check_nonconfluent, HornError, HornSystem};
use serde::Serialize;

use crate::wire::{terms_to_poly, SolutionFile, SystemSpec};

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliError {
    #[serde(skip)]
    pub code: i32,
    pub error: &'static str,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PARSE, error: "parse", message: message.into() }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PRECONDITION, error: "precondition", message: message.into() }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError { code: EXIT_PARSE, error: "io", message: format!("{}: {}", path.display(), e) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("error serializes")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.error, self.message)
    }
}

impl std::error::Error for CliError {}

impl From<HornError> for CliError {
    fn from(e: HornError) -> Self {
        CliError::precondition(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "hornkit", version, about = "Exact analysis of bivariate Horn hypergeometric systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Exploration window radius; overrides HORNKIT_WINDOW and the default.
    #[arg(long, global = true)]
    pub window: Option<i64>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Accept systems whose rows do not sum to zero.
    #[arg(long, global = true)]
    pub allow_confluent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Polygon,
    Supports,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report: rank, counts, polygon, resonance, solutions.
    Analyze { input: PathBuf },
    /// Independent Puiseux polynomial solutions.
    Solve { input: PathBuf },
    /// Polygon class and Minkowski witness.
    Classify { input: PathBuf },
    /// Holonomic rank and its decomposition counts.
    Rank { input: PathBuf },
    /// Truncated series of one branch of a row pair.
    Series {
        input: PathBuf,
        /// Row pair as `i,j` (0-based); defaults to the first nondegenerate pair.
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(usize, usize)>,
        #[arg(long, default_value_t = 0)]
        branch: usize,
    },
    /// Check candidate solutions read from a JSON file.
    Verify {
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Search for parameters with a polynomial solution basis.
    SuggestParams {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: i64,
        #[arg(long, default_value_t = 400)]
        candidates: usize,
    },
    /// Render an SVG figure.
    Render {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Figure::Polygon)]
        what: Figure,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected i,j, got {:?}", s))?;
    let a = a.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let b = b.trim().parse::<usize>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

pub const SERIES_WINDOW: i64 = 8;

fn env_window() -> Result<Option<i64>, CliError> {
    match std::env::var("HORNKIT_WINDOW") {
        Ok(v) => v.trim().parse::<i64>().map(Some).map_err(|_| CliError::parse(format!("HORNKIT_WINDOW={:?}", v))),
        Err(_) => Ok(None),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

impl Cli {
    fn input(&self) -> &Path {
        match &self.command {
            Command::Analyze { input }
            | Command::Solve { input }
            | Command::Classify { input }
            | Command::Rank { input }
            | Command::Series { input, .. }
            | Command::Verify { input, .. }
            | Command::SuggestParams { input, .. }
            | Command::Render { input, .. } => input,
        }
    }

    fn needs_nonconfluent(&self) -> bool {
        matches!(
            self.command,
            Command::Analyze { .. } | Command::Classify { .. } | Command::Rank { .. } | Command::SuggestParams { .. }
        )
    }

    fn window_or(&self, fallback: impl FnOnce() -> i64) -> Result<i64, CliError> {
        let w = match self.window {
            Some(w) => w,
            None => env_window()?.unwrap_or_else(fallback),
        };
        if w < 0 {
            return Err(CliError::parse(format!("negative window {}", w)));
        }
        Ok(w)
    }
}

/// Run a parsed command and return its output text.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let spec = SystemSpec::load(cli.input())?;
    let s: HornSystem = spec.to_system()?;
    if cli.needs_nonconfluent() && !cli.allow_confluent && !check_nonconfluent(&s) {
        return Err(CliError::precondition("rows do not sum to zero (use --allow-confluent)"));
    }
    let name = spec.name.clone();
    let title = name.clone().unwrap_or_else(|| "horn system".to_string());
    Ok(match &cli.command {
        Command::Analyze { .. } => json(&report::analyze(&s, name, cli.window_or(|| default_window(&s))?)?),
        Command::Solve { .. } => json(&report::solve(&s, name, cli.window_or(|| default_window(&s))?)?),
        Command::Classify { .. } => json(&report::classify_report(&s)?),
        Command::Rank { .. } => json(&report::rank_report(&s)?),
        Command::Series { pair, branch, .. } => {
            json(&report::series(&s, *pair, *branch, cli.window_or(|| SERIES_WINDOW)?)?)
        }
        Command::Verify { solution, .. } => {
            let file = SolutionFile::load(solution)?;
            let mut verdicts = Vec::new();
            for sol in file.solutions() {
                verdicts.push(report::verify(&s, &terms_to_poly(&sol.terms)?, sol.label.clone())?);
            }
            match &file {
                SolutionFile::One(_) => json(&verdicts[0]),
                SolutionFile::Many { .. } => json(&verdicts),
            }
        }
        Command::SuggestParams { bound, candidates, .. } => json(&report::suggest(&s, *bound, *candidates)?),
        Command::Render { what: Figure::Polygon, .. } => render::polygon_svg(&build_polygon(&s)?, &title),
        Command::Render { what: Figure::Supports, .. } => {
            let w = cli.window_or(|| default_window(&s))?;
            let fam = hornkit::collect_polynomials(&s, w)?;
            let persistent: std::collections::BTreeSet<_> = fam.persistent.iter().cloned().collect();
            let items: Vec<_> = fam.basis.iter().map(|f| (f.clone(), persistent.contains(f))).collect();
            render::supports_svg(&items, &title)
        }
    })
}

/// Parse arguments, run, write output; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                let _ = e.print();
                return 0;
            }
            let err = CliError::parse(e.to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return EXIT_PARSE;
        }
    };
    let result = execute(&cli).and_then(|text| match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.code
        }
    }
}
