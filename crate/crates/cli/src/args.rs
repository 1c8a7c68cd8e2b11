//! Command-line surface of `nsverify`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nsalg::algebra::AlgebraMode;
use nsalg::gamma::SignConvention;

#[derive(Parser, Debug)]
#[command(name = "nsverify", version, about = "Exact verification of Neveu-Schwarz algebra identities and module data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Run one or all verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// The catalogue of displayed identities.
    Identities,
    /// Reachability verdict for one module.
    ModuleSimplicity,
    /// Intertwiner search between --module and --other.
    ModuleIso,
    /// Representation check on generator pairs.
    ModuleAxiom,
    /// Minimal Omega order plus the chains at that order.
    Annihilator,
    /// Print the classification table.
    Classify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Identities => "identities",
            Command::ModuleSimplicity => "module-simplicity",
            Command::ModuleIso => "module-iso",
            Command::ModuleAxiom => "module-axiom",
            Command::Annihilator => "annihilator",
            Command::Classify => "classify",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Jacobi,
    Identities,
    ModuleAxiom,
    Grid,
    Iso,
    Annihilator,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

fn parse_algebra(s: &str) -> Result<AlgebraMode, String> {
    s.parse().map_err(|e: nsalg::Error| e.to_string())
}

fn parse_convention(s: &str) -> Result<SignConvention, String> {
    s.parse().map_err(|e: nsalg::Error| e.to_string())
}

/// Flags shared by every subcommand. Unset numeric flags fall back to
/// per-command defaults.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Index bound (Jacobi range, catalogue maxN, axiom generator range).
    #[arg(long, global = true)]
    pub range: Option<i64>,

    /// Key window as A..B.
    #[arg(long, global = true, value_name = "A..B", allow_hyphen_values = true)]
    pub window: Option<String>,

    /// Keys this close to a window edge are excluded from the interior.
    #[arg(long, global = true)]
    pub margin: Option<i64>,

    /// Largest |index| of the generators used as edges.
    #[arg(long, global = true)]
    pub gen_range: Option<i64>,

    /// Highest Omega order tried by the annihilator search.
    #[arg(long, global = true)]
    pub max_m: Option<u32>,

    /// λ as p/q, or `l` for the formal parameter.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,

    /// b as p/q, or `b` for the formal parameter.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<String>,

    /// Module descriptor such as gamma(1/3,1/4), gamma+(0,b), gamma'(0,1/2), pi(...).
    #[arg(long, global = true)]
    pub module: Option<String>,

    /// Second module for module-iso.
    #[arg(long, global = true)]
    pub other: Option<String>,

    /// khat, k or kplus; defaults to kplus for gamma+/gamma- descriptors and khat otherwise.
    #[arg(long, global = true, value_parser = parse_algebra)]
    pub algebra: Option<AlgebraMode>,

    /// Sign of the G action on even keys: corrected or paper-printed.
    #[arg(long, global = true, value_parser = parse_convention, default_value = "corrected")]
    pub convention: SignConvention,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}
