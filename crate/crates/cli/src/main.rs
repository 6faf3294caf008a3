//! `pairkit`: command-line front end for pairs of finite groups.

mod commands;
mod input;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pairkit::covering::SearchCaps;
use pairkit::GroupError;
use serde_json::{json, Value};

/// Exit status for a run whose mathematical check failed.
pub const EXIT_FAIL: u8 = 1;
/// Exit status for malformed input.
pub const EXIT_INPUT: u8 = 2;
/// Exit status when a cap was hit or a result is partial.
pub const EXIT_PARTIAL: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Input { path: Option<String>, message: String },
    Cap(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input { .. } => EXIT_INPUT,
            CliError::Cap(_) => EXIT_PARTIAL,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Input { path, message } => json!({
                "error": {"kind": "input", "path": path, "message": message}
            }),
            CliError::Cap(message) => json!({"error": {"kind": "cap", "message": message}}),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input { path: Some(p), message } => write!(f, "input error at {p}: {message}"),
            CliError::Input { path: None, message } => write!(f, "input error: {message}"),
            CliError::Cap(message) => write!(f, "cap reached: {message}"),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::EnumerationOverflow { .. } | GroupError::TooLarge { .. } | GroupError::CapExceeded { .. } => {
                CliError::Cap(e.to_string())
            }
            other => CliError::Input {
                path: None,
                message: other.to_string(),
            },
        }
    }
}

/// Result of a command: a JSON document, its text rendering and an exit status.
pub struct Outcome {
    pub value: Value,
    pub text: String,
    pub code: u8,
}

#[derive(Parser)]
#[command(name = "pairkit", version, about = "Schur multipliers, covering pairs and isoclinism for pairs of finite groups")]
struct Cli {
    /// Print canonical JSON (sorted keys) instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct PairArgs {
    /// Catalog name of G.
    #[arg(long)]
    pub group: String,
    /// Normal subgroup: catalog name, NAME@k for the k-th match, or #p for a position.
    #[arg(long)]
    pub normal: String,
}

#[derive(Args, Clone)]
pub struct CapArgs {
    /// Homomorphisms examined per candidate group.
    #[arg(long, default_value_t = SearchCaps::default().max_homs)]
    pub max_homs: usize,
    /// Actions tried per homomorphism.
    #[arg(long, default_value_t = SearchCaps::default().max_actions)]
    pub max_actions: usize,
    /// Coset limit for enumerations.
    #[arg(long, default_value_t = SearchCaps::default().max_cosets)]
    pub max_cosets: usize,
    /// Do not construct a cover when the catalog has none.
    #[arg(long)]
    pub no_construct: bool,
}

impl CapArgs {
    pub fn caps(&self) -> SearchCaps {
        SearchCaps {
            max_homs: self.max_homs,
            max_actions: self.max_actions,
            construct_fallback: !self.no_construct,
            max_cosets: self.max_cosets,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog, or describe a group and its normal subgroups.
    Describe {
        #[arg(long)]
        group: Option<String>,
    },
    /// Schur multiplier M(G,N) of a pair.
    Multiplier {
        #[command(flatten)]
        pair: PairArgs,
        /// Also compute the homology multiplier of G (requires N = G).
        #[arg(long)]
        homology: bool,
        #[arg(long, default_value_t = pairkit::fp::DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Check the relative central extension axioms for an extension read from JSON.
    CheckRce {
        /// JSON file, or - for stdin.
        file: PathBuf,
    },
    /// Check whether an extension read from JSON is a covering pair.
    CheckCover {
        file: PathBuf,
        #[arg(long, default_value_t = pairkit::fp::DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Find covering pairs of a pair, one per equivalence class.
    FindCovers {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Run a check over catalog instances (use `checks` to list them).
    Verify {
        /// Check id or name.
        check: String,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        /// Seed for randomly generated instances.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random instances, where the check draws them.
        #[arg(long)]
        instances: Option<usize>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// List the available checks.
    Checks,
    /// Todd-Coxeter coset enumeration.
    Tc {
        /// Presentation such as "<a,b | a^2, b^3, (a b)^2>".
        #[arg(long, conflicts_with = "file")]
        presentation: Option<String>,
        /// File holding the presentation.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Subgroup generator word; repeatable.
        #[arg(long)]
        subgroup: Vec<String>,
        #[arg(long, default_value_t = pairkit::fp::DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Decide whether two pairs are isoclinic.
    Isoclinic {
        /// First pair as GROUP:NORMAL.
        a: String,
        /// Second pair as GROUP:NORMAL.
        b: String,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let catalog = pairkit::catalog::Catalog::from_env().map_err(|e| CliError::Input {
        path: None,
        message: format!("catalog: {e}"),
    })?;
    match &cli.command {
        Command::Describe { group } => commands::describe(&catalog, group.as_deref()),
        Command::Multiplier {
            pair,
            homology,
            max_cosets,
        } => commands::multiplier(&catalog, pair, *homology, *max_cosets),
        Command::CheckRce { file } => commands::check_rce(&catalog, file),
        Command::CheckCover { file, max_cosets } => commands::check_cover(&catalog, file, *max_cosets),
        Command::FindCovers { pair, caps } => commands::find_covers(&catalog, pair, &caps.caps()),
        Command::Verify {
            check,
            max_order,
            seed,
            instances,
            caps,
        } => commands::verify(&catalog, check, *max_order, *seed, *instances, &caps.caps()),
        Command::Checks => Ok(commands::checks()),
        Command::Tc {
            presentation,
            file,
            subgroup,
            max_cosets,
        } => commands::tc(presentation.as_deref(), file.as_deref(), subgroup, *max_cosets),
        Command::Isoclinic { a, b } => commands::isoclinic(&catalog, a, b),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.value).expect("JSON value serializes"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("JSON value serializes"));
            }
            eprintln!("pairkit: {e}");
            ExitCode::from(e.code())
        }
    }
}
