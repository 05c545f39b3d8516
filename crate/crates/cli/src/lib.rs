//! Command-line front end: reads a JSON problem descriptor, runs one of the
//! pipelines of `novikov-core` and prints a text or JSON report.
//!
//! Exit codes: 0 success, 1 malformed input or usage, 2 input that parses
//! but violates a mathematical precondition, 3 resource limit exceeded.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use novikov_core::config::DEFAULT_DIMENSION_LIMIT;
use novikov_core::Config;

pub mod commands;
pub mod report;
pub mod schema;

pub const LIMIT_ENV: &str = "NOVIKOV_LAB_LIMIT";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation error ({kind}): {0}", kind = kind_of(.0))]
    Validation(novikov_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Io { .. } | Self::Schema(_) => 1,
            Self::Validation(e) if kind_of(e) == "ResourceLimit" => 3,
            Self::Validation(_) => 2,
        }
    }
}

macro_rules! validation_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self::Validation(e.into())
            }
        }
    )*};
}

validation_from!(
    novikov_core::Error,
    novikov_core::exactalg::AlgebraError,
    novikov_core::complexes::ComplexError,
    novikov_core::equivariant::EquivariantError,
    novikov_core::novikov::NovikovError,
    novikov_core::morse::MorseError,
    novikov_core::symplectic::SymplecticError
);

/// Name of the innermost error variant, e.g. `NotAdmissible`.
pub fn kind_of(e: &novikov_core::Error) -> String {
    const WRAPPERS: [&str; 7] = [
        "Algebra",
        "Complex",
        "Equivariant",
        "Novikov",
        "Morse",
        "Symplectic",
        "Violation",
    ];
    let text = format!("{e:?}");
    let mut rest = text.as_str();
    loop {
        let end = rest.find(['(', ' ', '{']).unwrap_or(rest.len());
        let name = &rest[..end];
        if WRAPPERS.contains(&name) && rest[end..].starts_with('(') {
            rest = &rest[end + 1..];
        } else {
            return name.to_string();
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "novikov-lab", version, about = "Exact Novikov numbers and equivariant Morse counting")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on the total cochain dimension of a Borel complex.
    #[arg(long, global = true, value_name = "ENTRIES")]
    limit: Option<usize>,
    /// Rank engine over Q(s).
    #[arg(long, global = true, value_name = "NAME")]
    rank_engine: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Twisted Betti numbers of a complex with a closed 1-cochain.
    Novikov {
        input: PathBuf,
        /// Highest degree to report.
        #[arg(long)]
        degree: Option<usize>,
        /// Also report parameters where dimensions jump.
        #[arg(long)]
        jumps: bool,
    },
    /// Equivariant twisted Betti numbers under a finite group.
    Equivariant {
        input: PathBuf,
        /// Highest degree to compute.
        #[arg(long)]
        degree: Option<usize>,
        /// Recompute with a more acyclic resolution and compare.
        #[arg(long)]
        stability_check: bool,
        #[arg(long)]
        jumps: bool,
    },
    /// Check the equivariant Novikov inequalities for critical data.
    Verify {
        input: PathBuf,
        /// Truncation degree of the counting series.
        #[arg(long)]
        pmax: Option<usize>,
    },
    /// Fixed-point identities for a torus action.
    Symplectic {
        input: PathBuf,
        #[arg(long)]
        pmax: Option<usize>,
    },
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `argv` (program name first). `env_limit` is the value of
/// the limit environment variable, if set.
pub fn run<I, T>(argv: I, env_limit: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&args, env_limit) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_input(path: &PathBuf) -> Result<schema::Descriptor, CliError> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    schema::parse(&text)
}

/// Limit precedence: flag, then descriptor, then environment, then default.
fn config(args: &Args, descriptor: &schema::Descriptor, env_limit: Option<&str>) -> Result<Config, CliError> {
    let env = env_limit
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("{LIMIT_ENV} must be a non-negative integer, got {v:?}")))
        })
        .transpose()?;
    let limit = args
        .limit
        .or(descriptor.parameters.limit)
        .or(env)
        .unwrap_or(DEFAULT_DIMENSION_LIMIT);
    let mut config = Config::default().with_dimension_limit(limit);
    if let Some(name) = &args.rank_engine {
        config = config.with_engine(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown rank engine {name:?}; available: {}",
                novikov_core::exactalg::rank_engine_names().join(", ")
            ))
        })?;
    }
    Ok(config)
}

fn execute(args: &Args, env_limit: Option<&str>) -> Result<String, CliError> {
    let input = match &args.command {
        Command::Novikov { input, .. }
        | Command::Equivariant { input, .. }
        | Command::Verify { input, .. }
        | Command::Symplectic { input, .. } => input,
    };
    let descriptor = read_input(input)?;
    let config = config(args, &descriptor, env_limit)?;
    let report = match &args.command {
        Command::Novikov { degree, jumps, .. } => {
            report::Report::Novikov(commands::novikov(&descriptor, *degree, *jumps, &config)?)
        }
        Command::Equivariant {
            degree,
            stability_check,
            jumps,
            ..
        } => report::Report::Equivariant(commands::equivariant(
            &descriptor,
            *degree,
            *jumps,
            &config.with_stability_check(*stability_check),
        )?),
        Command::Verify { pmax, .. } => report::Report::Verify(commands::verify(&descriptor, *pmax, &config)?),
        Command::Symplectic { pmax, .. } => report::Report::Symplectic(commands::symplectic(&descriptor, *pmax)?),
    };
    Ok(if args.json {
        let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        report.to_text()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use novikov_core::equivariant::EquivariantError;

    #[test]
    fn innermost_kind_and_exit_code() {
        let limit: novikov_core::Error = EquivariantError::ResourceLimit { required: 10, limit: 5 }.into();
        assert_eq!(kind_of(&limit), "ResourceLimit");
        assert_eq!(CliError::Validation(limit).exit_code(), 3);
        let bad: novikov_core::Error = EquivariantError::NotAdmissible {
            element: 1,
            simplex: vec![0, 1],
        }
        .into();
        assert_eq!(kind_of(&bad), "NotAdmissible");
        assert_eq!(CliError::Validation(bad).exit_code(), 2);
        assert_eq!(CliError::Schema(String::new()).exit_code(), 1);
    }

    #[test]
    fn malformed_environment_limit_is_a_usage_error() {
        let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/circle_twisted.json");
        let out = run(["novikov-lab", "novikov", fixture], Some("lots"));
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains(LIMIT_ENV));
    }
}
