mod commands;
mod doc;
mod text;

use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::doc::BoundsDoc;

/// Decide flexibility of affine horospherical varieties from their weight monoids.
#[derive(Parser, Debug)]
#[command(name = "horoflex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Override a bound, e.g. `--bounds degree=40,root_height=12`.
    /// Keys: degree, module_degree, search_degree, root_height.
    #[arg(long, global = true, value_name = "KEY=VALUE", value_delimiter = ',')]
    bounds: Vec<String>,
    /// Cross-check the analysis against the brute-force oracle.
    #[arg(long, global = true)]
    oracle: bool,
    /// Exit with code 3 when the verdict is UNDECIDED.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Print only the verdict (analyze, flexibility, verify).
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report: cones, orbits, saturation of dual facets, γ and the verdict.
    Analyze { input: Option<PathBuf> },
    /// The verdict with γ and its certificate.
    Flexibility { input: Option<PathBuf> },
    /// G-orbits of X as faces of σ.
    Orbits { input: Option<PathBuf> },
    /// Holes of the semigroup and generators of its saturation as a module.
    Holes { input: Option<PathBuf> },
    /// Demazure roots of the rays of σ by height.
    Roots {
        input: Option<PathBuf>,
        /// Only this ray (index into the rays of σ).
        #[arg(long)]
        ray: Option<usize>,
        /// Largest ℓ1 height listed.
        #[arg(long, default_value_t = 4)]
        height: u64,
    },
    /// Homogeneous locally nilpotent derivations, one per codimension-one ray.
    Lnd {
        input: Option<PathBuf>,
        #[arg(long)]
        ray: Option<usize>,
    },
    /// Replay every certificate of a report produced by `analyze`.
    Verify { report: Option<PathBuf> },
}

/// Malformed input: exit code 2.
#[derive(Debug)]
pub struct BadInput(pub String);

impl fmt::Display for BadInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BadInput {}

pub struct Options {
    bounds: BoundsDoc,
    oracle: bool,
    format: Format,
    quiet: bool,
}

pub struct Outcome {
    pub output: String,
    pub undecided: bool,
}

fn read_source(path: &Option<PathBuf>) -> anyhow::Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| BadInput(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| BadInput(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn parse_bounds(raw: &[String]) -> Result<BoundsDoc, BadInput> {
    let mut out = BoundsDoc::default();
    for item in raw {
        let (k, v) = item.split_once('=').ok_or_else(|| BadInput(format!("expected KEY=VALUE, got {item:?}")))?;
        let v: u64 = v.trim().parse().map_err(|_| BadInput(format!("bound {k} must be a nonnegative integer")))?;
        out.set(k.trim(), v).map_err(BadInput)?;
    }
    Ok(out)
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let opts = Options { bounds: parse_bounds(&cli.bounds)?, oracle: cli.oracle, format: cli.format, quiet: cli.quiet };
    if opts.quiet
        && !matches!(cli.command, Command::Analyze { .. } | Command::Flexibility { .. } | Command::Verify { .. })
    {
        return Err(BadInput("--quiet applies to analyze, flexibility and verify".into()).into());
    }
    match &cli.command {
        Command::Analyze { input } => commands::analyze(&read_source(input)?, &opts),
        Command::Flexibility { input } => commands::flexibility(&read_source(input)?, &opts),
        Command::Orbits { input } => commands::orbits(&read_source(input)?, &opts),
        Command::Holes { input } => commands::holes(&read_source(input)?, &opts),
        Command::Roots { input, ray, height } => commands::roots(&read_source(input)?, &opts, *ray, *height),
        Command::Lnd { input, ray } => commands::lnd(&read_source(input)?, &opts, *ray),
        Command::Verify { report } => commands::verify(&read_source(report)?, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strict = cli.strict;
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if strict && outcome.undecided {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("horoflex: {e}");
            if e.downcast_ref::<BadInput>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
