use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mlat::verify::Fault;
use mlat::Limits;
use mlat_cli::commands::{self, Kind};
use mlat_cli::{Options, Output, Status};

/// Finite monadic distributive lattices and their dual spaces.
#[derive(Parser, Debug)]
#[command(name = "mlat", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the structure-size caps (lattice size for congruence work,
    /// poset size for enumeration).
    #[arg(long, global = true, value_name = "N")]
    max_size: Option<usize>,
    /// Write the produced document to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads for enumeration and verification.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a lattice, space or map document.
    Check { file: PathBuf },
    /// Compute the dual of an m-lattice or of an mq-space.
    Dualize { file: PathBuf },
    /// Classify as simple, subdirectly irreducible, or neither.
    Classify { file: PathBuf },
    /// List the saturated sets and the congruences they determine.
    Congruences {
        file: PathBuf,
        /// Congruences for the quantifier alone (i-saturated sets).
        #[arg(long)]
        q: bool,
    },
    /// List every structure of a kind on n points.
    Enumerate {
        #[arg(value_enum)]
        kind: KindArg,
        n: usize,
    },
    /// Run the theorem-instance suite over the universe of size n.
    Verify {
        n: usize,
        #[arg(long, hide = true)]
        inject_bug: bool,
    },
    /// Check a map and compute its dual.
    Morphism { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Spaces,
    #[value(name = "m-lattices")]
    MLattices,
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Dualize { .. } => "dualize",
        Command::Classify { .. } => "classify",
        Command::Congruences { .. } => "congruences",
        Command::Enumerate { .. } => "enumerate",
        Command::Verify { .. } => "verify",
        Command::Morphism { .. } => "morphism",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = Options { out: cli.out.clone(), jobs: cli.jobs, ..Options::default() };
    if let Some(n) = cli.max_size {
        let default = match cli.command {
            Command::Enumerate { .. } | Command::Verify { .. } => Limits::universe().max_poset,
            _ => Limits::default().max_congruence_lattice,
        };
        if n > default {
            eprintln!("warning: --max-size {n} is above the default cap {default}");
        }
        opts = opts.with_max_size(n);
    }
    let result = match &cli.command {
        Command::Check { file } => commands::check(file),
        Command::Dualize { file } => commands::dualize(file, &opts),
        Command::Classify { file } => commands::classify_cmd(file, &opts),
        Command::Congruences { file, q } => {
            opts.q = *q;
            commands::congruences(file, &opts)
        }
        Command::Enumerate { kind, n } => {
            let k = match kind {
                KindArg::Spaces => Kind::Spaces,
                KindArg::MLattices => Kind::MLattices,
            };
            commands::enumerate(k, *n, &opts)
        }
        Command::Verify { n, inject_bug } => {
            if *inject_bug {
                opts.fault = Fault::OracleIgnoresDelta;
            }
            commands::verify(*n, &opts)
        }
        Command::Morphism { file } => commands::morphism(file),
    };
    let out = result.unwrap_or_else(|e| Output::failure(name(&cli.command), e.status, &e.message));
    if out.status == Status::Error && !cli.json {
        eprint!("{}", out.text);
    } else {
        print!("{}", out.render(cli.json));
    }
    ExitCode::from(out.status.code() as u8)
}
