mod instance;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use glaurent::{associated_vectors, ComponentKind, GradedRing, DEFAULT_SEARCH_BOUND};

use instance::{load, parse_degree, LoadError};

#[derive(Parser)]
#[command(name = "glaurent", version, about = "Multigradings of Laurent polynomial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the kernel lattice basis and the rays v_1, ..., v_r.
    Kernel {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the grading is positive.
    Positivity {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Describe the graded component of a given degree.
    Component {
        file: PathBuf,
        /// Comma-separated degree: torus coordinates, then torsion residues.
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        /// Radius of the representative search box.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        bound: u32,
        /// Drop module generators that are multiples of others.
        #[arg(long)]
        prune: bool,
        #[arg(long)]
        json: bool,
    },
}

const EXIT_PARSE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_NOT_IN_Q: u8 = 4;

fn fail(e: LoadError) -> ExitCode {
    eprintln!("glaurent: {e}");
    ExitCode::from(match e {
        LoadError::Parse(_) => EXIT_PARSE,
        LoadError::Invalid(_) => EXIT_INVALID,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => fail(e),
    }
}

fn run(command: Command) -> Result<ExitCode, LoadError> {
    match command {
        Command::Kernel { file, json } => {
            let inst = load(&file)?;
            let kd = associated_vectors(&inst.spec).map_err(LoadError::Invalid)?;
            print!("{}", render::kernel(&inst, &kd, json));
            Ok(ExitCode::SUCCESS)
        }
        Command::Positivity { file, json } => {
            let inst = load(&file)?;
            let verdict = glaurent::positivity_test(&inst.spec);
            print!("{}", render::positivity(&inst, &verdict, json));
            Ok(ExitCode::SUCCESS)
        }
        Command::Component {
            file,
            degree,
            bound,
            prune,
            json,
        } => {
            let inst = load(&file)?;
            let a = parse_degree(&inst.spec, &degree)?;
            let ring = GradedRing::new(inst.spec.clone())
                .map_err(LoadError::Invalid)?
                .with_pruning(prune);
            let desc = ring.component(&a, bound).map_err(|e| LoadError::Parse(e.to_string()))?;
            print!("{}", render::component(&inst, &desc, bound, json));
            Ok(match desc.kind {
                ComponentKind::NotInQ { .. } => ExitCode::from(EXIT_NOT_IN_Q),
                _ => ExitCode::SUCCESS,
            })
        }
    }
}
