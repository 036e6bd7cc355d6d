//! `flag-orbits`: finite-type checks, catalog listing, orbit counting and
//! finite-field cross-checks for joint flag dimension vectors.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{exit_code_for, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "flag-orbits", version, about = "Orbits of joint and double flag varieties")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap on summands scanned per vector.
    #[arg(long, global = true, default_value_t = flag_orbits::finiteness::DEFAULT_MAX_SUMMANDS as u64)]
    max_summands: u64,

    /// Cap on finite-field configurations listed.
    #[arg(long, global = true, default_value_t = flag_orbits::oracle::DEFAULT_MAX_POINTS)]
    max_points: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Tits form Q(d).
    Tits(VectorArg),
    /// Decide finite type.
    Finite {
        #[command(flatten)]
        vector: VectorArg,
        #[arg(long, value_enum, default_value_t = Engine::Both)]
        engine: Engine,
    },
    /// List finite-type vectors with Q = 1 up to a weight.
    Catalog {
        #[arg(long)]
        max_weight: u64,
    },
    /// Orbits via decompositions into rigid pieces.
    #[command(subcommand)]
    Orbits(OrbitsCommand),
    /// Brute-force orbits over a small prime field.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Relaxed minimum of the Tits form per case.
    #[command(subcommand)]
    Relax(RelaxCommand),
    /// Run the reproducibility checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct VectorArg {
    /// `a|b|c` with comma-separated parts, a JSON object, or a file holding either.
    pub vector: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Exhaustive,
    Pattern,
    Both,
}

#[derive(Subcommand)]
enum OrbitsCommand {
    Count(VectorArg),
    List(VectorArg),
}

#[derive(Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub vector: VectorArg,
    #[arg(long, default_value_t = 2)]
    pub field: u32,
    #[arg(long, default_value = "jl")]
    pub mode: String,
}

#[derive(Subcommand)]
enum OracleCommand {
    Count(OracleArgs),
    Reps(OracleArgs),
}

#[derive(Subcommand)]
enum RelaxCommand {
    /// Lattice points with 0 < Q <= 1, for one case or all.
    Solve {
        case: Option<String>,
        #[arg(long, default_value_t = 50)]
        x_max: i64,
        #[arg(long, default_value_t = 50)]
        y_max: i64,
    },
    /// Evaluate 2Q of the relaxed minimiser.
    Eval { case: String, x: i64, y: i64 },
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Skip the oracle re-runs over F_3.
    #[arg(long)]
    pub quick: bool,
    /// Weight bound of the engine-equivalence universe.
    #[arg(long, default_value_t = 6)]
    pub engine_weight: u32,
    /// Weight bound of the catalog-equivalence universe.
    #[arg(long, default_value_t = 12)]
    pub catalog_weight: u32,
}

fn thread_cap() -> Result<Option<usize>, String> {
    match std::env::var("FLAG_ORBITS_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("FLAG_ORBITS_THREADS must be a positive integer, got {v:?}")),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // every computation here is single-threaded, so any cap is honoured
    if let Err(msg) = thread_cap() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    let budgets = commands::Budgets {
        max_summands: cli.max_summands as u128,
        max_points: cli.max_points,
    };
    let outcome = match cli.command {
        Command::Tits(v) => commands::tits(&v),
        Command::Finite { vector, engine } => commands::finite(&vector, engine, budgets),
        Command::Catalog { max_weight } => commands::catalog(max_weight),
        Command::Orbits(OrbitsCommand::Count(v)) => commands::orbits(&v, false, budgets),
        Command::Orbits(OrbitsCommand::List(v)) => commands::orbits(&v, true, budgets),
        Command::Oracle(OracleCommand::Count(a)) => commands::oracle(&a, false, budgets),
        Command::Oracle(OracleCommand::Reps(a)) => commands::oracle(&a, true, budgets),
        Command::Relax(RelaxCommand::Solve { case, x_max, y_max }) => {
            commands::relax_solve(case.as_deref(), x_max, y_max)
        }
        Command::Relax(RelaxCommand::Eval { case, x, y }) => commands::relax_eval(&case, x, y),
        Command::Verify(args) => commands::verify(&args),
    };
    match outcome {
        Ok(o) => o.emit(cli.json),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
