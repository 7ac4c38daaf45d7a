use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nndtoric_cli::{run, Command, Format, RunConfig};

#[derive(Parser)]
#[command(
    name = "nndtoric",
    version,
    about = "Groebner fans, tropical varieties and toric resolutions of polynomial ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Groebner fan inside the first orthant
    Fan(Common),
    /// Tropical variety as a subfan of the Groebner fan
    Tropical(Common),
    /// Newton non-degeneracy
    Check(Common),
    /// Regular refinement of the Groebner fan
    Refine(Common),
    /// Toric resolution with per-chart certificates
    Resolve(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Json,
}

#[derive(Args)]
struct Common {
    /// Ideal file: a `ring` line followed by one generator per line
    file: PathBuf,
    /// Write the report here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "human")]
    format: FormatArg,
    /// Maximal cones visited by the fan traversal
    #[arg(long)]
    budget_cones: Option<usize>,
    /// Reductions allowed per Groebner basis computation
    #[arg(long)]
    budget_steps: Option<u64>,
    /// Seed for sampled spot checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sampled spot checks
    #[arg(long, default_value_t = 8)]
    samples: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Sub::Fan(a) => (Command::Fan, a),
        Sub::Tropical(a) => (Command::Tropical, a),
        Sub::Check(a) => (Command::Check, a),
        Sub::Refine(a) => (Command::Refine, a),
        Sub::Resolve(a) => (Command::Resolve, a),
    };
    let config = RunConfig {
        budget_cones: args.budget_cones,
        budget_steps: args.budget_steps,
        format: match args.format {
            FormatArg::Human => Format::Human,
            FormatArg::Json => Format::Json,
        },
        out: args.out,
        seed: args.seed,
        samples: args.samples,
    };
    ExitCode::from(run(command, &config, &args.file) as u8)
}
