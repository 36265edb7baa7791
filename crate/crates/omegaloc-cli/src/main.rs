use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use omegaloc_cli::commands::{self, Overrides, VerifyArgs};

#[derive(Parser)]
#[command(name = "omegaloc", version, about = "Supervisor synthesis and localization for ω-specifications")]
struct Cli {
    /// Write Graphviz files for every produced automaton into this directory
    #[arg(long, global = true, value_name = "DIR")]
    dot: Option<PathBuf>,
    /// Seed for lasso sampling
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of sampled lassos in verification
    #[arg(long, global = true)]
    lassos: Option<usize>,
    /// Only print errors
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synchronous product of automaton files
    Product {
        #[arg(long)]
        out: PathBuf,
        /// Ignore Büchi sets and produce a *-automaton
        #[arg(long)]
        star: bool,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Safety supervisor SUP* (written with the plant's lifted Büchi states)
    SynthSafety {
        #[arg(long, required = true, num_args = 1..)]
        plant: Vec<PathBuf>,
        #[arg(long, num_args = 1..)]
        spec: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Liveness supervisor SUP^ω over the output of synth-safety
    SynthOmega {
        #[arg(long)]
        plant: PathBuf,
        #[arg(long)]
        legal: PathBuf,
        #[arg(long)]
        minimal: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_name = "CSV")]
        psi_table: Option<PathBuf>,
    },
    /// Local controllers for every controllable event
    Localize {
        #[arg(long, required = true, num_args = 1..)]
        plant: Vec<PathBuf>,
        #[arg(long)]
        sup_star: PathBuf,
        #[arg(long)]
        sup_omega: PathBuf,
        #[arg(long)]
        minimal: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Check a directory of local controllers against the supervisors
    Verify {
        #[arg(long, required = true, num_args = 1..)]
        plant: Vec<PathBuf>,
        #[arg(long)]
        sup_star: PathBuf,
        #[arg(long)]
        sup_omega: PathBuf,
        #[arg(long, value_name = "DIR")]
        controllers: PathBuf,
        /// Also check each controller's property (needs the minimal spec)
        #[arg(long)]
        minimal: Option<PathBuf>,
        #[arg(long, value_name = "JSON")]
        report: Option<PathBuf>,
    },
    /// Run every stage from a pipeline config
    Pipeline {
        config: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Summary of an automaton file
    Info { file: PathBuf },
}

fn run(cli: &Cli) -> omegaloc_cli::Result<String> {
    let dot = cli.dot.as_deref();
    match &cli.command {
        Command::Product { out, star, files } => commands::product(files, out, *star, dot),
        Command::SynthSafety { plant, spec, out } => commands::synth_safety(plant, spec, out, dot),
        Command::SynthOmega { plant, legal, minimal, out, psi_table } => {
            commands::synth_omega(plant, legal, minimal, out, psi_table.as_deref(), dot)
        }
        Command::Localize { plant, sup_star, sup_omega, minimal, out_dir } => {
            commands::localize(plant, sup_star, sup_omega, minimal, out_dir, dot)
        }
        Command::Verify { plant, sup_star, sup_omega, controllers, minimal, report } => commands::verify(&VerifyArgs {
            plant,
            sup_star,
            sup_omega,
            controllers,
            minimal: minimal.as_deref(),
            report: report.as_deref(),
            lassos: cli.lassos.unwrap_or(500),
            seed: cli.seed.unwrap_or(1),
        })
        .map(|(_, s)| s),
        Command::Pipeline { config, out_dir } => commands::pipeline(
            config,
            &Overrides { out_dir: out_dir.clone(), dot_dir: cli.dot.clone(), lassos: cli.lassos, seed: cli.seed },
        ),
        Command::Info { file } => commands::info(file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "error" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(out) => {
            if !cli.quiet || matches!(cli.command, Command::Info { .. }) {
                print!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
