use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cox_core::fan::Fan;
use cox_core::fanfile::parse_fan_file;
use cox_core::fixtures::fixture;
use cox_core::models::DEFAULT_SEED;
use cox_core::report::{cmd_analyze, cmd_blowup_model, cmd_dual, cmd_hilbert, cmd_scan, HilbertModel, Table};
use cox_core::Error;

#[derive(Parser)]
#[command(name = "coxtool", version, about = "Cox rings, fans and graded dimensions of toric varieties")]
struct Cli {
    /// Emit tab-separated values instead of aligned text.
    #[arg(long, global = true)]
    tsv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grading, irrelevant ideal and invariants of a fan.
    Analyze {
        /// A fan file, or `fixture:NAME`.
        fan: String,
    },
    /// The face fan of the anticanonical polytope of a Fano fan.
    Dual {
        /// A fan file, or `fixture:NAME`.
        fan: String,
    },
    /// Lists the fan files in a directory whose irrelevant locus has codimension at least 3.
    Scan { dir: PathBuf },
    /// Gradings of the blowup of P^n along a codimension-2 linear space and of Z1.
    BlowupModel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Dimension of a graded piece of a Cox ring presented as a complete intersection.
    Hilbert {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
        deg: Vec<i64>,
        /// Also compute the dimension by linear algebra on explicit relations.
        #[arg(long)]
        oracle: bool,
        /// Seed for the random coefficients of the relations.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Cox3,
    Cox4,
}

fn load_fan(arg: &str) -> Result<Fan, Error> {
    match arg.strip_prefix("fixture:") {
        Some(name) => fixture(name),
        None => parse_fan_file(Path::new(arg)),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownFixture(_) | Error::InvalidModel(_) => 2,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<Table, Error> {
    match &cli.command {
        Command::Analyze { fan } => cmd_analyze(&load_fan(fan)?),
        Command::Dual { fan } => cmd_dual(&load_fan(fan)?),
        Command::Scan { dir } => {
            let report = cmd_scan(dir)?;
            for (name, msg) in &report.failures {
                eprintln!("warning: skipping {name}: {msg}");
            }
            Ok(report.table())
        }
        Command::BlowupModel { n, d } => cmd_blowup_model(*n, *d),
        Command::Hilbert {
            model,
            n,
            d,
            deg,
            oracle,
            seed,
        } => {
            let model = match model {
                ModelArg::Cox3 => HilbertModel::Cox3,
                ModelArg::Cox4 => HilbertModel::Cox4,
            };
            cmd_hilbert(model, *n, *d, (deg[0], deg[1]), *oracle, *seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(table) => {
            print!("{}", table.render(cli.tsv));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
