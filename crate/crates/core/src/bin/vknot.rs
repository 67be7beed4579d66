use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vknot::arrow::DEFAULT_CROSSING_LIMIT;
use vknot::cli::{self, CmdOutput, FuzzConfig, ReportFormat};

#[derive(Parser)]
#[command(name = "vknot", version, about = "Invariants and checkerboard colorability of virtual links")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arrow polynomial of a Gauss code
    Arrow {
        code: String,
        /// Multiply by (-A^3)^(-writhe)
        #[arg(long)]
        normalized: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_CROSSING_LIMIT)]
        max_crossings: usize,
    },
    /// Odd writhe of a virtual knot
    Oddwrithe { code: String },
    /// Colorability verdict as JSON
    Colorability { code: String },
    /// Batch report over a table file (`name<TAB>code` per line)
    Table {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Invariance fuzzing along random Reidemeister walks
    Fuzz {
        #[arg(long, default_value_t = 200)]
        walks: usize,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 6)]
        max_crossings: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = std::env::var(cli::THREADS_ENV).ok().and_then(|v| v.parse().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    let out: CmdOutput = match args.command {
        Command::Arrow { code, normalized, json, max_crossings } => {
            cli::cmd_arrow(&code, normalized, json, max_crossings)
        }
        Command::Oddwrithe { code } => cli::cmd_oddwrithe(&code),
        Command::Colorability { code } => cli::cmd_colorability(&code),
        Command::Table { input, output, format } => {
            let format = match format {
                Format::Json => ReportFormat::Json,
                Format::Csv => ReportFormat::Csv,
            };
            cli::cmd_table(&input, &output, format)
        }
        Command::Fuzz { walks, steps, max_crossings, seed } => {
            cli::cmd_fuzz(&FuzzConfig { walks, steps, max_crossings, seed })
        }
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
