//! Command-line front end: print root-system data or run verification
//! sweeps. Exit codes: 0 on success, 1 when any certificate fails, 2 on
//! usage errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use coxcert::cert::CheckKind;
use coxcert::rootsystem::{RootSystem, TypeLabel};
use coxcert::sweep::{self, OutputFormat, SweepConfig};

#[derive(Parser)]
#[command(name = "coxcert", version, about = "Exact root-system construction and verification sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the root-system document for one type label as JSON
    Roots {
        /// Type label, e.g. A3, B5, E8, F4, G2, H4, I2(5), A1xA1
        #[arg(value_parser = parse_label)]
        label: TypeLabel,
    },
    /// Run verification sweeps and emit one certificate per instance
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated type labels (default: every catalog type except E8)
    #[arg(long, value_delimiter = ',', value_parser = parse_label)]
    types: Option<Vec<TypeLabel>>,
    /// Comma-separated check names (default: all checks)
    #[arg(long, value_delimiter = ',', value_parser = parse_check)]
    checks: Option<Vec<CheckKind>>,
    /// Skip types whose rank exceeds this bound
    #[arg(long, default_value_t = 8)]
    max_rank: usize,
    /// Write output to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format: json (lines, summaries last), csv, or summary
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: OutputFormat,
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Seed for the sampled portions of the sweep
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include E8 in the default type set
    #[arg(long)]
    deep: bool,
}

fn parse_label(s: &str) -> Result<TypeLabel, String> {
    s.parse::<TypeLabel>().map_err(|e| e.to_string())
}

fn parse_check(s: &str) -> Result<CheckKind, String> {
    s.parse::<CheckKind>().map_err(|e| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse::<OutputFormat>().map_err(|e| e.to_string())
}

fn verify(args: VerifyArgs) -> ExitCode {
    let config = SweepConfig {
        types: args
            .types
            .unwrap_or_else(|| TypeLabel::default_set(args.deep)),
        checks: args.checks.unwrap_or_else(|| CheckKind::ALL.to_vec()),
        max_rank: args.max_rank,
        seed: args.seed,
    };

    let results = if args.jobs > 0 {
        let pool = match rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
        {
            Ok(p) => p,
            Err(e) => {
                eprintln!("coxcert: cannot build a {}-thread pool: {e}", args.jobs);
                return ExitCode::from(2);
            }
        };
        pool.install(|| sweep::run(&config))
    } else {
        sweep::run(&config)
    };

    let write_outcome = match &args.output {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                sweep::write_results(&results, args.format, &mut w)
                    .and_then(|()| w.flush())
            }
            Err(e) => {
                eprintln!("coxcert: cannot create {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            sweep::write_results(&results, args.format, &mut w).and_then(|()| w.flush())
        }
    };
    if let Err(e) = write_outcome {
        eprintln!("coxcert: write failed: {e}");
        return ExitCode::from(2);
    }

    if sweep::total_summary(&results).fail > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Roots { label } => {
            let sys = RootSystem::new(label).expect("catalog label");
            println!("{}", sys.to_json());
            ExitCode::SUCCESS
        }
        Command::Verify(args) => verify(args),
    }
}
