use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use figsynth::corpus::{corpus_stats, generate_corpus, validate_corpus, CorpusConfig};
use figsynth::Error;

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "figsynth", version, about = "Synthetic figure question-answering corpus generator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a corpus from a TOML config file.
    Generate {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `master_seed`.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides `output_dir`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; 0 uses one per core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Check a corpus against its source data and images.
    Validate {
        dir: PathBuf,
        /// Pixel-check every figure instead of a sample.
        #[arg(long)]
        full_pixel_scan: bool,
        #[arg(long)]
        json: bool,
    },
    /// Per-split figure and answer counts.
    Stats {
        dir: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::InvalidInput(_) => EXIT_USAGE,
        Error::Io { .. } | Error::Format { .. } => EXIT_IO,
        Error::Render(_) | Error::Generation { .. } => EXIT_VIOLATIONS,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Generate { config, seed, out, workers } => {
            let mut cfg = CorpusConfig::load(&config)?;
            if let Some(seed) = seed {
                cfg.master_seed = seed;
            }
            if let Some(out) = out {
                cfg.output_dir = out;
            }
            let manifest = generate_corpus(&cfg, &cfg.output_dir, workers)?;
            for s in &manifest.splits {
                println!("{:<6} {:>7} figures {:>8} qa pairs", s.split.name(), s.figure_count, s.qa_count);
            }
            println!("wrote {}", cfg.output_dir.display());
            Ok(0)
        }
        Command::Validate { dir, full_pixel_scan, json } => {
            let report = validate_corpus(&dir, full_pixel_scan)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{report}");
            }
            Ok(if report.is_clean() { 0 } else { EXIT_VIOLATIONS })
        }
        Command::Stats { dir, json } => {
            let stats = corpus_stats(&dir)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&stats).expect("stats serialize"));
            } else {
                print!("{stats}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
