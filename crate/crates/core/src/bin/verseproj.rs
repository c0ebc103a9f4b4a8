use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use verseproj::config::{parse_strategy, parse_tasks, ConfigLayer};
use verseproj::par::Execution;
use verseproj::pipeline::{self, UdSource};
use verseproj::synth::{self, SynthSpec};
use verseproj::tasks::Task;
use verseproj::udcheck::UD_NMC_CAP;
use verseproj::Result;

/// Project syntactic and semantic annotations from an annotated Bible onto
/// other translations and emit verse-level classification datasets.
#[derive(Parser)]
#[command(name = "verseproj", version)]
struct Cli {
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the five task datasets for one target translation.
    Generate(GenerateArgs),
    /// Majority-class accuracy of a generated dataset.
    Baseline {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        task: Task,
        /// Use the NMC file capped at this value when present.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Agreement between projected labels and labels from a UD parse.
    CompareUd {
        /// Projected labels (`.jsonl` dataset or `LABEL<TAB>label` file).
        #[arg(long)]
        projected: PathBuf,
        /// Precomputed UD labels.
        #[arg(long, conflicts_with = "ud_conllu")]
        ud_labels: Option<PathBuf>,
        /// CoNLL-U parse of the target translation.
        #[arg(long, requires = "ud_verses")]
        ud_conllu: Option<PathBuf>,
        /// Sentence ordinal to verse label mapping for `--ud-conllu`.
        #[arg(long)]
        ud_verses: Option<PathBuf>,
        #[arg(long)]
        task: Task,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = UD_NMC_CAP)]
        cap: u32,
        #[arg(long)]
        book_codes: Option<PathBuf>,
    },
    /// Split sizes and label histograms of a generated dataset.
    Stats {
        #[arg(long)]
        dir: PathBuf,
    },
    /// Write a seeded synthetic corpus (ONF, sidecar, target TSV).
    Synth {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 600)]
        verses: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct GenerateArgs {
    /// `key = value` settings file; environment and flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    source_dir: Option<PathBuf>,
    #[arg(long)]
    sidecar: Option<PathBuf>,
    /// `sidecar` or `leading-number`.
    #[arg(long, value_parser = parse_strategy)]
    verse_strategy: Option<verseproj::align::VerseStrategy>,
    #[arg(long)]
    target: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Train, dev and test fractions, e.g. `0.8,0.1,0.1`.
    #[arg(long)]
    split: Option<verseproj::tasks::SplitRatios>,
    #[arg(long)]
    cap: Option<u32>,
    #[arg(long)]
    min_overlap: Option<usize>,
    /// Comma-separated task names or `all`.
    #[arg(long, value_parser = parse_tasks)]
    tasks: Option<Vec<Task>>,
    #[arg(long)]
    book_codes: Option<PathBuf>,
    #[arg(long)]
    allow_low_coverage: bool,
    #[arg(long)]
    numbered_args_only: bool,
}

impl GenerateArgs {
    fn into_layer(self) -> ConfigLayer {
        ConfigLayer {
            source_dir: self.source_dir,
            sidecar: self.sidecar,
            verse_strategy: self.verse_strategy,
            target: self.target,
            out_dir: self.out_dir,
            seed: self.seed,
            split_ratios: self.split,
            cap: self.cap,
            min_overlap: self.min_overlap,
            tasks: self.tasks,
            book_codes: self.book_codes,
            allow_low_coverage: self.allow_low_coverage.then_some(true),
            numbered_args_only: self.numbered_args_only.then_some(true),
        }
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    // a closed stdout (e.g. piped into `head`) is not an error
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn run(cli: Cli) -> Result<()> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Generate(mut args) => {
            let file = match args.config.take() {
                Some(p) => ConfigLayer::from_kv_file(&p)?,
                None => ConfigLayer::default(),
            };
            let env = ConfigLayer::from_env(|k| std::env::var(k).ok());
            let cfg = file.merge(env).merge(args.into_layer()).resolve()?;
            let stats = pipeline::run_generate_with(&cfg, exec)?;
            print_json(&stats);
        }
        Command::Baseline { dir, task, cap } => {
            print_json(&pipeline::run_baseline(&dir, task, cap)?);
        }
        Command::CompareUd {
            projected,
            ud_labels,
            ud_conllu,
            ud_verses,
            task,
            seed,
            cap,
            book_codes,
        } => {
            let books = pipeline::load_book_codes(book_codes.as_deref())?;
            let source = match (&ud_labels, &ud_conllu, &ud_verses) {
                (Some(p), _, _) => UdSource::Labels(p),
                (None, Some(c), Some(v)) => UdSource::Conllu {
                    conllu: c,
                    verse_sidecar: v,
                },
                _ => {
                    return Err(verseproj::Error::Config(
                        "one of --ud-labels or --ud-conllu with --ud-verses is required".into(),
                    ))
                }
            };
            print_json(&pipeline::run_compare(
                &projected, source, task, seed, cap, &books,
            )?);
        }
        Command::Stats { dir } => print_json(&pipeline::dataset_stats(&dir)?),
        Command::Synth { out, verses, seed } => {
            let corpus = synth::generate(&SynthSpec {
                verses,
                seed,
                ..Default::default()
            })?;
            corpus.write_to(Path::new(&out))?;
            eprintln!("wrote {} documents to {}", corpus.docs.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
