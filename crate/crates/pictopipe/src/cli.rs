//! Command-line front end. Usage errors exit with 2 (clap's convention),
//! data and resource errors with 1.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pictopipe_core::lexicon::{Lexicon, LexiconFormat};
use pictopipe_core::metrics::{self, ScoredPair};
use pictopipe_core::tpa::{self, MatchMode, TpaConfig, DEFAULT_EPSILON};
use pictopipe_core::{Execution, Pipeline, PipelineConfig, SessionContext};

use crate::service;

#[derive(Debug, Parser)]
#[command(name = "pictopipe", version, about = "Turn short utterances into pictogram sequences")]
pub struct Cli {
    /// Key-value config file; `PICTOPIPE_*` environment variables override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Run batch work on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Translate one utterance and print the result as JSON.
    Translate {
        #[arg(required = true, num_args = 1..)]
        text: Vec<String>,
        /// Single-line JSON.
        #[arg(long)]
        compact: bool,
    },
    /// Run the HTTP service.
    Serve {
        /// Overrides the configured bind address.
        #[arg(long)]
        bind: Option<String>,
    },
    #[command(subcommand)]
    Eval(EvalCommand),
    #[command(subcommand)]
    Lexicon(LexiconCommand),
}

#[derive(Debug, Subcommand)]
pub enum EvalCommand {
    /// Score pictogram mapping against a gold JSONL corpus.
    Tpa(TpaArgs),
    /// Score grammar correction against references with BLEU and/or GLEU.
    Gec(GecArgs),
}

#[derive(Debug, Args)]
pub struct TpaArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Score a single deletion case (1-4) instead of the full matrix.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub case: Option<u8>,
    /// Subtract the entity penalty (with --case).
    #[arg(long, requires = "case")]
    pub penalty: bool,
    /// Compare entry ids instead of rendered-or-not.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricChoice {
    Bleu,
    Gleu,
    Both,
}

#[derive(Debug, Args)]
pub struct GecArgs {
    /// TSV: source, [hypothesis,] reference(s). Without a hypothesis column
    /// the configured corrector produces one.
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long, value_enum, default_value_t = MetricChoice::Both)]
    pub metric: MetricChoice,
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
}

#[derive(Debug, Subcommand)]
pub enum LexiconCommand {
    /// Load a lexicon and report the first problem, if any.
    Validate {
        file: PathBuf,
        #[arg(long)]
        format: Option<LexiconFormat>,
    },
}

/// A failure that maps to exit status 1.
#[derive(Debug)]
pub struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

pub fn load_config(path: Option<&Path>) -> Result<PipelineConfig, Failure> {
    let mut cfg = match path {
        Some(p) => PipelineConfig::from_file(p)?,
        None => PipelineConfig::default(),
    };
    cfg.apply_env(std::env::vars())?;
    cfg.validate()?;
    Ok(cfg)
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

/// Runs a parsed command, writing results to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let exec = exec(cli.sequential);
    match cli.command {
        Command::Lexicon(LexiconCommand::Validate { file, format }) => {
            let lex = Lexicon::load_path(&file, format)
                .map_err(|e| Failure(format!("{}: {e}", file.display())))?;
            writeln!(
                out,
                "ok: {} entries, longest phrase {} words",
                lex.len(),
                lex.max_ngram()
            )?;
        }
        Command::Translate { text, compact } => {
            let cfg = load_config(cli.config.as_deref())?;
            let pipeline = Pipeline::from_config(&cfg)?;
            let mut session = SessionContext::new(cfg.session_capacity);
            let result = pipeline.process(&text.join(" "), &mut session)?;
            let json = if compact {
                serde_json::to_string(&result)?
            } else {
                serde_json::to_string_pretty(&result)?
            };
            writeln!(out, "{json}")?;
        }
        Command::Serve { bind } => {
            let mut cfg = load_config(cli.config.as_deref())?;
            if let Some(b) = bind {
                cfg.bind = b;
            }
            let pipeline = Pipeline::from_config(&cfg)?;
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(service::serve(pipeline, &cfg))?;
        }
        Command::Eval(EvalCommand::Tpa(args)) => {
            let cfg = load_config(cli.config.as_deref())?;
            let pipeline = Pipeline::from_config(&cfg)?;
            let corpus = tpa::load_corpus_path(&args.corpus)
                .map_err(|e| Failure(format!("{}: {e}", args.corpus.display())))?;
            let mode = if args.strict {
                MatchMode::Strict
            } else {
                MatchMode::Lenient
            };
            match args.case {
                Some(case) => {
                    let mut tc = TpaConfig::for_case(case, args.penalty).expect("range checked");
                    tc.epsilon = args.epsilon;
                    tc.match_mode = mode;
                    let report = tpa::tpa_score(&corpus, &pipeline, &tc, exec)?;
                    if args.json {
                        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
                    } else {
                        writeln!(
                            out,
                            "case {case} penalty {}: TPA {:.2} (N={}, correct={}, penalties={})",
                            args.penalty, report.score, report.counted, report.correct, report.penalties
                        )?;
                    }
                }
                None => {
                    let m = tpa::run_case_matrix(&corpus, &pipeline, args.epsilon, mode, exec)?;
                    if args.json {
                        writeln!(out, "{}", serde_json::to_string_pretty(&m)?)?;
                    } else {
                        write!(out, "{}", m.to_table())?;
                    }
                }
            }
        }
        Command::Eval(EvalCommand::Gec(args)) => {
            let cfg = load_config(cli.config.as_deref())?;
            let pipeline = Pipeline::from_config(&cfg)?;
            let rows = metrics::load_gec_corpus_path(&args.corpus)
                .map_err(|e| Failure(format!("{}: {e}", args.corpus.display())))?;
            let pairs: Vec<ScoredPair> = rows
                .iter()
                .map(|r| {
                    let hyp = match &r.hypothesis {
                        Some(h) => h.clone(),
                        None => pipeline.correct(&r.source).corrected,
                    };
                    let refs: Vec<&str> = r.references.iter().map(String::as_str).collect();
                    ScoredPair::from_text(&r.source, &hyp, &refs)
                })
                .collect();
            if matches!(args.metric, MetricChoice::Bleu | MetricChoice::Both) {
                let b = metrics::bleu_with(&pairs, args.max_n, exec)?;
                writeln!(out, "BLEU {b:.2}")?;
            }
            if matches!(args.metric, MetricChoice::Gleu | MetricChoice::Both) {
                let g = metrics::gleu_with(&pairs, args.max_n, exec)?;
                writeln!(out, "GLEU {g:.2}")?;
            }
        }
    }
    Ok(())
}

/// Parses `args`, runs, and maps the outcome to an exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return ExitCode::from(code as u8);
        }
    };
    match run(cli, out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            ExitCode::from(1)
        }
    }
}
