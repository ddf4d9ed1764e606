//! `capcheck`: prominent features, caption linting and corpus evaluation
//! from the command line.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use capcheck_core::caption::DEFAULT_SIM_THRESHOLD;
use capcheck_core::emphasis::DiagnosticKind;
use capcheck_core::eval::evaluate_corpus;
use capcheck_core::prominence::prominent_features;
use capcheck_core::{ingest, ChartSpec, Checker, TimeSeries};
use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "capcheck",
    version,
    about = "Check line-chart captions against the chart's prominent features"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the ranked prominent features of a series as JSON.
    Features {
        data: PathBuf,
        #[command(flatten)]
        chart: ChartArgs,
    },
    /// Report factual errors and emphasis mismatches in a caption.
    Lint {
        data: PathBuf,
        /// Caption file, or `-` for standard input.
        caption: PathBuf,
        #[command(flatten)]
        chart: ChartArgs,
        #[command(flatten)]
        text: TextArgs,
        /// Exit 1 on emphasis mismatches as well as factual errors.
        #[arg(long)]
        strict: bool,
        /// Print the full check result as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Score reference extraction over a labeled corpus directory.
    Eval {
        corpus: PathBuf,
        #[command(flatten)]
        text: TextArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ChartArgs {
    /// Chart spec JSON; the flags below override its fields.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    width: Option<f64>,
    #[arg(long)]
    height: Option<f64>,
    #[arg(long)]
    xmin: Option<NaiveDate>,
    #[arg(long)]
    xmax: Option<NaiveDate>,
    #[arg(long, allow_negative_numbers = true)]
    ymin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    ymax: Option<f64>,
}

#[derive(Args)]
struct TextArgs {
    /// Keyword lexicon (TSV: kind, lemma, synonyms).
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Word vectors (`word v1 v2 ...` per line).
    #[arg(long)]
    vectors: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SIM_THRESHOLD)]
    sim_threshold: f64,
}

impl ChartArgs {
    fn resolve(&self, series: &TimeSeries) -> Result<ChartSpec> {
        let base = match &self.spec {
            Some(p) => ingest::read_spec(p)?,
            None => ChartSpec::fit(series, ChartSpec::DEFAULT_WIDTH, ChartSpec::DEFAULT_HEIGHT)?,
        };
        let spec = ChartSpec::new(
            self.width.unwrap_or(base.plot_width),
            self.height.unwrap_or(base.plot_height),
            [
                self.xmin.unwrap_or(base.x_range[0]),
                self.xmax.unwrap_or(base.x_range[1]),
            ],
            [
                self.ymin.unwrap_or(base.y_range[0]),
                self.ymax.unwrap_or(base.y_range[1]),
            ],
        )?;
        Ok(spec)
    }
}

impl TextArgs {
    fn checker(&self) -> Result<Checker> {
        Ok(Checker::from_files(
            self.lexicon.as_deref(),
            self.vectors.as_deref(),
            self.sim_threshold,
        )?)
    }
}

fn read_caption(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading caption from stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Features { data, chart } => {
            let series = ingest::read_series(&data)?;
            let spec = chart.resolve(&series)?;
            let features = prominent_features(&series, &spec)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({ "features": features }))?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Lint {
            data,
            caption,
            chart,
            text,
            strict,
            json,
        } => {
            let series = ingest::read_series(&data)?;
            let spec = chart.resolve(&series)?;
            let caption = read_caption(&caption)?;
            let result = text.checker()?.check(&series, &spec, &caption)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&result)?);
            } else {
                for d in &result.diagnostics {
                    let e = d.extent();
                    println!("{}:{}-{}: {}", d.kind.as_str(), e.start, e.end, d.message);
                }
            }
            let failing = result.diagnostics.iter().any(|d| {
                d.kind == DiagnosticKind::FactualError || (strict && d.kind == DiagnosticKind::EmphasisMismatch)
            });
            Ok(if failing { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Eval { corpus, text, json } => {
            let report = evaluate_corpus(&corpus, &text.checker()?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                for b in &report.bundles {
                    for s in &b.sentences {
                        let errors: Vec<String> = s.errors.iter().map(ToString::to_string).collect();
                        let status = if errors.is_empty() {
                            "ok".to_string()
                        } else {
                            errors.join(",")
                        };
                        println!("{:<8} {}#{} {}", status, b.name, s.index, s.text);
                    }
                }
                println!("{}", report.tally);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("capcheck: {e:#}");
            ExitCode::from(2)
        }
    }
}
