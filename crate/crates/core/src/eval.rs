//! Scoring extracted references against a labeled corpus.
//!
//! A corpus is a directory of bundles, one per chart, each holding
//! `series.csv`, `spec.json`, `caption.txt` and `gold.json`. Every caption
//! sentence is scored once: correct when it has no error, otherwise counted
//! under each error category it shows (missed reference, spurious reference,
//! or a reference extracted correctly but grounded to the wrong data).

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::caption::DescriptionKind;
use crate::chart::{clip, ChartSpec, TimeSeries};
use crate::emphasis::{Checker, GroundedReference, Target};
use crate::error::{Error, Result};
use crate::ingest;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum GoldTarget {
    At { at: NaiveDate },
    Span { from: NaiveDate, to: NaiveDate },
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GoldReference {
    pub kind: DescriptionKind,
    /// Resolved start of the referenced period, `null` when left open.
    pub start: Option<NaiveDate>,
    pub end: Option<NaiveDate>,
    /// Expected grounding; omitted to score extraction only.
    #[serde(default)]
    pub target: Option<GoldTarget>,
    #[serde(default)]
    pub out_of_chart: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
pub struct GoldSentence {
    pub index: usize,
    #[serde(default)]
    pub references: Vec<GoldReference>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Deserialize, Serialize)]
pub struct GoldLabels {
    pub sentences: Vec<GoldSentence>,
}

impl GoldLabels {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("gold labels: {e}")))
    }

    fn for_sentence(&self, index: usize) -> &[GoldReference] {
        self.sentences
            .iter()
            .find(|s| s.index == index)
            .map_or(&[], |s| s.references.as_slice())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ErrorKind {
    /// A gold reference was not extracted.
    #[serde(rename = "FN")]
    FalseNegative,
    /// An extracted reference has no gold counterpart.
    #[serde(rename = "FP")]
    FalsePositive,
    /// Extracted correctly but grounded to a different target.
    #[serde(rename = "IM")]
    IntentionMismatch,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::FalseNegative => "FN",
            ErrorKind::FalsePositive => "FP",
            ErrorKind::IntentionMismatch => "IM",
        })
    }
}

/// Sentence-level counts. A sentence with several kinds of error counts
/// once under each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ErrorTally {
    pub total: usize,
    pub correct: usize,
    #[serde(rename = "FN")]
    pub false_negative: usize,
    #[serde(rename = "FP")]
    pub false_positive: usize,
    #[serde(rename = "IM")]
    pub intention_mismatch: usize,
}

impl ErrorTally {
    pub fn add(&mut self, errors: &BTreeSet<ErrorKind>) {
        self.total += 1;
        if errors.is_empty() {
            self.correct += 1;
        }
        for e in errors {
            match e {
                ErrorKind::FalseNegative => self.false_negative += 1,
                ErrorKind::FalsePositive => self.false_positive += 1,
                ErrorKind::IntentionMismatch => self.intention_mismatch += 1,
            }
        }
    }

    pub fn merge(&mut self, other: &ErrorTally) {
        self.total += other.total;
        self.correct += other.correct;
        self.false_negative += other.false_negative;
        self.false_positive += other.false_positive;
        self.intention_mismatch += other.intention_mismatch;
    }

    pub fn percent_correct(&self) -> f64 {
        if self.total == 0 {
            100.0
        } else {
            100.0 * self.correct as f64 / self.total as f64
        }
    }
}

impl fmt::Display for ErrorTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sentences {}  correct {} ({:.2}%)  FN {}  FP {}  IM {}",
            self.total,
            self.correct,
            self.percent_correct(),
            self.false_negative,
            self.false_positive,
            self.intention_mismatch
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SentenceReport {
    pub index: usize,
    pub text: String,
    pub errors: BTreeSet<ErrorKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BundleReport {
    pub name: String,
    pub tally: ErrorTally,
    pub sentences: Vec<SentenceReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub bundles: Vec<BundleReport>,
    pub tally: ErrorTally,
}

/// One labeled chart and caption.
#[derive(Debug, Clone)]
pub struct Bundle {
    pub name: String,
    pub series: TimeSeries,
    pub spec: ChartSpec,
    pub caption: String,
    pub gold: GoldLabels,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

impl Bundle {
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let name = dir
            .file_name()
            .map_or_else(|| dir.display().to_string(), |n| n.to_string_lossy().into_owned());
        let in_bundle = |e: Error| Error::Malformed(format!("{name}: {e}"));
        Ok(Bundle {
            series: ingest::read_series(dir.join("series.csv")).map_err(in_bundle)?,
            spec: ingest::read_spec(dir.join("spec.json")).map_err(in_bundle)?,
            caption: read(&dir.join("caption.txt"))?,
            gold: GoldLabels::parse(&read(&dir.join("gold.json"))?).map_err(in_bundle)?,
            name,
        })
    }
}

/// Bundle directories under `root`, sorted by name.
pub fn bundle_dirs(root: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let root = root.as_ref();
    let mut dirs: Vec<PathBuf> = std::fs::read_dir(root)
        .map_err(|e| Error::io(root, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.join("gold.json").is_file())
        .collect();
    dirs.sort();
    if dirs.is_empty() {
        return Err(Error::Malformed(format!("no bundles under {}", root.display())));
    }
    Ok(dirs)
}

fn gold_target(gold: &GoldReference, series: &TimeSeries) -> Result<Option<Target>> {
    let index = |d: NaiveDate| {
        series
            .index_of(d)
            .ok_or_else(|| Error::Malformed(format!("gold target {d} is not a sample date")))
    };
    Ok(match gold.target {
        None => None,
        Some(GoldTarget::At { at }) => Some(Target::Point { index: index(at)? }),
        Some(GoldTarget::Span { from, to }) => Some(Target::Trend {
            start: index(from)?,
            end: index(to)?,
        }),
    })
}

/// Errors in one sentence: gold references are matched in order to the
/// first unused prediction with the same kind and resolved bounds.
pub fn score_sentence(
    gold: &[GoldReference],
    predicted: &[&GroundedReference],
    series: &TimeSeries,
) -> Result<BTreeSet<ErrorKind>> {
    let mut errors = BTreeSet::new();
    let mut used = vec![false; predicted.len()];
    for g in gold {
        let found = predicted.iter().enumerate().find(|(k, p)| {
            !used[*k] && p.kind() == g.kind && p.pair.combined_start() == g.start && p.pair.combined_end() == g.end
        });
        let Some((k, p)) = found else {
            errors.insert(ErrorKind::FalseNegative);
            continue;
        };
        used[k] = true;
        let grounded_ok = if g.out_of_chart {
            p.target.is_none()
        } else {
            match gold_target(g, series)? {
                Some(t) => p.target == Some(t),
                None => p.target.is_some(),
            }
        };
        if !grounded_ok {
            errors.insert(ErrorKind::IntentionMismatch);
        }
    }
    if used.iter().any(|u| !u) {
        errors.insert(ErrorKind::FalsePositive);
    }
    Ok(errors)
}

pub fn evaluate_bundle(bundle: &Bundle, checker: &Checker) -> Result<BundleReport> {
    let clipped = clip(&bundle.series, &bundle.spec)?;
    let (analysis, grounded) = checker.ground_caption(&clipped, &bundle.spec, &bundle.caption);
    if let Some(s) = bundle
        .gold
        .sentences
        .iter()
        .find(|s| s.index >= analysis.sentences.len())
    {
        return Err(Error::Malformed(format!(
            "{}: gold sentence {} but the caption has {} sentence(s)",
            bundle.name,
            s.index,
            analysis.sentences.len()
        )));
    }
    let mut tally = ErrorTally::default();
    let mut sentences = Vec::new();
    for s in &analysis.sentences {
        let predicted: Vec<&GroundedReference> = grounded.iter().filter(|g| g.sentence == s.index).collect();
        let errors = score_sentence(bundle.gold.for_sentence(s.index), &predicted, &clipped)?;
        tally.add(&errors);
        sentences.push(SentenceReport {
            index: s.index,
            text: s.span.slice(&bundle.caption).trim().to_string(),
            errors,
        });
    }
    Ok(BundleReport {
        name: bundle.name.clone(),
        tally,
        sentences,
    })
}

pub fn evaluate_corpus(root: impl AsRef<Path>, checker: &Checker) -> Result<EvalReport> {
    let mut bundles = Vec::new();
    let mut tally = ErrorTally::default();
    for dir in bundle_dirs(root)? {
        let report = evaluate_bundle(&Bundle::load(&dir)?, checker)?;
        tally.merge(&report.tally);
        bundles.push(report);
    }
    Ok(EvalReport { bundles, tally })
}
