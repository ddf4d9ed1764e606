//! Grounding, factual checks and emphasis matching.

mod ground;
mod matching;

pub use ground::{check_factual, ground, GroundError, Target};
pub use matching::{best_match, matches, overlap, MIN_OVERLAP_PERCENT};

use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use crate::caption::{
    CaptionAnalysis, CaptionAnalyzer, DescriptionKind, Lemmatizer, Lexicon, MaxSimilarity, ReferencePair,
    SimilarityProvider, SynonymSimilarity, TimeContext, WordVectors, DEFAULT_SIM_THRESHOLD,
};
use crate::chart::{self, ChartSpec, TimeSeries};
use crate::error::{Error, Result};
use crate::prominence::{enumerate_features, point_persistence, ChartFeature};
use crate::span::Span;

/// Number of reference highlight colours; indices cycle.
pub const PALETTE_SIZE: usize = 4;

/// A caption reference located in the clipped series.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundedReference {
    pub sentence: usize,
    pub pair: ReferencePair,
    /// `None` when a mentioned time lies outside the chart.
    pub target: Option<Target>,
    pub factual_error: bool,
}

impl GroundedReference {
    pub fn kind(&self) -> DescriptionKind {
        self.pair.description.kind
    }

    /// Description span followed by the time spans.
    pub fn spans(&self) -> Vec<Span> {
        std::iter::once(self.pair.description.span)
            .chain(self.pair.times.iter().map(|t| t.span))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiagnosticKind {
    #[serde(rename = "factual")]
    FactualError,
    #[serde(rename = "mismatch")]
    EmphasisMismatch,
}

impl DiagnosticKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticKind::FactualError => "factual",
            DiagnosticKind::EmphasisMismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub spans: Vec<Span>,
    pub message: String,
}

impl Diagnostic {
    /// Smallest span covering all of `spans`.
    pub fn extent(&self) -> Span {
        self.spans.iter().copied().reduce(Span::cover).unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureStatus {
    #[serde(flatten)]
    pub feature: ChartFeature,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReferenceView {
    pub sentence: usize,
    pub span: Span,
    pub time_spans: Vec<Span>,
    pub kind: DescriptionKind,
    pub target: Option<Target>,
    pub palette: usize,
    pub factual_error: bool,
    /// Rank of the matched feature.
    pub matched_rank: Option<u8>,
}

/// Everything the author sees after a check.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckResult {
    /// Index of the first clipped sample in the input series; feature and
    /// target indices are relative to it.
    pub index_offset: usize,
    pub features: Vec<FeatureStatus>,
    pub references: Vec<ReferenceView>,
    pub diagnostics: Vec<Diagnostic>,
    #[serde(skip)]
    pub grounded: Vec<GroundedReference>,
    #[serde(skip)]
    pub analysis: CaptionAnalysis,
}

impl CheckResult {
    pub fn has_factual_errors(&self) -> bool {
        self.diagnostics.iter().any(|d| d.kind == DiagnosticKind::FactualError)
    }
}

/// The full pipeline with its caption-side configuration.
#[derive(Clone)]
pub struct Checker {
    lexicon: Lexicon,
    lemmatizer: Lemmatizer,
    similarity: Arc<dyn SimilarityProvider>,
    threshold: f64,
}

impl Default for Checker {
    fn default() -> Self {
        let lexicon = Lexicon::default();
        let sim = Arc::new(SynonymSimilarity::from_lexicon(&lexicon));
        Checker::new(lexicon, sim, DEFAULT_SIM_THRESHOLD)
    }
}

impl std::fmt::Debug for Checker {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Checker")
            .field("lexicon_entries", &self.lexicon.entries().len())
            .field("threshold", &self.threshold)
            .finish()
    }
}

fn describe_target(series: &TimeSeries, target: Target) -> String {
    match target {
        Target::Point { index } => format!("{} ({})", series.date(index), series.y(index)),
        Target::Trend { start, end } => format!(
            "{} ({}) to {} ({})",
            series.date(start),
            series.y(start),
            series.date(end),
            series.y(end)
        ),
    }
}

impl Checker {
    pub fn new(lexicon: Lexicon, similarity: Arc<dyn SimilarityProvider>, threshold: f64) -> Self {
        let lemmatizer = Lemmatizer::new(lexicon.vocabulary());
        Checker {
            lexicon,
            lemmatizer,
            similarity,
            threshold,
        }
    }

    /// Builds a checker from an optional lexicon file and optional word
    /// vectors. Lexicon synonyms always count; vectors add graded
    /// similarity on top.
    pub fn from_files(lexicon: Option<&Path>, vectors: Option<&Path>, threshold: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Error::InvalidSpec(format!(
                "similarity threshold {threshold} outside [0, 1]"
            )));
        }
        let lexicon = match lexicon {
            Some(p) => Lexicon::load(p)?,
            None => Lexicon::default(),
        };
        let synonyms = SynonymSimilarity::from_lexicon(&lexicon);
        let similarity: Arc<dyn SimilarityProvider> = match vectors {
            Some(p) => Arc::new(MaxSimilarity(vec![Box::new(synonyms), Box::new(WordVectors::load(p)?)])),
            None => Arc::new(synonyms),
        };
        Ok(Checker::new(lexicon, similarity, threshold))
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Caption analysis against an already clipped series.
    pub fn analyze(&self, clipped: &TimeSeries, spec: &ChartSpec, caption: &str) -> CaptionAnalysis {
        let analyzer = CaptionAnalyzer {
            lexicon: &self.lexicon,
            lemmatizer: &self.lemmatizer,
            similarity: self.similarity.as_ref(),
            threshold: self.threshold,
        };
        let ctx = TimeContext {
            granularity: chart::detect_granularity(clipped),
            window: spec.x_window(),
        };
        analyzer.analyze(caption, &ctx)
    }

    /// Extracts and grounds every reference in `caption`.
    pub fn ground_caption(
        &self,
        clipped: &TimeSeries,
        spec: &ChartSpec,
        caption: &str,
    ) -> (CaptionAnalysis, Vec<GroundedReference>) {
        let analysis = self.analyze(clipped, spec, caption);
        let grounded = analysis
            .references()
            .map(|(sentence, pair)| {
                let target = ground(pair, clipped).ok();
                let factual_error = target.is_some_and(|t| check_factual(pair.description.kind, t, clipped));
                GroundedReference {
                    sentence,
                    pair: pair.clone(),
                    target,
                    factual_error,
                }
            })
            .collect();
        (analysis, grounded)
    }

    pub fn check(&self, series: &TimeSeries, spec: &ChartSpec, caption: &str) -> Result<CheckResult> {
        let clipped = chart::clip(series, spec)?;
        let index_offset = series.indices_within(&spec.x_window()).start;
        let features = enumerate_features(&point_persistence(&chart::normalize(&clipped, spec)));
        let (analysis, grounded) = self.ground_caption(&clipped, spec, caption);

        let mut matched = vec![false; features.len()];
        let mut references = Vec::with_capacity(grounded.len());
        let mut diagnostics = Vec::new();
        for (k, g) in grounded.iter().enumerate() {
            let hit = match g.target {
                Some(t) if !g.factual_error => best_match(t, &features),
                _ => None,
            };
            if let Some(i) = hit {
                matched[i] = true;
            }
            let kind = g.kind();
            match g.target {
                None => diagnostics.push(Diagnostic {
                    kind: DiagnosticKind::EmphasisMismatch,
                    spans: g.spans(),
                    message: format!("out-of-chart reference: the {kind} refers to a time outside the chart"),
                }),
                Some(t) if g.factual_error => {
                    let verb = if kind == DescriptionKind::Rise {
                        "falls"
                    } else {
                        "rises"
                    };
                    diagnostics.push(Diagnostic {
                        kind: DiagnosticKind::FactualError,
                        spans: g.spans(),
                        message: format!(
                            "the caption describes a {kind} but the data {verb} from {}",
                            describe_target(&clipped, t)
                        ),
                    });
                }
                Some(t) if hit.is_none() => diagnostics.push(Diagnostic {
                    kind: DiagnosticKind::EmphasisMismatch,
                    spans: g.spans(),
                    message: format!(
                        "the {kind} at {} is not among the top {} prominent features",
                        describe_target(&clipped, t),
                        crate::prominence::TOP_FEATURES
                    ),
                }),
                Some(_) => {}
            }
            references.push(ReferenceView {
                sentence: g.sentence,
                span: g.pair.description.span,
                time_spans: g.pair.times.iter().map(|t| t.span).collect(),
                kind,
                target: g.target,
                palette: k % PALETTE_SIZE,
                factual_error: g.factual_error,
                matched_rank: hit.map(|i| features[i].rank),
            });
        }
        diagnostics.sort_by_key(|d| (d.extent().start, d.extent().end));

        Ok(CheckResult {
            index_offset,
            features: features
                .into_iter()
                .zip(matched)
                .map(|(feature, matched)| FeatureStatus { feature, matched })
                .collect(),
            references,
            diagnostics,
            grounded,
            analysis,
        })
    }
}
