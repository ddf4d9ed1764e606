//! Chart-caption emphasis checking for univariate time-series line charts.
//!
//! The crate has four layers that run in sequence:
//!
//! - [`chart`]: the series/chart model, axis clipping and diagonal-normalized
//!   geometry.
//! - [`prominence`]: RDP-based ε-persistence and ranked prominent features.
//! - [`caption`]: sentence splitting, lemmatization, time expressions, data
//!   descriptions and their pairing.
//! - [`emphasis`]: grounding caption references in the data, factual checks,
//!   feature matching and diagnostics.
//!
//! [`ingest`] reads series and chart specs from CSV/JSON and [`eval`] scores
//! extracted references against a labeled corpus.

pub mod caption;
pub mod chart;
pub mod emphasis;
pub mod error;
pub mod eval;
pub mod ingest;
pub mod prominence;
pub mod span;

pub use caption::{Lexicon, SimilarityProvider, SynonymSimilarity, WordVectors};
pub use chart::{ChartSpec, DateRange, Granularity, NormalizedPolyline, Sample, TimeSeries};
pub use emphasis::{CheckResult, Checker, Diagnostic, DiagnosticKind};
pub use error::{Error, Result};
pub use prominence::{ChartFeature, FeatureKind, PersistenceProfile};
pub use span::Span;
