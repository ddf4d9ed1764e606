//! Visual prominence of chart features.
//!
//! RDP is run over the diagonal-normalized polyline at every level of a fixed
//! ε grid. A point's ε-persistence is the largest level at which it survives
//! simplification; a trend's is derived from the persistence of its endpoints
//! and of the points it spans. The top five points and trends form the ranked
//! feature list shown above the chart.

mod features;
mod persistence;
mod rdp;
mod saliency;

pub use features::{enumerate_features, ChartFeature, Direction, ExtremeKind, FeatureKind};
pub use persistence::{point_persistence, trend_persistence, PersistenceProfile, SplitNode, SplitTree};
pub use rdp::{perpendicular_distance, rdp_retained};
pub use saliency::baseline_saliency;

use crate::chart::{self, ChartSpec, TimeSeries};
use crate::error::Result;

/// The ε sweep: 0.00 to 0.25 inclusive in steps of 0.01, in units of the
/// normalized chart diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsilonGrid;

impl EpsilonGrid {
    /// Number of levels, `ε = 0.00` included.
    pub const LEVELS: usize = 26;
    /// Index of the top level; persistence is capped here.
    pub const CAP_STEP: u8 = 25;
    pub const STEP: f64 = 0.01;
    pub const CAP: f64 = 0.25;

    /// ε value at grid level `step`.
    pub fn level(step: u8) -> f64 {
        f64::from(step) / 100.0
    }

    pub fn levels() -> impl DoubleEndedIterator<Item = (u8, f64)> {
        (0..=Self::CAP_STEP).map(|k| (k, Self::level(k)))
    }
}

/// Number of features surfaced above the chart.
pub const TOP_FEATURES: usize = 5;

/// Clip, normalize and rank: the prominence half of the pipeline.
pub fn prominent_features(series: &TimeSeries, spec: &ChartSpec) -> Result<Vec<ChartFeature>> {
    let clipped = chart::clip(series, spec)?;
    let polyline = chart::normalize(&clipped, spec);
    Ok(enumerate_features(&point_persistence(&polyline)))
}
