use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::persistence::{trend_steps, PersistenceProfile};
use super::{EpsilonGrid, TOP_FEATURES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ExtremeKind {
    LocalMax,
    LocalMin,
    Endpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Rise,
    Fall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureKind {
    Point {
        index: usize,
        extreme: ExtremeKind,
    },
    Trend {
        start: usize,
        end: usize,
        direction: Direction,
    },
}

impl FeatureKind {
    fn order_key(&self) -> (u8, usize, usize) {
        match *self {
            FeatureKind::Point { index, .. } => (0, index, index),
            FeatureKind::Trend { start, end, .. } => (1, start, end),
        }
    }
}

/// A ranked prominent feature. Indices refer to the clipped series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "FeatureRecord", try_from = "FeatureRecord")]
pub struct ChartFeature {
    pub kind: FeatureKind,
    /// Persistence as a grid level index (`persistence() = steps / 100`).
    pub steps: u8,
    pub rank: u8,
}

impl ChartFeature {
    pub fn persistence(&self) -> f64 {
        EpsilonGrid::level(self.steps)
    }

    pub fn is_point(&self) -> bool {
        matches!(self.kind, FeatureKind::Point { .. })
    }

    /// Inclusive index range the feature covers.
    pub fn covered(&self) -> (usize, usize) {
        match self.kind {
            FeatureKind::Point { index, .. } => (index, index),
            FeatureKind::Trend { start, end, .. } => (start, end),
        }
    }
}

/// Wire form: `{"kind": "point"|"trend", "rank", "persistence", "index" | "start"/"end", ...}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub(crate) struct FeatureRecord {
    kind: String,
    rank: u8,
    persistence: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    direction: Option<Direction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    extreme_kind: Option<ExtremeKind>,
}

impl From<ChartFeature> for FeatureRecord {
    fn from(f: ChartFeature) -> Self {
        let mut r = FeatureRecord {
            kind: String::new(),
            rank: f.rank,
            persistence: f.persistence(),
            index: None,
            start: None,
            end: None,
            direction: None,
            extreme_kind: None,
        };
        match f.kind {
            FeatureKind::Point { index, extreme } => {
                r.kind = "point".into();
                r.index = Some(index);
                r.extreme_kind = Some(extreme);
            }
            FeatureKind::Trend { start, end, direction } => {
                r.kind = "trend".into();
                r.start = Some(start);
                r.end = Some(end);
                r.direction = Some(direction);
            }
        }
        r
    }
}

impl TryFrom<FeatureRecord> for ChartFeature {
    type Error = String;

    fn try_from(r: FeatureRecord) -> Result<Self, String> {
        let kind = match (r.kind.as_str(), r.index, r.start, r.end) {
            ("point", Some(index), _, _) => FeatureKind::Point {
                index,
                extreme: r.extreme_kind.unwrap_or(ExtremeKind::Endpoint),
            },
            ("trend", _, Some(start), Some(end)) if start < end => FeatureKind::Trend {
                start,
                end,
                direction: r.direction.unwrap_or(Direction::Rise),
            },
            _ => return Err(format!("malformed {} feature", r.kind)),
        };
        Ok(ChartFeature {
            kind,
            steps: (r.persistence * 100.0).round().clamp(0.0, 25.0) as u8,
            rank: r.rank,
        })
    }
}

/// Classifies vertex `i`: endpoints are `Endpoint`; an interior vertex at or
/// above both neighbours is a `LocalMax`, at or below both a `LocalMin`;
/// otherwise it is a corner and takes the side of the neighbour chord it
/// lies on.
pub(crate) fn classify_extreme(ys: impl Fn(usize) -> f64, len: usize, i: usize) -> ExtremeKind {
    if i == 0 || i + 1 >= len {
        return ExtremeKind::Endpoint;
    }
    let (prev, y, next) = (ys(i - 1), ys(i), ys(i + 1));
    if y >= prev && y >= next {
        ExtremeKind::LocalMax
    } else if y <= prev && y <= next {
        ExtremeKind::LocalMin
    } else if y >= (prev + next) / 2.0 {
        ExtremeKind::LocalMax
    } else {
        ExtremeKind::LocalMin
    }
}

/// Every pair of vertices that are consecutive in the simplification at some
/// grid level.
pub(crate) fn trend_candidates(profile: &PersistenceProfile) -> BTreeSet<(usize, usize)> {
    let mut pairs = BTreeSet::new();
    for (step, _) in EpsilonGrid::levels() {
        let kept = profile.retained(step);
        pairs.extend(kept.windows(2).map(|w| (w[0], w[1])));
    }
    pairs
}

/// Ranks interior points and realized trends by persistence and keeps the
/// top five. Ties put points before trends, then the smaller start index.
pub fn enumerate_features(profile: &PersistenceProfile) -> Vec<ChartFeature> {
    let n = profile.len();
    let mut candidates: Vec<(FeatureKind, u8)> = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let steps = profile.step(i);
        if steps > 0 {
            let extreme = classify_extreme(|k| profile.y(k), n, i);
            candidates.push((FeatureKind::Point { index: i, extreme }, steps));
        }
    }
    for (start, end) in trend_candidates(profile) {
        let steps = trend_steps(profile, start, end);
        if steps > 0 {
            let direction = if profile.y(end) >= profile.y(start) {
                Direction::Rise
            } else {
                Direction::Fall
            };
            candidates.push((FeatureKind::Trend { start, end, direction }, steps));
        }
    }
    candidates.sort_by_key(|(kind, steps)| (Reverse(*steps), kind.order_key()));
    candidates
        .into_iter()
        .take(TOP_FEATURES)
        .enumerate()
        .map(|(r, (kind, steps))| ChartFeature {
            kind,
            steps,
            rank: r as u8 + 1,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::NormalizedPolyline;
    use crate::prominence::point_persistence;

    fn poly(points: &[(f64, f64)]) -> NormalizedPolyline {
        NormalizedPolyline::from_vertices(points.to_vec())
    }

    #[test]
    fn straight_line_is_one_trend() {
        let p = poly(&[(0.0, 0.0), (0.2, 0.1), (0.4, 0.2), (0.6, 0.3)]);
        let f = enumerate_features(&point_persistence(&p));
        assert_eq!(f.len(), 1);
        assert_eq!(
            f[0].kind,
            FeatureKind::Trend {
                start: 0,
                end: 3,
                direction: Direction::Rise
            }
        );
        assert_eq!(f[0].rank, 1);
        assert_eq!(f[0].persistence(), 0.25);
    }

    #[test]
    fn triangle_flanks_one_step_above_apex() {
        let p = poly(&[(0.0, 0.0), (0.25, 0.06), (0.5, 0.12), (0.75, 0.06), (1.0, 0.0)]);
        let prof = point_persistence(&p);
        assert_eq!(prof.step(2), 11);
        let f = enumerate_features(&prof);
        // flanks: min(25, 11) - 0 + 1 = 12 steps; the whole base is realized
        // once the apex drops: 25 - 11 + 1 = 15 steps
        let kinds: Vec<_> = f.iter().map(|x| (x.kind, x.steps)).collect();
        let rise = Direction::Rise;
        assert_eq!(
            kinds,
            vec![
                (
                    FeatureKind::Trend {
                        start: 0,
                        end: 4,
                        direction: rise
                    },
                    15
                ),
                (
                    FeatureKind::Trend {
                        start: 0,
                        end: 2,
                        direction: rise
                    },
                    12
                ),
                (
                    FeatureKind::Trend {
                        start: 2,
                        end: 4,
                        direction: Direction::Fall
                    },
                    12
                ),
                (
                    FeatureKind::Point {
                        index: 2,
                        extreme: ExtremeKind::LocalMax
                    },
                    11
                ),
            ]
        );
    }

    #[test]
    fn at_most_five() {
        let ys = [0.0, 0.3, 0.0, 0.25, 0.02, 0.2, 0.0, 0.28, 0.01];
        let p = poly(
            &ys.iter()
                .enumerate()
                .map(|(i, &y)| (i as f64 * 0.1, y))
                .collect::<Vec<_>>(),
        );
        let f = enumerate_features(&point_persistence(&p));
        assert_eq!(f.len(), 5);
        assert!(f.windows(2).all(|w| w[0].steps >= w[1].steps));
        assert_eq!(f.iter().map(|x| x.rank).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn wire_format() {
        let f = ChartFeature {
            kind: FeatureKind::Trend {
                start: 2,
                end: 9,
                direction: Direction::Fall,
            },
            steps: 12,
            rank: 2,
        };
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"trend","rank":2,"persistence":0.12,"start":2,"end":9,"direction":"fall"}"#
        );
        let back: ChartFeature = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let p = ChartFeature {
            kind: FeatureKind::Point {
                index: 4,
                extreme: ExtremeKind::LocalMin,
            },
            steps: 25,
            rank: 1,
        };
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"kind":"point","rank":1,"persistence":0.25,"index":4,"extremeKind":"localMin"}"#
        );
    }

    #[test]
    fn classify_corner() {
        let ys = [0.0, 0.5, 0.6, 1.0];
        assert_eq!(classify_extreme(|i| ys[i], 4, 1), ExtremeKind::LocalMax);
        assert_eq!(classify_extreme(|i| ys[i], 4, 0), ExtremeKind::Endpoint);
        let dip = [1.0, 0.2, 0.3];
        assert_eq!(classify_extreme(|i| dip[i], 3, 1), ExtremeKind::LocalMin);
    }
}
