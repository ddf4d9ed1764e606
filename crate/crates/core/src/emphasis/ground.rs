//! Locating caption references in the data.

use std::ops::Range;

use serde::Serialize;

use crate::caption::{DescriptionKind, ReferencePair};
use crate::chart::{DateRange, TimeSeries};

/// Where a reference lands in the clipped series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Target {
    Point { index: usize },
    Trend { start: usize, end: usize },
}

impl Target {
    /// Inclusive index range the target covers.
    pub fn covered(&self) -> (usize, usize) {
        match *self {
            Target::Point { index } => (index, index),
            Target::Trend { start, end } => (start, end),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundError {
    /// A mentioned time has no samples in the chart.
    OutOfChart,
}

/// Earliest index with the extreme value in `range`.
fn extreme(series: &TimeSeries, range: Range<usize>, want_max: bool) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in range {
        let y = series.y(i);
        let better = match best {
            None => true,
            Some(b) if want_max => y > series.y(b),
            Some(b) => y < series.y(b),
        };
        if better {
            best = Some(i);
        }
    }
    best
}

fn window(series: &TimeSeries, w: Option<DateRange>) -> Result<Option<Range<usize>>, GroundError> {
    match w {
        None => Ok(None),
        Some(w) => {
            let r = series.indices_within(&w);
            if r.is_empty() {
                Err(GroundError::OutOfChart)
            } else {
                Ok(Some(r))
            }
        }
    }
}

/// Neighbouring pair for a trend squeezed onto a single sample.
fn adjacent(series: &TimeSeries, i: usize) -> Target {
    if i > 0 {
        Target::Trend { start: i - 1, end: i }
    } else {
        Target::Trend {
            start: 0,
            end: 1.min(series.len() - 1),
        }
    }
}

/// Grounds a reference pair in `series` (already clipped to the chart).
///
/// Extremum descriptions take the argmax or argmin over the referenced
/// window. Trends pick the start among start candidates and the end among
/// end candidates, lowest then highest for a rise. An open side takes every
/// point before (or after) the chosen opposite endpoint.
pub fn ground(pair: &ReferencePair, series: &TimeSeries) -> Result<Target, GroundError> {
    let start = window(series, pair.start_window())?;
    let end = window(series, pair.end_window())?;
    let kind = pair.description.kind;
    let n = series.len();

    if !kind.is_trend() {
        let range = match (start, end) {
            (Some(s), Some(e)) => s.start.min(e.start)..s.end.max(e.end),
            (Some(s), None) => s.start..n,
            (None, Some(e)) => 0..e.end,
            (None, None) => return Err(GroundError::OutOfChart),
        };
        let index = extreme(series, range, kind == DescriptionKind::LocalMax).ok_or(GroundError::OutOfChart)?;
        return Ok(Target::Point { index });
    }

    // Rise: start is the low point, end the high point.
    let rise = kind == DescriptionKind::Rise;
    let pick_start = |r: Range<usize>| extreme(series, r, !rise);
    let pick_end = |r: Range<usize>| extreme(series, r, rise);

    let (s, e) = match (start, end) {
        (Some(sw), Some(ew)) => {
            let s = pick_start(sw.clone()).expect("non-empty window");
            match pick_end(ew.start.max(s + 1)..ew.end) {
                Some(e) => (s, e),
                None => {
                    let e = pick_end(ew.clone()).expect("non-empty window");
                    match pick_start(sw.start..sw.end.min(e)) {
                        Some(s) => (s, e),
                        None => return Ok(adjacent(series, e)),
                    }
                }
            }
        }
        (Some(sw), None) => {
            let s = pick_start(sw).expect("non-empty window");
            match pick_end(s + 1..n) {
                Some(e) => (s, e),
                None => return Ok(adjacent(series, s)),
            }
        }
        (None, Some(ew)) => {
            let e = pick_end(ew).expect("non-empty window");
            match pick_start(0..e) {
                Some(s) => (s, e),
                None => return Ok(adjacent(series, e)),
            }
        }
        (None, None) => return Err(GroundError::OutOfChart),
    };
    Ok(Target::Trend { start: s, end: e })
}

/// True when the data contradicts a claimed trend direction. Flat data
/// contradicts neither direction.
pub fn check_factual(kind: DescriptionKind, target: Target, series: &TimeSeries) -> bool {
    let Target::Trend { start, end } = target else {
        return false;
    };
    let (a, b) = (series.y(start), series.y(end));
    match kind {
        DescriptionKind::Rise => b < a,
        DescriptionKind::Fall => b > a,
        _ => false,
    }
}
