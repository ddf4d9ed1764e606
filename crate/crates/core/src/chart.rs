//! Series and chart model: validation, axis clipping, granularity detection
//! and diagonal-normalized plot geometry.

use std::fmt;

use chrono::{Datelike, Days, Months, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Days since 1970-01-01; the linear time axis.
pub fn day_number(date: NaiveDate) -> i64 {
    date.signed_duration_since(NaiveDate::from_ymd_opt(1970, 1, 1).unwrap())
        .num_days()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: NaiveDate,
    pub y: f64,
}

/// Ordered `(date, value)` samples of a single series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct TimeSeries {
    points: Vec<Sample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

#[derive(Deserialize)]
struct RawSeries {
    points: Vec<Sample>,
    #[serde(default)]
    name: Option<String>,
}

impl TryFrom<RawSeries> for TimeSeries {
    type Error = Error;

    fn try_from(raw: RawSeries) -> Result<Self> {
        TimeSeries::new(raw.points, raw.name)
    }
}

impl TimeSeries {
    pub fn new(points: Vec<Sample>, name: Option<String>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidSeries(format!(
                "{} point(s), at least 2 required",
                points.len()
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.y.is_finite() {
                return Err(Error::InvalidSeries(format!("value at index {i} is not finite")));
            }
        }
        if let Some(i) = points.windows(2).position(|w| w[0].t >= w[1].t) {
            return Err(Error::InvalidSeries(format!(
                "timestamps not strictly increasing at index {} ({} then {})",
                i + 1,
                points[i].t,
                points[i + 1].t
            )));
        }
        Ok(TimeSeries { points, name })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (NaiveDate, f64)>) -> Result<Self> {
        Self::new(pairs.into_iter().map(|(t, y)| Sample { t, y }).collect(), None)
    }

    pub fn points(&self) -> &[Sample] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn first_date(&self) -> NaiveDate {
        self.points[0].t
    }

    pub fn last_date(&self) -> NaiveDate {
        self.points[self.points.len() - 1].t
    }

    pub fn y(&self, index: usize) -> f64 {
        self.points[index].y
    }

    pub fn date(&self, index: usize) -> NaiveDate {
        self.points[index].t
    }

    /// Minimum and maximum value.
    pub fn value_extent(&self) -> (f64, f64) {
        self.points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                (lo.min(p.y), hi.max(p.y))
            })
    }

    /// Index of the point dated exactly `date`, if any.
    pub fn index_of(&self, date: NaiveDate) -> Option<usize> {
        self.points.binary_search_by(|p| p.t.cmp(&date)).ok()
    }

    /// Indices of points whose date falls inside `range`.
    pub fn indices_within(&self, range: &DateRange) -> std::ops::Range<usize> {
        let lo = self.points.partition_point(|p| p.t < range.first);
        let hi = self.points.partition_point(|p| p.t <= range.last);
        lo..hi.max(lo)
    }
}

/// Inclusive calendar range `[first, last]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DateRange {
    pub first: NaiveDate,
    pub last: NaiveDate,
}

impl DateRange {
    pub fn new(first: NaiveDate, last: NaiveDate) -> Self {
        debug_assert!(first <= last);
        DateRange { first, last }
    }

    pub fn day(date: NaiveDate) -> Self {
        DateRange::new(date, date)
    }

    pub fn year(year: i32) -> Self {
        DateRange::new(
            NaiveDate::from_ymd_opt(year, 1, 1).unwrap(),
            NaiveDate::from_ymd_opt(year, 12, 31).unwrap(),
        )
    }

    pub fn month(year: i32, month: u32) -> Self {
        let first = NaiveDate::from_ymd_opt(year, month, 1).unwrap();
        let last = first + Months::new(1) - Days::new(1);
        DateRange::new(first, last)
    }

    pub fn contains(&self, date: NaiveDate) -> bool {
        self.first <= date && date <= self.last
    }

    pub fn overlaps(&self, other: &DateRange) -> bool {
        self.first <= other.last && other.first <= self.last
    }

    /// Smallest range covering both.
    pub fn hull(&self, other: &DateRange) -> DateRange {
        DateRange::new(self.first.min(other.first), self.last.max(other.last))
    }
}

/// Finest time unit of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    Day,
    Week,
    Month,
    Year,
}

impl Granularity {
    pub const ALL: [Granularity; 4] = [
        Granularity::Day,
        Granularity::Week,
        Granularity::Month,
        Granularity::Year,
    ];

    pub fn nominal_days(self) -> f64 {
        match self {
            Granularity::Day => 1.0,
            Granularity::Week => 7.0,
            Granularity::Month => 28.0,
            Granularity::Year => 365.0,
        }
    }

    /// The unit of this granularity that contains `date`. Weeks run Monday
    /// through Sunday.
    pub fn enclosing(self, date: NaiveDate) -> DateRange {
        match self {
            Granularity::Day => DateRange::day(date),
            Granularity::Week => {
                let monday = date - Days::new(u64::from(date.weekday().num_days_from_monday()));
                DateRange::new(monday, monday + Days::new(6))
            }
            Granularity::Month => DateRange::month(date.year(), date.month()),
            Granularity::Year => DateRange::year(date.year()),
        }
    }

    /// Widens `range` so that it covers whole units of this granularity.
    pub fn widen(self, range: DateRange) -> DateRange {
        self.enclosing(range.first).hull(&self.enclosing(range.last))
    }
}

impl fmt::Display for Granularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Granularity::Day => "day",
            Granularity::Week => "week",
            Granularity::Month => "month",
            Granularity::Year => "year",
        })
    }
}

/// Plot dimensions and axis ranges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", try_from = "RawChartSpec")]
pub struct ChartSpec {
    pub plot_width: f64,
    pub plot_height: f64,
    pub x_range: [NaiveDate; 2],
    pub y_range: [f64; 2],
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct RawChartSpec {
    plot_width: f64,
    plot_height: f64,
    x_range: [NaiveDate; 2],
    y_range: [f64; 2],
}

impl TryFrom<RawChartSpec> for ChartSpec {
    type Error = Error;

    fn try_from(raw: RawChartSpec) -> Result<Self> {
        ChartSpec::new(raw.plot_width, raw.plot_height, raw.x_range, raw.y_range)
    }
}

impl ChartSpec {
    pub const DEFAULT_WIDTH: f64 = 640.0;
    pub const DEFAULT_HEIGHT: f64 = 480.0;

    pub fn new(plot_width: f64, plot_height: f64, x_range: [NaiveDate; 2], y_range: [f64; 2]) -> Result<Self> {
        if !(plot_width.is_finite() && plot_width > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "plotWidth must be positive, got {plot_width}"
            )));
        }
        if !(plot_height.is_finite() && plot_height > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "plotHeight must be positive, got {plot_height}"
            )));
        }
        if x_range[0] >= x_range[1] {
            return Err(Error::InvalidSpec(format!(
                "xRange start {} must precede end {}",
                x_range[0], x_range[1]
            )));
        }
        if !(y_range[0].is_finite() && y_range[1].is_finite() && y_range[0] < y_range[1]) {
            return Err(Error::InvalidSpec(format!(
                "yRange [{}, {}] must be finite and increasing",
                y_range[0], y_range[1]
            )));
        }
        Ok(ChartSpec {
            plot_width,
            plot_height,
            x_range,
            y_range,
        })
    }

    /// Full data extent on a `width × height` plot. A flat series gets a
    /// y range of ±1 around its value.
    pub fn fit(series: &TimeSeries, width: f64, height: f64) -> Result<Self> {
        let (lo, hi) = series.value_extent();
        let y_range = if lo < hi { [lo, hi] } else { [lo - 1.0, hi + 1.0] };
        ChartSpec::new(width, height, [series.first_date(), series.last_date()], y_range)
    }

    pub fn diagonal(&self) -> f64 {
        self.plot_width.hypot(self.plot_height)
    }

    pub fn x_window(&self) -> DateRange {
        DateRange::new(self.x_range[0], self.x_range[1])
    }
}

/// Restricts the series to points inside the x range. Values outside the y
/// range are kept.
pub fn clip(series: &TimeSeries, spec: &ChartSpec) -> Result<TimeSeries> {
    let window = series.indices_within(&spec.x_window());
    if window.len() < 2 {
        return Err(Error::EmptyChart(window.len()));
    }
    if window.len() == series.len() {
        return Ok(series.clone());
    }
    Ok(TimeSeries {
        points: series.points[window].to_vec(),
        name: series.name.clone(),
    })
}

/// Coarsest unit whose nominal length is at most the median sample spacing
/// divided by 0.9.
pub fn detect_granularity(series: &TimeSeries) -> Granularity {
    let mut gaps: Vec<i64> = series
        .points
        .windows(2)
        .map(|w| day_number(w[1].t) - day_number(w[0].t))
        .collect();
    gaps.sort_unstable();
    let mid = gaps.len() / 2;
    let median = if gaps.len() % 2 == 1 {
        gaps[mid] as f64
    } else {
        (gaps[mid - 1] + gaps[mid]) as f64 / 2.0
    };
    Granularity::ALL
        .into_iter()
        .rev()
        .find(|g| median >= 0.9 * g.nominal_days())
        .unwrap_or(Granularity::Day)
}

/// Polyline in plot coordinates scaled so the plot diagonal has length 1.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedPolyline {
    pub vertices: Vec<(f64, f64)>,
    pub source_index: Vec<usize>,
}

impl NormalizedPolyline {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Builds a polyline directly from normalized coordinates; `x` must be
    /// strictly increasing.
    pub fn from_vertices(vertices: Vec<(f64, f64)>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0].0 < w[1].0));
        let source_index = (0..vertices.len()).collect();
        NormalizedPolyline { vertices, source_index }
    }
}

/// Maps a clipped series into diagonal-normalized coordinates.
pub fn normalize(series: &TimeSeries, spec: &ChartSpec) -> NormalizedPolyline {
    // Derived from the aspect ratio alone so uniform resizing is exact.
    let aspect = spec.plot_height / spec.plot_width;
    let x_scale = 1.0 / aspect.hypot(1.0);
    let y_scale = aspect * x_scale;
    let t0 = day_number(spec.x_range[0]) as f64;
    let t_span = day_number(spec.x_range[1]) as f64 - t0;
    let [y_min, y_max] = spec.y_range;
    let vertices = series
        .points
        .iter()
        .map(|p| {
            let x = (day_number(p.t) as f64 - t0) / t_span * x_scale;
            let y = (p.y - y_min) / (y_max - y_min) * y_scale;
            (x, y)
        })
        .collect();
    NormalizedPolyline {
        vertices,
        source_index: (0..series.len()).collect(),
    }
}

#[cfg(test)]
pub(crate) fn ymd(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).unwrap()
}
