//! Temporal expressions in caption text.
//!
//! A small hand-written grammar over tokens recognizes years, decades,
//! month-year, full dates, bare month names, seasons, quarters and trailing
//! durations ("the last six months"). Each mention resolves to the calendar
//! range of its unit, widened to the series granularity, and is classified
//! as a range start, range end or standalone point from the words before it.

use std::fmt;
use std::ops::Range;

use chrono::{Datelike, Days, Months, NaiveDate};
use serde::{Serialize, Serializer};

use super::token::{Token, TokenKind};
use crate::chart::{DateRange, Granularity};
use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryRole {
    Point,
    Start,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Season {
    Spring,
    Summer,
    Fall,
    Winter,
}

impl Season {
    /// Meteorological seasons; winter runs December through February of the
    /// following year.
    pub fn range(self, year: i32) -> Option<DateRange> {
        let (m0, y1, m1) = match self {
            Season::Spring => (3, year, 5),
            Season::Summer => (6, year, 8),
            Season::Fall => (9, year, 11),
            Season::Winter => (12, year + 1, 2),
        };
        Some(DateRange::new(
            NaiveDate::from_ymd_opt(year, m0, 1)?,
            month_range(y1, m1)?.last,
        ))
    }

    fn name(self) -> &'static str {
        match self {
            Season::Spring => "spring",
            Season::Summer => "summer",
            Season::Fall => "fall",
            Season::Winter => "winter",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DurationUnit {
    Day,
    Week,
    Month,
    Year,
    Decade,
}

/// A parsed time expression before boundary classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeExpr {
    Year(i32),
    /// First year of the decade.
    Decade(i32),
    Month {
        year: i32,
        month: u32,
    },
    Day(NaiveDate),
    Season {
        season: Season,
        year: i32,
    },
    Quarter {
        quarter: u32,
        year: i32,
    },
    /// A month name without a year, resolved to its latest occurrence in
    /// the chart window.
    BareMonth {
        month: u32,
        year: i32,
    },
    /// Trailing duration ending at the chart window's end.
    Last {
        count: u32,
        unit: DurationUnit,
    },
}

/// Granularity of the mention itself, before widening.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MentionGranularity {
    Day,
    Month,
    Season,
    Quarter,
    Year,
    Decade,
    Duration,
}

const MONTHS: [&str; 12] = [
    "january",
    "february",
    "march",
    "april",
    "may",
    "june",
    "july",
    "august",
    "september",
    "october",
    "november",
    "december",
];

fn month_range(year: i32, month: u32) -> Option<DateRange> {
    let first = NaiveDate::from_ymd_opt(year, month, 1)?;
    Some(DateRange::new(first, first + Months::new(1) - Days::new(1)))
}

fn year_range(year: i32) -> Option<DateRange> {
    Some(DateRange::new(
        NaiveDate::from_ymd_opt(year, 1, 1)?,
        NaiveDate::from_ymd_opt(year, 12, 31)?,
    ))
}

impl TimeExpr {
    pub fn granularity(&self) -> MentionGranularity {
        match self {
            TimeExpr::Year(_) => MentionGranularity::Year,
            TimeExpr::Decade(_) => MentionGranularity::Decade,
            TimeExpr::Month { .. } | TimeExpr::BareMonth { .. } => MentionGranularity::Month,
            TimeExpr::Day(_) => MentionGranularity::Day,
            TimeExpr::Season { .. } => MentionGranularity::Season,
            TimeExpr::Quarter { .. } => MentionGranularity::Quarter,
            TimeExpr::Last { .. } => MentionGranularity::Duration,
        }
    }

    /// Calendar range of the mentioned unit. `window_end` anchors trailing
    /// durations.
    pub fn unit_range(&self, window_end: NaiveDate) -> Option<DateRange> {
        match *self {
            TimeExpr::Year(y) => year_range(y),
            TimeExpr::Decade(y) => Some(year_range(y)?.hull(&year_range(y + 9)?)),
            TimeExpr::Month { year, month } | TimeExpr::BareMonth { month, year } => month_range(year, month),
            TimeExpr::Day(d) => Some(DateRange::day(d)),
            TimeExpr::Season { season, year } => season.range(year),
            TimeExpr::Quarter { quarter, year } => {
                let first = month_range(year, 3 * quarter - 2)?;
                Some(first.hull(&month_range(year, 3 * quarter)?))
            }
            TimeExpr::Last { count, unit } => {
                // Count back from the day after the window so month lengths
                // line up: six months ending June 30 start January 1.
                let next = window_end.succ_opt()?;
                let n = u64::from(count);
                let first = match unit {
                    DurationUnit::Day => next.checked_sub_days(Days::new(n)),
                    DurationUnit::Week => next.checked_sub_days(Days::new(7 * n)),
                    DurationUnit::Month => next.checked_sub_months(Months::new(count)),
                    DurationUnit::Year => next.checked_sub_months(Months::new(12 * count)),
                    DurationUnit::Decade => next.checked_sub_months(Months::new(120 * count)),
                }?;
                Some(DateRange::new(first, window_end))
            }
        }
    }
}

/// Canonical surface text; parsing it yields the same expression.
impl fmt::Display for TimeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let month_name = |m: u32| {
            let name = MONTHS[m as usize - 1];
            let mut s = name[..1].to_uppercase();
            s.push_str(&name[1..]);
            s
        };
        match *self {
            TimeExpr::Year(y) => write!(f, "{y}"),
            TimeExpr::Decade(y) => write!(f, "the {y}s"),
            TimeExpr::Month { year, month } => write!(f, "{} {year}", month_name(month)),
            TimeExpr::Day(d) => write!(f, "{} {}, {}", month_name(d.month()), d.day(), d.year()),
            TimeExpr::Season { season, year } => write!(f, "{} {year}", season.name()),
            TimeExpr::Quarter { quarter, year } => write!(f, "Q{quarter} {year}"),
            TimeExpr::BareMonth { month, .. } => f.write_str(&month_name(month)),
            TimeExpr::Last { count, unit } => {
                let unit = match unit {
                    DurationUnit::Day => "day",
                    DurationUnit::Week => "week",
                    DurationUnit::Month => "month",
                    DurationUnit::Year => "year",
                    DurationUnit::Decade => "decade",
                };
                if count == 1 {
                    write!(f, "the last {unit}")
                } else {
                    write!(f, "the last {count} {unit}s")
                }
            }
        }
    }
}

impl Serialize for TimeExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A time mention in a caption sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TimeReference {
    pub span: Span,
    pub role: BoundaryRole,
    pub expr: TimeExpr,
    /// Mentioned unit widened to the series granularity.
    pub unit: DateRange,
    /// Token indices within the sentence.
    #[serde(skip)]
    pub tokens: Range<usize>,
}

impl TimeReference {
    pub fn resolved_start(&self) -> Option<NaiveDate> {
        (self.role != BoundaryRole::End).then_some(self.unit.first)
    }

    pub fn resolved_end(&self) -> Option<NaiveDate> {
        (self.role != BoundaryRole::Start).then_some(self.unit.last)
    }

    pub fn granularity_of_mention(&self) -> MentionGranularity {
        self.expr.granularity()
    }
}

/// Context for resolving mentions: the series granularity and chart window.
#[derive(Debug, Clone, Copy)]
pub struct TimeContext {
    pub granularity: Granularity,
    pub window: DateRange,
}

const FILLERS: &[&str] = &[
    "around",
    "about",
    "approximately",
    "roughly",
    "circa",
    "nearly",
    "early",
    "late",
    "mid",
    "the",
];
const START_WORDS: &[&str] = &["from", "since", "after", "starting", "beginning"];
const END_WORDS: &[&str] = &["to", "until", "till", "through", "thru", "by", "ending"];
const PREPOSITIONS: &[&str] = &[
    "in",
    "by",
    "since",
    "from",
    "until",
    "till",
    "to",
    "through",
    "after",
    "before",
    "during",
    "of",
    "between",
    "and",
    "around",
    "starting",
    "beginning",
    "ending",
    "early",
    "late",
    "mid",
    "last",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cue {
    Start,
    End,
    Between,
    And,
    None,
}

struct Cursor<'a> {
    tokens: &'a [Token],
    lower: Vec<String>,
}

impl<'a> Cursor<'a> {
    fn new(tokens: &'a [Token]) -> Self {
        Cursor {
            tokens,
            lower: tokens.iter().map(Token::lower).collect(),
        }
    }

    fn word(&self, i: usize) -> Option<&str> {
        self.lower.get(i).map(String::as_str)
    }

    fn is(&self, i: usize, w: &str) -> bool {
        self.word(i) == Some(w)
    }

    fn capitalized(&self, i: usize) -> bool {
        self.tokens
            .get(i)
            .and_then(|t| t.text.chars().next())
            .is_some_and(char::is_uppercase)
    }

    fn year(&self, i: usize) -> Option<i32> {
        let t = self.tokens.get(i)?;
        if t.kind != TokenKind::Number || t.text.len() != 4 || !t.text.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let y: i32 = t.text.parse().ok()?;
        if !(1000..=2999).contains(&y) {
            return None;
        }
        // "$1500", "1999%"
        if i > 0 && self.is(i - 1, "$") || self.is(i + 1, "%") {
            return None;
        }
        Some(y)
    }

    fn month(&self, i: usize) -> Option<u32> {
        let w = self.word(i)?;
        if !self.capitalized(i) {
            return None;
        }
        MONTHS
            .iter()
            .position(|m| *m == w || (w.len() >= 3 && m.starts_with(w) && (w.len() == 3 || w == "sept")))
            .map(|p| p as u32 + 1)
    }

    fn day_of_month(&self, i: usize) -> Option<u32> {
        let w = self.word(i)?;
        let digits = w
            .strip_suffix("st")
            .or_else(|| w.strip_suffix("nd"))
            .or_else(|| w.strip_suffix("rd"))
            .or_else(|| w.strip_suffix("th"))
            .unwrap_or(w);
        if digits.is_empty() || digits.len() > 2 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        digits.parse().ok().filter(|d| (1..=31).contains(d))
    }

    fn season(&self, i: usize) -> Option<Season> {
        match self.word(i)? {
            "spring" => Some(Season::Spring),
            "summer" => Some(Season::Summer),
            "fall" | "autumn" => Some(Season::Fall),
            "winter" => Some(Season::Winter),
            _ => None,
        }
    }

    fn count(&self, i: usize) -> Option<u32> {
        let w = self.word(i)?;
        if let Ok(n) = w.parse::<u32>() {
            return (n > 0).then_some(n);
        }
        let n = match w {
            "one" => 1,
            "two" => 2,
            "three" => 3,
            "four" => 4,
            "five" => 5,
            "six" => 6,
            "seven" => 7,
            "eight" => 8,
            "nine" => 9,
            "ten" => 10,
            "eleven" => 11,
            "twelve" => 12,
            "fifteen" => 15,
            "eighteen" => 18,
            "twenty" => 20,
            "thirty" => 30,
            "fifty" => 50,
            _ => return None,
        };
        Some(n)
    }

    fn duration_unit(&self, i: usize) -> Option<DurationUnit> {
        let w = self.word(i)?;
        let w = w.strip_suffix('s').unwrap_or(w);
        match w {
            "day" => Some(DurationUnit::Day),
            "week" => Some(DurationUnit::Week),
            "month" => Some(DurationUnit::Month),
            "year" => Some(DurationUnit::Year),
            "decade" => Some(DurationUnit::Decade),
            _ => None,
        }
    }

    /// Skips an optional "." after an abbreviated month and an optional ",".
    fn skip_month_punct(&self, mut i: usize) -> usize {
        if self.is(i, ".") {
            i += 1;
        }
        if self.is(i, ",") {
            i += 1;
        }
        i
    }
}

/// A recognized mention: token range and expression. Year ranges written
/// as one token produce two mentions with sub-token spans.
struct Mention {
    tokens: Range<usize>,
    span: Span,
    expr: TimeExpr,
    forced: Option<BoundaryRole>,
}

fn ordinal_quarter(w: &str) -> Option<u32> {
    match w {
        "first" | "1st" => Some(1),
        "second" | "2nd" => Some(2),
        "third" | "3rd" => Some(3),
        "fourth" | "4th" => Some(4),
        _ => None,
    }
}

fn span_of(tokens: &[Token], r: &Range<usize>) -> Span {
    tokens[r.start].span.cover(tokens[r.end - 1].span)
}

/// Tries every pattern at token `i`. Returns the mentions and the index just
/// past them.
fn match_at(c: &Cursor, i: usize, ctx: &TimeContext) -> Option<(Vec<Mention>, usize)> {
    let single = |end: usize, expr: TimeExpr| {
        let tokens = i..end;
        Some((
            vec![Mention {
                span: span_of(c.tokens, &tokens),
                tokens,
                expr,
                forced: None,
            }],
            end,
        ))
    };

    if c.is(i, "the") {
        let j = i + 1;
        // the 1990s
        if let Some(decade) = c.word(j).and_then(parse_decade) {
            return single(j + 1, TimeExpr::Decade(decade));
        }
        // the last six months / the past decade
        if matches!(c.word(j), Some("last" | "past" | "previous")) {
            if let Some(unit) = c.duration_unit(j + 1) {
                if !c.word(j + 1).is_some_and(|w| w.ends_with('s')) {
                    return single(j + 2, TimeExpr::Last { count: 1, unit });
                }
            }
            if let (Some(count), Some(unit)) = (c.count(j + 1), c.duration_unit(j + 2)) {
                return single(j + 3, TimeExpr::Last { count, unit });
            }
        }
        // the summer of 2019
        if let Some(season) = c.season(j) {
            if c.is(j + 1, "of") {
                if let Some(year) = c.year(j + 2) {
                    return single(j + 3, TimeExpr::Season { season, year });
                }
            }
        }
        // the third quarter of 2019
        if let Some(quarter) = c.word(j).and_then(ordinal_quarter) {
            if c.is(j + 1, "quarter") && c.is(j + 2, "of") {
                if let Some(year) = c.year(j + 3) {
                    return single(j + 4, TimeExpr::Quarter { quarter, year });
                }
            }
        }
        return None;
    }

    let w = c.word(i)?;

    // Q3 2019, Q3 of 2019
    if w.len() == 2 && w.starts_with('q') {
        if let Some(quarter) = w[1..].parse::<u32>().ok().filter(|q| (1..=4).contains(q)) {
            let j = if c.is(i + 1, "of") { i + 2 } else { i + 1 };
            if let Some(year) = c.year(j) {
                return single(j + 1, TimeExpr::Quarter { quarter, year });
            }
        }
    }

    // summer 2019, summer of 2019
    if let Some(season) = c.season(i) {
        let j = if c.is(i + 1, "of") { i + 2 } else { i + 1 };
        if let Some(year) = c.year(j) {
            return single(j + 1, TimeExpr::Season { season, year });
        }
    }

    if let Some(month) = c.month(i) {
        let j = c.skip_month_punct(i + 1);
        // March 5, 2020
        if let Some(day) = c.day_of_month(j) {
            let k = if c.is(j + 1, ",") { j + 2 } else { j + 1 };
            if let Some(year) = c.year(k) {
                return NaiveDate::from_ymd_opt(year, month, day).and_then(|d| single(k + 1, TimeExpr::Day(d)));
            }
        }
        // Nov 1997, March of 2020
        let j = if c.is(j, "of") { j + 1 } else { j };
        if let Some(year) = c.year(j) {
            return single(j + 1, TimeExpr::Month { year, month });
        }
        // in March
        let after_preposition = i > 0 && c.word(i - 1).is_some_and(|p| PREPOSITIONS.contains(&p));
        if after_preposition {
            if let Some(year) = latest_occurrence(month, &ctx.window) {
                return single(i + 1, TimeExpr::BareMonth { month, year });
            }
        }
        return None;
    }

    // 5 March 2020
    if let Some(day) = c.day_of_month(i) {
        if let Some(month) = c.month(i + 1) {
            let j = c.skip_month_punct(i + 2);
            if let Some(year) = c.year(j) {
                return NaiveDate::from_ymd_opt(year, month, day).and_then(|d| single(j + 1, TimeExpr::Day(d)));
            }
        }
    }

    let token = &c.tokens[i];
    if token.kind == TokenKind::Number {
        // 2020-03-05
        if let Ok(d) = NaiveDate::parse_from_str(&token.text, "%Y-%m-%d") {
            return single(i + 1, TimeExpr::Day(d));
        }
        // 1970-1980, 1970–1980
        if let Some((a, b, split)) = parse_year_range(&token.text) {
            let base = token.span.start;
            let first = Span::new(base, base + 4);
            let second = Span::new(base + split, token.span.end);
            return Some((
                vec![
                    Mention {
                        tokens: i..i + 1,
                        span: first,
                        expr: TimeExpr::Year(a),
                        forced: Some(BoundaryRole::Start),
                    },
                    Mention {
                        tokens: i..i + 1,
                        span: second,
                        expr: TimeExpr::Year(b),
                        forced: Some(BoundaryRole::End),
                    },
                ],
                i + 1,
            ));
        }
        if let Some(decade) = parse_decade(w) {
            return single(i + 1, TimeExpr::Decade(decade));
        }
        if let Some(year) = c.year(i) {
            return single(i + 1, TimeExpr::Year(year));
        }
    }
    None
}

fn parse_decade(w: &str) -> Option<i32> {
    let digits = w
        .strip_suffix("'s")
        .or_else(|| w.strip_suffix("’s"))
        .or_else(|| w.strip_suffix('s'))?;
    if digits.len() != 4 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let y: i32 = digits.parse().ok()?;
    ((1000..=2990).contains(&y) && y % 10 == 0).then_some(y)
}

/// `1970-1980` → (1970, 1980, byte offset of the second year).
fn parse_year_range(text: &str) -> Option<(i32, i32, usize)> {
    let (a, rest, sep_len) = if let Some((a, b)) = text.split_once('-') {
        (a, b, 1)
    } else {
        let (a, b) = text.split_once('–')?;
        (a, b, '–'.len_utf8())
    };
    let valid = |s: &str| s.len() == 4 && s.bytes().all(|b| b.is_ascii_digit());
    if !valid(a) || !valid(rest) {
        return None;
    }
    let (x, y): (i32, i32) = (a.parse().ok()?, rest.parse().ok()?);
    ((1000..=2999).contains(&x) && (1000..=2999).contains(&y) && x < y).then_some((x, y, 4 + sep_len))
}

/// Latest year whose `month` overlaps the window.
fn latest_occurrence(month: u32, window: &DateRange) -> Option<i32> {
    let mut year = window.last.year();
    if month_range(year, month)?.first > window.last {
        year -= 1;
    }
    month_range(year, month)?.overlaps(window).then_some(year)
}

/// The cue word before token `i`, skipping fillers.
fn cue_before(c: &Cursor, i: usize) -> Cue {
    let mut k = i;
    while k > 0 && c.word(k - 1).is_some_and(|w| FILLERS.contains(&w)) {
        k -= 1;
    }
    if k == 0 {
        return Cue::None;
    }
    let p1 = c.word(k - 1).unwrap_or("");
    if START_WORDS.contains(&p1) {
        return Cue::Start;
    }
    if END_WORDS.contains(&p1) {
        return Cue::End;
    }
    match p1 {
        "between" => Cue::Between,
        "and" => Cue::And,
        "in" | "at" | "on" | "around" if k >= 2 => match c.word(k - 2) {
            Some("starting" | "beginning") => Cue::Start,
            Some("ending") => Cue::End,
            _ => Cue::None,
        },
        _ => Cue::None,
    }
}

/// Finds the time references of one sentence.
pub fn extract_time_refs(tokens: &[Token], ctx: &TimeContext) -> Vec<TimeReference> {
    let c = Cursor::new(tokens);
    let mut mentions: Vec<(Mention, Cue)> = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        match match_at(&c, i, ctx) {
            Some((found, next)) => {
                for m in found {
                    let cue = cue_before(&c, m.tokens.start);
                    mentions.push((m, cue));
                }
                i = next;
            }
            None => i += 1,
        }
    }

    let mut roles: Vec<BoundaryRole> = mentions
        .iter()
        .map(|(m, cue)| {
            m.forced.unwrap_or(match cue {
                Cue::Start => BoundaryRole::Start,
                Cue::End => BoundaryRole::End,
                _ => BoundaryRole::Point,
            })
        })
        .collect();
    // between T1 and T2
    for k in 0..mentions.len().saturating_sub(1) {
        let (a, cue_a) = &mentions[k];
        let (b, cue_b) = &mentions[k + 1];
        if *cue_a == Cue::Between
            && *cue_b == Cue::And
            && a.forced.is_none()
            && b.tokens.start > a.tokens.end
            && c.is(a.tokens.end, "and")
        {
            roles[k] = BoundaryRole::Start;
            roles[k + 1] = BoundaryRole::End;
        }
    }

    mentions
        .into_iter()
        .zip(roles)
        .filter_map(|((m, _), role)| {
            let raw = m.expr.unit_range(ctx.window.last)?;
            Some(TimeReference {
                span: m.span,
                role,
                expr: m.expr,
                unit: ctx.granularity.widen(raw),
                tokens: m.tokens,
            })
        })
        .collect()
}
