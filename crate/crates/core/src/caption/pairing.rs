//! Pairs data descriptions with the time mentions that locate them.
//!
//! Distance between a description and a time mention counts the tokens
//! strictly between them plus a penalty for each clause boundary crossed.
//! Every mention goes to its nearest description; each description then
//! keeps its nearest mention, merged with a complementary start or end
//! mention when one is available.

use serde::Serialize;

use super::describe::DataDescription;
use super::time::{BoundaryRole, TimeReference};
use super::token::Token;
use crate::chart::DateRange;

/// Extra distance for each clause boundary between two spans.
pub const CLAUSE_PENALTY: usize = 3;

const CONJUNCTIONS: &[&str] = &["and", "but", "or", "so", "yet", "while", "whereas", "nor"];

/// A description together with the time mentions that ground it.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReferencePair {
    pub description: DataDescription,
    /// One mention, or a start mention followed by an end mention.
    pub times: Vec<TimeReference>,
}

impl ReferencePair {
    /// Where the described feature begins: the whole unit of a point
    /// mention or the start mention's unit. `None` when only an end is given.
    pub fn start_window(&self) -> Option<DateRange> {
        self.times.iter().find(|t| t.role != BoundaryRole::End).map(|t| t.unit)
    }

    pub fn end_window(&self) -> Option<DateRange> {
        self.times
            .iter()
            .rev()
            .find(|t| t.role != BoundaryRole::Start)
            .map(|t| t.unit)
    }

    /// Resolved bounds: start of the first unit and end of the last, each
    /// absent if the caption leaves that side open.
    pub fn combined_start(&self) -> Option<chrono::NaiveDate> {
        self.start_window().map(|w| w.first)
    }

    pub fn combined_end(&self) -> Option<chrono::NaiveDate> {
        self.end_window().map(|w| w.last)
    }
}

fn is_boundary(tok: &Token) -> bool {
    matches!(tok.text.as_str(), "," | ";" | ":") || CONJUNCTIONS.contains(&tok.lower().as_str())
}

/// Token distance between two disjoint token ranges.
pub fn distance(tokens: &[Token], a: &std::ops::Range<usize>, b: &std::ops::Range<usize>) -> usize {
    let (lo, hi) = if a.end <= b.start {
        (a.end, b.start)
    } else {
        (b.end, a.start)
    };
    if hi <= lo {
        return 0;
    }
    let boundaries = tokens[lo..hi].iter().filter(|t| is_boundary(t)).count();
    (hi - lo) + CLAUSE_PENALTY * boundaries
}

/// Index of the nearest candidate; ties go to the candidate that comes
/// first in the sentence.
fn nearest<T>(
    tokens: &[Token],
    from: &std::ops::Range<usize>,
    candidates: impl Iterator<Item = (usize, T)>,
    range_of: impl Fn(&T) -> std::ops::Range<usize>,
) -> Option<usize> {
    candidates
        .map(|(i, c)| {
            let r = range_of(&c);
            (distance(tokens, from, &r), r.start, i)
        })
        .min_by_key(|&(d, start, _)| (d, start))
        .map(|(_, _, i)| i)
}

pub fn pair_references(
    tokens: &[Token],
    descriptions: &[DataDescription],
    times: &[TimeReference],
) -> Vec<ReferencePair> {
    if descriptions.is_empty() {
        return Vec::new();
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); descriptions.len()];
    for (ti, t) in times.iter().enumerate() {
        let owner = nearest(tokens, &t.tokens, descriptions.iter().enumerate(), |d| d.tokens.clone())
            .expect("descriptions is non-empty");
        groups[owner].push(ti);
    }

    let mut out = Vec::new();
    for (di, desc) in descriptions.iter().enumerate() {
        let group = &groups[di];
        let Some(first) = nearest(tokens, &desc.tokens, group.iter().map(|&ti| (ti, &times[ti])), |t| {
            t.tokens.clone()
        }) else {
            continue;
        };
        let primary = &times[first];
        let complement = match primary.role {
            BoundaryRole::Point => None,
            BoundaryRole::Start => Some(BoundaryRole::End),
            BoundaryRole::End => Some(BoundaryRole::Start),
        };
        let partner = complement.and_then(|role| {
            let others = group
                .iter()
                .filter(|&&ti| ti != first && times[ti].role == role)
                .map(|&ti| (ti, &times[ti]));
            nearest(tokens, &desc.tokens, others, |t| t.tokens.clone())
        });
        let mut picked = vec![primary.clone()];
        if let Some(p) = partner {
            picked.push(times[p].clone());
            picked.sort_by_key(|t| t.role == BoundaryRole::End);
        }
        out.push(ReferencePair {
            description: desc.clone(),
            times: picked,
        });
    }
    out
}
