//! Matching grounded references to ranked prominent features.

use super::ground::Target;
use crate::prominence::ChartFeature;

/// Minimum share of the union two trends must have in common, as a
/// percentage.
pub const MIN_OVERLAP_PERCENT: usize = 95;

/// Intersection and union sizes of two inclusive index ranges.
pub fn overlap(a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    let inter = if a.1.min(b.1) >= a.0.max(b.0) {
        a.1.min(b.1) - a.0.max(b.0) + 1
    } else {
        0
    };
    let union = (a.1 - a.0 + 1) + (b.1 - b.0 + 1) - inter;
    (inter, union)
}

/// Whether `target` refers to `feature`: the same vertex for points, at
/// least 95% of the union covered by both for trends.
pub fn matches(target: Target, feature: &ChartFeature) -> bool {
    match (target, feature.is_point()) {
        (Target::Point { index }, true) => feature.covered() == (index, index),
        (Target::Trend { start, end }, false) => {
            let (inter, union) = overlap((start, end), feature.covered());
            inter * 100 >= union * MIN_OVERLAP_PERCENT
        }
        _ => false,
    }
}

/// Position in `features` (ordered by rank) of the best feature matching
/// `target`.
pub fn best_match(target: Target, features: &[ChartFeature]) -> Option<usize> {
    features
        .iter()
        .enumerate()
        .filter(|(_, f)| matches(target, f))
        .min_by_key(|(_, f)| f.rank)
        .map(|(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusive_overlap() {
        assert_eq!(overlap((1, 95), (1, 100)), (95, 100));
        assert_eq!(overlap((1, 94), (1, 100)), (94, 100));
        assert_eq!(overlap((0, 3), (5, 9)), (0, 9));
        assert_eq!(overlap((4, 4), (4, 4)), (1, 1));
    }
}
