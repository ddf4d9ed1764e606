use std::collections::BTreeSet;

use crate::chart::NormalizedPolyline;

/// Distance from `p` to the infinite line through `a` and `b`.
pub fn perpendicular_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len = dx.hypot(dy);
    if len == 0.0 {
        return (p.0 - a.0).hypot(p.1 - a.1);
    }
    (dx * (p.1 - a.1) - dy * (p.0 - a.0)).abs() / len
}

/// Farthest interior vertex of `vertices[lo..=hi]` from the chord, ties to the
/// smaller index. `None` when there is no interior vertex.
pub(crate) fn farthest(vertices: &[(f64, f64)], lo: usize, hi: usize) -> Option<(usize, f64)> {
    let (a, b) = (vertices[lo], vertices[hi]);
    let mut best: Option<(usize, f64)> = None;
    for (k, &p) in vertices.iter().enumerate().take(hi).skip(lo + 1) {
        let d = perpendicular_distance(p, a, b);
        if best.is_none_or(|(_, bd)| d > bd) {
            best = Some((k, d));
        }
    }
    best
}

/// Vertex indices kept by Ramer-Douglas-Peucker at threshold `epsilon`, in
/// ascending order. An interior vertex is kept when its distance strictly
/// exceeds `epsilon`.
pub fn rdp_retained(polyline: &NormalizedPolyline, epsilon: f64) -> Vec<usize> {
    let v = &polyline.vertices;
    let n = v.len();
    let mut kept = BTreeSet::new();
    if n == 0 {
        return Vec::new();
    }
    kept.insert(0);
    kept.insert(n - 1);
    let mut stack = vec![(0, n - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if let Some((k, d)) = farthest(v, lo, hi) {
            if d > epsilon {
                kept.insert(k);
                stack.push((lo, k));
                stack.push((k, hi));
            }
        }
    }
    kept.into_iter().collect()
}
