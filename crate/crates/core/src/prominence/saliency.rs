use crate::chart::{day_number, TimeSeries};

fn min_max(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        values.iter().map(|v| (v - lo) / (hi - lo)).collect()
    } else {
        vec![0.0; values.len()]
    }
}

/// Derivative-based saliency used as the comparison baseline:
/// `0.5·|value| + 0.5·|slope|`, both min-max normalized. The slope is a
/// central difference over day offsets (one-sided at the ends).
pub fn baseline_saliency(series: &TimeSeries) -> Vec<f64> {
    let pts = series.points();
    let n = pts.len();
    let t: Vec<f64> = pts.iter().map(|p| day_number(p.t) as f64).collect();
    let slope: Vec<f64> = (0..n)
        .map(|k| {
            let (a, b) = (k.saturating_sub(1), (k + 1).min(n - 1));
            (pts[b].y - pts[a].y) / (t[b] - t[a])
        })
        .collect();
    let values: Vec<f64> = pts.iter().map(|p| p.y).collect();
    min_max(&values)
        .into_iter()
        .zip(min_max(&slope))
        .map(|(v, d)| 0.5 * v.abs() + 0.5 * d.abs())
        .collect()
}
