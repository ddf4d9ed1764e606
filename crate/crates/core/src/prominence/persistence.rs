use crate::chart::NormalizedPolyline;
use crate::error::{Error, Result};

use super::rdp::farthest;
use super::EpsilonGrid;

/// Internal node of the RDP recursion over `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitNode {
    pub lo: usize,
    pub hi: usize,
    pub farthest: usize,
    pub distance: f64,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

/// The ε-independent RDP recursion. Simplifying at ε prunes every subtree
/// below the first ancestor whose distance is `<= ε`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SplitTree {
    pub nodes: Vec<SplitNode>,
    pub root: Option<usize>,
}

impl SplitTree {
    pub fn build(polyline: &NormalizedPolyline) -> Self {
        let v = &polyline.vertices;
        let mut tree = SplitTree::default();
        if v.len() < 3 {
            return tree;
        }
        // Parent node and whether this range is its right child.
        type Slot = Option<(usize, bool)>;
        let mut stack: Vec<(usize, usize, Slot)> = vec![(0, v.len() - 1, None)];
        while let Some((lo, hi, parent)) = stack.pop() {
            let Some((k, d)) = farthest(v, lo, hi) else {
                continue;
            };
            let id = tree.nodes.len();
            tree.nodes.push(SplitNode {
                lo,
                hi,
                farthest: k,
                distance: d,
                left: None,
                right: None,
            });
            match parent {
                None => tree.root = Some(id),
                Some((p, true)) => tree.nodes[p].left = Some(id),
                Some((p, false)) => tree.nodes[p].right = Some(id),
            }
            stack.push((k, hi, Some((id, false))));
            stack.push((lo, k, Some((id, true))));
        }
        tree
    }
}

/// Per-vertex ε-persistence of a polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceProfile {
    /// Grid level index per vertex, `None` if the vertex is dropped at every
    /// level including ε = 0.
    steps: Vec<Option<u8>>,
    /// Minimum split distance along the vertex's ancestor chain; infinite for
    /// the endpoints.
    chain_distance: Vec<f64>,
    ys: Vec<f64>,
    split_tree: SplitTree,
}

impl PersistenceProfile {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Persistence of vertex `i` in ε units.
    pub fn persistence(&self, i: usize) -> f64 {
        EpsilonGrid::level(self.step(i))
    }

    /// Persistence of vertex `i` as a grid level index (0 when never kept).
    pub fn step(&self, i: usize) -> u8 {
        self.steps[i].unwrap_or(0)
    }

    pub fn per_point(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.persistence(i)).collect()
    }

    /// Whether vertex `i` survives simplification at grid level `step`.
    pub fn retained_at(&self, i: usize, step: u8) -> bool {
        self.steps[i].is_some_and(|s| s >= step)
    }

    /// Vertices kept at grid level `step`, ascending.
    pub fn retained(&self, step: u8) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.retained_at(i, step)).collect()
    }

    pub fn chain_distance(&self, i: usize) -> f64 {
        self.chain_distance[i]
    }

    /// Normalized y coordinate of vertex `i`.
    pub fn y(&self, i: usize) -> f64 {
        self.ys[i]
    }

    pub fn split_tree(&self) -> &SplitTree {
        &self.split_tree
    }
}

fn snap(chain: f64) -> Option<u8> {
    EpsilonGrid::levels()
        .rev()
        .find(|&(_, eps)| chain > eps)
        .map(|(k, _)| k)
}

/// Point ε-persistence from a single pass over the split tree: a vertex is
/// kept at ε iff every split on its ancestor chain exceeds ε, so its
/// persistence is the chain minimum snapped down to the grid.
pub fn point_persistence(polyline: &NormalizedPolyline) -> PersistenceProfile {
    let n = polyline.len();
    let tree = SplitTree::build(polyline);
    let mut chain_distance = vec![0.0; n];
    if n > 0 {
        chain_distance[0] = f64::INFINITY;
        chain_distance[n - 1] = f64::INFINITY;
    }
    if let Some(root) = tree.root {
        let mut stack = vec![(root, f64::INFINITY)];
        while let Some((id, above)) = stack.pop() {
            let node = &tree.nodes[id];
            let chain = above.min(node.distance);
            chain_distance[node.farthest] = chain;
            stack.extend(node.left.map(|c| (c, chain)));
            stack.extend(node.right.map(|c| (c, chain)));
        }
    }
    PersistenceProfile {
        steps: chain_distance.iter().map(|&d| snap(d)).collect(),
        chain_distance,
        ys: polyline.vertices.iter().map(|v| v.1).collect(),
        split_tree: tree,
    }
}

/// Trend persistence in grid steps: `min(endpoints) − max(interior) + 1`,
/// clamped to the grid.
pub(crate) fn trend_steps(profile: &PersistenceProfile, i: usize, j: usize) -> u8 {
    let ends = profile.step(i).min(profile.step(j)) as i32;
    let inner = (i + 1..j).map(|k| profile.step(k)).max().unwrap_or(0) as i32;
    (ends - inner + 1).clamp(0, EpsilonGrid::CAP_STEP as i32) as u8
}

/// ε-persistence of the trend between vertices `i < j`.
pub fn trend_persistence(profile: &PersistenceProfile, i: usize, j: usize) -> Result<f64> {
    if i >= j || j >= profile.len() {
        return Err(Error::InvalidRange { start: i, end: j });
    }
    Ok(EpsilonGrid::level(trend_steps(profile, i, j)))
}
