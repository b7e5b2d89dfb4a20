//! Chordal distances between sampled arcs.
//!
//! Polylines are embedded in the unit sphere of R³ and interpolated by
//! straight chords between consecutive samples, so ∞ needs no special case.

use crate::mobius::{dist3, SpherePoint};
use crate::polyline::Polyline;

/// Extra interpolated points per segment on the measuring side.
const REFINE: usize = 4;

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn point_segment(x: [f64; 3], a: [f64; 3], b: [f64; 3]) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    if len2 == 0.0 {
        return dist3(x, a);
    }
    let t = (dot(sub(x, a), ab) / len2).clamp(0.0, 1.0);
    dist3(x, [a[0] + t * ab[0], a[1] + t * ab[1], a[2] + t * ab[2]])
}

fn embedded(p: &Polyline) -> Vec<[f64; 3]> {
    p.points.iter().map(|x| x.embed()).collect()
}

const LEAF: usize = 8;

#[derive(Debug, Clone, Copy)]
struct Node {
    lo: [f64; 3],
    hi: [f64; 3],
    /// Segment range `start..end` (segment `i` joins nodes `i` and `i + 1`).
    start: usize,
    end: usize,
    /// Children, or `usize::MAX` for a leaf.
    left: usize,
    right: usize,
}

impl Node {
    fn lower_bound(&self, x: [f64; 3]) -> f64 {
        let mut s = 0.0;
        for k in 0..3 {
            let d = (self.lo[k] - x[k]).max(x[k] - self.hi[k]).max(0.0);
            s += d * d;
        }
        s.sqrt()
    }
}

/// Bounding-box hierarchy over contiguous runs of a chain's segments.
pub(crate) struct Chain {
    pts: Vec<[f64; 3]>,
    nodes: Vec<Node>,
}

impl Chain {
    pub(crate) fn new(line: &Polyline) -> Self {
        Self::from_points(embedded(line))
    }

    fn from_points(pts: Vec<[f64; 3]>) -> Self {
        let mut chain = Chain { pts, nodes: Vec::new() };
        let segments = chain.pts.len().saturating_sub(1).max(1);
        chain.build(0, segments);
        chain
    }

    fn build(&mut self, start: usize, end: usize) -> usize {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        let last = (end + 1).min(self.pts.len());
        for p in &self.pts[start..last] {
            for k in 0..3 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let id = self.nodes.len();
        self.nodes.push(Node { lo, hi, start, end, left: usize::MAX, right: usize::MAX });
        if end - start > LEAF {
            let mid = (start + end) / 2;
            let left = self.build(start, mid);
            let right = self.build(mid, end);
            self.nodes[id].left = left;
            self.nodes[id].right = right;
        }
        id
    }

    fn leaf_distance(&self, x: [f64; 3], node: &Node) -> f64 {
        if self.pts.len() == 1 {
            return dist3(x, self.pts[0]);
        }
        (node.start..node.end)
            .map(|i| point_segment(x, self.pts[i], self.pts[i + 1]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance from `x` to the chain.
    pub(crate) fn distance(&self, x: [f64; 3]) -> f64 {
        let mut best = f64::INFINITY;
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let node = self.nodes[id];
            if node.lower_bound(x) >= best {
                continue;
            }
            if node.left == usize::MAX {
                best = best.min(self.leaf_distance(x, &node));
                continue;
            }
            let (a, b) = (node.left, node.right);
            let (da, db) = (self.nodes[a].lower_bound(x), self.nodes[b].lower_bound(x));
            // nearer child on top
            if da <= db {
                stack.push(b);
                stack.push(a);
            } else {
                stack.push(a);
                stack.push(b);
            }
        }
        best
    }

    fn points(&self) -> &[[f64; 3]] {
        &self.pts
    }
}

/// Chordal distance from a point to the chord-interpolated polyline.
pub fn distance_to_polyline(p: SpherePoint, line: &Polyline) -> f64 {
    Chain::new(line).distance(p.embed())
}

/// Smallest chordal distance between two chord-interpolated polylines.
pub fn polyline_separation(a: &Polyline, b: &Polyline) -> f64 {
    let (ca, cb) = (Chain::new(a), Chain::new(b));
    let near = |from: &Chain, to: &Chain| from.points().iter().map(|x| to.distance(*x)).fold(f64::INFINITY, f64::min);
    near(&ca, &cb).min(near(&cb, &ca))
}

fn directed(from: &Chain, to: &Chain) -> f64 {
    let from = from.points();
    let mut worst: f64 = 0.0;
    let mut probe = |x: [f64; 3]| worst = worst.max(to.distance(x));
    if from.len() == 1 {
        probe(from[0]);
        return worst;
    }
    for w in from.windows(2) {
        let d = sub(w[1], w[0]);
        for k in 0..REFINE {
            let t = k as f64 / REFINE as f64;
            probe([w[0][0] + t * d[0], w[0][1] + t * d[1], w[0][2] + t * d[2]]);
        }
    }
    probe(from[from.len() - 1]);
    worst
}

/// Symmetric Hausdorff distance in the chordal metric, with each polyline
/// interpolated along its chords.
pub fn chordal_hausdorff(a: &Polyline, b: &Polyline) -> f64 {
    let (ca, cb) = (Chain::new(a), Chain::new(b));
    directed(&ca, &cb).max(directed(&cb, &ca))
}
