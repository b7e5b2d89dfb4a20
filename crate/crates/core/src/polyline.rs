//! Sampled arcs on the Riemann sphere.

use crate::mobius::{chordal, dist3, SpherePoint};

/// Ordered samples of an arc on the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<SpherePoint>,
    pub closed: bool,
}

impl Polyline {
    pub fn new(points: Vec<SpherePoint>) -> Self {
        Polyline { points, closed: false }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> SpherePoint {
        self.points[0]
    }

    pub fn last(&self) -> SpherePoint {
        self.points[self.points.len() - 1]
    }

    /// Largest chordal gap between consecutive samples.
    pub fn max_gap(&self) -> f64 {
        self.points.windows(2).map(|w| chordal(w[0], w[1])).fold(0.0, f64::max)
    }

    /// Smallest chordal gap between consecutive samples.
    pub fn min_gap(&self) -> f64 {
        self.points.windows(2).map(|w| chordal(w[0], w[1])).fold(f64::INFINITY, f64::min)
    }

    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Polyline { points, closed: self.closed }
    }
}

/// Smallest chordal distance between the sample sets of two polylines.
pub fn sample_separation(a: &Polyline, b: &Polyline) -> f64 {
    let eb: Vec<[f64; 3]> = b.points.iter().map(|p| p.embed()).collect();
    a.points
        .iter()
        .map(|p| {
            let ep = p.embed();
            eb.iter().map(|q| dist3(ep, *q)).fold(f64::INFINITY, f64::min)
        })
        .fold(f64::INFINITY, f64::min)
}
