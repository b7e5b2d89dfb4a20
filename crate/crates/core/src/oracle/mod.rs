//! Independent check that each arc of a configuration is the hyperbolic
//! geodesic in the complement of the other.
//!
//! The geodesic side (`zipper`, `hausdorff`) sees only polylines and marked
//! points. It never touches the lattice or ℘. The involution residuals do use
//! the lattice, because the reflections are defined through it.

mod hausdorff;
mod involution;
mod kernel;
mod precision;
mod zipper;

use std::thread;

use crate::error::{Error, Result};
use crate::mobius::chordal;
use crate::polyline::Polyline;
use crate::solver::CanonicalConfiguration;

pub use hausdorff::{chordal_hausdorff, distance_to_polyline, polyline_separation};
pub use involution::{involution_residuals, InvolutionResiduals, PROBE_CLEARANCE, PROBE_COUNT};
pub use zipper::{
    geodesic_in_complement, geodesic_with_map, trace_geodesic, unzip_arc, unzip_arc_with, DiscreteRiemannMap, Precision,
    TracedGeodesic, DEFECT_TOLERANCE, ON_SLIT_TOLERANCE, PRECISION_LADDER,
};

pub const DEFAULT_TOLERANCE: f64 = 5e-3;
pub const DEFAULT_RESOLUTION: usize = 512;
/// Bound on how far σ_k may move a sample of γ_k.
pub const FIX_TOLERANCE: f64 = 1e-8;
/// Bound on `d(σ_k∘σ_k(w), w)` at the probe points.
pub const IDEM_TOLERANCE: f64 = 1e-6;
/// Zipper nodes per geodesic sample.
pub const NODES_PER_SAMPLE: usize = 4;
/// Stored arc endpoints must match the marked points this closely.
const ENDPOINT_TOLERANCE: f64 = 1e-9;

/// Smallest tolerance the sampling of `config` supports.
pub fn tolerance_floor(config: &CanonicalConfiguration) -> f64 {
    5.0 * config.budget.h
}

/// `max(5e-3, 5h)`.
pub fn default_tolerance(config: &CanonicalConfiguration) -> f64 {
    DEFAULT_TOLERANCE.max(tolerance_floor(config))
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// Chordal Hausdorff distance between γ_k and the oracle geodesic.
    pub distance: [f64; 2],
    pub arc_pass: [bool; 2],
    /// Arithmetic the oracle map for each arc needed.
    pub precision: [Precision; 2],
    pub resolution: usize,
    pub tolerance: f64,
    pub involution: InvolutionResiduals,
    /// Smallest chordal distance between the two arcs.
    pub disjointness: f64,
    pub pass: bool,
}

fn check_endpoints(config: &CanonicalConfiguration) -> Result<()> {
    for k in 0..2 {
        let (p, q) = config.arc_endpoints(k);
        let arc = config.arc(k);
        if arc.len() < 2 || chordal(arc.first(), p) > ENDPOINT_TOLERANCE || chordal(arc.last(), q) > ENDPOINT_TOLERANCE {
            return Err(Error::EndpointMismatch { arc: k });
        }
    }
    Ok(())
}

/// At most `n` samples of `arc`, evenly spaced in chordal arclength and
/// always keeping both ends. Only original samples are kept.
pub fn subsample(arc: &Polyline, n: usize) -> Polyline {
    let n = n.max(2);
    if arc.len() <= n {
        return arc.clone();
    }
    let mut cumulative = Vec::with_capacity(arc.len());
    let mut total = 0.0;
    cumulative.push(0.0);
    for w in arc.points.windows(2) {
        total += chordal(w[0], w[1]);
        cumulative.push(total);
    }
    let mut keep = vec![0usize];
    let mut j = 0;
    for i in 1..n - 1 {
        let target = total * i as f64 / (n - 1) as f64;
        while j + 1 < arc.len() && cumulative[j + 1] <= target {
            j += 1;
        }
        let pick = if j + 1 < arc.len() && cumulative[j + 1] - target < target - cumulative[j] { j + 1 } else { j };
        if pick > *keep.last().unwrap() && pick < arc.len() - 1 {
            keep.push(pick);
        }
    }
    keep.push(arc.len() - 1);
    Polyline::new(keep.into_iter().map(|i| arc.points[i]).collect())
}

fn arc_distance(config: &CanonicalConfiguration, k: usize, resolution: usize) -> Result<(f64, Precision)> {
    let (p, q) = config.arc_endpoints(k);
    let slit = subsample(config.arc(1 - k), NODES_PER_SAMPLE * resolution);
    let geodesic = trace_geodesic(&slit, p, q, resolution)?;
    Ok((chordal_hausdorff(config.arc(k), &geodesic.points), geodesic.precision))
}

/// Runs the oracle on both arcs and the involution check.
///
/// The two arcs and the involution residuals are computed on separate
/// threads; the report does not depend on their completion order.
pub fn verify_configuration(
    config: &CanonicalConfiguration,
    tol: f64,
    resolution: usize,
) -> Result<VerificationReport> {
    let floor = tolerance_floor(config);
    if !(tol >= floor) {
        return Err(Error::ToleranceBelowFloor { tol, floor });
    }
    if resolution < 2 {
        return Err(Error::InvalidArguments("resolution must be at least 2"));
    }
    check_endpoints(config)?;

    let (d0, d1, inv) = thread::scope(|s| {
        let h0 = s.spawn(|| arc_distance(config, 0, resolution));
        let h1 = s.spawn(|| arc_distance(config, 1, resolution));
        let inv = involution_residuals(config);
        (h0.join().expect("oracle thread panicked"), h1.join().expect("oracle thread panicked"), inv)
    });
    let ((d0, p0), (d1, p1)) = (d0?, d1?);
    let distance = [d0, d1];
    let involution = inv?;
    let arc_pass = [distance[0] < tol, distance[1] < tol];
    let pass = arc_pass[0]
        && arc_pass[1]
        && involution.fix_residual() < FIX_TOLERANCE
        && involution.idem_residual() < IDEM_TOLERANCE;
    Ok(VerificationReport {
        distance,
        arc_pass,
        precision: [p0, p1],
        resolution,
        tolerance: tol,
        involution,
        disjointness: polyline_separation(&config.arc0, &config.arc1),
        pass,
    })
}
