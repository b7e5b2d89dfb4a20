//! Geodesic-algorithm ("zipper") conformal map of the complement of a
//! polyline arc onto the upper half-plane.
//!
//! The first segment `[z0, z1]` is opened exactly by
//! `z ↦ i √((z − z1)/(z − z0))`. Every further node `a` (as seen in the
//! current half-plane) is then zipped by the elementary map
//!
//! ```text
//! φ(z) = z / (1 − z/c),  c = |a|²/Re a      (sends the circle through 0, a, c ⟂ ℝ to iℝ)
//! g(z) = √(φ(z)² + b²),  ib = φ(a)
//! ```
//!
//! which sends `H ∖ (arc from 0 to a)` onto `H` and `a` to 0.
//!
//! Long thin channels between windings of an arc crowd the prevertices
//! exponentially, so the map can be built in MPFR arithmetic as well as in
//! doubles. [`trace_geodesic`] starts in doubles and only climbs when the
//! map fails to reproduce its own model geodesic.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mobius::{chordal, MobiusMap, SpherePoint};
use crate::polyline::Polyline;

use super::hausdorff::Chain;
use super::kernel::Kernel;
use qd::Quad;

use super::precision::{Big, Cx, Real};

/// Arcs closer than this (chordally) to ∞ are first rotated away from it.
const INFINITY_CLEARANCE: f64 = 0.5;

/// Query points closer than this to the arc are rejected.
pub const ON_SLIT_TOLERANCE: f64 = 1e-10;

/// Largest chordal error tolerated before the map is rebuilt at higher
/// precision: of unzipped nodes against the arc, and of `F⁻¹(F(z))` against
/// `z` at the ends and along a traced geodesic.
pub const DEFECT_TOLERANCE: f64 = 1e-4;

/// Every this many nodes and geodesic samples gets checked.
const ROUNDTRIP_STRIDE: usize = 8;

/// Precisions tried in turn by [`trace_geodesic`].
pub const PRECISION_LADDER: [Precision; 5] =
    [Precision::Double, Precision::DoubleDouble, Precision::Bits(192), Precision::Bits(384), Precision::Bits(768)];

/// Arithmetic a [`DiscreteRiemannMap`] is built and evaluated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Double,
    /// About 106 bits, as an unevaluated sum of two doubles.
    DoubleDouble,
    /// MPFR with this many mantissa bits.
    Bits(u32),
}

impl Precision {
    pub fn bits(&self) -> u32 {
        match self {
            Precision::Double => 53,
            Precision::DoubleDouble => 106,
            Precision::Bits(b) => *b,
        }
    }
}

/// A point of the closed half-plane or of the plane; `None` is ∞.
pub(crate) type Pt<R> = Option<Cx<R>>;

fn times_i<R: Real>(z: Cx<R>) -> Cx<R> {
    Cx::new(-z.im, z.re)
}

fn finite<R: Real>(z: Cx<R>) -> Pt<R> {
    z.is_finite().then_some(z)
}

/// One elementary slit-zipping map.
#[derive(Debug, Clone)]
pub(crate) struct ZipStep<R> {
    /// `1/c`; `None` when the slit is already vertical.
    pub inv_c: Option<R>,
    pub b: R,
}

impl<R: Real> ZipStep<R> {
    pub fn new(a: &Cx<R>) -> Self {
        let ctx = a.ctx();
        let ns = a.norm_sqr();
        let vertical = a.re.clone().abs() <= R::of(R::slack(ctx), ctx) * ns.clone().sqrt();
        let inv_c = (!vertical).then(|| a.re.clone() / ns);
        let phi = match &inv_c {
            None => a.clone(),
            Some(k) => a.clone() / (Cx::real(R::of(1.0, ctx)) - a.scale(k)),
        };
        ZipStep { inv_c, b: phi.im }
    }

    pub fn forward(&self, w: Pt<R>) -> Pt<R> {
        let phi = match (w, &self.inv_c) {
            (None, None) => return None,
            (None, Some(k)) => Cx::real(-(R::of(1.0, k.ctx()) / k.clone())),
            (Some(z), None) => z,
            (Some(z), Some(k)) => {
                let den = Cx::real(R::of(1.0, k.ctx())) - z.scale(k);
                if den.is_zero() {
                    return None;
                }
                z / den
            }
        };
        let ctx = phi.ctx();
        let zero = R::of(0.0, ctx);
        let mut g = (phi.clone() * phi.clone() + Cx::real(self.b.clone() * self.b.clone())).sqrt();
        if g.im < zero {
            g = -g;
        }
        if g.im.clone().abs() <= R::of(R::slack(ctx), ctx) * g.norm() && g.re.clone() * phi.re < zero {
            g = -g;
        }
        finite(g)
    }

    pub fn inverse(&self, w: Pt<R>) -> Pt<R> {
        let phi = w.map(|w| {
            // closed upper half-plane; a stray -0.0 would flip the root
            let im = if w.im.is_sign_negative() { R::of(0.0, w.ctx()) } else { w.im };
            let w = Cx::new(w.re, im);
            let b = Cx::real(self.b.clone());
            (w.clone() - b.clone()).sqrt() * (w + b).sqrt()
        });
        untilt(phi, &self.inv_c)
    }
}

/// `z ↦ z / (1 + z/c)`, the inverse of the tilt `z ↦ z / (1 − z/c)`.
fn untilt<R: Real>(p: Pt<R>, inv_c: &Option<R>) -> Pt<R> {
    match (p, inv_c) {
        (None, None) => None,
        (None, Some(k)) => Some(Cx::real(R::of(1.0, k.ctx()) / k.clone())),
        (Some(z), None) => Some(z),
        (Some(z), Some(k)) => {
            let den = Cx::real(R::of(1.0, k.ctx())) + z.scale(k);
            if den.is_zero() {
                None
            } else {
                finite(z / den)
            }
        }
    }
}

/// The slit opening followed by the zipping steps, in one arithmetic.
#[derive(Debug, Clone)]
struct Zipper<R> {
    z0: Cx<R>,
    z1: Cx<R>,
    steps: Vec<ZipStep<R>>,
    /// Largest chordal distance between a checked node and where the
    /// unzipping actually put it.
    drift: f64,
}

impl<R: Kernel> Zipper<R> {
    fn build(nodes: &[Complex64], ctx: R::Ctx) -> Result<Self> {
        let (z0, z1) = (Cx::of(nodes[0], ctx), Cx::of(nodes[1], ctx));
        let mut images: Vec<Pt<R>> = nodes[2..]
            .iter()
            .map(|z| {
                let z = Cx::of(*z, ctx);
                Some(times_i(((z.clone() - z1.clone()) / (z - z0.clone())).sqrt()))
            })
            .collect();
        let zero = R::of(0.0, ctx);
        let mut steps = Vec::with_capacity(images.len());
        let mut zipped = Vec::with_capacity(images.len());
        for k in 0..images.len() {
            let a = images[k].take().ok_or(Error::SelfIntersection(k + 2))?;
            if !(a.im > zero) || !a.is_finite() || a.norm().to_f64() <= 1e-300 {
                return Err(Error::SelfIntersection(k + 2));
            }
            let step = ZipStep::new(&a);
            for w in images[k + 1..].iter_mut() {
                *w = Some(R::zip_forward(&step, w.take()).ok_or(Error::SelfIntersection(k + 2))?);
            }
            steps.push(step);
            zipped.push(a);
        }
        let mut zip = Zipper { z0, z1, steps, drift: 0.0 };
        // lost digits in the node images move the slit the map really unzips
        for k in (0..zipped.len()).step_by(ROUNDTRIP_STRIDE).chain(zipped.len().checked_sub(1)) {
            let at = Self::lower(zip.partial_inverse(k, Some(zipped[k].clone())));
            let d = chordal(at, SpherePoint::Finite(nodes[k + 2]));
            zip.drift = if d.is_nan() { f64::INFINITY } else { zip.drift.max(d) };
        }
        Ok(zip)
    }

    fn forward(&self, z: Pt<R>) -> Pt<R> {
        let mut w = match z {
            None => Some(Cx::new(R::of(0.0, self.z0.ctx()), R::of(1.0, self.z0.ctx()))),
            Some(z) => {
                let den = z.clone() - self.z0.clone();
                if den.is_zero() {
                    None
                } else {
                    finite(times_i(((z - self.z1.clone()) / den).sqrt()))
                }
            }
        };
        for step in &self.steps {
            w = R::zip_forward(step, w);
        }
        w
    }

    fn inverse(&self, w: Pt<R>) -> Pt<R> {
        self.partial_inverse(self.steps.len(), w)
    }

    /// Inverse of the slit opening and the first `k` steps.
    fn partial_inverse(&self, k: usize, w: Pt<R>) -> Pt<R> {
        let mut w = w;
        for step in self.steps[..k].iter().rev() {
            w = R::zip_inverse(step, w);
        }
        match w {
            None => Some(self.z0.clone()),
            Some(w) => {
                let s = -(w.clone() * w);
                let den = Cx::real(R::of(1.0, s.ctx())) - s.clone();
                if den.is_zero() {
                    None
                } else {
                    finite((self.z1.clone() - s * self.z0.clone()) / den)
                }
            }
        }
    }

    fn lift(&self, p: SpherePoint) -> Pt<R> {
        p.finite().map(|z| Cx::of(z, self.z0.ctx()))
    }

    fn lower(p: Pt<R>) -> SpherePoint {
        p.map_or(SpherePoint::Infinity, |z| SpherePoint::from_complex(z.to_c64()))
    }

    /// Geodesic from `p` to `q` (already in the chart) and its defect.
    fn trace(&self, back: &MobiusMap, p: SpherePoint, q: SpherePoint, n: usize) -> Result<(Vec<SpherePoint>, f64)> {
        let zero = R::of(0.0, self.z0.ctx());
        let image = |x: SpherePoint| -> Result<Cx<R>> {
            match self.forward(self.lift(x)) {
                Some(w) if w.im > zero => Ok(w),
                _ => Err(Error::EndpointOnSlit(back.apply(x).to_string())),
            }
        };
        let (a, b) = (image(p)?, image(q)?);
        let model = model_geodesic(&a, &b, n).ok_or_else(|| Error::EndpointOnSlit(back.apply(q).to_string()))?;
        let points: Vec<SpherePoint> = model.iter().map(|w| Self::lower(self.inverse(Some(w.clone())))).collect();
        // domain-side roundtrips: crowding shows up as amplification here
        let roundtrip = |z: SpherePoint| match self.forward(self.lift(z)) {
            Some(w) => chordal(Self::lower(self.inverse(Some(w))), z),
            None => f64::INFINITY,
        };
        let checked = [p, q].into_iter().chain(points.iter().copied().step_by(ROUNDTRIP_STRIDE));
        let defect = checked.map(roundtrip).fold(self.drift, |m: f64, d| if d.is_nan() { f64::INFINITY } else { m.max(d) });
        Ok((points.into_iter().map(|z| back.apply(z)).collect(), defect))
    }
}

/// `n` samples of the hyperbolic geodesic of `H` from `a` to `b`, evenly
/// spaced in hyperbolic arclength.
///
/// Each half is sampled in the disk chart `ζ = (w − e)/(w − ē)` centred at
/// its own end `e`, where the geodesic is a radius. Radii are written as
/// `1 − δ`, so a far end at radius `1 − e^{−d}` only costs digits down to
/// `e^{−d/2}` at the midpoint.
fn model_geodesic<R: Real>(a: &Cx<R>, b: &Cx<R>, n: usize) -> Option<Vec<Cx<R>>> {
    let n = n.max(2);
    let ctx = a.ctx();
    let one = R::of(1.0, ctx);
    // direction from e towards f in the chart centred at e
    let toward = |e: &Cx<R>, f: &Cx<R>| {
        let beta = (f.clone() - e.clone()) / (f.clone() - e.conj());
        let m = beta.norm();
        (!m.is_zero()).then(|| beta.scale(&(one.clone() / m)))
    };
    let (Some(ua), Some(ub)) = (toward(a, b), toward(b, a)) else {
        return Some(vec![a.clone(); n]);
    };
    // 1 − |β|² without cancellation, then 1 − |β|
    let bbar = b.conj();
    let outside = R::of(4.0, ctx) * a.im.clone() * b.im.clone() / (b.clone() - a.conj()).norm_sqr();
    let m = (one.clone() - outside.clone()).sqrt();
    let gap = (outside / (one.clone() + m)).to_f64();
    if !(gap > 0.0) {
        return None;
    }
    let length = ((2.0 - gap) / gap).ln();
    let sample = |e: &Cx<R>, ebar: &Cx<R>, u: &Cx<R>, s: f64| {
        let delta = 2.0 / (1.0 + s.exp());
        let zeta = u.scale(&(one.clone() - R::of(delta, ctx)));
        (e.clone() - ebar.clone() * zeta.clone()) / (Cx::real(one.clone()) - zeta)
    };
    let abar = a.conj();
    Some(
        (0..n)
            .map(|j| {
                let s = length * j as f64 / (n - 1) as f64;
                if 2 * j < n {
                    sample(a, &abar, &ua, s)
                } else {
                    sample(b, &bbar, &ub, length * (n - 1 - j) as f64 / (n - 1) as f64)
                }
            })
            .collect(),
    )
}

#[derive(Debug, Clone)]
enum Core {
    Double(Zipper<f64>),
    DoubleDouble(Zipper<Quad>),
    Multi(Zipper<Big>),
}

/// Conformal map from the complement of an arc onto the upper half-plane,
/// as a composition of elementary slit maps.
#[derive(Debug, Clone)]
pub struct DiscreteRiemannMap {
    /// Chart change applied before unzipping (identity unless the arc
    /// passes near ∞).
    pre: MobiusMap,
    core: Core,
    arc: Polyline,
}

impl DiscreteRiemannMap {
    /// Number of elementary maps after the initial slit opening.
    pub fn len(&self) -> usize {
        match &self.core {
            Core::Double(z) => z.steps.len(),
            Core::DoubleDouble(z) => z.steps.len(),
            Core::Multi(z) => z.steps.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn precision(&self) -> Precision {
        match &self.core {
            Core::Double(_) => Precision::Double,
            Core::DoubleDouble(_) => Precision::DoubleDouble,
            Core::Multi(z) => Precision::Bits(z.z0.ctx()),
        }
    }

    /// The arc this map unzips.
    pub fn arc(&self) -> &Polyline {
        &self.arc
    }

    /// Forward map `Ĉ ∖ arc → H`.
    pub fn forward(&self, p: SpherePoint) -> SpherePoint {
        let z = self.pre.apply(p);
        match &self.core {
            Core::Double(zip) => Zipper::lower(zip.forward(zip.lift(z))),
            Core::DoubleDouble(zip) => Zipper::lower(zip.forward(zip.lift(z))),
            Core::Multi(zip) => Zipper::lower(zip.forward(zip.lift(z))),
        }
    }

    /// Inverse map `H → Ĉ ∖ arc` (boundary points land on the arc).
    pub fn inverse(&self, w: SpherePoint) -> SpherePoint {
        let z = match &self.core {
            Core::Double(zip) => Zipper::lower(zip.inverse(zip.lift(w))),
            Core::DoubleDouble(zip) => Zipper::lower(zip.inverse(zip.lift(w))),
            Core::Multi(zip) => Zipper::lower(zip.inverse(zip.lift(w))),
        };
        self.pre.invert().apply(z)
    }

    /// Images of the arc's first and last node on the boundary of `H`.
    pub fn endpoint_images(&self) -> (SpherePoint, SpherePoint) {
        fn run<R: Kernel>(zip: &Zipper<R>) -> SpherePoint {
            Zipper::lower(zip.steps.iter().fold(None, |w, step| R::zip_forward(step, w)))
        }
        let first = match &self.core {
            Core::Double(zip) => run(zip),
            Core::DoubleDouble(zip) => run(zip),
            Core::Multi(zip) => run(zip),
        };
        (first, SpherePoint::ZERO)
    }

    /// Geodesic from `p` to `q` in the complement of the arc, in this map's
    /// arithmetic.
    pub fn trace_geodesic(&self, p: SpherePoint, q: SpherePoint, resolution: usize) -> Result<TracedGeodesic> {
        let back = self.pre.invert();
        let (p1, q1) = (self.pre.apply(p), self.pre.apply(q));
        let (mut points, defect) = match &self.core {
            Core::Double(zip) => zip.trace(&back, p1, q1, resolution)?,
            Core::DoubleDouble(zip) => zip.trace(&back, p1, q1, resolution)?,
            Core::Multi(zip) => zip.trace(&back, p1, q1, resolution)?,
        };
        let last = points.len() - 1;
        points[0] = p;
        points[last] = q;
        Ok(TracedGeodesic { points: Polyline::new(points), precision: self.precision(), defect })
    }
}

/// An oracle geodesic together with the arithmetic that produced it.
#[derive(Debug, Clone)]
pub struct TracedGeodesic {
    pub points: Polyline,
    pub precision: Precision,
    /// Largest chordal error of the map: unzipped nodes against the arc, and
    /// roundtrips at the endpoints and at sampled points of the geodesic.
    pub defect: f64,
}

/// Roughly uniform points on the sphere (Fibonacci lattice).
pub(crate) fn sphere_grid(n: usize) -> Vec<SpherePoint> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            SpherePoint::from_embedding([r * phi.cos(), r * phi.sin(), z])
        })
        .collect()
}

fn chart_for(arc: &Polyline) -> MobiusMap {
    let near_infinity = arc
        .points
        .iter()
        .map(|p| chordal(*p, SpherePoint::Infinity))
        .fold(f64::INFINITY, f64::min);
    if near_infinity >= INFINITY_CLEARANCE {
        return MobiusMap::identity();
    }
    let far = sphere_grid(256)
        .into_iter()
        .map(|q| {
            let d = arc.points.iter().map(|p| chordal(*p, q)).fold(f64::INFINITY, f64::min);
            (d, q)
        })
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .map(|(_, q)| q)
        .unwrap_or(SpherePoint::Infinity);
    MobiusMap::rotation_to_infinity(far)
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    let (u, v) = (a - o, b - o);
    u.re * v.im - u.im * v.re
}

fn segments_meet(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: Complex64, b: Complex64, x: Complex64, d: f64| {
        d == 0.0 && x.re >= a.re.min(b.re) && x.re <= a.re.max(b.re) && x.im >= a.im.min(b.im) && x.im <= a.im.max(b.im)
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

/// Index of a node where the polyline touches itself, if any.
fn first_crossing(nodes: &[Complex64]) -> Option<usize> {
    let n = nodes.len();
    if n < 3 {
        return None;
    }
    // adjacent segments may only share their common node
    for i in 1..n - 1 {
        let (u, v) = (nodes[i - 1] - nodes[i], nodes[i + 1] - nodes[i]);
        if u.re * v.im - u.im * v.re == 0.0 && u.re * v.re + u.im * v.im > 0.0 {
            return Some(i);
        }
    }
    let mut order: Vec<usize> = (0..n - 1).collect();
    let lo = |i: usize| nodes[i].re.min(nodes[i + 1].re);
    let hi = |i: usize| nodes[i].re.max(nodes[i + 1].re);
    order.sort_by(|&a, &b| lo(a).total_cmp(&lo(b)));
    let mut hit: Option<usize> = None;
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if lo(j) > hi(i) {
                break;
            }
            if i.abs_diff(j) < 2 {
                continue;
            }
            if segments_meet(nodes[i], nodes[i + 1], nodes[j], nodes[j + 1]) {
                let at = i.max(j);
                hit = Some(hit.map_or(at, |h| h.min(at)));
            }
        }
    }
    hit
}

/// Chart change and node coordinates for `arc`, after the sanity checks.
fn prepare(arc: &Polyline) -> Result<(MobiusMap, Vec<Complex64>)> {
    if arc.len() < 2 {
        return Err(Error::DegenerateArc("fewer than two samples"));
    }
    if arc.points.windows(2).any(|w| chordal(w[0], w[1]) <= 1e-14) {
        return Err(Error::DegenerateArc("repeated sample"));
    }
    let pre = chart_for(arc);
    let nodes: Vec<Complex64> = arc
        .points
        .iter()
        .map(|p| pre.apply(*p).finite())
        .collect::<Option<_>>()
        .ok_or(Error::DegenerateArc("arc passes through the chart's pole"))?;
    if let Some(k) = first_crossing(&nodes) {
        return Err(Error::SelfIntersection(k));
    }
    Ok((pre, nodes))
}

fn build(arc: &Polyline, pre: MobiusMap, nodes: &[Complex64], precision: Precision) -> Result<DiscreteRiemannMap> {
    let core = match precision {
        Precision::Double => Core::Double(Zipper::build(nodes, ())?),
        Precision::DoubleDouble => Core::DoubleDouble(Zipper::build(nodes, ())?),
        Precision::Bits(bits) => Core::Multi(Zipper::build(nodes, bits)?),
    };
    Ok(DiscreteRiemannMap { pre, core, arc: arc.clone() })
}

/// Unzips `arc` in double precision, producing a conformal map of its
/// complement onto the upper half-plane that sends the last node to 0.
pub fn unzip_arc(arc: &Polyline) -> Result<DiscreteRiemannMap> {
    unzip_arc_with(arc, Precision::Double)
}

/// As [`unzip_arc`], in the given arithmetic.
pub fn unzip_arc_with(arc: &Polyline, precision: Precision) -> Result<DiscreteRiemannMap> {
    let (pre, nodes) = prepare(arc)?;
    build(arc, pre, &nodes, precision)
}

fn check_off_slit(arc: &Polyline, p: SpherePoint, q: SpherePoint) -> Result<()> {
    let chain = Chain::new(arc);
    for x in [p, q] {
        if chain.distance(x.embed()) <= ON_SLIT_TOLERANCE {
            return Err(Error::EndpointOnSlit(x.to_string()));
        }
    }
    Ok(())
}

/// Hyperbolic geodesic from `p` to `q` in the complement of `arc`, sampled at
/// `resolution` points (endpoints included).
pub fn geodesic_in_complement(
    arc: &Polyline,
    p: SpherePoint,
    q: SpherePoint,
    resolution: usize,
) -> Result<Polyline> {
    trace_geodesic(arc, p, q, resolution).map(|g| g.points)
}

/// As [`geodesic_in_complement`], climbing [`PRECISION_LADDER`] until the
/// defect drops below [`DEFECT_TOLERANCE`]. If no rung gets there, the last
/// successful trace is returned.
pub fn trace_geodesic(arc: &Polyline, p: SpherePoint, q: SpherePoint, resolution: usize) -> Result<TracedGeodesic> {
    check_off_slit(arc, p, q)?;
    let (pre, nodes) = prepare(arc)?;
    let mut outcome = None;
    for precision in PRECISION_LADDER {
        match build(arc, pre, &nodes, precision).and_then(|map| map.trace_geodesic(p, q, resolution)) {
            Ok(traced) if traced.defect <= DEFECT_TOLERANCE => return Ok(traced),
            Ok(traced) => outcome = Some(Ok(traced)),
            Err(e) => {
                if !matches!(outcome, Some(Ok(_))) {
                    outcome = Some(Err(e));
                }
            }
        }
    }
    outcome.expect("the ladder is not empty")
}

/// As [`geodesic_in_complement`], reusing an existing map.
pub fn geodesic_with_map(
    map: &DiscreteRiemannMap,
    p: SpherePoint,
    q: SpherePoint,
    resolution: usize,
) -> Result<Polyline> {
    map.trace_geodesic(p, q, resolution).map(|g| g.points)
}
