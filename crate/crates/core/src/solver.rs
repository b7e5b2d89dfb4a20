//! Assembly of the canonical configuration: the images under ℘ of the
//! lattice segments `[0, ω₁/2]` and `[ω₂/2, (ω₁+ω₂)/2]`, sampled adaptively
//! and carried back to the caller's coordinates.

use num_complex::Complex64;

use crate::elliptic::LatticeBasis;
use crate::error::{Error, Result};
use crate::isotopy::{class_pairing, companion_period, IsotopyClass, Pairing};
use crate::mobius::{chordal, dist3, normalize_quadruple, MobiusMap, RootTriple, SpherePoint};
pub use crate::polyline::{sample_separation, Polyline};

/// Root triples closer than this (after unit scaling) are rejected.
pub const ROOTS_TOO_CLOSE: f64 = 1e-6;

/// Refinement targets for arc sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingBudget {
    /// Maximum chordal gap between consecutive samples.
    pub h: f64,
    /// Maximum turning angle at a sample, in degrees.
    pub theta_max_deg: f64,
    /// Cap on the number of samples per arc.
    pub max_samples: usize,
}

impl Default for SamplingBudget {
    fn default() -> Self {
        SamplingBudget { h: 1e-2, theta_max_deg: 5.0, max_samples: 20_000 }
    }
}

impl SamplingBudget {
    pub fn with_h(h: f64) -> Self {
        SamplingBudget { h, ..Self::default() }
    }
}

struct Sample {
    t: f64,
    point: SpherePoint,
    embed: [f64; 3],
}

fn turning_angle(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let d1 = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let d2 = [c[0] - b[0], c[1] - b[1], c[2] - b[2]];
    let dot = d1[0] * d2[0] + d1[1] * d2[1] + d1[2] * d2[2];
    let n1 = (d1[0] * d1[0] + d1[1] * d1[1] + d1[2] * d1[2]).sqrt();
    let n2 = (d2[0] * d2[0] + d2[1] * d2[1] + d2[2] * d2[2]).sqrt();
    if n1 == 0.0 || n2 == 0.0 {
        return 0.0;
    }
    (dot / (n1 * n2)).clamp(-1.0, 1.0).acos()
}

/// Samples `transport(℘([z_start, z_end]))`, pinning the two end samples to
/// `start` and `end` exactly.
///
/// Intervals are bisected until every chordal gap (measured after
/// transport) is at most `h` and every turning angle at most `θmax`. The
/// dyadic parameter grid makes the sample set symmetric under reversing the
/// segment.
pub fn sample_segment(
    z_start: Complex64,
    z_end: Complex64,
    start: SpherePoint,
    end: SpherePoint,
    basis: &LatticeBasis,
    transport: &MobiusMap,
    budget: &SamplingBudget,
) -> Result<Polyline> {
    const INITIAL: usize = 16;
    let theta_max = budget.theta_max_deg.to_radians();
    let eval = |t: f64| -> Sample {
        let point = if t == 0.0 {
            start
        } else if t == 1.0 {
            end
        } else {
            transport.apply(basis.wp_point(z_start + (z_end - z_start) * t))
        };
        Sample { t, point, embed: point.embed() }
    };
    let mut samples: Vec<Sample> = (0..=INITIAL).map(|k| eval(k as f64 / INITIAL as f64)).collect();

    loop {
        let n = samples.len();
        let mut split = vec![false; n - 1];
        for i in 0..n - 1 {
            if dist3(samples[i].embed, samples[i + 1].embed) > budget.h {
                split[i] = true;
            }
        }
        for k in 1..n - 1 {
            if turning_angle(samples[k - 1].embed, samples[k].embed, samples[k + 1].embed) > theta_max {
                split[k - 1] = true;
                split[k] = true;
            }
        }
        let extra = split.iter().filter(|s| **s).count();
        if extra == 0 {
            break;
        }
        if n + extra > budget.max_samples {
            return Err(Error::BudgetExceeded(budget.max_samples));
        }
        let mut next = Vec::with_capacity(n + extra);
        let mut iter = samples.into_iter().peekable();
        let mut i = 0;
        while let Some(s) = iter.next() {
            let t = s.t;
            next.push(s);
            if let Some(nxt) = iter.peek() {
                if split[i] {
                    next.push(eval(0.5 * (t + nxt.t)));
                }
            }
            i += 1;
        }
        samples = next;
    }

    let points: Vec<SpherePoint> = samples.into_iter().map(|s| s.point).collect();
    if points.windows(2).any(|w| chordal(w[0], w[1]) <= 1e-13) {
        return Err(Error::DegenerateArc("consecutive samples coincide"));
    }
    Ok(Polyline::new(points))
}

/// `℘([z_start, z_end])` in normalized coordinates, endpoints pinned to the
/// exact root or ∞ values.
pub fn sample_arc(
    z_start: Complex64,
    z_end: Complex64,
    basis: &LatticeBasis,
    budget: &SamplingBudget,
) -> Result<Polyline> {
    let exact = |z: Complex64| -> SpherePoint {
        let p = basis.wp_point(z);
        if p.is_infinite() {
            return p;
        }
        // snap half-period images to the stored root
        basis
            .roots
            .e
            .iter()
            .copied()
            .find(|e| chordal(SpherePoint::Finite(*e), p) < 1e-9)
            .map(SpherePoint::Finite)
            .unwrap_or(p)
    };
    sample_segment(z_start, z_end, exact(z_start), exact(z_end), basis, &MobiusMap::identity(), budget)
}

/// Flat length of `℘([z_start, z_end])` together with an independent
/// quadrature of the pushed-forward metric `|dw| / |2√((w−e1)(w−e2)(w−e3))|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatLength {
    pub exact: f64,
    pub quadrature: f64,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

pub fn flat_length(z_start: Complex64, z_end: Complex64, basis: &LatticeBasis) -> FlatLength {
    let delta = z_end - z_start;
    let exact = delta.norm();
    if exact == 0.0 {
        return FlatLength { exact: 0.0, quadrature: 0.0 };
    }
    const PANELS: usize = 8;
    let rule = gauss_legendre(16);
    let e = basis.roots.e;
    let mut total = 0.0;
    for panel in 0..PANELS {
        let (a, b) = (panel as f64 / PANELS as f64, (panel + 1) as f64 / PANELS as f64);
        for (x, w) in &rule {
            let t = 0.5 * (a + b) + 0.5 * (b - a) * x;
            let Some((p, dp)) = basis.wp_finite(z_start + delta * t) else { continue };
            let density = 1.0 / (2.0 * ((p - e[0]) * (p - e[1]) * (p - e[2])).sqrt().norm());
            total += 0.5 * (b - a) * w * dp.norm() * exact * density;
        }
    }
    FlatLength { exact, quadrature: total }
}

/// Four marked points together with their normalization and lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedPoints {
    pub points: [SpherePoint; 4],
    /// Sends the marked points to `(∞, e1, e2, e3)`.
    pub normalization: MobiusMap,
    pub roots: RootTriple,
    pub basis: LatticeBasis,
}

impl MarkedPoints {
    pub fn new(points: [SpherePoint; 4]) -> Result<Self> {
        let (normalization, roots) = normalize_quadruple(points)?;
        let sep = roots.min_separation();
        if sep < ROOTS_TOO_CLOSE {
            return Err(Error::RootsTooClose(sep));
        }
        let basis = LatticeBasis::from_roots(&roots)?;
        Ok(MarkedPoints { points, normalization, roots, basis })
    }

    /// Canonical configuration for `cls` with the minimal companion period.
    pub fn configuration(&self, cls: IsotopyClass, budget: &SamplingBudget) -> Result<CanonicalConfiguration> {
        let omega1 = cls.period(&self.basis);
        let omega2 = companion_period(cls, &self.basis).omega2;
        self.configuration_with_periods(cls, omega1, omega2, budget)
    }

    /// Builds the arcs from an explicit basis `(ω₁, ω₂)` of the lattice with
    /// `ω₁` in the class of `cls`. Any companion `±ω₂ + nω₁` yields the same
    /// arcs.
    pub fn configuration_with_periods(
        &self,
        cls: IsotopyClass,
        omega1: Complex64,
        omega2: Complex64,
        budget: &SamplingBudget,
    ) -> Result<CanonicalConfiguration> {
        let basis = &self.basis;
        let label = |z: Complex64| -> Result<usize> {
            let (p, _) = basis.wp_finite(z).ok_or(Error::LabelingFailure)?;
            let (k, d) = basis
                .roots
                .e
                .iter()
                .enumerate()
                .map(|(k, e)| (k + 1, (p - e).norm()))
                .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
            if d < crate::elliptic::HALF_PERIOD_TOLERANCE {
                Ok(k)
            } else {
                Err(Error::LabelingFailure)
            }
        };
        let h1 = omega1 * 0.5;
        let h2 = omega2 * 0.5;
        let h3 = (omega1 + omega2) * 0.5;
        let (k1, k2, k3) = (label(h1)?, label(h2)?, label(h3)?);
        let pairing = Pairing::joining_infinity_to(k1).ok_or(Error::LabelingFailure)?;
        if pairing != class_pairing(cls) || k2 == k1 || k3 == k1 || k2 == k3 {
            return Err(Error::LabelingFailure);
        }

        let back = self.normalization.invert();
        let pts = &self.points;
        let arc0 = sample_segment(Complex64::new(0.0, 0.0), h1, pts[0], pts[k1], basis, &back, budget)?;
        let arc1 = if k2 < k3 {
            sample_segment(h2, h3, pts[k2], pts[k3], basis, &back, budget)?
        } else {
            sample_segment(h3, h2, pts[k3], pts[k2], basis, &back, budget)?
        };
        let separation = sample_separation(&arc0, &arc1);
        Ok(CanonicalConfiguration {
            points: self.points,
            cls,
            pairing,
            basis: basis.clone(),
            normalization: self.normalization,
            omega1,
            omega2,
            flat_length0: flat_length(Complex64::new(0.0, 0.0), h1, basis).exact,
            flat_length1: flat_length(h2, h3, basis).exact,
            annulus_modulus: (omega2 / omega1).im / 2.0,
            separation,
            budget: *budget,
            arc0,
            arc1,
        })
    }
}

/// The canonical pair of arcs for four marked points and an isotopy class.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalConfiguration {
    pub points: [SpherePoint; 4],
    pub cls: IsotopyClass,
    pub pairing: Pairing,
    pub basis: LatticeBasis,
    pub normalization: MobiusMap,
    pub omega1: Complex64,
    pub omega2: Complex64,
    /// γ₀, from `a0` to its partner.
    pub arc0: Polyline,
    /// γ₁, from the lower-indexed of the remaining points to the other.
    pub arc1: Polyline,
    pub flat_length0: f64,
    pub flat_length1: f64,
    /// `Im(ω₂/ω₁) / 2`
    pub annulus_modulus: f64,
    /// Smallest chordal distance between the samples of the two arcs.
    pub separation: f64,
    pub budget: SamplingBudget,
}

impl CanonicalConfiguration {
    pub fn arc(&self, k: usize) -> &Polyline {
        if k == 0 {
            &self.arc0
        } else {
            &self.arc1
        }
    }

    /// Marked points joined by arc `k`, in sampling order.
    pub fn arc_endpoints(&self, k: usize) -> (SpherePoint, SpherePoint) {
        let (i, j) = self.pairing.pairs()[k];
        (self.points[i], self.points[j])
    }
}

/// Normalizes `points`, builds the lattice and samples the canonical arcs of
/// class `cls`.
pub fn build_configuration(
    points: [SpherePoint; 4],
    cls: IsotopyClass,
    budget: &SamplingBudget,
) -> Result<CanonicalConfiguration> {
    MarkedPoints::new(points)?.configuration(cls, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isotopy::canonical_class;

    fn lemniscatic_points() -> [SpherePoint; 4] {
        [SpherePoint::Infinity, SpherePoint::real(1.0), SpherePoint::ZERO, SpherePoint::real(-1.0)]
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let rule = gauss_legendre(16);
        let sum: f64 = rule.iter().map(|(x, w)| w * x.powi(10)).sum();
        assert!((sum - 2.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn real_axis_arc() {
        let mp = MarkedPoints::new(lemniscatic_points()).unwrap();
        let basis = &mp.basis;
        let arc = sample_arc(Complex64::new(0.0, 0.0), basis.omega1_0 * 0.5, basis, &SamplingBudget::default()).unwrap();
        assert!(arc.first().is_infinite());
        assert_eq!(arc.last(), SpherePoint::real(1.0));
        for p in &arc.points[1..] {
            let z = p.finite().unwrap();
            assert!(z.im.abs() < 1e-10 * (1.0 + z.norm()));
            assert!(z.re >= 1.0 - 1e-12);
        }
        assert!(arc.max_gap() <= 1e-2);
    }

    #[test]
    fn quarter_period_value() {
        // duplication: ℘(ω/4) = e1 + √((e1−e2)(e1−e3)) = 1 + √2
        let mp = MarkedPoints::new(lemniscatic_points()).unwrap();
        let (p, _) = mp.basis.wp_finite(mp.basis.omega1_0 * 0.25).unwrap();
        assert!((p - Complex64::new(1.0 + 2f64.sqrt(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn flat_length_examples() {
        let mp = MarkedPoints::new(lemniscatic_points()).unwrap();
        let b = &mp.basis;
        let w1 = b.omega1_0;
        let w2 = b.omega2_0;
        let fl = flat_length(Complex64::new(0.0, 0.0), w1 * 0.5, b);
        assert!((fl.exact - w1.norm() / 2.0).abs() < 1e-15);
        assert!((fl.quadrature - fl.exact).abs() < 1e-8, "{fl:?}");
        let fl = flat_length(w2 * 0.5, (w1 + w2) * 0.5, b);
        assert!((fl.exact - w1.norm() / 2.0).abs() < 1e-14);
        assert!((fl.quadrature - fl.exact).abs() < 1e-8, "{fl:?}");
        let fl = flat_length(w2, w2, b);
        assert_eq!(fl, FlatLength { exact: 0.0, quadrature: 0.0 });
    }

    #[test]
    fn budget_cap() {
        let budget = SamplingBudget { h: 1e-4, theta_max_deg: 5.0, max_samples: 100 };
        let err = build_configuration(lemniscatic_points(), canonical_class(1, 0).unwrap(), &budget);
        assert_eq!(err.unwrap_err(), Error::BudgetExceeded(100));
    }

    #[test]
    fn roots_too_close() {
        let pts = [SpherePoint::Infinity, SpherePoint::real(1.0), SpherePoint::real(1e-8), SpherePoint::ZERO];
        let err = build_configuration(pts, canonical_class(1, 0).unwrap(), &SamplingBudget::default());
        assert!(matches!(err, Err(Error::RootsTooClose(_))));
    }

    #[test]
    fn endpoints_are_exact() {
        let pts = [
            SpherePoint::new(0.3, 0.1),
            SpherePoint::new(-1.0, 2.0),
            SpherePoint::new(2.5, -0.5),
            SpherePoint::Infinity,
        ];
        let cfg = build_configuration(pts, canonical_class(1, 1).unwrap(), &SamplingBudget::default()).unwrap();
        assert_eq!(cfg.pairing, Pairing::P03_12);
        assert_eq!(cfg.arc0.first(), pts[0]);
        assert_eq!(cfg.arc0.last(), pts[3]);
        assert_eq!(cfg.arc1.first(), pts[1]);
        assert_eq!(cfg.arc1.last(), pts[2]);
        assert!(cfg.annulus_modulus > 0.0);
    }
}
