//! Points of the Riemann sphere, Möbius maps and the normalization that
//! sends four marked points to `(∞, e1, e2, e3)` with `e1 + e2 + e3 = 0`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Chordal separation below which two marked points are treated as equal.
pub const DUPLICATE_TOLERANCE: f64 = 1e-12;

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub const ZERO: SpherePoint = SpherePoint::Finite(Complex64::new(0.0, 0.0));

    /// Wraps a complex number; non-finite values collapse to `Infinity`.
    pub fn from_complex(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            SpherePoint::Finite(z)
        } else {
            SpherePoint::Infinity
        }
    }

    pub fn real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    pub fn new(re: f64, im: f64) -> Self {
        Self::from_complex(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    /// Inverse stereographic projection onto the unit sphere in R³, with ∞
    /// at the north pole. Euclidean distance between embeddings is the
    /// chordal distance.
    pub fn embed(&self) -> [f64; 3] {
        match *self {
            SpherePoint::Infinity => [0.0, 0.0, 1.0],
            SpherePoint::Finite(z) => {
                let r = z.norm();
                if r <= 1.0 {
                    let d = 1.0 + r * r;
                    [2.0 * z.re / d, 2.0 * z.im / d, (r * r - 1.0) / d]
                } else {
                    let u = z.inv();
                    let s = u.norm_sqr();
                    let d = 1.0 + s;
                    [2.0 * u.re / d, -2.0 * u.im / d, (1.0 - s) / d]
                }
            }
        }
    }

    /// Inverse of [`SpherePoint::embed`] for points on (or radially
    /// projected onto) the unit sphere.
    pub fn from_embedding(v: [f64; 3]) -> Self {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n == 0.0 {
            return SpherePoint::ZERO;
        }
        let (x, y, z) = (v[0] / n, v[1] / n, v[2] / n);
        if z >= 0.0 {
            // near the north pole: go through 1/w to avoid 1 - z cancellation
            let d = 1.0 + z;
            let u = Complex64::new(x / d, -y / d);
            if u == Complex64::new(0.0, 0.0) {
                SpherePoint::Infinity
            } else {
                SpherePoint::from_complex(u.inv())
            }
        } else {
            let d = 1.0 - z;
            SpherePoint::Finite(Complex64::new(x / d, y / d))
        }
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::from_complex(z)
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Infinity => write!(f, "inf"),
            SpherePoint::Finite(z) => {
                if z.im >= 0.0 || z.im.is_nan() {
                    write!(f, "{}+{}i", z.re, z.im)
                } else {
                    write!(f, "{}{}i", z.re, z.im)
                }
            }
        }
    }
}

/// `2|p-q| / sqrt((1+|p|²)(1+|q|²))`, with the usual limits at ∞.
pub fn chordal(p: SpherePoint, q: SpherePoint) -> f64 {
    match (p, q) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
        (SpherePoint::Infinity, SpherePoint::Finite(z))
        | (SpherePoint::Finite(z), SpherePoint::Infinity) => {
            let r = z.norm();
            if r <= 1.0 {
                2.0 / (1.0 + r * r).sqrt()
            } else {
                2.0 / (r * (1.0 + 1.0 / (r * r)).sqrt())
            }
        }
        (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
            let (ra, rb) = (a.norm(), b.norm());
            if ra <= 1e100 && rb <= 1e100 && (ra <= 1.0 || rb <= 1.0) {
                2.0 * (a - b).norm() / ((1.0 + ra * ra) * (1.0 + rb * rb)).sqrt()
            } else if ra > 1.0 && rb > 1.0 {
                // z -> 1/z is a chordal isometry
                let (u, v) = (a.inv(), b.inv());
                let (su, sv) = (u.norm_sqr(), v.norm_sqr());
                2.0 * (u - v).norm() / ((1.0 + su) * (1.0 + sv)).sqrt()
            } else {
                dist3(p.embed(), q.embed())
            }
        }
    }
}

pub(crate) fn dist3(a: [f64; 3], b: [f64; 3]) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

/// `z ↦ (a z + b) / (c z + d)` stored with `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MobiusMap {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        MobiusMap { a: one, b: zero, c: zero, d: one }
    }

    /// Builds a map from arbitrary coefficients, rescaling so `ad - bc = 1`.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() == 0.0 || !det.re.is_finite() || !det.im.is_finite() {
            return Err(Error::InvalidInput("singular Möbius coefficients".into()));
        }
        let s = det.sqrt().inv();
        Ok(MobiusMap { a: a * s, b: b * s, c: c * s, d: d * s })
    }

    /// `z ↦ 1/z`.
    pub fn reciprocal() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        // det = -1; the square root rescaling gives a valid representative
        Self::new(zero, one, one, zero).expect("nonsingular")
    }

    pub fn apply(&self, p: SpherePoint) -> SpherePoint {
        match p {
            SpherePoint::Infinity => {
                if self.c == Complex64::new(0.0, 0.0) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from_complex(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == Complex64::new(0.0, 0.0) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::from_complex((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// Evaluates at a finite point, returning `None` at the pole.
    pub fn apply_finite(&self, z: Complex64) -> Option<Complex64> {
        self.apply(SpherePoint::Finite(z)).finite()
    }

    pub fn invert(&self) -> Self {
        MobiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> Self {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// Chordal isometry (rotation of the sphere, possibly followed by
    /// `z ↦ 1/z`) sending `p` to ∞.
    pub fn rotation_to_infinity(p: SpherePoint) -> Self {
        match p {
            SpherePoint::Infinity => Self::identity(),
            SpherePoint::Finite(z) => {
                let one = Complex64::new(1.0, 0.0);
                Self::new(z.conj(), one, one, -z).expect("determinant is -(1+|z|²)")
            }
        }
    }
}

/// Normalized roots with `e1 + e2 + e3 = 0` and `max |e_j| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootTriple {
    pub e: [Complex64; 3],
    /// Factor relating normalized coordinates to the centered, post-inversion
    /// ones: `w - mean = scale * e`.
    pub scale: Complex64,
}

impl RootTriple {
    /// Centers and rescales three distinct complex numbers.
    pub fn from_unnormalized(w: [Complex64; 3]) -> Result<Self> {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if (w[i] - w[j]).norm() <= DUPLICATE_TOLERANCE * (1.0 + w[i].norm().max(w[j].norm())) {
                return Err(Error::DuplicatePoints(i + 1, j + 1));
            }
        }
        let mean = (w[0] + w[1] + w[2]) / 3.0;
        let c = [w[0] - mean, w[1] - mean, w[2] - mean];
        let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Ok(RootTriple {
            e: [c[0] / scale, c[1] / scale, c[2] / scale],
            scale: Complex64::new(scale, 0.0),
        })
    }

    /// Smallest pairwise distance between the roots.
    pub fn min_separation(&self) -> f64 {
        let e = &self.e;
        (e[0] - e[1]).norm().min((e[0] - e[2]).norm()).min((e[1] - e[2]).norm())
    }

    pub fn max_modulus(&self) -> f64 {
        self.e.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Möbius normalization of four distinct marked points.
///
/// The returned map `T` is inversion about `a0` (skipped when `a0 = ∞`),
/// then centering by the mean of the three images, then scaling to unit
/// max-modulus; `T(a0) = ∞` and `T(a_k) = e_k`.
pub fn normalize_quadruple(points: [SpherePoint; 4]) -> Result<(MobiusMap, RootTriple)> {
    for i in 0..4 {
        for j in i + 1..4 {
            if chordal(points[i], points[j]) <= DUPLICATE_TOLERANCE {
                return Err(Error::DuplicatePoints(i, j));
            }
        }
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let inversion = match points[0] {
        SpherePoint::Infinity => MobiusMap::identity(),
        SpherePoint::Finite(a0) => MobiusMap::new(zero, one, one, -a0)?,
    };
    let mut w = [zero; 3];
    for k in 0..3 {
        w[k] = inversion
            .apply(points[k + 1])
            .finite()
            .ok_or(Error::DuplicatePoints(0, k + 1))?;
    }
    let roots = RootTriple::from_unnormalized(w)?;
    let mean = (w[0] + w[1] + w[2]) / 3.0;
    let affine = MobiusMap::new(one, -mean, zero, roots.scale)?;
    Ok((affine.compose(&inversion), roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn apply_conventions() {
        let id = MobiusMap::identity();
        assert_eq!(id.apply(SpherePoint::new(3.0, 4.0)), SpherePoint::new(3.0, 4.0));
        let r = MobiusMap::reciprocal();
        assert_eq!(r.apply(SpherePoint::Infinity), SpherePoint::ZERO);
        assert_eq!(r.apply(SpherePoint::ZERO), SpherePoint::Infinity);
        let half = r.apply(SpherePoint::real(2.0)).finite().unwrap();
        assert!((half - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn invert_examples() {
        let p = SpherePoint::new(0.3, -1.7);
        let id = MobiusMap::identity().invert();
        assert_eq!(id.apply(p), p);

        let r = MobiusMap::reciprocal();
        let ri = r.invert();
        for z in [c(2.0, 0.0), c(-0.5, 3.0)] {
            let a = ri.apply(SpherePoint::Finite(z)).finite().unwrap();
            assert!((a - z.inv()).norm() < 1e-15);
        }

        let affine = MobiusMap::new(c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let inv = affine.invert();
        let z = c(5.0, 2.0);
        let got = inv.apply_finite(z).unwrap();
        assert!((got - (z - 1.0) / 2.0).norm() < 1e-15);
        assert_eq!(inv.apply(SpherePoint::Infinity), SpherePoint::Infinity);
    }

    #[test]
    fn chordal_values() {
        assert_eq!(chordal(SpherePoint::ZERO, SpherePoint::Infinity), 2.0);
        assert!((chordal(SpherePoint::ZERO, SpherePoint::real(1.0)) - 2f64.sqrt()).abs() < 1e-15);
        let big = SpherePoint::real(1e200);
        assert!(chordal(big, SpherePoint::Infinity) < 1e-199);
        let p = SpherePoint::new(0.4, 0.1);
        let q = SpherePoint::new(-3.0, 2.0);
        assert!((chordal(p, q) - dist3(p.embed(), q.embed())).abs() < 1e-15);
    }

    #[test]
    fn embedding_roundtrip() {
        for p in [SpherePoint::new(0.2, -0.3), SpherePoint::new(40.0, 7.0), SpherePoint::Infinity] {
            let q = SpherePoint::from_embedding(p.embed());
            assert!(chordal(p, q) < 1e-14);
        }
    }

    #[test]
    fn rotation_is_isometry() {
        let m = MobiusMap::rotation_to_infinity(SpherePoint::new(0.7, -1.2));
        assert!(m.apply(SpherePoint::new(0.7, -1.2)).is_infinite());
        let (p, q) = (SpherePoint::new(0.1, 0.2), SpherePoint::new(-2.0, 5.0));
        assert!((chordal(m.apply(p), m.apply(q)) - chordal(p, q)).abs() < 1e-14);
    }

    #[test]
    fn normalize_already_normalized() {
        let pts = [SpherePoint::Infinity, SpherePoint::real(1.0), SpherePoint::ZERO, SpherePoint::real(-1.0)];
        let (t, roots) = normalize_quadruple(pts).unwrap();
        assert_eq!(t, MobiusMap::identity());
        assert_eq!(roots.e, [c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
    }

    #[test]
    fn normalize_zero_one_two_three() {
        // 1/z sends (1, 2, 3) to (1, 1/2, 1/3); mean 11/18; spread 7/18.
        // Exact rationals: (7/18, -2/18, -5/18) * 18/7 = (1, -2/7, -5/7).
        let pts = [SpherePoint::ZERO, SpherePoint::real(1.0), SpherePoint::real(2.0), SpherePoint::real(3.0)];
        let (t, roots) = normalize_quadruple(pts).unwrap();
        let expect = [(7i64, 7i64), (-2, 7), (-5, 7)];
        for (e, (n, d)) in roots.e.iter().zip(expect) {
            assert!((e - c(n as f64 / d as f64, 0.0)).norm() < 1e-15);
        }
        assert!((roots.scale - c(7.0 / 18.0, 0.0)).norm() < 1e-15);
        assert!(t.apply(SpherePoint::ZERO).is_infinite());
    }

    #[test]
    fn normalize_duplicates() {
        let pts = [SpherePoint::ZERO, SpherePoint::ZERO, SpherePoint::real(1.0), SpherePoint::real(2.0)];
        assert_eq!(normalize_quadruple(pts), Err(Error::DuplicatePoints(0, 1)));
        let pts = [SpherePoint::Infinity, SpherePoint::real(1.0), SpherePoint::real(1.0), SpherePoint::real(2.0)];
        assert!(matches!(normalize_quadruple(pts), Err(Error::DuplicatePoints(1, 2))));
    }
}
