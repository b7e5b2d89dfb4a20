//! Period lattice and Weierstrass ℘/℘′ numerics for a normalized root triple.
//!
//! Half-periods come from Carlson's `R_F`; evaluation reduces the argument
//! into the fundamental parallelogram of a Gauss-reduced basis and sums the
//! q-expansion
//!
//! ```text
//! ℘(z) = (π/v)² [ csc²u − 1/3 + 8 Σ n qⁿ/(1−qⁿ) (1 − cos 2nu) ],  u = πz/v,  q = e^{2πiτ}
//! ```
//!
//! With `Im τ ≥ √3/2` the terms decay at least like `0.066ⁿ`, so a couple of
//! dozen terms reach double precision everywhere in the reduced cell.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mobius::{chordal, RootTriple, SpherePoint};

/// Absolute tolerance for the half-period table `℘(ω_j/2) = e_j`.
pub const HALF_PERIOD_TOLERANCE: f64 = 1e-9;

const RF_MAX_STEPS: usize = 100;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Carlson's symmetric integral `R_F(x, y, z) = ½ ∫₀^∞ dt / √((t+x)(t+y)(t+z))`
/// by the duplication theorem, principal square roots throughout.
pub fn carlson_rf(x: Complex64, y: Complex64, z: Complex64) -> Result<Complex64> {
    let zero = c(0.0, 0.0);
    let zeros = [x, y, z].iter().filter(|v| **v == zero).count();
    if zeros >= 2 {
        return Err(Error::InvalidArguments("at most one argument may be zero"));
    }
    if [x, y, z].iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::InvalidArguments("non-finite argument"));
    }

    // Carlson (1995): stop once 4^-n Q < |A_n|; truncation error ~ 3r.
    const R: f64 = 1e-16;
    let a0 = (x + y + z) / 3.0;
    let q = (3.0 * R).powf(-1.0 / 6.0)
        * (a0 - x).norm().max((a0 - y).norm()).max((a0 - z).norm());
    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut pow4 = 1.0;
    let mut steps = 0;
    while pow4 * q >= am.norm() {
        if steps == RF_MAX_STEPS {
            return Err(Error::NonConvergence(steps));
        }
        let (sx, sy, sz) = (xm.sqrt(), ym.sqrt(), zm.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        am = (am + lambda) * 0.25;
        xm = (xm + lambda) * 0.25;
        ym = (ym + lambda) * 0.25;
        zm = (zm + lambda) * 0.25;
        pow4 *= 0.25;
        steps += 1;
    }
    if am == zero {
        return Err(Error::InvalidArguments("degenerate argument configuration"));
    }
    let xd = (a0 - x) * pow4 / am;
    let yd = (a0 - y) * pow4 / am;
    let zd = -xd - yd;
    let e2 = xd * yd - zd * zd;
    let e3 = xd * yd * zd;
    let series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - e2 * e3 * (3.0 / 44.0);
    Ok(series / am.sqrt())
}

/// Gauss (Lagrange) reduction of a lattice basis.
///
/// The result has `Im(b/a) > 0`, `|Re(b/a)| ≤ 1/2`, `|b/a| ≥ 1`, with the
/// boundary conventions `Re(b/a) ≠ -1/2` and `Re(b/a) ≥ 0` when `|b/a| = 1`.
pub fn gauss_reduce(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let (mut a, mut b) = if a.norm_sqr() <= b.norm_sqr() { (a, b) } else { (b, a) };
    for _ in 0..200 {
        let m = (b / a).re.round();
        b -= a * m;
        if b.norm_sqr() < a.norm_sqr() * (1.0 - 1e-13) {
            std::mem::swap(&mut a, &mut b);
        } else {
            break;
        }
    }
    if (b / a).im < 0.0 {
        b = -b;
    }
    let tau = b / a;
    if tau.re < -0.5 + 1e-12 {
        b += a;
    }
    let tau = b / a;
    if (tau.norm() - 1.0).abs() < 1e-12 && tau.re < -1e-12 {
        let old_a = a;
        a = b;
        b = -old_a;
    }
    (a, b)
}

/// Real coordinates `(x, y)` with `z = x a + y b`.
pub fn lattice_coords(z: Complex64, a: Complex64, b: Complex64) -> (f64, f64) {
    let x = (z * b.conj()).im / (a * b.conj()).im;
    let y = (z * a.conj()).im / (b * a.conj()).im;
    (x, y)
}

/// q-series for ℘ and ℘′ over a reduced basis.
#[derive(Debug, Clone, PartialEq)]
struct WpSeries {
    v1: Complex64,
    v2: Complex64,
    /// `π / v1`
    scale: Complex64,
    /// `n qⁿ / (1 − qⁿ)` for n = 1..N
    coeffs: Vec<Complex64>,
}

impl WpSeries {
    fn new(v1: Complex64, v2: Complex64) -> Self {
        let tau = v2 / v1;
        let q = (c(0.0, 2.0 * PI) * tau).exp();
        let qn_abs = q.norm();
        // terms are bounded by n |q|^{n/2} inside the reduced cell
        let n_terms = if qn_abs == 0.0 {
            1
        } else {
            ((1e-18f64).ln() / (0.5 * qn_abs.ln())).ceil() as usize + 3
        };
        let mut coeffs = Vec::with_capacity(n_terms);
        let mut qn = c(1.0, 0.0);
        for n in 1..=n_terms {
            qn *= q;
            coeffs.push(qn * n as f64 / (1.0 - qn));
        }
        WpSeries { v1, v2, scale: c(PI, 0.0) / v1, coeffs }
    }

    fn reduce(&self, z: Complex64) -> Complex64 {
        let (x, y) = lattice_coords(z, self.v1, self.v2);
        z - self.v1 * x.round() - self.v2 * y.round()
    }

    /// ℘ and ℘′ at a reduced, nonzero argument.
    fn eval_reduced(&self, z: Complex64) -> (Complex64, Complex64) {
        let u = self.scale * z;
        let s = u.sin();
        let co = u.cos();
        let e = (c(0.0, 2.0) * u).exp();
        let e_inv = e.inv();
        let (mut en, mut en_inv) = (c(1.0, 0.0), c(1.0, 0.0));
        let mut sum_p = c(0.0, 0.0);
        let mut sum_d = c(0.0, 0.0);
        for (i, cn) in self.coeffs.iter().enumerate() {
            let n = (i + 1) as f64;
            en *= e;
            en_inv *= e_inv;
            sum_p += cn * (1.0 - (en + en_inv) * 0.5);
            sum_d += cn * n * (en - en_inv) / c(0.0, 2.0);
        }
        let a2 = self.scale * self.scale;
        let p = a2 * (1.0 / (s * s) - 1.0 / 3.0 + 8.0 * sum_p);
        let dp = a2 * self.scale * (-2.0 * co / (s * s * s) + 16.0 * sum_d);
        (p, dp)
    }
}

/// Labeled generators of the period lattice of ℘ for a root triple.
///
/// `℘(ω₁⁰/2) = e1`, `℘(ω₂⁰/2) = e2`, `℘((ω₁⁰+ω₂⁰)/2) = e3` and
/// `Im(ω₂⁰/ω₁⁰) > 0`. A Gauss-reduced basis of the same lattice is kept for
/// argument reduction and evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeBasis {
    pub omega1_0: Complex64,
    pub omega2_0: Complex64,
    /// `ω₂⁰ / ω₁⁰` for the labeled basis.
    pub tau: Complex64,
    pub roots: RootTriple,
    reduced: (Complex64, Complex64),
    series: WpSeries,
}

impl LatticeBasis {
    /// Builds the labeled lattice for `roots` (see [`lattice_from_roots`]).
    pub fn from_roots(roots: &RootTriple) -> Result<Self> {
        let e = roots.e;
        let diffs: Vec<Complex64> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .flat_map(|&(i, j)| [e[i] - e[j], e[j] - e[i]])
            .collect();
        for (_, u) in rotation_candidates(&diffs) {
            let root_u = u.sqrt();
            let mut half = [c(0.0, 0.0); 3];
            let mut ok = true;
            for j in 0..3 {
                let (k, l) = ((j + 1) % 3, (j + 2) % 3);
                match carlson_rf(c(0.0, 0.0), u * (e[j] - e[k]), u * (e[j] - e[l])) {
                    Ok(v) => half[j] = root_u * v,
                    Err(_) => ok = false,
                }
            }
            if !ok {
                continue;
            }
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let (a, b) = (2.0 * half[i], 2.0 * half[j]);
                if (b / a).im.abs() < 1e-8 {
                    continue;
                }
                let (v1, v2) = gauss_reduce(a, b);
                let series = WpSeries::new(v1, v2);
                let matches = (0..3).all(|m| {
                    let z = series.reduce(half[m]);
                    z != c(0.0, 0.0) && (series.eval_reduced(z).0 - e[m]).norm() < HALF_PERIOD_TOLERANCE
                });
                if matches {
                    return Self::label(roots, v1, v2, series);
                }
            }
        }
        Err(Error::LabelingFailure)
    }

    /// Rebuilds a basis from stored labeled periods, checking the half-period
    /// table against `roots`.
    pub fn from_periods(omega1_0: Complex64, omega2_0: Complex64, roots: &RootTriple) -> Result<Self> {
        if !((omega2_0 / omega1_0).im > 0.0) {
            return Err(Error::LabelingFailure);
        }
        let (v1, v2) = gauss_reduce(omega1_0, omega2_0);
        let series = WpSeries::new(v1, v2);
        let basis = LatticeBasis {
            omega1_0,
            omega2_0,
            tau: omega2_0 / omega1_0,
            roots: *roots,
            reduced: (v1, v2),
            series,
        };
        basis.check_half_periods()?;
        Ok(basis)
    }

    fn label(roots: &RootTriple, v1: Complex64, v2: Complex64, series: WpSeries) -> Result<Self> {
        // representatives of the three half-period classes mod 2Γ
        let diag = if (v1 + v2).norm() <= (v1 - v2).norm() * (1.0 + 1e-12) { v1 + v2 } else { v1 - v2 };
        let reps = [v1, v2, diag];
        let mut by_root: [Option<Complex64>; 3] = [None; 3];
        for rep in reps {
            let (p, _) = series.eval_reduced(series.reduce(rep * 0.5));
            let (idx, dist) = nearest_root(&roots.e, p);
            if dist >= HALF_PERIOD_TOLERANCE || by_root[idx].is_some() {
                return Err(Error::LabelingFailure);
            }
            by_root[idx] = Some(rep);
        }
        let mut w1 = by_root[0].ok_or(Error::LabelingFailure)?;
        let mut w2 = by_root[1].ok_or(Error::LabelingFailure)?;
        // ω₁⁰ in the right half-plane (or on the positive imaginary axis)
        if w1.re < 0.0 || (w1.re == 0.0 && w1.im < 0.0) {
            w1 = -w1;
        }
        if (w2 / w1).im < 0.0 {
            w2 = -w2;
        }
        let basis = LatticeBasis {
            omega1_0: w1,
            omega2_0: w2,
            tau: w2 / w1,
            roots: *roots,
            reduced: (v1, v2),
            series,
        };
        basis.check_half_periods()?;
        Ok(basis)
    }

    fn check_half_periods(&self) -> Result<()> {
        let halves = [self.omega1_0 * 0.5, self.omega2_0 * 0.5, (self.omega1_0 + self.omega2_0) * 0.5];
        for (h, e) in halves.iter().zip(self.roots.e.iter()) {
            match self.wp_finite(*h) {
                Some((p, _)) if (p - e).norm() < HALF_PERIOD_TOLERANCE => {}
                _ => return Err(Error::LabelingFailure),
            }
        }
        Ok(())
    }

    /// Gauss-reduced generators `(v1, v2)` of the same lattice.
    pub fn reduced_basis(&self) -> (Complex64, Complex64) {
        self.reduced
    }

    /// Modular parameter of the reduced basis, in the standard fundamental
    /// domain.
    pub fn reduced_tau(&self) -> Complex64 {
        self.reduced.1 / self.reduced.0
    }

    /// Representative of `z mod Γ` in the parallelogram of the reduced
    /// basis centered at 0.
    pub fn reduce(&self, z: Complex64) -> Complex64 {
        self.series.reduce(z)
    }

    /// `℘(z)` and `℘′(z)`; both infinite at lattice points.
    pub fn wp(&self, z: Complex64) -> (SpherePoint, SpherePoint) {
        match self.wp_finite(z) {
            Some((p, dp)) => (SpherePoint::from_complex(p), SpherePoint::from_complex(dp)),
            None => (SpherePoint::Infinity, SpherePoint::Infinity),
        }
    }

    /// `℘(z)` and `℘′(z)`, or `None` at lattice points.
    pub fn wp_finite(&self, z: Complex64) -> Option<(Complex64, Complex64)> {
        let zr = self.reduce(z);
        if zr == c(0.0, 0.0) {
            return None;
        }
        let (p, dp) = self.series.eval_reduced(zr);
        if p.re.is_finite() && p.im.is_finite() {
            Some((p, dp))
        } else {
            None
        }
    }

    /// `℘(z)` as a sphere point.
    pub fn wp_point(&self, z: Complex64) -> SpherePoint {
        self.wp(z).0
    }

    /// Some `z` with `℘(z) = w`, canonicalized as described on
    /// [`wp_invert`].
    pub fn invert(&self, w: SpherePoint) -> Result<Complex64> {
        let w = match w {
            SpherePoint::Infinity => return Ok(c(0.0, 0.0)),
            SpherePoint::Finite(w) => w,
        };
        let e = self.roots.e;
        let mut best: Option<(f64, Complex64)> = None;
        for (_, u) in rotation_candidates(&[w - e[0], w - e[1], w - e[2]]) {
            let Ok(v) = carlson_rf(u * (w - e[0]), u * (w - e[1]), u * (w - e[2])) else {
                continue;
            };
            let z = self.polish(u.sqrt() * v, w);
            let res = chordal(self.wp_point(z), SpherePoint::Finite(w));
            if best.map_or(true, |(r, _)| res < r) {
                best = Some((res, z));
            }
            if res < 1e-12 {
                break;
            }
        }
        match best {
            Some((res, z)) if res < 1e-9 => Ok(self.canonical_sign(z)),
            _ => Err(Error::InversionFailure(SpherePoint::Finite(w).to_string())),
        }
    }

    fn polish(&self, mut z: Complex64, w: Complex64) -> Complex64 {
        let residual = |z: Complex64| chordal(self.wp_point(z), SpherePoint::Finite(w));
        let mut r = residual(z);
        for _ in 0..8 {
            let Some((p, dp)) = self.wp_finite(z) else { break };
            if dp.norm() == 0.0 {
                break;
            }
            let next = z - (p - w) / dp;
            let rn = residual(next);
            if rn < r {
                z = next;
                r = rn;
            } else {
                break;
            }
        }
        z
    }

    /// Picks between `±z` (after reduction): nonnegative `ω₂⁰` component,
    /// ties toward a nonnegative `ω₁⁰` component.
    fn canonical_sign(&self, z: Complex64) -> Complex64 {
        let z = self.reduce(z);
        let (x, y) = lattice_coords(z, self.omega1_0, self.omega2_0);
        const EPS: f64 = 1e-12;
        if y < -EPS || (y.abs() <= EPS && x < -EPS) {
            -z
        } else {
            z
        }
    }
}

fn nearest_root(e: &[Complex64; 3], p: Complex64) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (i, r) in e.iter().enumerate() {
        let d = (p - r).norm();
        if d < best.1 {
            best = (i, d);
        }
    }
    best
}

/// Unit rotations `u` ordered so that the rotated arguments sit as far from
/// the negative real axis as possible; `√u · R_F(u·)` integrates along the
/// ray in direction `1/u`, which sidesteps branch cuts of the principal root.
fn rotation_candidates(args: &[Complex64]) -> Vec<(f64, Complex64)> {
    let mut out: Vec<(f64, Complex64)> = (0..24)
        .map(|k| {
            let u = Complex64::from_polar(1.0, PI * k as f64 / 12.0 - PI);
            let score = args
                .iter()
                .filter(|a| a.norm() > 0.0)
                .map(|a| {
                    let arg = (u * a).arg();
                    PI - arg.abs()
                })
                .fold(f64::INFINITY, f64::min);
            (score, u)
        })
        .collect();
    // u = 1 first when it is already safe
    out.sort_by(|a, b| {
        let key = |s: &(f64, Complex64)| if (s.1 - 1.0).norm() < 1e-12 && s.0 > 0.2 { f64::INFINITY } else { s.0 };
        key(b).partial_cmp(&key(a)).unwrap()
    });
    out
}

/// Labeled period lattice of the ℘-function with roots `roots`.
pub fn lattice_from_roots(roots: &RootTriple) -> Result<LatticeBasis> {
    LatticeBasis::from_roots(roots)
}

/// `z mod Γ` in the reduced fundamental parallelogram centered at 0.
pub fn reduce_mod_lattice(z: Complex64, basis: &LatticeBasis) -> Complex64 {
    basis.reduce(z)
}

/// `(℘(z), ℘′(z))`, both `∞` on the lattice.
pub fn wp_eval(z: Complex64, basis: &LatticeBasis) -> (SpherePoint, SpherePoint) {
    basis.wp(z)
}

/// Solves `℘(z) = w`. Starts from `R_F(w−e1, w−e2, w−e3)`, polishes with
/// Newton, then picks the representative of `±z mod Γ` with nonnegative
/// `ω₂⁰`-coordinate (ties: nonnegative `ω₁⁰`-coordinate).
pub fn wp_invert(w: SpherePoint, basis: &LatticeBasis) -> Result<Complex64> {
    basis.invert(w)
}
