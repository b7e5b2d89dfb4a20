#![allow(dead_code)]

use arcpair::{Complex64, RootTriple, SpherePoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real roots with distinct gaps.
pub fn real_roots() -> [Complex64; 3] {
    [c(1.0, 0.0), c(-0.25, 0.0), c(-0.75, 0.0)]
}

pub fn lemniscatic_roots() -> [Complex64; 3] {
    [c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]
}

/// Cube roots of unity.
pub fn equianharmonic_roots() -> [Complex64; 3] {
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    [c(1.0, 0.0), w, w.conj()]
}

/// A fixed generic complex triple (drawn once from seed 7).
pub fn random_complex_roots() -> [Complex64; 3] {
    random_triple(&mut rng(7)).e
}

pub fn stock_geometries() -> Vec<(&'static str, [Complex64; 3])> {
    vec![
        ("real", real_roots()),
        ("lemniscatic", lemniscatic_roots()),
        ("equianharmonic", equianharmonic_roots()),
        ("random", random_complex_roots()),
    ]
}

/// Three points in the unit disk, centred and scaled, with no two roots
/// closer than 0.1.
pub fn random_triple(rng: &mut ChaCha8Rng) -> RootTriple {
    loop {
        let mut w = [c(0.0, 0.0); 3];
        for z in w.iter_mut() {
            *z = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
        }
        if let Ok(t) = RootTriple::from_unnormalized(w) {
            if t.min_separation() > 0.1 {
                return t;
            }
        }
    }
}

pub fn triple(e: [Complex64; 3]) -> RootTriple {
    RootTriple::from_unnormalized(e).unwrap()
}

/// Marked points `(∞, e1, e2, e3)`.
pub fn marked(e: [Complex64; 3]) -> [SpherePoint; 4] {
    [SpherePoint::Infinity, SpherePoint::Finite(e[0]), SpherePoint::Finite(e[1]), SpherePoint::Finite(e[2])]
}

/// Adaptive Simpson on `[a, b]`.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// ∫₁^∞ dt/√(4t(t²−1)) after t = 1 + tan²φ, which leaves the smooth
/// integrand 1/√(1 + cos²φ) on [0, π/2].
pub fn lemniscatic_half_period_quadrature() -> f64 {
    simpson(&|phi: f64| 1.0 / (1.0 + phi.cos().powi(2)).sqrt(), 0.0, std::f64::consts::FRAC_PI_2, 1e-14)
}
