//! The two elementary zipper maps, with allocation-free versions for MPFR.
//!
//! The generic versions in `zipper` clone freely; at a few hundred bits that
//! makes them dominated by the allocator. These reuse the incoming point's
//! floats and a per-thread scratch instead. Unit tests pin them to the
//! generic versions.

use std::cell::RefCell;
use std::cmp::Ordering;

use rug::{Assign, Float};

use super::precision::{Big, Cx, Real};
use super::zipper::{Pt, ZipStep};

pub(crate) trait Kernel: Real {
    fn zip_forward(step: &ZipStep<Self>, w: Pt<Self>) -> Pt<Self> {
        step.forward(w)
    }

    fn zip_inverse(step: &ZipStep<Self>, w: Pt<Self>) -> Pt<Self> {
        step.inverse(w)
    }
}

impl Kernel for f64 {}

impl Kernel for qd::Quad {}

struct Scratch([Float; 6]);

thread_local! {
    static SCRATCH: RefCell<Option<Scratch>> = const { RefCell::new(None) };
}

fn with_scratch<T>(bits: u32, f: impl FnOnce(&mut [Float; 6]) -> T) -> T {
    SCRATCH.with(|cell| {
        let mut slot = cell.borrow_mut();
        if slot.as_ref().map_or(true, |s| s.0[0].prec() != bits) {
            *slot = Some(Scratch(std::array::from_fn(|_| Float::new(bits))));
        }
        f(&mut slot.as_mut().expect("scratch was just set").0)
    })
}

/// Principal square root of `re + i im` in place, branch cut following the
/// sign of a zero imaginary part.
fn csqrt(re: &mut Float, im: &mut Float, t: &mut Float, u: &mut Float) {
    if re.is_zero() && im.is_zero() {
        re.assign(0);
        im.assign(0);
        return;
    }
    let im_negative = im.is_sign_negative();
    let re_negative = re.is_sign_negative();
    // |z|; values stay far inside MPFR's exponent range, so no hypot
    t.assign(&*re * &*re);
    *t += &*im * &*im;
    t.sqrt_mut();
    u.assign(re.abs_ref());
    *t += &*u;
    *t /= 2;
    t.sqrt_mut(); // the larger component
    u.assign(im.abs_ref());
    *u /= &*t;
    *u /= 2; // the smaller one
    if re_negative {
        std::mem::swap(re, u);
        std::mem::swap(im, t);
    } else {
        std::mem::swap(re, t);
        std::mem::swap(im, u);
    }
    if im_negative {
        im.neg_assign_mut();
    }
}

trait NegMut {
    fn neg_assign_mut(&mut self);
}

impl NegMut for Float {
    fn neg_assign_mut(&mut self) {
        rug::ops::NegAssign::neg_assign(self);
    }
}

impl Kernel for Big {
    fn zip_forward(step: &ZipStep<Big>, w: Pt<Big>) -> Pt<Big> {
        let b = &step.b.0;
        let bits = b.prec();
        let k = step.inv_c.as_ref().map(|k| &k.0);
        let (mut x, mut y, tilted) = match w {
            None => match k {
                None => return None,
                Some(k) => {
                    let mut x = Float::with_val(bits, 1);
                    x /= k;
                    x.neg_assign_mut();
                    (x, Float::new(bits), true)
                }
            },
            Some(z) => (z.re.0, z.im.0, false),
        };
        with_scratch(bits, |[s0, s1, s2, s3, s4, s5]| {
            if let (Some(k), false) = (k, tilted) {
                // z / (1 − k z)
                s0.assign(k * &x);
                s0.neg_assign_mut();
                *s0 += 1;
                s1.assign(k * &y);
                s1.neg_assign_mut();
                if s0.is_zero() && s1.is_zero() {
                    return None;
                }
                s2.assign(&*s0 * &*s0);
                *s2 += &*s1 * &*s1;
                s3.assign(&x * &*s0);
                *s3 += &y * &*s1;
                s4.assign(&y * &*s0);
                *s4 -= &x * &*s1;
                x.assign(&*s3 / &*s2);
                y.assign(&*s4 / &*s2);
            }
            let phi_sign = x.cmp0();
            // φ² + b²
            s0.assign(&x * &x);
            *s0 -= &y * &y;
            *s0 += b * b;
            s1.assign(&x * &y);
            *s1 *= 2;
            csqrt(s0, s1, s2, s3);
            if s1.cmp0() == Some(Ordering::Less) {
                s0.neg_assign_mut();
                s1.neg_assign_mut();
            }
            // |g| within a factor √2
            s4.assign(s0.abs_ref());
            s5.assign(s1.abs_ref());
            *s4 += &*s5;
            *s4 *= Big::slack(bits);
            let flat = s1.cmp_abs(s4) != Some(Ordering::Greater);
            let opposed = matches!(
                (s0.cmp0(), phi_sign),
                (Some(Ordering::Greater), Some(Ordering::Less)) | (Some(Ordering::Less), Some(Ordering::Greater))
            );
            if flat && opposed {
                s0.neg_assign_mut();
                s1.neg_assign_mut();
            }
            std::mem::swap(&mut x, s0);
            std::mem::swap(&mut y, s1);
            (x.is_finite() && y.is_finite()).then(|| Cx::new(Big(x), Big(y)))
        })
    }

    fn zip_inverse(step: &ZipStep<Big>, w: Pt<Big>) -> Pt<Big> {
        let b = &step.b.0;
        let bits = b.prec();
        let k = step.inv_c.as_ref().map(|k| &k.0);
        let Some(w) = w else {
            return k.map(|k| {
                let mut x = Float::with_val(bits, 1);
                x /= k;
                Cx::new(Big(x), Big(Float::new(bits)))
            });
        };
        let (mut x, mut y) = (w.re.0, w.im.0);
        if y.is_sign_negative() {
            // closed upper half-plane; a stray -0.0 would flip the root
            y.assign(0);
        }
        with_scratch(bits, |[s0, s1, s2, s3, s4, s5]| {
            // √(w − b) √(w + b)
            s0.assign(&x - b);
            s1.assign(&y);
            csqrt(s0, s1, s4, s5);
            s2.assign(&x + b);
            s3.assign(&y);
            csqrt(s2, s3, s4, s5);
            x.assign(&*s0 * &*s2);
            x -= &*s1 * &*s3;
            y.assign(&*s0 * &*s3);
            y += &*s1 * &*s2;
            if let Some(k) = k {
                // z / (1 + k z)
                s0.assign(k * &x);
                *s0 += 1;
                s1.assign(k * &y);
                if s0.is_zero() && s1.is_zero() {
                    return None;
                }
                s2.assign(&*s0 * &*s0);
                *s2 += &*s1 * &*s1;
                s3.assign(&x * &*s0);
                *s3 += &y * &*s1;
                s4.assign(&y * &*s0);
                *s4 -= &x * &*s1;
                x.assign(&*s3 / &*s2);
                y.assign(&*s4 / &*s2);
            }
            (x.is_finite() && y.is_finite()).then(|| Cx::new(Big(x), Big(y)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn steps() -> Vec<ZipStep<Big>> {
        [Complex64::new(0.3, 1.2), Complex64::new(-2.0, 0.1), Complex64::new(0.0, 3.0), Complex64::new(1e-3, 1e-4)]
            .into_iter()
            .map(|a| ZipStep::new(&Cx::of(a, 160)))
            .collect()
    }

    fn points() -> Vec<Pt<Big>> {
        let mut pts: Vec<Pt<Big>> = [
            Complex64::new(0.5, 0.25),
            Complex64::new(-3.0, 1e-9),
            Complex64::new(2.0, 0.0),
            Complex64::new(-2.0, -0.0),
            Complex64::new(1e6, 7.0),
            Complex64::new(0.0, 0.0),
        ]
        .into_iter()
        .map(|z| Some(Cx::of(z, 160)))
        .collect();
        pts.push(None);
        pts
    }

    fn close(a: &Pt<Big>, b: &Pt<Big>) -> bool {
        match (a, b) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                let (a, b) = (a.to_c64(), b.to_c64());
                (a - b).norm() <= 1e-14 * a.norm().max(1.0)
            }
            _ => false,
        }
    }

    #[test]
    fn in_place_maps_match_the_generic_ones() {
        for step in steps() {
            for w in points() {
                let (fast, slow) = (Big::zip_forward(&step, w.clone()), step.forward(w.clone()));
                assert!(close(&fast, &slow), "forward {w:?}: {fast:?} vs {slow:?}");
                let (fast, slow) = (Big::zip_inverse(&step, w.clone()), step.inverse(w.clone()));
                assert!(close(&fast, &slow), "inverse {w:?}: {fast:?} vs {slow:?}");
            }
        }
    }
}
