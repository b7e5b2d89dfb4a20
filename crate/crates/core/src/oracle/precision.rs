//! Scalars for the zipper: plain `f64`, double-double, and MPFR floats for
//! domains whose prevertices crowd beyond double precision.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use qd::Quad;
use rug::Float;

pub(crate) trait Real:
    Clone + Debug + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    /// What it takes to build a constant (nothing for `f64`, the bit count
    /// for MPFR).
    type Ctx: Copy;
    fn of(x: f64, ctx: Self::Ctx) -> Self;
    fn ctx(&self) -> Self::Ctx;
    fn sqrt(self) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn is_sign_negative(&self) -> bool;
    fn is_finite(&self) -> bool;
    /// A few units in the last place, relative.
    fn slack(ctx: Self::Ctx) -> f64;

    fn abs(self) -> Self {
        if self.is_sign_negative() {
            -self
        } else {
            self
        }
    }
}

impl Real for f64 {
    type Ctx = ();

    fn of(x: f64, _: ()) -> f64 {
        x
    }
    fn ctx(&self) {}
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_sign_negative(&self) -> bool {
        f64::is_sign_negative(*self)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn slack(_: ()) -> f64 {
        1e-15
    }
}

/// Double-double (about 106 bits), on the stack.
impl Real for Quad {
    type Ctx = ();

    fn of(x: f64, _: ()) -> Quad {
        Quad::from_f64(x)
    }
    fn ctx(&self) {}
    fn sqrt(self) -> Quad {
        Quad::sqrt(self)
    }
    fn to_f64(&self) -> f64 {
        self.0 + self.1
    }
    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }
    fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative()
    }
    fn is_finite(&self) -> bool {
        Quad::is_finite(*self)
    }
    fn slack(_: ()) -> f64 {
        1e-30
    }
}

/// An MPFR float. Every value in one computation shares a precision.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub(crate) struct Big(pub(crate) Float);

impl Add for Big {
    type Output = Big;
    fn add(mut self, rhs: Big) -> Big {
        self.0 += rhs.0;
        self
    }
}

impl Sub for Big {
    type Output = Big;
    fn sub(mut self, rhs: Big) -> Big {
        self.0 -= rhs.0;
        self
    }
}

impl Mul for Big {
    type Output = Big;
    fn mul(mut self, rhs: Big) -> Big {
        self.0 *= rhs.0;
        self
    }
}

impl Div for Big {
    type Output = Big;
    fn div(mut self, rhs: Big) -> Big {
        self.0 /= rhs.0;
        self
    }
}

impl Neg for Big {
    type Output = Big;
    fn neg(self) -> Big {
        Big(-self.0)
    }
}

impl Real for Big {
    type Ctx = u32;

    fn of(x: f64, bits: u32) -> Big {
        Big(Float::with_val(bits, x))
    }
    fn ctx(&self) -> u32 {
        self.0.prec()
    }
    fn sqrt(self) -> Big {
        Big(self.0.sqrt())
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative()
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn slack(bits: u32) -> f64 {
        8.0 * 2f64.powi(-(bits as i32))
    }
}

/// Complex numbers over a [`Real`], with only what the zipper needs.
#[derive(Clone, Debug)]
pub(crate) struct Cx<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cx<R> {
    pub fn new(re: R, im: R) -> Self {
        Cx { re, im }
    }

    pub fn of(z: Complex64, ctx: R::Ctx) -> Self {
        Cx { re: R::of(z.re, ctx), im: R::of(z.im, ctx) }
    }

    pub fn real(x: R) -> Self {
        let ctx = x.ctx();
        Cx { re: x, im: R::of(0.0, ctx) }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn ctx(&self) -> R::Ctx {
        self.re.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Cx { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn norm(&self) -> R {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &R) -> Self {
        Cx { re: self.re.clone() * k.clone(), im: self.im.clone() * k.clone() }
    }

    /// Principal square root, computed without going through the argument.
    /// The branch cut follows the sign of a zero imaginary part.
    pub fn sqrt(&self) -> Self {
        let ctx = self.ctx();
        if self.is_zero() {
            return Cx::real(R::of(0.0, ctx));
        }
        let two = R::of(2.0, ctx);
        let r = self.norm();
        let t = ((r + self.re.clone().abs()) / two.clone()).sqrt();
        let other = self.im.clone().abs() / (two * t.clone());
        if !self.re.is_sign_negative() {
            let im = if self.im.is_sign_negative() { -other } else { other };
            Cx { re: t, im }
        } else {
            let im = if self.im.is_sign_negative() { -t } else { t };
            Cx { re: other, im }
        }
    }
}

impl<R: Real> Add for Cx<R> {
    type Output = Cx<R>;
    fn add(self, rhs: Cx<R>) -> Cx<R> {
        Cx { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<R: Real> Sub for Cx<R> {
    type Output = Cx<R>;
    fn sub(self, rhs: Cx<R>) -> Cx<R> {
        Cx { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<R: Real> Mul for Cx<R> {
    type Output = Cx<R>;
    fn mul(self, rhs: Cx<R>) -> Cx<R> {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Cx { re, im }
    }
}

impl<R: Real> Div for Cx<R> {
    type Output = Cx<R>;
    fn div(self, rhs: Cx<R>) -> Cx<R> {
        let den = rhs.norm_sqr();
        let re = self.re.clone() * rhs.re.clone() + self.im.clone() * rhs.im.clone();
        let im = self.im * rhs.re - self.re * rhs.im;
        Cx { re: re / den.clone(), im: im / den }
    }
}

impl<R: Real> Neg for Cx<R> {
    type Output = Cx<R>;
    fn neg(self) -> Cx<R> {
        Cx { re: -self.re, im: -self.im }
    }
}
