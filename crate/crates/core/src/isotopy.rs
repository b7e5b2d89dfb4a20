//! Isotopy classes of arc pairs as primitive lattice slopes `r/s`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::elliptic::LatticeBasis;
use crate::error::{Error, Result};

/// Primitive slope `(r, s)` selecting `ω₁ = r ω₁⁰ + s ω₂⁰`.
///
/// Always canonical: `gcd(|r|, |s|) = 1`, `s ≥ 0`, and `r = 1` when `s = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsotopyClass {
    s: i64,
    r: i64,
}

impl IsotopyClass {
    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// `r ω₁⁰ + s ω₂⁰`.
    pub fn period(&self, basis: &LatticeBasis) -> Complex64 {
        basis.omega1_0 * self.r as f64 + basis.omega2_0 * self.s as f64
    }

    /// Larger of `|r|` and `s`.
    pub fn height(&self) -> i64 {
        self.r.abs().max(self.s)
    }
}

impl fmt::Display for IsotopyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.r, self.s)
    }
}

impl FromStr for IsotopyClass {
    type Err = Error;

    /// Parses `r/s`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("class must look like r/s, got {text:?}"));
        let (r, s) = text.split_once('/').ok_or_else(bad)?;
        let r: i64 = r.trim().parse().map_err(|_| bad())?;
        let s: i64 = s.trim().parse().map_err(|_| bad())?;
        canonical_class(r, s)
    }
}

/// Which marked points the two arcs join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pairing {
    /// `a0–a1` and `a2–a3`
    P01_23,
    /// `a0–a2` and `a1–a3`
    P02_13,
    /// `a0–a3` and `a1–a2`
    P03_12,
}

impl Pairing {
    /// Index pairs joined by γ₀ and γ₁, each in increasing order.
    pub fn pairs(&self) -> [(usize, usize); 2] {
        match self {
            Pairing::P01_23 => [(0, 1), (2, 3)],
            Pairing::P02_13 => [(0, 2), (1, 3)],
            Pairing::P03_12 => [(0, 3), (1, 2)],
        }
    }

    /// The pairing whose first arc joins `a0` with `a_k`.
    pub fn joining_infinity_to(k: usize) -> Option<Self> {
        match k {
            1 => Some(Pairing::P01_23),
            2 => Some(Pairing::P02_13),
            3 => Some(Pairing::P03_12),
            _ => None,
        }
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pairing::P01_23 => "01|23",
            Pairing::P02_13 => "02|13",
            Pairing::P03_12 => "03|12",
        })
    }
}

impl FromStr for Pairing {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.trim() {
            "01|23" | "23|01" => Ok(Pairing::P01_23),
            "02|13" | "13|02" => Ok(Pairing::P02_13),
            "03|12" | "12|03" => Ok(Pairing::P03_12),
            _ => Err(Error::InvalidInput(format!("unknown pairing {text:?}"))),
        }
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b) ≥ 0`.
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1i64, 0i64);
    let (mut old_y, mut y) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    if old_r < 0 {
        (-old_r, -old_x, -old_y)
    } else {
        (old_r, old_x, old_y)
    }
}

/// Canonical representative of the slope of `(r, s)`.
///
/// Non-primitive vectors are rejected rather than reduced.
pub fn canonical_class(r: i64, s: i64) -> Result<IsotopyClass> {
    if r == 0 && s == 0 {
        return Err(Error::InvalidInput("(0, 0) is not a slope".into()));
    }
    if gcd(r, s) != 1 {
        return Err(Error::NotPrimitive(r, s));
    }
    let (r, s) = if s < 0 || (s == 0 && r < 0) { (-r, -s) } else { (r, s) };
    Ok(IsotopyClass { r, s })
}

/// Endpoint pairing induced by the class: `℘(ω₁/2)` is `e1`, `e2` or `e3`
/// according to `(r, s) mod 2`.
pub fn class_pairing(cls: IsotopyClass) -> Pairing {
    match (cls.r.rem_euclid(2), cls.s.rem_euclid(2)) {
        (1, 0) => Pairing::P01_23,
        (0, 1) => Pairing::P02_13,
        _ => Pairing::P03_12,
    }
}

/// Companion period `ω₂ = p ω₁⁰ + q ω₂⁰` with `r q − s p = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Companion {
    pub p: i64,
    pub q: i64,
    pub omega2: Complex64,
}

/// Completes `ω₁ = r ω₁⁰ + s ω₂⁰` to a positively oriented basis and
/// shortens `ω₂` by multiples of `ω₁`. On a tie the representative with
/// `Re(ω₂/ω₁) = +1/2` wins.
pub fn companion_period(cls: IsotopyClass, basis: &LatticeBasis) -> Companion {
    let (g, a, b) = extended_gcd(cls.r, cls.s);
    debug_assert_eq!(g, 1);
    // a r + b s = 1  =>  r·a − s·(−b) = 1
    let (p0, q0) = (-b, a);
    let omega1 = cls.period(basis);
    let omega2 = basis.omega1_0 * p0 as f64 + basis.omega2_0 * q0 as f64;
    let x = (omega2 / omega1).re;
    let n = (x - 0.5 - 1e-9).ceil() as i64;
    let (p, q) = (p0 - n * cls.r, q0 - n * cls.s);
    Companion {
        p,
        q,
        omega2: basis.omega1_0 * p as f64 + basis.omega2_0 * q as f64,
    }
}

/// Every canonical class with `|r| ≤ max_height` and `0 ≤ s ≤ max_height`,
/// ordered by `(s, r)`.
pub fn enumerate_classes(max_height: i64) -> Vec<IsotopyClass> {
    let mut out = Vec::new();
    if max_height < 1 {
        return out;
    }
    out.push(IsotopyClass { r: 1, s: 0 });
    for s in 1..=max_height {
        for r in -max_height..=max_height {
            if gcd(r, s) == 1 {
                out.push(IsotopyClass { r, s });
            }
        }
    }
    out
}
