//! Text syntax for points: `re+imi`, `re`, `imi` or `inf`.

use arcpair::{Complex64, SpherePoint};

fn number(text: &str) -> Option<f64> {
    let v: f64 = text.parse().ok()?;
    v.is_finite().then_some(v)
}

/// Index of the sign that starts the imaginary part, skipping exponent signs.
fn split_at(text: &str) -> Option<usize> {
    let b = text.as_bytes();
    (1..b.len()).rev().find(|&i| (b[i] == b'+' || b[i] == b'-') && !matches!(b[i - 1], b'e' | b'E'))
}

pub fn parse_point(text: &str) -> Result<SpherePoint, String> {
    let t = text.trim();
    let bad = || format!("cannot read {t:?} as a point (expected re+imi, re or inf)");
    if t.eq_ignore_ascii_case("inf") || t == "∞" {
        return Ok(SpherePoint::Infinity);
    }
    let Some(body) = t.strip_suffix('i') else {
        return number(t).map(SpherePoint::real).ok_or_else(bad);
    };
    let (re, im) = match split_at(body) {
        Some(k) => (number(&body[..k]).ok_or_else(bad)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => number(s).ok_or_else(bad)?,
    };
    Ok(SpherePoint::Finite(Complex64::new(re, im)))
}

pub fn parse_points(text: &str) -> Result<[SpherePoint; 4], String> {
    let pts = text.split(',').map(parse_point).collect::<Result<Vec<_>, _>>()?;
    pts.try_into().map_err(|v: Vec<_>| format!("expected 4 points, got {}", v.len()))
}
