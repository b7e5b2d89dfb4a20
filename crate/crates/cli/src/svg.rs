//! SVG figure of a configuration: both arcs and the four marked points.
//!
//! The view is a fixed square around the finite part of the picture. Arcs
//! are clipped to it; where an arc runs off to ∞ a marker sits on the
//! boundary in the direction it leaves.

use std::fmt::Write;

use arcpair::{Complex64, Polyline, SpherePoint};

const COLORS: [&str; 2] = ["firebrick", "steelblue"];

#[derive(Debug, Clone, Copy)]
struct View {
    center: Complex64,
    half: f64,
    width: f64,
}

impl View {
    fn fit(points: &[SpherePoint; 4], arcs: [&Polyline; 2], width: f64) -> Self {
        let marked: Vec<Complex64> = points.iter().filter_map(|p| p.finite()).collect();
        let reach = 3.0 * (1.0 + marked.iter().map(|z| z.norm()).fold(0.0, f64::max));
        let (mut lo, mut hi) = (Complex64::new(f64::INFINITY, f64::INFINITY), Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        let all = marked.iter().copied().chain(
            arcs.iter().flat_map(|a| a.points.iter().filter_map(|p| p.finite())).filter(|z| z.norm() <= reach),
        );
        for z in all {
            lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
        }
        if !lo.re.is_finite() {
            return View { center: Complex64::new(0.0, 0.0), half: 1.0, width };
        }
        let half = (0.55 * (hi.re - lo.re).max(hi.im - lo.im)).max(0.5);
        View { center: (lo + hi) * 0.5, half, width }
    }

    fn px(&self, z: Complex64) -> (f64, f64) {
        let s = self.width / (2.0 * self.half);
        ((z.re - self.center.re + self.half) * s, (self.center.im + self.half - z.im) * s)
    }

    fn contains(&self, z: Complex64) -> bool {
        (z.re - self.center.re).abs() <= self.half && (z.im - self.center.im).abs() <= self.half
    }

    /// Where the ray from the centre towards `z` leaves the view.
    fn boundary_toward(&self, z: Complex64) -> Complex64 {
        let d = z - self.center;
        let m = d.re.abs().max(d.im.abs());
        if m == 0.0 {
            return self.center + self.half;
        }
        self.center + d * (self.half / m)
    }

    /// Liang–Barsky clip of the segment `a b` to the view.
    fn clip(&self, a: Complex64, b: Complex64) -> Option<(Complex64, Complex64)> {
        let d = b - a;
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        let lo = self.center - Complex64::new(self.half, self.half);
        let hi = self.center + Complex64::new(self.half, self.half);
        for (p, q) in [(-d.re, a.re - lo.re), (d.re, hi.re - a.re), (-d.im, a.im - lo.im), (d.im, hi.im - a.im)] {
            if p == 0.0 {
                if q < 0.0 {
                    return None;
                }
            } else {
                let r = q / p;
                if p < 0.0 {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
            }
        }
        (t0 <= t1).then(|| (a + d * t0, a + d * t1))
    }
}

/// Path data for the visible part of `arc`, plus the boundary positions of
/// its ∞ markers.
fn arc_path(view: &View, arc: &Polyline) -> (String, Vec<Complex64>) {
    let mut d = String::new();
    let mut markers = Vec::new();
    let mut pen: Option<Complex64> = None;
    let pts = &arc.points;
    for i in 0..pts.len() {
        if pts[i].is_infinite() {
            let neighbour = [i.checked_sub(1), Some(i + 1)].into_iter().flatten().filter_map(|j| pts.get(j)?.finite()).next();
            if let Some(z) = neighbour {
                markers.push(view.boundary_toward(z));
            }
            pen = None;
            continue;
        }
        if i + 1 >= pts.len() {
            break;
        }
        let (Some(a), Some(b)) = (pts[i].finite(), pts[i + 1].finite()) else { continue };
        let Some((p, q)) = view.clip(a, b) else {
            pen = None;
            continue;
        };
        if pen != Some(p) {
            let (x, y) = view.px(p);
            let _ = write!(d, "M{x:.2} {y:.2}");
        }
        let (x, y) = view.px(q);
        let _ = write!(d, "L{x:.2} {y:.2}");
        pen = Some(q);
    }
    (d, markers)
}

/// SVG 1.1 document, `width` pixels square.
pub fn render(points: &[SpherePoint; 4], arcs: [&Polyline; 2], width: u32) -> String {
    let w = width.max(64) as f64;
    let view = View::fit(points, arcs, w);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{w}" fill="white" stroke="gray"/>"#);
    let mut infinity_marks = Vec::new();
    for (k, arc) in arcs.iter().enumerate() {
        let (d, marks) = arc_path(&view, arc);
        if !d.is_empty() {
            let _ = writeln!(out, r#"<path d="{d}" fill="none" stroke="{}" stroke-width="2"/>"#, COLORS[k]);
        }
        infinity_marks.extend(marks);
    }
    for z in &infinity_marks {
        let (x, y) = view.px(*z);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="6" fill="white" stroke="black"/>"#);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">∞</text>"#, x, y + 5.0);
    }
    for (k, p) in points.iter().enumerate() {
        let Some(z) = p.finite().filter(|z| view.contains(*z)) else { continue };
        let (x, y) = view.px(z);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="14">a{k}</text>"#, x + 6.0, y - 6.0);
    }
    out.push_str("</svg>\n");
    out
}
