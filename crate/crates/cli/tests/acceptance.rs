//! One line per acceptance criterion, then a single verdict. Run with
//! `cargo test --release --test acceptance -- --nocapture` to see the lines.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use arcpair::oracle::{geodesic_in_complement, unzip_arc, DiscreteRiemannMap, FIX_TOLERANCE, IDEM_TOLERANCE};
use arcpair::{
    build_configuration, canonical_class, carlson_rf, chordal, chordal_hausdorff, lattice_from_roots, verify_configuration,
    wp_eval, wp_invert, CanonicalConfiguration, Complex64, LatticeBasis, MarkedPoints, Polyline, RootTriple, SamplingBudget,
    SpherePoint,
};
use arcpair_cli::document::{ConfigDocument, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Three points in the unit disk, centred and scaled, no two closer than 0.1.
fn random_triple(rng: &mut ChaCha8Rng) -> RootTriple {
    loop {
        let mut w = [c(0.0, 0.0); 3];
        for z in w.iter_mut() {
            *z = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
        }
        if let Ok(t) = RootTriple::from_unnormalized(w) {
            if t.min_separation() > 0.1 {
                return t;
            }
        }
    }
}

fn geometries() -> Vec<(&'static str, [Complex64; 3])> {
    vec![
        ("real", [c(1.0, 0.0), c(-0.25, 0.0), c(-0.75, 0.0)]),
        ("lemniscatic", [c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]),
        ("random", random_triple(&mut rng(7)).e),
    ]
}

fn marked(e: [Complex64; 3]) -> [SpherePoint; 4] {
    [SpherePoint::Infinity, SpherePoint::Finite(e[0]), SpherePoint::Finite(e[1]), SpherePoint::Finite(e[2])]
}

fn basis_of(e: [Complex64; 3]) -> LatticeBasis {
    lattice_from_roots(&RootTriple::from_unnormalized(e).unwrap()).unwrap()
}

fn lemniscatic_points() -> [SpherePoint; 4] {
    marked([c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

/// `℘(z)`, or `None` at a pole.
fn wp(basis: &LatticeBasis, z: Complex64) -> Option<(Complex64, Complex64)> {
    match wp_eval(z, basis) {
        (SpherePoint::Finite(p), SpherePoint::Finite(dp)) => Some((p, dp)),
        _ => None,
    }
}

fn interior(basis: &LatticeBasis, x: f64, y: f64) -> Complex64 {
    basis.omega1_0 * (0.05 + 0.9 * x) + basis.omega2_0 * (0.05 + 0.9 * y)
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
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
    rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50)
}

struct Tally {
    failed: Vec<usize>,
}

impl Tally {
    fn record(&mut self, n: usize, pass: bool, detail: String) {
        println!("criterion {n:>2}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failed.push(n);
        }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.1} s", d.as_secs_f64())
}

fn ode_residual() -> (bool, String) {
    let start = Instant::now();
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let t = random_triple(&mut r);
        let basis = lattice_from_roots(&t).unwrap();
        let e = t.e;
        for _ in 0..50 {
            let z = interior(&basis, r.gen(), r.gen());
            let Some((p, dp)) = wp(&basis, z) else { return (false, format!("pole at {z}")) };
            let rhs = 4.0 * (p - e[0]) * (p - e[1]) * (p - e[2]);
            worst = worst.max((dp * dp - rhs).norm() / (dp.norm_sqr() + rhs.norm()).max(1.0));
        }
    }
    let t = start.elapsed();
    (worst < 1e-9 && t < Duration::from_secs(5), format!("worst {worst:.1e}, {}", secs(t)))
}

fn half_periods() -> (bool, String) {
    let mut triples: Vec<[Complex64; 3]> = geometries().into_iter().map(|(_, e)| e).collect();
    let w = Complex64::from_polar(1.0, TAU / 3.0);
    triples.push([c(1.0, 0.0), w, w.conj()]);
    let mut r = rng(11);
    triples.extend((0..20).map(|_| random_triple(&mut r).e));
    let mut worst: f64 = 0.0;
    for e in triples {
        let t = RootTriple::from_unnormalized(e).unwrap();
        let basis = lattice_from_roots(&t).unwrap();
        let (w1, w2) = (basis.omega1_0, basis.omega2_0);
        for (k, h) in [w1 * 0.5, w2 * 0.5, (w1 + w2) * 0.5].into_iter().enumerate() {
            let Some((p, _)) = wp(&basis, h) else { return (false, "pole at a half-period".into()) };
            worst = worst.max((p - t.e[k]).norm());
        }
    }
    (worst < 1e-9, format!("worst {worst:.1e}"))
}

fn period_quadrature() -> (bool, String) {
    // ∫₁^∞ dt/√(4t(t²−1)) with t = 1 + tan²φ becomes ∫₀^{π/2} dφ/√(1 + cos²φ)
    let quad = simpson(&|phi: f64| 1.0 / (1.0 + phi.cos().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-14);
    let rf = carlson_rf(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)).unwrap();
    let half = basis_of([c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]).omega1_0 * 0.5;
    let err = (rf - quad).norm().max((half - quad).norm());
    (err < 1e-10, format!("R_F {:.15}, quadrature {quad:.15}, error {err:.1e}", rf.re))
}

fn periodicity() -> (bool, String) {
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let basis = lattice_from_roots(&random_triple(&mut r)).unwrap();
        let z = interior(&basis, r.gen(), r.gen());
        let (m, n) = (r.gen_range(-3i32..=3), r.gen_range(-3i32..=3));
        let omega = basis.omega1_0 * m as f64 + basis.omega2_0 * n as f64;
        let p = wp(&basis, z).unwrap().0;
        let scale = p.norm().max(1.0);
        for shifted in [-z, z + omega, -z + omega] {
            worst = worst.max((wp(&basis, shifted).unwrap().0 - p).norm() / scale);
        }
    }
    (worst < 1e-9, format!("worst {worst:.1e}"))
}

fn inversion_roundtrip() -> (bool, String) {
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    for (_, e) in geometries() {
        let basis = basis_of(e);
        for _ in 0..100 {
            let w = SpherePoint::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
            let z = wp_invert(w, &basis).unwrap();
            worst = worst.max(chordal(wp_eval(z, &basis).0, w));
        }
    }
    (worst < 1e-9, format!("worst {worst:.1e}"))
}

fn interval_distance(p: SpherePoint, lo: f64, hi: f64) -> f64 {
    match p {
        SpherePoint::Infinity if hi.is_infinite() => 0.0,
        SpherePoint::Infinity => chordal(p, SpherePoint::real(hi)),
        SpherePoint::Finite(z) => chordal(p, SpherePoint::real(z.re.clamp(lo, hi))),
    }
}

fn symmetric_real_case() -> (bool, String) {
    let cfg = build_configuration(lemniscatic_points(), canonical_class(1, 0).unwrap(), &SamplingBudget::default()).unwrap();
    let d0 = cfg.arc0.points.iter().map(|p| interval_distance(*p, 1.0, f64::INFINITY)).fold(0.0, f64::max);
    let d1 = cfg.arc1.points.iter().map(|p| interval_distance(*p, -1.0, 0.0)).fold(0.0, f64::max);
    let ends = cfg.arc0.first() == SpherePoint::Infinity
        && cfg.arc0.last() == SpherePoint::real(1.0)
        && cfg.arc1.first() == SpherePoint::ZERO
        && cfg.arc1.last() == SpherePoint::real(-1.0);
    (ends && d0 < 1e-8 && d1 < 1e-8, format!("arc 0 off [1, ∞] by {d0:.1e}, arc 1 off [-1, 0] by {d1:.1e}"))
}

const ORACLE_CLASSES: [(i64, i64); 5] = [(1, 0), (0, 1), (1, 1), (1, 2), (3, 2)];

/// Tolerance 5e-3 needs `h ≤ 1e-3`.
fn oracle_budget() -> SamplingBudget {
    SamplingBudget::with_h(1e-3)
}

fn oracle_configurations() -> Vec<(String, CanonicalConfiguration)> {
    let mut out = Vec::new();
    for (name, e) in geometries() {
        let mp = MarkedPoints::new(marked(e)).unwrap();
        for (r, s) in ORACLE_CLASSES {
            let cfg = mp.configuration(canonical_class(r, s).unwrap(), &oracle_budget()).unwrap();
            out.push((format!("{name} {r}/{s}"), cfg));
        }
    }
    out
}

fn oracle_match(configs: &[(String, CanonicalConfiguration)]) -> (bool, (bool, String), String) {
    let start = Instant::now();
    let (mut worst, mut fix, mut idem) = (0.0f64, 0.0f64, 0.0f64);
    let mut failures = Vec::new();
    for (name, cfg) in configs {
        match verify_configuration(cfg, 5e-3, 512) {
            Ok(report) => {
                worst = worst.max(report.distance[0]).max(report.distance[1]);
                fix = fix.max(report.involution.fix_residual());
                idem = idem.max(report.involution.idem_residual());
                if !(report.arc_pass[0] && report.arc_pass[1]) {
                    failures.push(format!("{name} {:?}", report.distance));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let t = start.elapsed();
    let pass = failures.is_empty() && t < Duration::from_secs(60);
    let detail = format!("{} configurations, worst distance {worst:.1e}, {}{}", configs.len(), secs(t), list(&failures));
    let involution = (fix < FIX_TOLERANCE && idem < IDEM_TOLERANCE, format!("fix {fix:.1e}, idem {idem:.1e}"));
    (pass, involution, detail)
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", items.join(", "))
    }
}

fn slit(n: usize) -> Polyline {
    Polyline::new((0..n).map(|i| SpherePoint::real(-1.0 + 2.0 * i as f64 / (n - 1) as f64)).collect())
}

/// `w + √(w² − 1)` on the branch outside the unit disk.
fn joukowski_inverse(w: Complex64) -> Complex64 {
    let r = (w - 1.0).sqrt() * (w + 1.0).sqrt();
    let z = w + r;
    if z.norm() >= 1.0 {
        z
    } else {
        w - r
    }
}

/// Composes the discrete map with the Möbius map sending the images of the
/// slit's ends and of ∞ to `-1`, `1` and `∞`.
fn exterior_coordinate(map: &DiscreteRiemannMap, z: SpherePoint) -> Complex64 {
    let k = map.forward(SpherePoint::Infinity).finite().unwrap();
    let f = map.forward(z).finite().unwrap();
    (k + f) / (k - f)
}

fn oracle_self_test() -> (bool, String) {
    let map = unzip_arc(&slit(257)).unwrap();
    let probes = (0..10).map(|i| Complex64::from_polar(1.5 + 0.3 * i as f64, 0.4 + 0.61 * i as f64));
    let map_err = probes
        .map(|z| (exterior_coordinate(&map, SpherePoint::Finite(z)) - joukowski_inverse(z)).norm())
        .fold(0.0, f64::max);
    let segment = Polyline::new((0..=1000).map(|i| SpherePoint::real(2.0 + i as f64 / 1000.0)).collect());
    let geo = geodesic_in_complement(&slit(513), SpherePoint::real(2.0), SpherePoint::real(3.0), 512).unwrap();
    let geo_err = chordal_hausdorff(&geo, &segment);
    (map_err < 1e-3 && geo_err < 1e-3, format!("slit map {map_err:.1e}, geodesic {geo_err:.1e}"))
}

/// Pushes the interior of `arc` sideways on the sphere by `amp · sin(πs)`,
/// `s` being normalized chordal arclength.
fn bulge(arc: &Polyline, amp: f64) -> Polyline {
    let e: Vec<[f64; 3]> = arc.points.iter().map(|p| p.embed()).collect();
    let mut s = vec![0.0];
    for w in arc.points.windows(2) {
        s.push(s.last().unwrap() + chordal(w[0], w[1]));
    }
    let total = *s.last().unwrap();
    let mut out = arc.points.clone();
    for i in 1..e.len() - 1 {
        let x = e[i];
        let t = [e[i + 1][0] - e[i - 1][0], e[i + 1][1] - e[i - 1][1], e[i + 1][2] - e[i - 1][2]];
        let m = [x[1] * t[2] - x[2] * t[1], x[2] * t[0] - x[0] * t[2], x[0] * t[1] - x[1] * t[0]];
        let len = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
        let a = amp * (PI * s[i] / total).sin() / len;
        let y = [x[0] + a * m[0], x[1] + a * m[1], x[2] + a * m[2]];
        let r = (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt();
        out[i] = SpherePoint::from_embedding([y[0] / r, y[1] / r, y[2] / r]);
    }
    Polyline::new(out)
}

fn injected_defect() -> (bool, String) {
    let mut cfg = build_configuration(lemniscatic_points(), canonical_class(1, 0).unwrap(), &oracle_budget()).unwrap();
    cfg.arc0 = bulge(&cfg.arc0, 0.05);
    let report = verify_configuration(&cfg, 5e-3, 512).unwrap();
    let pass = !report.pass && !report.arc_pass[0] && report.distance[0] >= 0.04;
    (pass, format!("verify pass = {}, distance {:.3}", report.pass, report.distance[0]))
}

fn uniqueness() -> (bool, String) {
    let mp = MarkedPoints::new(lemniscatic_points()).unwrap();
    let classes = [(1, 0), (1, 2), (3, 2), (1, 4), (3, 4)];
    let mut pairings = Vec::new();
    let arcs: Vec<Polyline> = classes
        .iter()
        .map(|&(r, s)| {
            let cfg = mp.configuration(canonical_class(r, s).unwrap(), &SamplingBudget::default()).unwrap();
            pairings.push(cfg.pairing.to_string());
            cfg.arc0
        })
        .collect();
    let mut closest = f64::INFINITY;
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            closest = closest.min(chordal_hausdorff(&arcs[i], &arcs[j]));
        }
    }
    let same_pairing = pairings.iter().all(|p| p == "01|23");
    (closest >= 0.05 && same_pairing, format!("closest pair {closest:.3}, pairings {}", pairings.join(" ")))
}

fn companion_invariance() -> (bool, String) {
    let budget = SamplingBudget::default();
    let mut worst: f64 = 0.0;
    for (_, e) in geometries() {
        let mp = MarkedPoints::new(marked(e)).unwrap();
        for (r, s) in ORACLE_CLASSES {
            let cls = canonical_class(r, s).unwrap();
            let base = mp.configuration(cls, &budget).unwrap();
            let (w1, w2) = (base.omega1, base.omega2);
            let mut others = vec![mp.configuration(canonical_class(-r, -s).unwrap(), &budget).unwrap()];
            for (a, b) in [(w1, w2 + w1), (-w1, -w2), (-w1, w2)] {
                others.push(mp.configuration_with_periods(cls, a, b, &budget).unwrap());
            }
            for other in &others {
                for k in 0..2 {
                    worst = worst.max(chordal_hausdorff(base.arc(k), other.arc(k)));
                }
            }
        }
    }
    (worst < 1e-9, format!("worst {worst:.1e}"))
}

fn arcpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcpair")).args(args).output().expect("binary runs")
}

fn verify_agrees(doc: &Path, report: &Path) -> Option<(i32, bool)> {
    let out = arcpair(&["verify", doc.to_str()?, "--report", report.to_str()?]);
    let parsed: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).ok()?).ok()?;
    Some((out.status.code()?, parsed["pass"].as_bool()?))
}

fn cli_determinism() -> (bool, String) {
    let dir = tempfile::tempdir().unwrap();
    let mut docs = Vec::new();
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let out = arcpair(&["solve", "--points", "inf,1,0,-1", "--class", "3/2", "--out", path.to_str().unwrap()]);
        if !out.status.success() {
            return (false, format!("solve failed: {}", String::from_utf8_lossy(&out.stderr)));
        }
        docs.push(path);
    }
    let identical = fs::read(&docs[0]).unwrap() == fs::read(&docs[1]).unwrap();

    // a second document with γ₀ pushed off the geodesic
    let mut doc = ConfigDocument::from_json(&fs::read_to_string(&docs[0]).unwrap()).unwrap();
    let bulged = bulge(&Polyline::new(doc.arcs[0].iter().map(|p| p.0).collect()), 0.05);
    doc.arcs[0] = bulged.points.into_iter().map(Point).collect();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, doc.to_json()).unwrap();

    let report = dir.path().join("report.json");
    let good = verify_agrees(&docs[0], &report);
    let tampered = verify_agrees(&bad, &report);
    let pass = identical && good == Some((0, true)) && tampered == Some((1, false));
    (pass, format!("byte-identical {identical}, verify (exit, pass): good {good:?}, bulged {tampered:?}"))
}

#[test]
fn acceptance() {
    let mut tally = Tally { failed: Vec::new() };
    let (p, d) = ode_residual();
    tally.record(1, p, d);
    let (p, d) = half_periods();
    tally.record(2, p, d);
    let (p, d) = period_quadrature();
    tally.record(3, p, d);
    let (p, d) = periodicity();
    tally.record(4, p, d);
    let (p, d) = inversion_roundtrip();
    tally.record(5, p, d);
    let (p, d) = symmetric_real_case();
    tally.record(6, p, d);
    let configs = oracle_configurations();
    let (p, involution, d) = oracle_match(&configs);
    tally.record(7, p, d);
    let (p, d) = oracle_self_test();
    tally.record(8, p, d);
    let (p, d) = injected_defect();
    tally.record(9, p, d);
    let (p, d) = uniqueness();
    tally.record(10, p, d);
    let (p, d) = companion_invariance();
    tally.record(11, p, d);
    tally.record(12, involution.0, involution.1);
    let (p, d) = cli_determinism();
    tally.record(13, p, d);
    assert!(tally.failed.is_empty(), "failing criteria: {:?}", tally.failed);
}
