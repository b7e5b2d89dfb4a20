//! Command-line surface for building, checking and drawing canonical arc
//! pairs.
//!
//! Exit codes: 0 success, 1 verification failed, 2 invalid input,
//! 3 numerical failure. Every failure prints one line
//! `error: <Kind>: <reason>` on stderr.

pub mod document;
pub mod points;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use arcpair::oracle::{default_tolerance, DEFAULT_RESOLUTION};
use arcpair::{class_pairing, enumerate_classes, verify_configuration, Error, IsotopyClass, Pairing, SamplingBudget, VerificationReport};
use clap::{Parser, Subcommand};
use serde::Serialize;

use document::{ConfigDocument, Precise};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "arcpair", version, about = "Canonical geodesic arc pairs on the four-punctured sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the canonical configuration for four points and a class.
    Solve {
        /// Four points `P0,P1,P2,P3`, each `re+imi`, `re` or `inf`.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Isotopy class `r/s`.
        #[arg(long = "class", allow_hyphen_values = true)]
        class: String,
        /// Expected pairing (e.g. `01|23`); only checked.
        #[arg(long)]
        pairing: Option<String>,
        /// Largest chordal gap between samples.
        #[arg(long, default_value_t = 1e-2)]
        h: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// List classes up to a height with their pairings.
    Enumerate {
        #[arg(long)]
        max_height: i64,
        #[arg(long)]
        json: bool,
    },
    /// Check a saved configuration against the geodesic oracle.
    Verify {
        file: PathBuf,
        /// Defaults to max(5e-3, 5h).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Draw a saved configuration.
    Render {
        file: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, default_value_t = 800)]
        width: u32,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    kind: String,
    message: String,
}

impl Failure {
    fn input(kind: &str, message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, kind: kind.into(), message: message.into() }
    }

    fn io(path: &Path, e: std::io::Error, code: i32) -> Self {
        Failure { code, kind: "Io".into(), message: format!("{}: {e}", path.display()) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_input_error() { EXIT_INPUT } else { EXIT_NUMERIC };
        Failure { code, kind: e.kind().into(), message: e.to_string() }
    }
}

fn one_line(text: &str) -> String {
    text.lines().map(str::trim).filter(|l| !l.is_empty()).collect::<Vec<_>>().join(" ")
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let text = e.to_string();
            let reason = text.lines().next().unwrap_or("").trim_start_matches("error: ");
            let _ = writeln!(err, "error: Usage: {}", one_line(reason));
            return EXIT_INPUT;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}: {}", f.kind, one_line(&f.message));
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Solve { points, class, pairing, h, out: path, svg } => {
            solve(&points, &class, pairing.as_deref(), h, path.as_deref(), svg.as_deref(), out)
        }
        Command::Enumerate { max_height, json } => enumerate(max_height, json, out),
        Command::Verify { file, tol, resolution, report } => verify(&file, tol, resolution, report.as_deref(), out),
        Command::Render { file, svg, width } => render(&file, &svg, width),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::io(path, e, EXIT_NUMERIC))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::io(Path::new("<stdout>"), e, EXIT_NUMERIC))
}

fn solve(
    points: &str,
    class: &str,
    pairing: Option<&str>,
    h: f64,
    path: Option<&Path>,
    svg_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let points = points::parse_points(points).map_err(|m| Failure::input("InvalidInput", m))?;
    let cls: IsotopyClass = class.parse()?;
    if let Some(p) = pairing {
        let want: Pairing = p.parse()?;
        if want != class_pairing(cls) {
            return Err(Failure::input(
                "PairingMismatch",
                format!("class {cls} induces pairing {}, not {want}", class_pairing(cls)),
            ));
        }
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Failure::input("InvalidInput", "h must be a positive number"));
    }
    let cfg = document::solve(points, cls, &SamplingBudget::with_h(h))?;
    let doc = ConfigDocument::from_config(&cfg);
    let json = doc.to_json();
    match path {
        Some(p) => {
            write_file(p, &json)?;
            emit(
                out,
                &format!(
                    "class {cls} pairing {} samples {} {} -> {}\n",
                    cfg.pairing,
                    cfg.arc0.len(),
                    cfg.arc1.len(),
                    p.display()
                ),
            )?;
        }
        None => emit(out, &json)?,
    }
    if let Some(p) = svg_path {
        write_file(p, &svg::render(&cfg.points, [&cfg.arc0, &cfg.arc1], 800))?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ClassLine {
    r: i64,
    s: i64,
    pairing: String,
}

fn enumerate(max_height: i64, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    if max_height < 1 {
        return Err(Failure::input("InvalidInput", "max-height must be at least 1"));
    }
    let classes = enumerate_classes(max_height);
    let text = if json {
        let lines: Vec<ClassLine> =
            classes.iter().map(|c| ClassLine { r: c.r(), s: c.s(), pairing: class_pairing(*c).to_string() }).collect();
        serde_json::to_string_pretty(&lines).expect("serializes") + "\n"
    } else {
        classes.iter().map(|c| format!("({},{}) {}\n", c.r(), c.s(), class_pairing(*c))).collect()
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn load(path: &Path) -> Result<ConfigDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e, EXIT_INPUT))?;
    Ok(ConfigDocument::from_json(&text)?)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ArcLine {
    distance: f64,
    pass: bool,
    /// Mantissa bits of the oracle map.
    precision_bits: u32,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportDoc {
    pass: bool,
    tolerance: f64,
    resolution: usize,
    arcs: [ArcLine; 2],
    fix_residual: [f64; 2],
    idem_residual: [f64; 2],
    probe_clearance: [f64; 2],
    probes: usize,
    disjointness: f64,
}

impl From<&VerificationReport> for ReportDoc {
    fn from(r: &VerificationReport) -> Self {
        ReportDoc {
            pass: r.pass,
            tolerance: r.tolerance,
            resolution: r.resolution,
            arcs: [0, 1].map(|k| ArcLine { distance: r.distance[k], pass: r.arc_pass[k], precision_bits: r.precision[k].bits() }),
            fix_residual: r.involution.fix,
            idem_residual: r.involution.idem,
            probe_clearance: r.involution.clearance,
            probes: r.involution.probes,
            disjointness: r.disjointness,
        }
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    for k in 0..2 {
        s += &format!(
            "arc {k}: distance {:.3e} tol {:.3e} {} ({}-bit oracle)\n",
            r.distance[k],
            r.tolerance,
            if r.arc_pass[k] { "pass" } else { "FAIL" },
            r.precision[k].bits()
        );
    }
    s += &format!("involution: fix {:.3e} idem {:.3e}\n", r.involution.fix_residual(), r.involution.idem_residual());
    s += &format!("disjointness: {:.3e}\n", r.disjointness);
    s += &format!("resolution: {}\n", r.resolution);
    s += if r.pass { "result: PASS\n" } else { "result: FAIL\n" };
    s
}

fn verify(path: &Path, tol: Option<f64>, resolution: usize, report: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = load(path)?.to_config()?;
    let tol = tol.unwrap_or_else(|| default_tolerance(&cfg));
    let r = verify_configuration(&cfg, tol, resolution)?;
    emit(out, &report_text(&r))?;
    if let Some(p) = report {
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise::default());
        ReportDoc::from(&r).serialize(&mut ser).expect("report serializes");
        buf.push(b'\n');
        write_file(p, &String::from_utf8(buf).expect("UTF-8"))?;
    }
    Ok(if r.pass { EXIT_OK } else { EXIT_FAIL })
}

fn render(path: &Path, svg_path: &Path, width: u32) -> Result<i32, Failure> {
    let cfg = load(path)?.to_config()?;
    write_file(svg_path, &svg::render(&cfg.points, [&cfg.arc0, &cfg.arc1], width))?;
    Ok(EXIT_OK)
}
