//! JSON persistence of configurations.
//!
//! Floats are written with 17 significant digits so that parsing restores
//! every bit. Complex numbers are `[re, im]`; points may also be `"inf"`.

use std::io;

use arcpair::solver::MarkedPoints;
use arcpair::{
    canonical_class, class_pairing, normalize_quadruple, CanonicalConfiguration, Complex64, Error, LatticeBasis, Pairing,
    Polyline, SamplingBudget, SpherePoint,
};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "config-document.v1";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point(pub SpherePoint);

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            SpherePoint::Infinity => s.serialize_str("inf"),
            SpherePoint::Finite(z) => [z.re, z.im].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Token(String),
            Pair([f64; 2]),
        }
        match Raw::deserialize(d)? {
            Raw::Token(t) if t == "inf" => Ok(Point(SpherePoint::Infinity)),
            Raw::Token(t) => Err(de::Error::custom(format!("unknown point token {t:?}"))),
            Raw::Pair([re, im]) => Ok(Point(SpherePoint::Finite(Complex64::new(re, im)))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pair(pub Complex64);

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Pair(Complex64::new(re, im)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    pub r: i64,
    pub s: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub omega1_0: Pair,
    pub omega2_0: Pair,
    pub tau: Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodsDoc {
    pub omega1: Pair,
    pub omega2: Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BudgetDoc {
    pub h: f64,
    pub theta_max_deg: f64,
    pub max_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MetadataDoc {
    pub flat_length0: f64,
    pub flat_length1: f64,
    pub annulus_modulus: f64,
    pub separation: f64,
    pub sampling_budget: BudgetDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub schema: String,
    pub version: String,
    pub points: [Point; 4],
    pub class: ClassDoc,
    pub pairing: String,
    pub basis: BasisDoc,
    pub periods: PeriodsDoc,
    pub arcs: [Vec<Point>; 2],
    pub metadata: MetadataDoc,
}

fn points_of(line: &Polyline) -> Vec<Point> {
    line.points.iter().map(|p| Point(*p)).collect()
}

impl ConfigDocument {
    pub fn from_config(cfg: &CanonicalConfiguration) -> Self {
        let b = &cfg.basis;
        ConfigDocument {
            schema: SCHEMA.to_string(),
            version: concat!("arcpair ", env!("CARGO_PKG_VERSION")).to_string(),
            points: cfg.points.map(Point),
            class: ClassDoc { r: cfg.cls.r(), s: cfg.cls.s() },
            pairing: cfg.pairing.to_string(),
            basis: BasisDoc { omega1_0: Pair(b.omega1_0), omega2_0: Pair(b.omega2_0), tau: Pair(b.tau) },
            periods: PeriodsDoc { omega1: Pair(cfg.omega1), omega2: Pair(cfg.omega2) },
            arcs: [points_of(&cfg.arc0), points_of(&cfg.arc1)],
            metadata: MetadataDoc {
                flat_length0: cfg.flat_length0,
                flat_length1: cfg.flat_length1,
                annulus_modulus: cfg.annulus_modulus,
                separation: cfg.separation,
                sampling_budget: BudgetDoc {
                    h: cfg.budget.h,
                    theta_max_deg: cfg.budget.theta_max_deg,
                    max_samples: cfg.budget.max_samples,
                },
            },
        }
    }

    /// Rebuilds the configuration around the stored arcs. The lattice is
    /// taken from the stored periods and must reproduce the roots.
    pub fn to_config(&self) -> Result<CanonicalConfiguration, Error> {
        if self.schema != SCHEMA {
            return Err(Error::InvalidInput(format!("unsupported schema {:?}", self.schema)));
        }
        let points = self.points.map(|p| p.0);
        let (normalization, roots) = normalize_quadruple(points)?;
        let basis = LatticeBasis::from_periods(self.basis.omega1_0.0, self.basis.omega2_0.0, &roots)?;
        let cls = canonical_class(self.class.r, self.class.s)?;
        if (cls.r(), cls.s()) != (self.class.r, self.class.s) {
            return Err(Error::InvalidInput(format!("class {}/{} is not in canonical form", self.class.r, self.class.s)));
        }
        let pairing: Pairing = self.pairing.parse()?;
        if pairing != class_pairing(cls) {
            return Err(Error::InvalidInput(format!("pairing {pairing} does not match class {cls}")));
        }
        let arc = |k: usize| -> Result<Polyline, Error> {
            if self.arcs[k].len() < 2 {
                return Err(Error::InvalidInput(format!("arc {k} has fewer than two samples")));
            }
            Ok(Polyline::new(self.arcs[k].iter().map(|p| p.0).collect()))
        };
        let m = &self.metadata;
        let budget = SamplingBudget {
            h: m.sampling_budget.h,
            theta_max_deg: m.sampling_budget.theta_max_deg,
            max_samples: m.sampling_budget.max_samples,
        };
        if !(budget.h > 0.0) {
            return Err(Error::InvalidInput("sampling budget h must be positive".into()));
        }
        Ok(CanonicalConfiguration {
            points,
            cls,
            pairing,
            basis,
            normalization,
            omega1: self.periods.omega1.0,
            omega2: self.periods.omega2.0,
            arc0: arc(0)?,
            arc1: arc(1)?,
            flat_length0: m.flat_length0,
            flat_length1: m.flat_length1,
            annulus_modulus: m.annulus_modulus,
            separation: m.separation,
            budget,
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, Precise::default());
        self.serialize(&mut ser).expect("document serializes");
        out.push(b'\n');
        String::from_utf8(out).expect("JSON is UTF-8")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed document: {e}")))
    }
}

/// Builds a configuration from scratch, the way `solve` does.
pub fn solve(points: [SpherePoint; 4], cls: arcpair::IsotopyClass, budget: &SamplingBudget) -> Result<CanonicalConfiguration, Error> {
    MarkedPoints::new(points)?.configuration(cls, budget)
}

/// `{:.16e}`: 17 significant digits, enough to round-trip any f64.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Pretty printer that keeps numeric arrays such as `[re, im]` on one line
/// and writes floats with [`format_float`].
#[derive(Default)]
pub struct Precise {
    indent: usize,
    /// Set between an array separator and the value that follows it;
    /// `true` for the first element.
    pending: Option<bool>,
    /// Whether each open array broke its elements onto separate lines.
    broken: Vec<bool>,
}

impl Precise {
    fn newline<W: ?Sized + io::Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.indent {
            w.write_all(b"  ")?;
        }
        Ok(())
    }

    /// Numbers stay on the current line.
    fn inline<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        if let Some(first) = self.pending.take() {
            if !first {
                w.write_all(b" ")?;
            }
        }
        Ok(())
    }

    /// Strings and containers inside an array start a new line.
    fn block<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        if self.pending.take().is_some() {
            if let Some(top) = self.broken.last_mut() {
                *top = true;
            }
            self.newline(w)?;
        }
        Ok(())
    }
}

impl serde_json::ser::Formatter for Precise {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        self.inline(w)?;
        w.write_all(format_float(v).as_bytes())
    }

    fn write_i64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: i64) -> io::Result<()> {
        self.inline(w)?;
        w.write_all(v.to_string().as_bytes())
    }

    fn write_u64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: u64) -> io::Result<()> {
        self.inline(w)?;
        w.write_all(v.to_string().as_bytes())
    }

    fn begin_string<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.block(w)?;
        w.write_all(b"\"")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.block(w)?;
        self.indent += 1;
        self.broken.push(false);
        w.write_all(b"[")
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent -= 1;
        if self.broken.pop().unwrap_or(false) {
            self.newline(w)?;
        }
        w.write_all(b"]")
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        self.pending = Some(first);
        Ok(())
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.block(w)?;
        self.indent += 1;
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent -= 1;
        self.newline(w)?;
        w.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        self.newline(w)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }
}
