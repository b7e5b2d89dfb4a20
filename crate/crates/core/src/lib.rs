//! Canonical configurations of two disjoint arcs joining four marked points
//! on the Riemann sphere.
//!
//! Each arc of a canonical configuration is the hyperbolic geodesic in the
//! complement of the other. After a Möbius normalization sending the marked
//! points to `(∞, e1, e2, e3)`, the arcs are images of two parallel lattice
//! segments under the Weierstrass ℘-function with roots `e1, e2, e3`:
//!
//! ```text
//! γ₀ = ℘([0, ω₁/2]),   γ₁ = ℘([ω₂/2, (ω₁+ω₂)/2])
//! ```
//!
//! where `ω₁` is the primitive period selected by the isotopy class and `ω₂`
//! completes it to a basis. The [`oracle`] module checks the geodesic
//! property independently with a zipper-type conformal map.

pub mod elliptic;
pub mod error;
pub mod isotopy;
pub mod mobius;
pub mod oracle;
pub mod polyline;
pub mod solver;

pub use elliptic::{carlson_rf, lattice_from_roots, reduce_mod_lattice, wp_eval, wp_invert, LatticeBasis};
pub use error::{Error, Result};
pub use isotopy::{canonical_class, class_pairing, companion_period, enumerate_classes, IsotopyClass, Pairing};
pub use mobius::{chordal, normalize_quadruple, MobiusMap, RootTriple, SpherePoint};
pub use oracle::{chordal_hausdorff, verify_configuration, VerificationReport};
pub use polyline::Polyline;
pub use solver::{build_configuration, CanonicalConfiguration, MarkedPoints, SamplingBudget};

pub use num_complex::Complex64;
