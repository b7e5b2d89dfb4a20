//! The geodesic half of the oracle must not lean on the construction it
//! checks. Its sources may not name the lattice, ℘ or the solver.

use std::fs;
use std::path::Path;

const FORBIDDEN: &[&str] = &["elliptic", "LatticeBasis", "wp_", "solver", "isotopy", "carlson", "CanonicalConfiguration"];

#[test]
fn geodesic_oracle_is_independent() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("src/oracle");
    for file in ["zipper.rs", "hausdorff.rs", "precision.rs", "kernel.rs"] {
        let text = fs::read_to_string(dir.join(file)).unwrap();
        for line in text.lines().filter(|l| l.trim_start().starts_with("use ") || !l.trim_start().starts_with("//")) {
            for word in FORBIDDEN {
                assert!(!line.contains(word), "{file} mentions {word}: {line}");
            }
        }
    }
}
