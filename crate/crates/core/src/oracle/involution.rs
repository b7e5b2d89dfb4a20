//! Anti-conformal involutions of the arc complements.
//!
//! `Ĉ ∖ (γ₀ ∪ γ₁)` lifts under ℘ to the strip between the line through 0 and
//! `ω₁` and its translate through `ω₂/2`. Reflecting the strip lift in the
//! first line and pushing down by ℘ realizes `σ₀` (fixing γ₀); reflecting in
//! the second realizes `σ₁` (fixing γ₁).

use crate::elliptic::lattice_coords;
use crate::error::Result;
use crate::mobius::SpherePoint;
use crate::solver::CanonicalConfiguration;

use super::hausdorff::Chain;
use super::zipper::sphere_grid;

/// Probe points for the idempotence check stay this far (chordally) from
/// both arcs.
pub const PROBE_CLEARANCE: f64 = 0.1;
pub const PROBE_COUNT: usize = 50;

/// Residuals of the two reflections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvolutionResiduals {
    /// Largest displacement of a γ_k sample under σ_k.
    pub fix: [f64; 2],
    /// Largest `d(σ_k(σ_k(w)), w)` over the probe points.
    pub idem: [f64; 2],
    /// Smallest distance from `σ_k(probe)` to the other arc.
    pub clearance: [f64; 2],
    pub probes: usize,
}

impl InvolutionResiduals {
    pub fn fix_residual(&self) -> f64 {
        self.fix[0].max(self.fix[1])
    }

    pub fn idem_residual(&self) -> f64 {
        self.idem[0].max(self.idem[1])
    }
}

struct Reflections<'a> {
    config: &'a CanonicalConfiguration,
    back: crate::mobius::MobiusMap,
}

impl Reflections<'_> {
    fn apply(&self, k: usize, w: SpherePoint) -> Result<SpherePoint> {
        let cfg = self.config;
        let (w1, w2) = (cfg.omega1, cfg.omega2);
        let z = cfg.basis.invert(cfg.normalization.apply(w))?;
        let (_, y) = lattice_coords(z, w1, w2);
        let mut lift = z - w2 * y.round();
        if lattice_coords(lift, w1, w2).1 < 0.0 {
            lift = -lift;
        }
        let rot = w1 * w1 / w1.norm_sqr();
        let image = if k == 0 {
            rot * lift.conj()
        } else {
            let mid = w2 * 0.5;
            mid + rot * (lift - mid).conj()
        };
        Ok(self.back.apply(cfg.basis.wp_point(image)))
    }
}

fn probes(chains: &[Chain; 2]) -> Vec<SpherePoint> {
    sphere_grid(400)
        .into_iter()
        .filter(|p| chains.iter().all(|c| c.distance(p.embed()) > PROBE_CLEARANCE))
        .take(PROBE_COUNT)
        .collect()
}

/// Fixed-point and idempotence residuals of `σ₀` and `σ₁`.
pub fn involution_residuals(config: &CanonicalConfiguration) -> Result<InvolutionResiduals> {
    let refl = Reflections { config, back: config.normalization.invert() };
    let chains = [Chain::new(&config.arc0), Chain::new(&config.arc1)];
    let probe_points = probes(&chains);
    let mut out = InvolutionResiduals { fix: [0.0; 2], idem: [0.0; 2], clearance: [f64::INFINITY; 2], probes: probe_points.len() };
    for k in 0..2 {
        for w in &config.arc(k).points {
            let d = crate::mobius::chordal(refl.apply(k, *w)?, *w);
            out.fix[k] = out.fix[k].max(d);
        }
        for w in &probe_points {
            let once = refl.apply(k, *w)?;
            let twice = refl.apply(k, once)?;
            out.idem[k] = out.idem[k].max(crate::mobius::chordal(twice, *w));
            out.clearance[k] = out.clearance[k].min(chains[1 - k].distance(once.embed()));
        }
    }
    Ok(out)
}
