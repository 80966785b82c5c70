use serde::{Deserialize, Serialize};

use crate::base::{BaseParams, C64};
use crate::error::Result;

use super::compile::normalize;
use super::spec::IntegrandSpec;

/// Pole bookkeeping for the unit-circle contour.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleAudit {
    /// Leading members `a p^j q^k` (`j + k <= 2`) of every pole family.
    #[serde(with = "crate::cser::vec")]
    pub inside_poles: Vec<C64>,
    /// Their reciprocals.
    #[serde(with = "crate::cser::vec")]
    pub outside_poles: Vec<C64>,
    pub min_distance_to_contour: f64,
    pub guard: f64,
    pub passed: bool,
    /// Description of the first factor breaching the guard.
    pub offending: Option<String>,
}

/// Classify the poles of every numerator gamma `Gamma(a z^e)` relative to the unit circle.
///
/// A factor is admissible iff `|a| < 1`; its nearest pole in any single
/// variable then sits at modulus `|a|^{1/|e|}` (and the reciprocal), so the
/// distance to the contour is `1 - |a|^{1/|e|}`.
pub fn audit_poles(spec: &IntegrandSpec, base: &BaseParams, guard: f64) -> Result<PoleAudit> {
    spec.validate()?;
    let prog = normalize(spec, base)?;
    let (p, q) = (base.p(), base.q());
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    let mut min_dist = f64::INFINITY;
    let mut offending = None;
    for f in prog.iter().filter(|f| f.has_poles()) {
        let e = f.exponents.iter().map(|e| e.abs()).max().unwrap_or(1).max(1) as f64;
        let a = f.param.norm();
        let dist = if a < 1.0 { 1.0 - a.powf(1.0 / e) } else { 0.0 };
        if dist < min_dist {
            min_dist = dist;
        }
        if dist < guard && offending.is_none() {
            offending = Some(format!("parameter {} (|a| = {a}) with exponents {:?}", f.param, f.exponents));
        }
        for j in 0..=2 {
            for k in 0..=(2 - j) {
                let pole = f.param * p.powi(j) * q.powi(k);
                inside.push(pole);
                outside.push(1.0 / pole);
            }
        }
    }
    if !min_dist.is_finite() {
        min_dist = 1.0;
    }
    Ok(PoleAudit {
        inside_poles: inside,
        outside_poles: outside,
        min_distance_to_contour: min_dist,
        guard,
        passed: offending.is_none(),
        offending,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn beta_like(ts: &[C64]) -> IntegrandSpec {
        let mut s = IntegrandSpec::new(1).den_root(&[2]);
        for &t in ts {
            s = s.num_pm(t, &[1]);
        }
        s
    }

    #[test]
    fn distances_and_failures() {
        let base = BaseParams::new(c(0.3, 0.0), c(0.2, 0.0)).unwrap();
        let a = audit_poles(&beta_like(&[c(0.4, 0.0), c(0.0, 0.6)]), &base, 1e-3).unwrap();
        assert!(a.passed);
        assert!((a.min_distance_to_contour - 0.4).abs() < 1e-15);
        let b = audit_poles(&beta_like(&[c(1.0, 0.0)]), &base, 1e-3).unwrap();
        assert!(!b.passed);
        assert_eq!(b.min_distance_to_contour, 0.0);
        let g = audit_poles(&beta_like(&[c(0.999, 0.0)]), &base, 1e-2).unwrap();
        assert!(!g.passed);
        assert!(g.inside_poles.iter().all(|z| z.norm() < 1.0));
        assert!(g.outside_poles.iter().all(|z| z.norm() > 1.0));
    }
}
