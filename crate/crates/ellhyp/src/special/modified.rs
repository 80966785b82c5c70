use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::base::{e2pi, QuasiPeriods, SeriesBudget, C64};
use crate::error::{Error, Result};

use super::bernoulli::bernoulli_b33;
use super::gamma::gamma_with;

/// Which product formula produced a modified gamma value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Representation {
    /// Two standard gammas with bases `(p, q)` and `(q~, r)`.
    A,
    /// One standard gamma with bases `(r~, p~)` times a `B_{3,3}` exponential.
    B,
}

const SAFE: f64 = 1.0 - 1e-6;

fn bases_a_ok(w: &QuasiPeriods) -> bool {
    w.p().norm() < SAFE && w.q().norm() < SAFE && w.q_tilde().norm() < SAFE && w.r().norm() < SAFE
}

fn bases_b_ok(w: &QuasiPeriods) -> bool {
    w.r_tilde().norm() < SAFE && w.p_tilde().norm() < SAFE
}

/// `Gamma(e(u/omega2); p, q) Gamma(r e(-u/omega1); q~, r)`.
pub fn modified_gamma_a(u: C64, w: &QuasiPeriods, budget: &SeriesBudget) -> Result<C64> {
    if !bases_a_ok(w) {
        return Err(Error::NoConvergentRepresentation);
    }
    let g1 = gamma_with(e2pi(u / w.omega2), w.p(), w.q(), budget)?;
    let g2 = gamma_with(w.r() * e2pi(-u / w.omega1), w.q_tilde(), w.r(), budget)?;
    Ok(g1 * g2)
}

/// `exp(-pi i B33(u)/3) Gamma(e(-u/omega3); r~, p~)`; stays finite at `|q| = 1`.
pub fn modified_gamma_b(u: C64, w: &QuasiPeriods, budget: &SeriesBudget) -> Result<C64> {
    if !bases_b_ok(w) {
        return Err(Error::NoConvergentRepresentation);
    }
    let b33 = bernoulli_b33(u, w)?;
    let g = gamma_with(e2pi(-u / w.omega3), w.r_tilde(), w.p_tilde(), budget)?;
    Ok((C64::new(0.0, -PI / 3.0) * b33).exp() * g)
}

/// Modified elliptic gamma function, preferring representation A when `|q| < 1 - 1e-6`.
pub fn modified_gamma_g(u: C64, w: &QuasiPeriods, budget: &SeriesBudget) -> Result<(C64, Representation)> {
    if bases_a_ok(w) {
        return Ok((modified_gamma_a(u, w, budget)?, Representation::A));
    }
    if bases_b_ok(w) {
        return Ok((modified_gamma_b(u, w, budget)?, Representation::B));
    }
    Err(Error::NoConvergentRepresentation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{bernoulli_b22, theta};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn generic() -> QuasiPeriods {
        QuasiPeriods::new(c(0.3, 0.9), c(1.0, 0.0), c(-0.5, 1.1)).unwrap()
    }

    #[test]
    fn representations_agree() {
        let b = SeriesBudget::default();
        let w = generic();
        for u in [c(0.3, 0.1), c(0.7, -0.2), c(1.1, 0.3)] {
            let a = modified_gamma_a(u, &w, &b).unwrap();
            let bb = modified_gamma_b(u, &w, &b).unwrap();
            assert!((a / bb - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn normalization_and_reflection() {
        let b = SeriesBudget::default();
        let w = generic();
        let (g, rep) = modified_gamma_g(w.sum() / 2.0, &w, &b).unwrap();
        assert_eq!(rep, Representation::A);
        assert!((g - 1.0).norm() < 1e-12);
        let u = c(0.41, 0.07);
        let (ga, _) = modified_gamma_g(u, &w, &b).unwrap();
        let (gb, _) = modified_gamma_g(w.sum() - u, &w, &b).unwrap();
        assert!((ga * gb - 1.0).norm() < 1e-11);
    }

    #[test]
    fn three_difference_equations() {
        let b = SeriesBudget::default();
        let w = generic();
        let u = c(0.37, 0.11);
        let g = |x: C64| modified_gamma_g(x, &w, &b).unwrap().0;
        let g0 = g(u);
        let e1 = g(u + w.omega1) / g0 / theta(e2pi(u / w.omega2), w.p(), &b).unwrap();
        let e2 = g(u + w.omega2) / g0 / theta(e2pi(u / w.omega1), w.r(), &b).unwrap();
        let e3 = g(u + w.omega3) / g0 / (C64::new(0.0, -PI) * bernoulli_b22(u, &w).unwrap()).exp();
        for e in [e1, e2, e3] {
            assert!((e - 1.0).norm() < 1e-10, "{e}");
        }
    }

    #[test]
    fn unit_circle_q_uses_representation_b() {
        let b = SeriesBudget::default();
        let w = QuasiPeriods::new(c(1.0, 0.0), c(1.7, 0.0), c(0.3, 1.1)).unwrap();
        assert!((w.q().norm() - 1.0).abs() < 1e-15);
        let u = c(0.37, 0.11);
        let (g0, rep) = modified_gamma_g(u, &w, &b).unwrap();
        assert_eq!(rep, Representation::B);
        let g1 = modified_gamma_g(u + w.omega1, &w, &b).unwrap().0;
        let res = g1 / g0 / theta(e2pi(u / w.omega2), w.p(), &b).unwrap() - 1.0;
        assert!(res.norm() < 1e-9);
    }

    #[test]
    fn no_representation() {
        let b = SeriesBudget::default();
        // all periods real: every base sits on the unit circle
        let w = QuasiPeriods::new(c(1.0, 0.0), c(1.7, 0.0), c(2.3, 0.0)).unwrap();
        assert_eq!(modified_gamma_g(c(0.1, 0.0), &w, &b), Err(Error::NoConvergentRepresentation));
    }
}
