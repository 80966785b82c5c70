use std::f64::consts::PI;

use crate::base::{e2pi, SeriesBudget, C64};
use crate::error::{Error, Result};

use super::bernoulli::bernoulli_b22_pair;
use super::pochhammer::q_pochhammer_inf;

/// `gamma(u) = e^{-pi i B22(u)/2} (e(u/omega1) q~; q~)_inf / (e(u/omega2); q)_inf`
/// with `q = e(omega1/omega2)`, `q~ = e(-omega2/omega1)`.
pub fn hyperbolic_gamma(u: C64, omega1: C64, omega2: C64, budget: &SeriesBudget) -> Result<C64> {
    let b22 = bernoulli_b22_pair(u, omega1, omega2)?;
    let q = e2pi(omega1 / omega2);
    let qt = e2pi(-omega2 / omega1);
    if !(q.norm() < 1.0 && qt.norm() < 1.0) {
        return Err(Error::DomainError(format!(
            "bases |q| = {}, |q~| = {} must lie inside the unit disk",
            q.norm(),
            qt.norm()
        )));
    }
    let num = q_pochhammer_inf(e2pi(u / omega1) * qt, qt, budget)?;
    let den = q_pochhammer_inf(e2pi(u / omega2), q, budget)?;
    if den.norm() < budget.pole_guard {
        return Err(Error::NearPole { z: u, distance: den.norm() });
    }
    Ok((C64::new(0.0, -PI / 2.0) * b22).exp() * num / den)
}
