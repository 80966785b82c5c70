//! Odd Jacobi theta function and the Dedekind eta function, used only by
//! the modular-law checks.
#![cfg_attr(not(test), allow(dead_code))]

use std::f64::consts::PI;

use crate::base::{SeriesBudget, C64};
use crate::error::Result;

use super::pochhammer::q_pochhammer_inf;
use super::theta::theta;

fn i() -> C64 {
    C64::new(0.0, 1.0)
}

/// `theta_1(u|tau) = -i e^{pi i tau/4} e^{pi i u} (P;P) theta(e^{-2 pi i u}; P)`, `P = e^{2 pi i tau}`.
pub(crate) fn theta1(u: C64, tau: C64, budget: &SeriesBudget) -> Result<C64> {
    let big_p = (2.0 * PI * i() * tau).exp();
    let pre = -i() * (PI * i() * tau / 4.0).exp() * (PI * i() * u).exp();
    Ok(pre * q_pochhammer_inf(big_p, big_p, budget)? * theta((-2.0 * PI * i() * u).exp(), big_p, budget)?)
}

/// `eta(tau) = e^{pi i tau/12} (e^{2 pi i tau}; e^{2 pi i tau})_inf`.
pub(crate) fn dedekind_eta(tau: C64, budget: &SeriesBudget) -> Result<C64> {
    let big_p = (2.0 * PI * i() * tau).exp();
    Ok((PI * i() * tau / 12.0).exp() * q_pochhammer_inf(big_p, big_p, budget)?)
}
