//! Terminating very-well-poised elliptic hypergeometric series.

use serde::{Deserialize, Serialize};

use crate::base::{BaseParams, SeriesBudget, C64, ONE};
use crate::error::{Error, Result};
use crate::identities::run_check;
use crate::report::VerificationReport;
use crate::special::{elliptic_pochhammer, pairwise_sum, theta};

/// `_{m+1}V_m(t0; t_1, ..., t_{m-4}; q, p)` with `t_{m-4} = q^{-N}` appended at construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VSeriesSpec {
    #[serde(with = "crate::cser")]
    t0: C64,
    #[serde(with = "crate::cser::vec")]
    t_list: Vec<C64>,
    termination_index: usize,
    base: BaseParams,
}

fn balancing_target(t0: C64, m: usize, q: C64) -> C64 {
    // t0^{(m-5)/2} q^{(m-7)/2}
    let half = |x: C64, k: i64| x.sqrt().powi(k as i32);
    half(t0, m as i64 - 5) * half(q, m as i64 - 7)
}

impl VSeriesSpec {
    /// `params` are `t_1, ..., t_{m-5}`; the terminating `q^{-N}` becomes `t_{m-4}`.
    pub fn new(t0: C64, params: &[C64], termination_index: usize, base: BaseParams) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::InvalidArgument("need at least one free parameter".into()));
        }
        let q = base.q();
        let mut t_list = params.to_vec();
        t_list.push(q.powi(-(termination_index as i32)));
        let m = t_list.len() + 4;
        let target = balancing_target(t0, m, q);
        let prod: C64 = t_list.iter().product();
        let rel = (prod - target).norm() / target.norm();
        if !(rel <= 1e-12) {
            return Err(Error::InvalidArgument(format!("balancing condition violated by {rel:.3e}")));
        }
        Ok(VSeriesSpec { t0, t_list, termination_index, base })
    }

    /// Solves the last of `params` from the balancing condition; its input value is ignored.
    pub fn balanced(t0: C64, params: &[C64], termination_index: usize, base: BaseParams) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::InvalidArgument("need at least one free parameter".into()));
        }
        let q = base.q();
        let m = params.len() + 5;
        let known: C64 = params[..params.len() - 1].iter().product::<C64>() * q.powi(-(termination_index as i32));
        let mut free = params.to_vec();
        *free.last_mut().unwrap() = balancing_target(t0, m, q) / known;
        Self::new(t0, &free, termination_index, base)
    }

    pub fn t0(&self) -> C64 {
        self.t0
    }

    pub fn t_list(&self) -> &[C64] {
        &self.t_list
    }

    pub fn termination_index(&self) -> usize {
        self.termination_index
    }

    pub fn base(&self) -> &BaseParams {
        &self.base
    }

    /// `m` in `_{m+1}V_m`.
    pub fn order(&self) -> usize {
        self.t_list.len() + 4
    }
}

fn checked_theta(z: C64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    let v = theta(z, base.p(), budget)?;
    if v.norm() < budget.pole_guard {
        return Err(Error::NearPole { z, distance: v.norm() });
    }
    Ok(v)
}

/// Terms `n = 0..=N` in summation order.
pub fn v_series_terms(spec: &VSeriesSpec, budget: &SeriesBudget) -> Result<Vec<C64>> {
    let base = &spec.base;
    let (p, q) = (base.p(), base.q());
    let t0 = spec.t0;
    let mut all = vec![t0];
    all.extend_from_slice(&spec.t_list);
    let theta_t0 = checked_theta(t0, base, budget)?;
    let mut ratio = ONE;
    let mut terms = Vec::with_capacity(spec.termination_index + 1);
    for n in 0..=spec.termination_index {
        if n > 0 {
            let qj = q.powi(n as i32 - 1);
            for &tk in &all {
                let num = theta(tk * qj, p, budget)?;
                let den = checked_theta(q * t0 / tk * qj, base, budget)?;
                ratio *= num / den;
            }
            ratio *= q;
        }
        let lead = theta(t0 * q.powi(2 * n as i32), p, budget)? / theta_t0;
        terms.push(lead * ratio);
    }
    Ok(terms)
}

pub fn v_series(spec: &VSeriesSpec, budget: &SeriesBudget) -> Result<C64> {
    let terms = v_series_terms(spec, budget)?;
    Ok(pairwise_sum(&terms))
}

/// The `_{10}V_9` whose sum is `frenkel_turaev_rhs(t1, t2, t3, t5, N)`.
pub fn frenkel_turaev_spec(t1: C64, t2: C64, t3: C64, t5: C64, n: usize, base: BaseParams) -> Result<VSeriesSpec> {
    let q = base.q();
    let t0 = q.powi(n as i32 + 1) / (t1 * t2 * t3);
    VSeriesSpec::new(t5 * t5, &[t0 * t5, t1 * t5, t2 * t5, t3 * t5], n, base)
}

pub fn frenkel_turaev_rhs(
    t1: C64,
    t2: C64,
    t3: C64,
    t5: C64,
    n: usize,
    base: &BaseParams,
    budget: &SeriesBudget,
) -> Result<C64> {
    let q = base.q();
    let num = [q * t5 * t5, q / (t1 * t2), q / (t1 * t3), q / (t2 * t3)];
    let den = [q / (t1 * t2 * t3 * t5), q * t5 / t1, q * t5 / t2, q * t5 / t3];
    let mut v = ONE;
    for x in num {
        v *= elliptic_pochhammer(x, n, base, budget)?;
    }
    for x in den {
        let d = elliptic_pochhammer(x, n, base, budget)?;
        if d.norm() < budget.pole_guard {
            return Err(Error::NearPole { z: x, distance: d.norm() });
        }
        v /= d;
    }
    Ok(v)
}

/// `sum |term| / |sum|` of a terminating series: large values mean the sum is
/// dominated by cancellation and carries amplified rounding error.
pub fn cancellation_ratio(terms: &[C64]) -> f64 {
    let mass: f64 = terms.iter().map(|t| t.norm()).sum();
    mass / pairwise_sum(terms).norm()
}

/// Terminating series against the closed-form product.
pub fn verify_frenkel_turaev(
    t1: C64,
    t2: C64,
    t3: C64,
    t5: C64,
    n: usize,
    base: &BaseParams,
    budget: &SeriesBudget,
    tol: f64,
) -> VerificationReport {
    let id = "ft";
    run_check(id, tol, |_| {
        let spec = frenkel_turaev_spec(t1, t2, t3, t5, n, *base)?;
        let terms = v_series_terms(&spec, budget)?;
        let lhs = pairwise_sum(&terms);
        let rhs = frenkel_turaev_rhs(t1, t2, t3, t5, n, base, budget)?;
        Ok(VerificationReport::two_sided(id, lhs, rhs, tol)
            .note(format!("N = {n}, cancellation ratio {:.3e}", cancellation_ratio(&terms))))
    })
    .input("t", &[t1, t2, t3, t5])
    .input("p", &[base.p()])
    .input("q", &[base.q()])
}
