use crate::base::{BaseParams, SeriesBudget, C64, ONE};
use crate::error::{Error, Result};

use super::sum::pairwise_sum;
use super::theta::theta;

/// `Gamma(z;p,q) = prod_{j,k>=0} (1 - z^{-1} p^{j+1} q^{k+1}) / (1 - z p^j q^k)`.
pub fn elliptic_gamma(z: C64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    gamma_with(z, base.p(), base.q(), budget)
}

/// The elliptic gamma function for arbitrary bases inside the unit disk.
///
/// Every denominator factor `1 - z p^j q^k` with `|z p^j q^k|` above the
/// tail tolerance is inspected, which scans the pole lattice out to the
/// truncation horizon.
pub fn gamma_with(z: C64, p: C64, q: C64, budget: &SeriesBudget) -> Result<C64> {
    if z == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("elliptic gamma needs z != 0".into()));
    }
    let (ap, aq) = (p.norm(), q.norm());
    if !(ap < 1.0 && aq < 1.0) {
        return Err(Error::InvalidBase(format!("|p| = {ap}, |q| = {aq}")));
    }
    let pq = p * q;
    let tail_p = 1.0 - ap;
    let tail_q = 1.0 - aq;
    let mut num = ONE;
    let mut den = ONE;
    let mut pj = ONE;
    for _ in 0..budget.max_terms {
        let a0 = z * pj;
        let b0 = pq * pj / z;
        if a0.norm().max(b0.norm()) / (tail_p * tail_q) < budget.tail_tol {
            return Ok(num / den);
        }
        let (mut a, mut b) = (a0, b0);
        let mut k = 0;
        while a.norm().max(b.norm()) / tail_q >= budget.tail_tol {
            let d = ONE - a;
            let dist = d.norm();
            if dist < budget.pole_guard {
                return Err(Error::NearPole { z, distance: dist });
            }
            den *= d;
            num *= ONE - b;
            a *= q;
            b *= q;
            k += 1;
            if k > budget.max_terms {
                return Err(Error::BudgetExhausted { context: "elliptic gamma", terms: k });
            }
        }
        pj *= p;
    }
    Err(Error::BudgetExhausted { context: "elliptic gamma", terms: budget.max_terms })
}

/// `prod Gamma(num) / prod Gamma(den)` in one call.
pub fn ratio_with(num: &[C64], den: &[C64], base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    let mut acc = ONE;
    for &z in num {
        acc *= elliptic_gamma(z, base, budget)?;
    }
    for &z in den {
        acc /= elliptic_gamma(z, base, budget)?;
    }
    Ok(acc)
}

/// `1/(Gamma(x) Gamma(1/x)) = theta(x;p) theta(1/x;q)`, entire in `x`.
pub fn gamma_reciprocal_pair(x: C64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    Ok(theta(x, base.p(), budget)? * theta(1.0 / x, base.q(), budget)?)
}

/// Exponential form `exp(sum_n (z^n - (pq/z)^n) / (n (1-p^n)(1-q^n)))`,
/// valid on the annulus `|pq| < |z| < 1`.
pub fn elliptic_gamma_log(z: C64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    let pq = base.pq();
    let az = z.norm();
    if !(pq.norm() < az && az < 1.0) {
        return Err(Error::DomainError(format!("|z| = {az} outside the annulus |pq| < |z| < 1")));
    }
    let w = pq / z;
    let rho = az.max(w.norm());
    let (ap, aq) = (base.p().norm(), base.q().norm());
    let bound_den = (1.0 - rho) * (1.0 - ap) * (1.0 - aq);
    let (mut zn, mut wn, mut pn, mut qn) = (z, w, base.p(), base.q());
    let mut rn = rho;
    let mut terms = Vec::new();
    for n in 1..=budget.max_terms {
        terms.push((zn - wn) / ((n as f64) * (ONE - pn) * (ONE - qn)));
        zn *= z;
        wn *= w;
        pn *= base.p();
        qn *= base.q();
        rn *= rho;
        if rn / bound_den < budget.tail_tol {
            return Ok(pairwise_sum(&terms).exp());
        }
    }
    Err(Error::BudgetExhausted { context: "elliptic gamma exponential form", terms: budget.max_terms })
}
