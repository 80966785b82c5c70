use crate::base::{SeriesBudget, C64, ONE};
use crate::error::{Error, Result};

/// Second-order elliptic gamma function
/// `prod_{j,k,l>=0} (1 - z p^j q^k t^l)(1 - z^{-1} p^{j+1} q^{k+1} t^{l+1})`.
///
/// The product is entire on `C*`, so no pole guard applies.
pub fn elliptic_gamma2(z: C64, p: C64, q: C64, t: C64, budget: &SeriesBudget) -> Result<C64> {
    if z == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("second-order gamma needs z != 0".into()));
    }
    let (ap, aq, at) = (p.norm(), q.norm(), t.norm());
    if !(ap < 1.0 && aq < 1.0 && at < 1.0) {
        return Err(Error::InvalidBase(format!("|p| = {ap}, |q| = {aq}, |t| = {at}")));
    }
    let w = p * q * t / z;
    let exhausted = || Error::BudgetExhausted { context: "second-order elliptic gamma", terms: budget.max_terms };
    let mut acc = ONE;
    let mut pj = ONE;
    let mut j = 0;
    loop {
        let (a0, b0) = (z * pj, w * pj);
        if a0.norm().max(b0.norm()) / ((1.0 - ap) * (1.0 - aq) * (1.0 - at)) < budget.tail_tol {
            return Ok(acc);
        }
        let mut tl = ONE;
        let mut l = 0;
        loop {
            let (a1, b1) = (a0 * tl, b0 * tl);
            if a1.norm().max(b1.norm()) / ((1.0 - aq) * (1.0 - at)) < budget.tail_tol {
                break;
            }
            let (mut a, mut b) = (a1, b1);
            let mut k = 0;
            while a.norm().max(b.norm()) / (1.0 - aq) >= budget.tail_tol {
                acc *= (ONE - a) * (ONE - b);
                a *= q;
                b *= q;
                k += 1;
                if k > budget.max_terms {
                    return Err(exhausted());
                }
            }
            tl *= t;
            l += 1;
            if l > budget.max_terms {
                return Err(exhausted());
            }
        }
        pj *= p;
        j += 1;
        if j > budget.max_terms {
            return Err(exhausted());
        }
    }
}
