use crate::base::{BaseParams, SeriesBudget, C64, ONE};
use crate::error::{Error, Result};

use super::theta::theta;

/// `(z;p)_inf = prod_{j>=0} (1 - z p^j)`, multiplied in ascending `j`.
///
/// Stops once the geometric bound `|z||p|^J/(1-|p|)` on the neglected
/// factors drops below `tail_tol`; this also forces `|factor - 1| < tail_tol`.
pub fn q_pochhammer_inf(z: C64, p: C64, budget: &SeriesBudget) -> Result<C64> {
    let ap = p.norm();
    if !(ap < 1.0) {
        return Err(Error::InvalidBase(format!("|p| = {ap} >= 1")));
    }
    let denom = 1.0 - ap;
    let mut prod = ONE;
    let mut a = z;
    for _ in 0..budget.max_terms {
        if a.norm() / denom < budget.tail_tol {
            return Ok(prod);
        }
        prod *= ONE - a;
        a *= p;
    }
    Err(Error::BudgetExhausted { context: "q-Pochhammer", terms: budget.max_terms })
}

/// `theta(t)_n = prod_{j<n} theta(t q^j; p)`.
pub fn elliptic_pochhammer(t: C64, n: usize, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    let mut acc = ONE;
    let mut x = t;
    for _ in 0..n {
        acc *= theta(x, base.p(), budget)?;
        x *= base.q();
    }
    Ok(acc)
}
