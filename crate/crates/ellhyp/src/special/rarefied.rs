use crate::base::{BaseParams, SeriesBudget, C64};
use crate::error::{Error, Result};

use super::gamma::gamma_with;
use super::theta::theta;

/// `x^m` with the principal logarithm; exact integer powers when `2m` is even.
fn pow_half(x: C64, m2: i64) -> C64 {
    if m2 % 2 == 0 {
        x.powi((m2 / 2) as i32)
    } else {
        (x.ln() * (m2 as f64 / 2.0)).exp()
    }
}

fn rarefied_core(z: C64, m2: i64, r: u32, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    let (p, q) = (base.p(), base.q());
    let pq = p * q;
    let pr = p.powi(r as i32);
    let qr = q.powi(r as i32);
    let g1 = gamma_with(z * pow_half(p, m2), pr, pq, budget)?;
    let g2 = gamma_with(z * pow_half(q, 2 * r as i64 - m2), qr, pq, budget)?;
    Ok(g1 * g2)
}

/// Unnormalized `gamma^(r)(z, m) = Gamma(z p^m; p^r, pq) Gamma(z q^{r-m}; q^r, pq)`,
/// with `m = m2/2`.
pub fn rarefied_gamma_unnormalized(z: C64, m2: i64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    let r = base.require_r()?;
    rarefied_core(z, m2, r, base, budget)
}

/// Rarefied elliptic gamma function `Gamma^(r)(z, m; p, q)` with `m = m2/2`.
///
/// The prefactor powers `(-z/sqrt(pq))^{m(m-1)/2}` and `(p/q)^{m(m-1)(2m-1)/12}`
/// use principal logarithms.
pub fn rarefied_gamma(z: C64, m2: i64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    let r = base.require_r()?;
    if z == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("rarefied gamma needs z != 0".into()));
    }
    let m = m2 as f64 / 2.0;
    let e1 = m * (m - 1.0) / 2.0;
    let e2 = m * (m - 1.0) * (2.0 * m - 1.0) / 12.0;
    let pre = ((-z / base.sqrt_pq()).ln() * e1 + (base.p() / base.q()).ln() * e2).exp();
    Ok(pre * rarefied_core(z, m2, r, base, budget)?)
}

/// `1/(Gamma^(r)(x, M) Gamma^(r)(1/x, -M)) = -x^{-1} q^{M(M+1)/2} p^{M(M-1)/2} theta(x p^M; p^r) theta(x q^{-M}; q^r)`
/// for integer `M`; entire in `x`.
pub fn rarefied_reciprocal_pair(x: C64, big_m: i64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    let r = base.require_r()? as i32;
    let (p, q) = (base.p(), base.q());
    let m = big_m as i32;
    let pre = -q.powi(m * (m + 1) / 2) * p.powi(m * (m - 1) / 2) / x;
    Ok(pre * theta(x * p.powi(m), p.powi(r), budget)? * theta(x * q.powi(-m), q.powi(r), budget)?)
}
