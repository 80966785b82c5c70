use crate::base::{SeriesBudget, C64, ONE};
use crate::error::{Error, Result};

use super::pochhammer::q_pochhammer_inf;
use super::sum::pairwise_sum;

/// `theta(z;p) = (z;p)_inf (p/z;p)_inf`.
pub fn theta(z: C64, p: C64, budget: &SeriesBudget) -> Result<C64> {
    if z == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("theta(z;p) needs z != 0".into()));
    }
    Ok(q_pochhammer_inf(z, p, budget)? * q_pochhammer_inf(p / z, p, budget)?)
}

/// Triple-product Laurent series `sum_k (-1)^k p^{k(k-1)/2} z^k / (p;p)_inf`,
/// summed outward from `k = 0` in both directions.
pub fn theta_series(z: C64, p: C64, budget: &SeriesBudget) -> Result<C64> {
    if z == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("theta(z;p) needs z != 0".into()));
    }
    let pp = q_pochhammer_inf(p, p, budget)?;
    let mut terms = vec![ONE];
    // k -> k+1 multiplies by -p^k z
    let mut term = ONE;
    let mut pk = ONE;
    let mut done = false;
    for _ in 0..budget.max_terms {
        let ratio = -pk * z;
        term *= ratio;
        terms.push(term);
        pk *= p;
        if term.norm() < budget.tail_tol && ratio.norm() < 1.0 {
            done = true;
            break;
        }
    }
    // k -> k-1 multiplies by -p^{1-k}/z, i.e. -p/z, -p^2/z, ...
    let mut term = ONE;
    let mut pk = p;
    let mut done_neg = false;
    for _ in 0..budget.max_terms {
        let ratio = -pk / z;
        term *= ratio;
        terms.push(term);
        pk *= p;
        if term.norm() < budget.tail_tol && ratio.norm() < 1.0 {
            done_neg = true;
            break;
        }
    }
    if !(done && done_neg) {
        return Err(Error::BudgetExhausted { context: "theta series", terms: budget.max_terms });
    }
    Ok(pairwise_sum(&terms) / pp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn zero_at_one() {
        let b = SeriesBudget::default();
        assert_eq!(theta(ONE, c(0.3, 0.2), &b).unwrap(), c(0.0, 0.0));
        assert!(theta_series(ONE, c(0.3, 0.2), &b).unwrap().norm() < 1e-15);
        assert!(theta(c(0.0, 0.0), c(0.3, 0.0), &b).is_err());
    }

    #[test]
    fn series_at_p_zero_is_one_minus_z() {
        let b = SeriesBudget::default();
        let z = c(0.7, -0.2);
        assert!((theta_series(z, c(0.0, 0.0), &b).unwrap() - (ONE - z)).norm() < 1e-16);
    }

    #[test]
    fn series_matches_product_at_reference_point() {
        let b = SeriesBudget::default();
        let z = c(0.4, 0.1);
        let p = c(0.25, 0.0);
        assert!((theta_series(z, p, &b).unwrap() - theta(z, p, &b).unwrap()).norm() < 1e-14);
    }

    fn polar(r: f64, a: f64) -> C64 {
        C64::from_polar(r, a)
    }

    proptest! {
        #[test]
        fn quasi_periodicity_and_reflection(zr in 0.2f64..3.0, za in -3.1f64..3.1, pr in 0.05f64..0.7, pa in -3.1f64..3.1) {
            let b = SeriesBudget::default();
            let z = polar(zr, za);
            let p = polar(pr, pa);
            let t = theta(z, p, &b).unwrap();
            let shifted = theta(p * z, p, &b).unwrap();
            prop_assert!((shifted + t / z).norm() <= 1e-13 * t.norm().max(1.0));
            let refl = theta(1.0 / z, p, &b).unwrap();
            prop_assert!((refl + t / z).norm() <= 1e-13 * t.norm().max(1.0));
        }

        #[test]
        fn series_agrees_with_product(zr in 0.3f64..2.5, za in -3.1f64..3.1, pr in 0.0f64..0.6, pa in -3.1f64..3.1) {
            let b = SeriesBudget::default();
            let z = polar(zr, za);
            let p = polar(pr, pa);
            let prod = theta(z, p, &b).unwrap();
            let ser = theta_series(z, p, &b).unwrap();
            prop_assert!((prod - ser).norm() <= 1e-13 * prod.norm().max(1.0));
        }

        #[test]
        fn addition_formula(
            xr in 0.5f64..1.5, xa in -3.1f64..3.1, yr in 0.5f64..1.5, ya in -3.1f64..3.1,
            wr in 0.5f64..1.5, wa in -3.1f64..3.1, zr in 0.5f64..1.5, za in -3.1f64..3.1,
            pr in 0.05f64..0.5, pa in -3.1f64..3.1,
        ) {
            let b = SeriesBudget::default();
            let (x, y, w, z, p) = (polar(xr, xa), polar(yr, ya), polar(wr, wa), polar(zr, za), polar(pr, pa));
            let th = |u: C64| theta(u, p, &b).unwrap();
            let pm = |a: C64, u: C64| th(a * u) * th(a / u);
            let lhs = pm(x, w) * pm(y, z) - pm(x, z) * pm(y, w);
            let rhs = y / w * pm(x, y) * pm(w, z);
            let scale = (pm(x, w) * pm(y, z)).norm().max((pm(x, z) * pm(y, w)).norm()).max(1.0);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
        }
    }
}
