use crate::base::{QuasiPeriods, C64};
use crate::error::{Error, Result};

/// Second-order Bernoulli polynomial for the pair `(omega1, omega2)`.
pub fn bernoulli_b22_pair(u: C64, w1: C64, w2: C64) -> Result<C64> {
    if w1 * w2 == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("B22 needs omega1 omega2 != 0".into()));
    }
    Ok(u * u / (w1 * w2) - u / w1 - u / w2 + w1 / (6.0 * w2) + w2 / (6.0 * w1) + 0.5)
}

/// `B_{2,2}(u; omega)` built from `omega1`, `omega2`.
pub fn bernoulli_b22(u: C64, periods: &QuasiPeriods) -> Result<C64> {
    bernoulli_b22_pair(u, periods.omega1, periods.omega2)
}

/// `B_{3,3}(u; omega) = v (v^2 - sum omega_k^2 / 4) / (omega1 omega2 omega3)`, `v = u - sum omega / 2`.
pub fn bernoulli_b33(u: C64, periods: &QuasiPeriods) -> Result<C64> {
    let (w1, w2, w3) = (periods.omega1, periods.omega2, periods.omega3);
    let prod = w1 * w2 * w3;
    if prod == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("B33 needs omega1 omega2 omega3 != 0".into()));
    }
    let v = u - periods.sum() / 2.0;
    Ok(v * (v * v - (w1 * w1 + w2 * w2 + w3 * w3) / 4.0) / prod)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Taylor coefficients of `(e^{w x} - 1)/x = sum w^{k+1} x^k/(k+1)!`.
    fn expm1_over_x(w: C64, n: usize) -> Vec<C64> {
        let mut out = Vec::with_capacity(n);
        let mut wk = w;
        let mut fact = 1.0;
        for k in 0..n {
            fact *= (k + 1) as f64;
            out.push(wk / fact);
            wk *= w;
        }
        out
    }

    fn mul(a: &[C64], b: &[C64]) -> Vec<C64> {
        let n = a.len();
        (0..n).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect()
    }

    fn inv(a: &[C64]) -> Vec<C64> {
        let n = a.len();
        let mut out = vec![C64::new(0.0, 0.0); n];
        out[0] = 1.0 / a[0];
        for k in 1..n {
            let s: C64 = (1..=k).map(|i| a[i] * out[k - i]).sum();
            out[k] = -s / a[0];
        }
        out
    }

    /// `B_{m,m}(u)` from the generating function
    /// `x^m e^{x u} / prod (e^{omega_k x} - 1) = sum B_{m,n}(u) x^n / n!`.
    fn bernoulli_from_generating(u: C64, ws: &[C64]) -> C64 {
        let m = ws.len();
        let n = m + 1;
        let mut series = inv(&expm1_over_x(ws[0], n));
        for &w in &ws[1..] {
            series = mul(&series, &inv(&expm1_over_x(w, n)));
        }
        let mut ex = Vec::with_capacity(n);
        let mut term = C64::new(1.0, 0.0);
        for k in 0..n {
            if k > 0 {
                term = term * u / k as f64;
            }
            ex.push(term);
        }
        let full = mul(&series, &ex);
        let fact: f64 = (1..=m).map(|k| k as f64).product();
        full[m] * fact
    }

    #[test]
    fn b22_matches_generating_function() {
        let (w1, w2) = (c(1.0, 0.0), c(0.3, 0.9));
        for u in [c(0.21, -0.13), (w1 + w2) / 2.0, c(-1.4, 0.7)] {
            let gen = bernoulli_from_generating(u, &[w1, w2]);
            let closed = bernoulli_b22_pair(u, w1, w2).unwrap();
            assert!((gen - closed).norm() < 1e-12, "{gen} vs {closed}");
        }
    }

    #[test]
    fn b33_matches_generating_function_and_symmetries() {
        let w = QuasiPeriods::new(c(1.0, 0.0), c(0.3, 0.9), c(0.2, 1.3)).unwrap();
        let u = c(0.21, -0.13);
        let gen = bernoulli_from_generating(u, &[w.omega1, w.omega2, w.omega3]);
        assert!((gen - bernoulli_b33(u, &w).unwrap()).norm() < 1e-12);
        assert!(bernoulli_b33(w.sum() / 2.0, &w).unwrap().norm() < 1e-15);
        let anti = bernoulli_b33(w.sum() - u, &w).unwrap() + bernoulli_b33(u, &w).unwrap();
        assert!(anti.norm() < 1e-13);
    }

    #[test]
    fn zero_periods_rejected() {
        assert!(bernoulli_b22_pair(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(QuasiPeriods::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }
}
