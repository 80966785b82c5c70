use serde::{Deserialize, Serialize};

use crate::base::{BaseParams, C64, ONE};
use crate::config::VerifyConfig;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_torus, IntegrandSpec, QuadDiagnostics};
use crate::report::VerificationReport;
use crate::special::elliptic_gamma;

use super::run_check;

fn check_product(t: &[C64], target: C64, what: &str) -> Result<()> {
    let prod: C64 = t.iter().product();
    let rel = (prod / target - 1.0).norm();
    if !(rel <= 1e-12) {
        return Err(Error::InvalidArgument(format!("{what}: balancing violated by {rel:.3e}")));
    }
    Ok(())
}

/// Six parameters with `prod t_j = pq`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaParams {
    #[serde(with = "crate::cser::vec")]
    t: Vec<C64>,
    base: BaseParams,
}

impl BetaParams {
    /// Solves `t_6 = pq / (t_1 ... t_5)`.
    pub fn new(first: [C64; 5], base: BaseParams) -> Result<Self> {
        let prod: C64 = first.iter().product();
        if prod == C64::new(0.0, 0.0) {
            return Err(Error::InvalidArgument("zero parameter".into()));
        }
        let mut t = first.to_vec();
        t.push(base.pq() / prod);
        Ok(BetaParams { t, base })
    }

    pub fn from_all(t: [C64; 6], base: BaseParams) -> Result<Self> {
        check_product(&t, base.pq(), "beta parameters")?;
        Ok(BetaParams { t: t.to_vec(), base })
    }

    pub fn t(&self) -> &[C64] {
        &self.t
    }

    pub fn base(&self) -> &BaseParams {
        &self.base
    }
}

/// Eight parameters with `prod t_j = p^2 q^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VParams {
    #[serde(with = "crate::cser::vec")]
    t: Vec<C64>,
    base: BaseParams,
}

impl VParams {
    pub fn new(t: [C64; 8], base: BaseParams) -> Result<Self> {
        check_product(&t, base.pq() * base.pq(), "V parameters")?;
        Ok(VParams { t: t.to_vec(), base })
    }

    /// Solves `t_8 = p^2 q^2 / (t_1 ... t_7)`.
    pub fn balanced(first: [C64; 7], base: BaseParams) -> Result<Self> {
        let prod: C64 = first.iter().product();
        let mut t = [C64::new(0.0, 0.0); 8];
        t[..7].copy_from_slice(&first);
        t[7] = base.pq() * base.pq() / prod;
        Self::new(t, base)
    }

    pub fn t(&self) -> [C64; 8] {
        let mut out = [C64::new(0.0, 0.0); 8];
        out.copy_from_slice(&self.t);
        out
    }

    pub fn base(&self) -> &BaseParams {
        &self.base
    }
}

/// `kappa/2 * prod_j Gamma(t_j z^{+-1}) / Gamma(z^{+-2})` with `kappa = (p;p)(q;q)`.
pub fn beta_integrand(t: &[C64], base: &BaseParams, cfg: &VerifyConfig) -> Result<IntegrandSpec> {
    let kappa = base.kappa(&cfg.budget)?;
    let mut spec = IntegrandSpec::new(1).den_root(&[2]).times(kappa / 2.0);
    for &tj in t {
        spec = spec.num_pm(tj, &[1]);
    }
    Ok(spec)
}

/// The integral of [`beta_integrand`] for any number of parameters.
pub fn integrate_v(t: &[C64], base: &BaseParams, cfg: &VerifyConfig) -> Result<(C64, QuadDiagnostics)> {
    let spec = beta_integrand(t, base, cfg)?;
    integrate_torus(&spec, &cfg.quad(1), base, &cfg.budget)
}

pub fn eval_v(params: &VParams, cfg: &VerifyConfig) -> Result<C64> {
    Ok(integrate_v(&params.t, &params.base, cfg)?.0)
}

/// `prod_{j<k} Gamma(t_j t_k)`.
pub fn gamma_pair_product(t: &[C64], base: &BaseParams, cfg: &VerifyConfig) -> Result<C64> {
    let mut v = ONE;
    for j in 0..t.len() {
        for k in j + 1..t.len() {
            v *= elliptic_gamma(t[j] * t[k], base, &cfg.budget)?;
        }
    }
    Ok(v)
}

pub fn verify_elliptic_beta(params: &BetaParams, cfg: &VerifyConfig) -> VerificationReport {
    let id = "elbeta";
    let tol = cfg.tol_or(1e-10);
    run_check(id, tol, |diags| {
        let (lhs, d) = integrate_v(&params.t, &params.base, cfg)?;
        diags.push(d);
        let rhs = gamma_pair_product(&params.t, &params.base, cfg)?;
        Ok(VerificationReport::two_sided(id, lhs, rhs, tol))
    })
    .input("t", &params.t)
    .input("p", &[params.base.p()])
    .input("q", &[params.base.q()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::draw::Draw;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn reference_case_and_audit_failure() {
        let cfg = VerifyConfig::default();
        let base = BaseParams::new(c(0.3, 0.0), c(0.2, 0.0)).unwrap();
        let p = BetaParams::new([c(0.6, 0.0), c(0.7, 0.0), c(0.5, 0.3), c(0.5, -0.3), c(0.55, 0.0)], base).unwrap();
        let r = verify_elliptic_beta(&p, &cfg);
        assert!(r.passed, "{r:?}");
        let bad = BetaParams::new([c(1.001, 0.0), c(0.5, 0.0), c(0.3, 0.2), c(0.3, -0.2), c(0.35, 0.0)], base).unwrap();
        let r = verify_elliptic_beta(&bad, &cfg);
        assert!(!r.passed);
        assert_eq!(r.failure_kind(), Some("PoleAudit"));
    }

    #[test]
    fn degenerate_pair_at_pq_pinches_the_contour() {
        // t1 t2 = pq forces t3 t4 t5 t6 = 1, so some |t_j| >= 1 and the unit circle
        // no longer separates the pole sequences.
        let cfg = VerifyConfig::default();
        let base = BaseParams::new(c(0.3, 0.1), c(0.25, -0.1)).unwrap();
        let t1 = c(0.5, 0.2);
        let t2 = base.pq() / t1;
        let p = BetaParams::new([t1, t2, c(0.6, 0.1), c(-0.5, 0.4), c(0.7, -0.2)], base).unwrap();
        assert!(p.t()[2..].iter().any(|x| x.norm() >= 1.0));
        let r = verify_elliptic_beta(&p, &cfg);
        assert_eq!(r.failure_kind(), Some("PoleAudit"));
    }

    #[test]
    fn v_with_pq_pair_is_the_beta_product() {
        let cfg = VerifyConfig::default();
        let mut d = Draw::new(3);
        let base = d.base(0.15, 0.35).unwrap();
        let six = d.balanced(6, base.pq(), 0.1);
        let t7 = d.annulus(0.5, 0.6);
        let mut t = [C64::new(0.0, 0.0); 8];
        t[..6].copy_from_slice(&six);
        t[6] = t7;
        t[7] = base.pq() / t7;
        let v = VParams::new(t, base).unwrap();
        let lhs = eval_v(&v, &cfg).unwrap();
        let rhs = gamma_pair_product(&six, &base, &cfg).unwrap();
        assert!((lhs / rhs - 1.0).norm() < 1e-10);
    }

    #[test]
    fn v_symmetries() {
        let cfg = VerifyConfig::default();
        let mut d = Draw::new(11);
        let base = d.base(0.15, 0.35).unwrap();
        let t = d.balanced(8, base.pq() * base.pq(), 0.1);
        let mut arr = [C64::new(0.0, 0.0); 8];
        arr.copy_from_slice(&t);
        let v0 = eval_v(&VParams::new(arr, base).unwrap(), &cfg).unwrap();
        for _ in 0..5 {
            let mut perm = arr;
            for i in (1..8).rev() {
                perm.swap(i, d.index(i + 1));
            }
            let v = eval_v(&VParams::new(perm, base).unwrap(), &cfg).unwrap();
            assert!((v / v0 - 1.0).norm() < 1e-11);
        }
        let vs = eval_v(&VParams::new(arr, base.swapped()).unwrap(), &cfg).unwrap();
        assert!((vs / v0 - 1.0).norm() < 1e-11);
    }

    #[test]
    fn unbalanced_v_rejected() {
        let base = BaseParams::new(c(0.3, 0.0), c(0.2, 0.0)).unwrap();
        assert!(VParams::new([c(0.5, 0.0); 8], base).is_err());
    }
}
