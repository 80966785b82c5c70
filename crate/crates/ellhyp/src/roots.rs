//! Multiple beta integrals on the `C_n` and `A_n` root systems at rank <= 2,
//! the Rains transformation at rank one, and the rarefied beta integral.

use serde::{Deserialize, Serialize};

use crate::base::{BaseParams, C64, ONE};
use crate::config::VerifyConfig;
use crate::error::{Error, Result};
use crate::identities::{gamma_pair_product, integrate_v, run_check};
use crate::quadrature::{integrate_rarefied, integrate_torus, Charge, IntegrandSpec, QuadDiagnostics};
use crate::report::VerificationReport;
use crate::special::{elliptic_gamma, q_pochhammer_inf, rarefied_gamma, theta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootSystem {
    C,
    A,
}

/// Root exponents: `+-e_i +- e_j` (i<j) and `+-2 e_i` for `C_n`; `e_i - e_j` (i != j)
/// for `A_n` in the `n+1` ambient coordinates.
pub fn root_exponents(system: RootSystem, n: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    match system {
        RootSystem::C => {
            for i in 0..n {
                for s in [2, -2] {
                    let mut e = vec![0; n];
                    e[i] = s;
                    out.push(e);
                }
                for j in i + 1..n {
                    for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut e = vec![0; n];
                        e[i] = a;
                        e[j] = b;
                        out.push(e);
                    }
                }
            }
        }
        RootSystem::A => {
            for i in 0..=n {
                for j in 0..=n {
                    if i != j {
                        let mut e = vec![0; n + 1];
                        e[i] = 1;
                        e[j] = -1;
                        out.push(e);
                    }
                }
            }
        }
    }
    out
}

/// Rewrites an `n+1`-coordinate exponent with `z_{n+1} = 1/(z_1 ... z_n)`.
fn eliminate_last(e: &[i32]) -> Vec<i32> {
    let n = e.len() - 1;
    (0..n).map(|i| e[i] - e[n]).collect()
}

fn kappa(base: &BaseParams, cfg: &VerifyConfig) -> Result<C64> {
    base.kappa(&cfg.budget)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn unit(n: usize, i: usize, s: i32) -> Vec<i32> {
    let mut e = vec![0; n];
    e[i] = s;
    e
}

/// `I_n^{(m)}` integrand: `C_n` Weyl denominator, `Gamma(t_i z_j^{+-1})` for every
/// parameter, optional `Gamma(t z_j^{+-1} z_k^{+-1})` cross terms, and
/// `kappa^n / (2^n n!)`.
pub fn cn_integrand(
    n: usize,
    t: &[C64],
    cross: Option<C64>,
    base: &BaseParams,
    cfg: &VerifyConfig,
) -> Result<IntegrandSpec> {
    if n == 0 || n > 2 {
        return Err(Error::InvalidArgument(format!("rank {n} outside 1..=2")));
    }
    let k = kappa(base, cfg)?;
    let mut spec = IntegrandSpec::new(n).times(k.powi(n as i32) / (2f64.powi(n as i32) * factorial(n)));
    for root in root_exponents(RootSystem::C, n) {
        spec = spec.den(ONE, &root);
        if let Some(tc) = cross {
            if root.iter().any(|&x| x.abs() == 1) {
                spec = spec.num(tc, &root);
            }
        }
    }
    for j in 0..n {
        for &ti in t {
            spec = spec.num_pm(ti, &unit(n, j, 1));
        }
    }
    Ok(spec)
}

fn integrate(
    spec: &IntegrandSpec,
    base: &BaseParams,
    cfg: &VerifyConfig,
    diags: &mut Vec<QuadDiagnostics>,
) -> Result<C64> {
    let (v, d) = integrate_torus(spec, &cfg.quad(spec.dim), base, &cfg.budget)?;
    diags.push(d);
    Ok(v)
}

fn check_product(t: &[C64], target: C64) -> Result<()> {
    let prod: C64 = t.iter().product();
    let rel = (prod / target - 1.0).norm();
    if !(rel <= 1e-12) {
        return Err(Error::InvalidArgument(format!("balancing violated by {rel:.3e}")));
    }
    Ok(())
}

fn pm_inputs(r: VerificationReport, base: &BaseParams) -> VerificationReport {
    r.input("p", &[base.p()]).input("q", &[base.q()])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CnTypeIParams {
    pub n: usize,
    #[serde(with = "crate::cser::vec")]
    pub t: Vec<C64>,
    pub base: BaseParams,
}

impl CnTypeIParams {
    pub fn new(n: usize, t: Vec<C64>, base: BaseParams) -> Result<Self> {
        if !(1..=2).contains(&n) || t.len() != 2 * n + 4 {
            return Err(Error::InvalidArgument(format!("need rank 1 or 2 and {} parameters", 2 * n + 4)));
        }
        check_product(&t, base.pq())?;
        Ok(CnTypeIParams { n, t, base })
    }
}

pub fn verify_cn_type_i(params: &CnTypeIParams, cfg: &VerifyConfig) -> VerificationReport {
    let id = if params.n == 1 { "elbeta" } else { "c2_type1" };
    let tol = cfg.tol_or(if params.n == 1 { 1e-10 } else { 1e-6 });
    let base = &params.base;
    let r = run_check(id, tol, |diags| {
        let spec = cn_integrand(params.n, &params.t, None, base, cfg)?;
        let lhs = integrate(&spec, base, cfg, diags)?;
        let rhs = gamma_pair_product(&params.t, base, cfg)?;
        Ok(VerificationReport::two_sided(id, lhs, rhs, tol))
    });
    pm_inputs(r.input("t", &params.t), base)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CnTypeIIParams {
    pub n: usize,
    #[serde(with = "crate::cser")]
    pub t: C64,
    #[serde(with = "crate::cser::vec")]
    pub t6: Vec<C64>,
    pub base: BaseParams,
}

impl CnTypeIIParams {
    pub fn new(n: usize, t: C64, t6: Vec<C64>, base: BaseParams) -> Result<Self> {
        if !(1..=2).contains(&n) || t6.len() != 6 {
            return Err(Error::InvalidArgument("need rank 1 or 2 and six parameters".into()));
        }
        check_product(&t6, base.pq() / t.powi(2 * n as i32 - 2))?;
        Ok(CnTypeIIParams { n, t, t6, base })
    }
}

/// `prod_{j=1}^n Gamma(t^j)/Gamma(t) prod_{i<k} Gamma(t^{j-1} t_i t_k)`.
pub fn cn_type_ii_rhs(n: usize, t: C64, t6: &[C64], base: &BaseParams, cfg: &VerifyConfig) -> Result<C64> {
    let g = |z: C64| elliptic_gamma(z, base, &cfg.budget);
    let mut v = ONE;
    for j in 1..=n {
        v *= g(t.powi(j as i32))? / g(t)?;
        let scale = t.powi(j as i32 - 1);
        for i in 0..t6.len() {
            for k in i + 1..t6.len() {
                v *= g(scale * t6[i] * t6[k])?;
            }
        }
    }
    Ok(v)
}

pub fn verify_cn_type_ii(params: &CnTypeIIParams, cfg: &VerifyConfig) -> VerificationReport {
    let id = if params.n == 1 { "elbeta" } else { "c2_type2" };
    let tol = cfg.tol_or(if params.n == 1 { 1e-10 } else { 1e-6 });
    let base = &params.base;
    let r = run_check(id, tol, |diags| {
        let spec = cn_integrand(params.n, &params.t6, Some(params.t), base, cfg)?;
        let lhs = integrate(&spec, base, cfg, diags)?;
        let rhs = cn_type_ii_rhs(params.n, params.t, &params.t6, base, cfg)?;
        Ok(VerificationReport::two_sided(id, lhs, rhs, tol))
    });
    pm_inputs(r.input("t", &[params.t]).input("t6", &params.t6), base)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnTypeIParams {
    pub n: usize,
    #[serde(with = "crate::cser::vec")]
    pub s: Vec<C64>,
    #[serde(with = "crate::cser::vec")]
    pub t: Vec<C64>,
    pub base: BaseParams,
}

impl AnTypeIParams {
    pub fn new(n: usize, s: Vec<C64>, t: Vec<C64>, base: BaseParams) -> Result<Self> {
        if !(1..=2).contains(&n) || s.len() != n + 2 || t.len() != n + 2 {
            return Err(Error::InvalidArgument(format!("need rank 1 or 2 and {} + {} parameters", n + 2, n + 2)));
        }
        let all: Vec<C64> = s.iter().chain(t.iter()).copied().collect();
        check_product(&all, base.pq())?;
        Ok(AnTypeIParams { n, s, t, base })
    }
}

/// The `A_n` integrand on the `n`-torus after eliminating `z_{n+1}`.
pub fn an_integrand(n: usize, s: &[C64], t: &[C64], base: &BaseParams, cfg: &VerifyConfig) -> Result<IntegrandSpec> {
    if n == 0 || n > 2 {
        return Err(Error::InvalidArgument(format!("rank {n} outside 1..=2")));
    }
    let k = kappa(base, cfg)?;
    let mut spec = IntegrandSpec::su(n + 1).times(k.powi(n as i32));
    for root in root_exponents(RootSystem::A, n) {
        spec = spec.den(ONE, &eliminate_last(&root));
    }
    for j in 0..=n {
        let e = eliminate_last(&unit(n + 1, j, 1));
        let neg: Vec<i32> = e.iter().map(|x| -x).collect();
        for (&sm, &tm) in s.iter().zip(t) {
            spec = spec.num(sm, &e).num(tm, &neg);
        }
    }
    Ok(spec)
}

pub fn an_type_i_rhs(s: &[C64], t: &[C64], base: &BaseParams, cfg: &VerifyConfig) -> Result<C64> {
    let g = |z: C64| elliptic_gamma(z, base, &cfg.budget);
    let big_s: C64 = s.iter().product();
    let big_t: C64 = t.iter().product();
    let mut v = ONE;
    for (&sm, &tm) in s.iter().zip(t) {
        v *= g(big_s / sm)? * g(big_t / tm)?;
    }
    for &sk in s {
        for &tm in t {
            v *= g(sk * tm)?;
        }
    }
    Ok(v)
}

pub fn verify_an_type_i(params: &AnTypeIParams, cfg: &VerifyConfig) -> VerificationReport {
    let id = if params.n == 1 { "a1_type1" } else { "a2_type1" };
    let tol = cfg.tol_or(if params.n == 1 { 1e-10 } else { 1e-6 });
    let base = &params.base;
    let r = run_check(id, tol, |diags| {
        let spec = an_integrand(params.n, &params.s, &params.t, base, cfg)?;
        let lhs = integrate(&spec, base, cfg, diags)?;
        let rhs = an_type_i_rhs(&params.s, &params.t, base, cfg)?;
        Ok(VerificationReport::two_sided(id, lhs, rhs, tol))
    });
    pm_inputs(r.input("s", &params.s).input("t", &params.t), base)
}

/// `t_j -> sqrt(pq)/t_j`; applying it twice is the identity.
pub fn rains_reflection(t: &[C64], base: &BaseParams) -> Vec<C64> {
    let r = base.sqrt_pq();
    t.iter().map(|&x| r / x).collect()
}

/// `I_n^{(m)}(t)`; `I_0 = 1`.
pub fn rains_integral(
    n: usize,
    t: &[C64],
    base: &BaseParams,
    cfg: &VerifyConfig,
    diags: &mut Vec<QuadDiagnostics>,
) -> Result<C64> {
    if n == 0 {
        return Ok(ONE);
    }
    if n == 1 {
        let (v, d) = integrate_v(t, base, cfg)?;
        diags.push(d);
        return Ok(v);
    }
    let spec = cn_integrand(n, t, None, base, cfg)?;
    integrate(&spec, base, cfg, diags)
}

/// `I_n^{(m)}(t) = prod_{i<j} Gamma(t_i t_j) I_m^{(n)}(sqrt(pq)/t)` with `prod t = (pq)^{m+1}`.
pub fn verify_rains_transformation(
    n: usize,
    m: usize,
    t: &[C64],
    base: &BaseParams,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let id = format!("rains_{n}_{m}");
    let tol = cfg.tol_or(1e-8);
    let r = run_check(&id, tol, |diags| {
        if n > 1 || m > 1 {
            return Err(Error::InvalidArgument(format!("(n, m) = ({n}, {m}) beyond rank one")));
        }
        if t.len() != 2 * n + 2 * m + 4 {
            return Err(Error::InvalidArgument(format!("need {} parameters", 2 * n + 2 * m + 4)));
        }
        check_product(t, base.pq().powi(m as i32 + 1))?;
        let refl = rains_reflection(t, base);
        for (j, (a, b)) in t.iter().zip(&refl).enumerate() {
            if a.norm() >= 1.0 || (m > 0 && b.norm() >= 1.0) {
                return Err(Error::WindowViolation(format!(
                    "t{} = {:.6} or its reflection {:.6} outside the unit disk",
                    j + 1,
                    a.norm(),
                    b.norm()
                )));
            }
        }
        let lhs = rains_integral(n, t, base, cfg, diags)?;
        let rhs = gamma_pair_product(t, base, cfg)? * rains_integral(m, &refl, base, cfg, diags)?;
        Ok(VerificationReport::two_sided(&id, lhs, rhs, tol))
    });
    pm_inputs(r.input("t", t), base)
}

/// `I_2^{(0)}` from the 2x2 determinant of univariate integrals with auxiliary
/// `a_i`, `b_i`, compared with the two-dimensional quadrature.
pub fn verify_determinant_representation(
    t: &[C64],
    a: [C64; 2],
    b: [C64; 2],
    base: &BaseParams,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let id = "c2_determinant";
    let tol = cfg.tol_or(1e-7);
    let r = run_check(id, tol, |diags| {
        if t.len() != 8 {
            return Err(Error::InvalidArgument("need eight parameters".into()));
        }
        check_product(t, base.pq())?;
        let (p, q) = (base.p(), base.q());
        let k = kappa(base, cfg)?;
        let mut mat = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut spec = IntegrandSpec::new(1).den_root(&[2]).times(k / 2.0);
                for &tr in t {
                    spec = spec.num_pm(tr, &[1]);
                }
                // theta(x z^{+-1}; p) = Gamma(q x z^{+-1}) / Gamma(x z^{+-1}), and p <-> q for b
                let (ak, bk) = (a[1 - i], b[1 - j]);
                for e in [1, -1] {
                    spec = spec.num(q * ak, &[e]).den(ak, &[e]).num(p * bk, &[e]).den(bk, &[e]);
                }
                mat[i][j] = integrate(&spec, base, cfg, diags)?;
            }
        }
        let th = |x: C64, b: C64| theta(x, b, &cfg.budget);
        let pre = a[1] * th(a[0] * a[1], p)? * th(a[0] / a[1], p)? * b[1] * th(b[0] * b[1], q)? * th(b[0] / b[1], q)?;
        let det = (mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]) / pre;
        let direct = integrate(&cn_integrand(2, t, None, base, cfg)?, base, cfg, diags)?;
        Ok(VerificationReport::two_sided(id, det, direct, tol))
    });
    pm_inputs(r.input("t", t).input("a", &a).input("b", &b), base)
}

/// Six continuous parameters with doubled charges `n2_a = 2 n_a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RarefiedBetaParams {
    #[serde(with = "crate::cser::vec")]
    pub t: Vec<C64>,
    pub n2: Vec<i64>,
    pub nu2: i64,
    pub base: BaseParams,
}

impl RarefiedBetaParams {
    pub fn new(t: Vec<C64>, n2: Vec<i64>, nu2: i64, base: BaseParams) -> Result<Self> {
        base.require_r()?;
        if t.len() != 6 || n2.len() != 6 {
            return Err(Error::InvalidArgument("need six parameters and six charges".into()));
        }
        if nu2 != 0 && nu2 != 1 {
            return Err(Error::InvalidArgument("nu must be 0 or 1/2".into()));
        }
        if n2.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidArgument("charges must sum to zero".into()));
        }
        if n2.iter().any(|&x| x.rem_euclid(2) != nu2) {
            return Err(Error::InvalidArgument("charges must lie in Z + nu".into()));
        }
        check_product(&t, base.pq())?;
        Ok(RarefiedBetaParams { t, n2, nu2, base })
    }
}

/// `kappa^(r)/2 * prod_a Gamma^(r)(t_a z^{+-1}, n_a +- m) / Gamma^(r)(z^{+-2}, +-2m)`.
pub fn rarefied_beta_integrand(params: &RarefiedBetaParams, cfg: &VerifyConfig) -> Result<IntegrandSpec> {
    let base = &params.base;
    let r = base.require_r()? as i32;
    let kr = q_pochhammer_inf(base.p().powi(r), base.p().powi(r), &cfg.budget)?
        * q_pochhammer_inf(base.q().powi(r), base.q().powi(r), &cfg.budget)?;
    let mut spec = IntegrandSpec::new(1)
        .times(kr / 2.0)
        .den_charged(ONE, &[2], Charge { fixed2: 0, m_coeff: 2 })
        .den_charged(ONE, &[-2], Charge { fixed2: 0, m_coeff: -2 });
    for (&ta, &na) in params.t.iter().zip(&params.n2) {
        spec = spec.num_charged(ta, &[1], Charge { fixed2: na, m_coeff: 1 }).num_charged(
            ta,
            &[-1],
            Charge { fixed2: na, m_coeff: -1 },
        );
    }
    Ok(spec)
}

pub fn verify_rarefied_beta(params: &RarefiedBetaParams, cfg: &VerifyConfig, fold: bool) -> VerificationReport {
    let id = "rfint";
    let tol = cfg.tol_or(1e-8);
    let base = &params.base;
    let r = run_check(id, tol, |diags| {
        let spec = rarefied_beta_integrand(params, cfg)?;
        let res = integrate_rarefied(&spec, &cfg.quad(1), base, &cfg.budget, params.nu2, fold)?;
        diags.extend(res.diagnostics);
        let mut rhs = ONE;
        for a in 0..6 {
            for b in a + 1..6 {
                rhs *= rarefied_gamma(params.t[a] * params.t[b], params.n2[a] + params.n2[b], base, &cfg.budget)?;
            }
        }
        Ok(VerificationReport::two_sided(id, res.value, rhs, tol))
    });
    let n2: Vec<C64> = params.n2.iter().map(|&x| C64::new(x as f64 / 2.0, 0.0)).collect();
    pm_inputs(r.input("t", &params.t).input("n", &n2), base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::draw::Draw;
    use crate::identities::{verify_e7, verify_elliptic_beta, BetaParams, E7Transform, VParams};
    use std::collections::BTreeSet;

    fn cfg() -> VerifyConfig {
        VerifyConfig::default()
    }

    #[test]
    fn exponent_families() {
        let c2: BTreeSet<Vec<i32>> = root_exponents(RootSystem::C, 2).into_iter().collect();
        let expect: BTreeSet<Vec<i32>> =
            [[2, 0], [-2, 0], [0, 2], [0, -2], [1, 1], [1, -1], [-1, 1], [-1, -1]].iter().map(|v| v.to_vec()).collect();
        assert_eq!(c2, expect);
        let a2 = root_exponents(RootSystem::A, 2);
        assert_eq!(a2.len(), 6);
        assert!(a2.iter().all(|e| e.iter().sum::<i32>() == 0 && e.iter().filter(|&&x| x != 0).count() == 2));
        let spec = cn_integrand(
            2,
            &[C64::new(0.5, 0.0); 8],
            None,
            &BaseParams::new(C64::new(0.2, 0.0), C64::new(0.3, 0.0)).unwrap(),
            &cfg(),
        )
        .unwrap();
        let dens: BTreeSet<Vec<i32>> = spec.denominator.iter().map(|f| f.exponents.clone()).collect();
        assert_eq!(dens, expect);
    }

    #[test]
    fn rank_one_collapses() {
        let cfg = cfg();
        let mut d = Draw::new(31);
        let base = d.base(0.15, 0.4).unwrap();
        let t = d.balanced(6, base.pq(), 0.1);
        let ci = verify_cn_type_i(&CnTypeIParams::new(1, t.clone(), base).unwrap(), &cfg);
        let mut first = [C64::new(0.0, 0.0); 5];
        first.copy_from_slice(&t[..5]);
        let eb = verify_elliptic_beta(&BetaParams::new(first, base).unwrap(), &cfg);
        assert!(ci.passed && eb.passed);
        assert!((ci.lhs - eb.lhs).norm() <= 1e-12 * eb.lhs.norm());
        let cii = verify_cn_type_ii(&CnTypeIIParams::new(1, C64::new(0.3, 0.2), t.clone(), base).unwrap(), &cfg);
        assert!(cii.passed);
        assert!((cii.lhs - eb.lhs).norm() <= 1e-12 * eb.lhs.norm());
        assert!((cii.rhs - eb.rhs).norm() <= 1e-12 * eb.rhs.norm());
        let a1 = verify_an_type_i(&AnTypeIParams::new(1, t[..3].to_vec(), t[3..].to_vec(), base).unwrap(), &cfg);
        assert!(a1.passed, "{:?}", a1.rel_residual);
        assert!((a1.lhs - eb.lhs).norm() <= 1e-12 * eb.lhs.norm());
    }

    #[test]
    fn c2_type_one() {
        let cfg = cfg();
        let mut d = Draw::new(32);
        let base = BaseParams::new(C64::from_polar(0.2, 0.3), C64::from_polar(0.25, -0.7)).unwrap();
        let t = d.balanced(8, base.pq(), 0.1);
        let r = verify_cn_type_i(&CnTypeIParams::new(2, t.clone(), base).unwrap(), &cfg);
        assert!(r.passed, "{:?} {:?}", r.rel_residual, r.failure);
        let mut perm = t.clone();
        perm.swap(0, 5);
        perm.swap(2, 7);
        let rp = verify_cn_type_i(&CnTypeIParams::new(2, perm, base).unwrap(), &cfg);
        assert!((rp.lhs / r.lhs - 1.0).norm() < 1e-9);
    }

    #[test]
    fn type_two_recurrence_factor() {
        let cfg = cfg();
        let base = BaseParams::new(C64::from_polar(0.2, 0.3), C64::from_polar(0.25, -0.7)).unwrap();
        let mut d = Draw::new(33);
        let t = d.annulus(0.3, 0.6);
        let t6: Vec<C64> = (0..6).map(|_| d.annulus(0.3, 0.8)).collect();
        let sqrt_t = t.sqrt();
        let scaled: Vec<C64> = t6.iter().map(|x| sqrt_t * x).collect();
        let ratio =
            cn_type_ii_rhs(2, t, &t6, &base, &cfg).unwrap() / cn_type_ii_rhs(1, t, &scaled, &base, &cfg).unwrap();
        let g = |z: C64| elliptic_gamma(z, &base, &cfg.budget).unwrap();
        let factor = g(t * t) / g(t) * gamma_pair_product(&t6, &base, &cfg).unwrap();
        assert!((ratio / factor - 1.0).norm() < 1e-12);
    }

    #[test]
    fn c2_type_two_and_a2() {
        let cfg = cfg();
        let mut d = Draw::new(34);
        let base = BaseParams::new(C64::from_polar(0.2, 0.3), C64::from_polar(0.25, -0.7)).unwrap();
        let t = C64::from_polar(0.5, 0.7);
        let t6 = d.balanced(6, base.pq() / (t * t), 0.1);
        let r = verify_cn_type_ii(&CnTypeIIParams::new(2, t, t6, base).unwrap(), &cfg);
        assert!(r.passed, "{:?} {:?}", r.rel_residual, r.failure);
        let st = d.balanced(8, base.pq(), 0.1);
        let (s, tt) = (st[..4].to_vec(), st[4..].to_vec());
        let r = verify_an_type_i(&AnTypeIParams::new(2, s.clone(), tt.clone(), base).unwrap(), &cfg);
        assert!(r.passed, "{:?} {:?}", r.rel_residual, r.failure);
        let swapped = verify_an_type_i(&AnTypeIParams::new(2, tt, s, base).unwrap(), &cfg);
        assert!((swapped.lhs / r.lhs - 1.0).norm() < 1e-9);
    }

    #[test]
    fn rains_cases() {
        let cfg = cfg();
        let mut d = Draw::new(35);
        let base = BaseParams::new(C64::from_polar(0.2, 0.3), C64::from_polar(0.25, -0.7)).unwrap();
        let t = d.balanced(8, base.pq() * base.pq(), 0.1);
        let r = verify_rains_transformation(1, 1, &t, &base, &cfg);
        assert!(r.passed, "{:?} {:?}", r.rel_residual, r.failure);
        let mut arr = [C64::new(0.0, 0.0); 8];
        arr.copy_from_slice(&t);
        let e = verify_e7(E7Transform::Three, &VParams::new(arr, base).unwrap(), &cfg);
        assert!((e.lhs - r.lhs).norm() <= 1e-12 * r.lhs.norm());
        assert!((e.rhs - r.rhs).norm() <= 1e-12 * r.rhs.norm());
        let six = d.balanced(6, base.pq(), 0.1);
        let r0 = verify_rains_transformation(1, 0, &six, &base, &cfg);
        assert!(r0.passed);
        let back = rains_reflection(&rains_reflection(&t, &base), &base);
        assert!(back.iter().zip(&t).all(|(a, b)| (a - b).norm() < 1e-15));
        let bad = verify_rains_transformation(2, 2, &t, &base, &cfg);
        assert!(!bad.passed);
    }

    #[test]
    fn determinant_representation() {
        let cfg = cfg();
        let mut d = Draw::new(36);
        let base = BaseParams::new(C64::from_polar(0.2, 0.3), C64::from_polar(0.25, -0.7)).unwrap();
        let t = d.balanced(8, base.pq(), 0.1);
        let r = verify_determinant_representation(&t, [t[0], t[1]], [t[0], t[1]], &base, &cfg);
        assert!(r.passed, "{:?} {:?}", r.rel_residual, r.failure);
    }

    fn rf_params(d: &mut Draw, r: u32, n2: Vec<i64>, nu2: i64) -> RarefiedBetaParams {
        let base = BaseParams::new(C64::from_polar(0.3, 0.3), C64::from_polar(0.35, -0.7)).unwrap().with_r(r).unwrap();
        let t = d.balanced(6, base.pq(), 0.1);
        RarefiedBetaParams::new(t, n2, nu2, base).unwrap()
    }

    #[test]
    fn rarefied_beta_cases() {
        let cfg = cfg();
        let mut d = Draw::new(37);
        for (r, n2, nu2) in [
            (1, vec![2, -2, 0, 0, 0, 0], 0),
            (2, vec![2, -2, 0, 0, 0, 0], 0),
            (3, vec![1, -1, 1, -1, 3, -3], 1),
            (2, vec![1, 1, 1, -1, -1, -1], 1),
        ] {
            let params = rf_params(&mut d, r, n2, nu2);
            let rep = verify_rarefied_beta(&params, &cfg, false);
            assert!(rep.passed, "r={r} {:?} {:?}", rep.rel_residual, rep.failure);
            let folded = verify_rarefied_beta(&params, &cfg, true);
            assert!(folded.passed);
        }
    }

    #[test]
    fn rarefied_r1_is_the_beta_integral() {
        let cfg = cfg();
        let mut d = Draw::new(38);
        let params = rf_params(&mut d, 1, vec![4, -2, 0, 0, -2, 0], 0);
        let rep = verify_rarefied_beta(&params, &cfg, false);
        let (plain, _) = integrate_v(&params.t, &params.base, &cfg).unwrap();
        assert!((rep.lhs - plain).norm() <= 1e-12 * plain.norm());
    }

    #[test]
    fn sector_symmetry_and_periodicity() {
        let cfg = cfg();
        let mut d = Draw::new(39);
        for (n2, nu2) in [(vec![2, -2, 0, 0, 2, -2], 0), (vec![1, -1, 1, -1, 3, -3], 1)] {
            let params = rf_params(&mut d, 3, n2, nu2);
            let spec = rarefied_beta_integrand(&params, &cfg).unwrap();
            let res = integrate_rarefied(&spec, &cfg.quad(1), &params.base, &cfg.budget, nu2, false).unwrap();
            for &(m2, c) in &res.sectors {
                let partner = (6 - m2).rem_euclid(6);
                let other = res.sectors.iter().find(|s| s.0 == partner).unwrap().1;
                let (a, b) = (C64::new(c[0], c[1]), C64::new(other[0], other[1]));
                assert!((a - b).norm() <= 1e-11 * a.norm().max(b.norm()), "m2={m2}");
            }
            let z = [C64::from_polar(1.0, 0.7)];
            for m2 in [nu2, nu2 + 2, nu2 + 4] {
                let a = spec.eval_at(&z, m2, &params.base, &cfg.budget).unwrap();
                let b = spec.eval_at(&z, m2 + 6, &params.base, &cfg.budget).unwrap();
                assert!((a / b - 1.0).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn invalid_rarefied_params() {
        let base = BaseParams::new(C64::new(0.3, 0.0), C64::new(0.2, 0.0)).unwrap().with_r(2).unwrap();
        let t = vec![C64::new(0.06f64.powf(1.0 / 6.0), 0.0); 6];
        assert!(RarefiedBetaParams::new(t.clone(), vec![1, 0, 0, 0, 0, -1], 0, base).is_err());
        assert!(RarefiedBetaParams::new(t.clone(), vec![2, 0, 0, 0, 0, 0], 0, base).is_err());
        assert!(RarefiedBetaParams::new(t, vec![2, 0, 0, 0, 0, -2], 0, base).is_ok());
    }
}
