use serde::{Deserialize, Serialize};

use crate::base::{BaseParams, C64};
use crate::config::VerifyConfig;
use crate::error::{Error, Result};
use crate::quadrature::QuadDiagnostics;
use crate::report::VerificationReport;
use crate::special::{elliptic_gamma, gamma_with, theta};

use super::beta::{gamma_pair_product, integrate_v, VParams};
use super::run_check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContiguousRelation {
    /// `prod t_j = p^2 q`, shifts `t_i -> q t_i`.
    Cont1,
    /// `prod t_j = p^2 q^3`, shifts `t_i -> t_i / q`.
    Cont3,
}

fn shifted(t: &[C64; 8], shifts: &[(usize, C64)]) -> [C64; 8] {
    let mut s = *t;
    for &(i, f) in shifts {
        s[i] *= f;
    }
    s
}

fn require_product(t: &[C64; 8], target: C64) -> Result<()> {
    let prod: C64 = t.iter().product();
    let rel = (prod / target - 1.0).norm();
    if !(rel <= 1e-12) {
        return Err(Error::InvalidArgument(format!("balancing violated by {rel:.3e}")));
    }
    Ok(())
}

struct Ctx<'a> {
    base: &'a BaseParams,
    cfg: &'a VerifyConfig,
}

impl Ctx<'_> {
    fn th(&self, z: C64) -> Result<C64> {
        theta(z, self.base.p(), &self.cfg.budget)
    }

    fn v(&self, t: &[C64], diags: &mut Vec<QuadDiagnostics>) -> Result<C64> {
        let (v, d) = integrate_v(t, self.base, self.cfg)?;
        diags.push(d);
        Ok(v)
    }
}

/// Three-term relation; `t` must satisfy the relation's own balancing condition.
pub fn verify_contiguous(
    rel: ContiguousRelation,
    t: &[C64; 8],
    base: &BaseParams,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let id = match rel {
        ContiguousRelation::Cont1 => "cont1",
        ContiguousRelation::Cont3 => "cont3",
    };
    let tol = cfg.tol_or(1e-9);
    let cx = Ctx { base, cfg };
    let (p, q) = (base.p(), base.q());
    run_check(id, tol, |diags| {
        let mut terms = [C64::new(0.0, 0.0); 3];
        match rel {
            ContiguousRelation::Cont1 => {
                require_product(t, p * p * q)?;
                for i in 0..3 {
                    let others: Vec<usize> = (0..3).filter(|&k| k != i).collect();
                    let ti = t[i];
                    let mut den = C64::new(1.0, 0.0);
                    for &k in &others {
                        den *= cx.th(ti * t[k])? * cx.th(ti / t[k])?;
                    }
                    terms[i] = ti * cx.v(&shifted(t, &[(i, q)]), diags)? / den;
                }
            }
            ContiguousRelation::Cont3 => {
                require_product(t, p * p * q * q * q)?;
                for i in 0..3 {
                    let others: Vec<usize> = (0..3).filter(|&k| k != i).collect();
                    let ti = t[i];
                    let mut num = C64::new(1.0, 0.0);
                    for m in 3..8 {
                        num *= cx.th(ti * t[m] / q)?;
                    }
                    let den = ti * cx.th(t[others[0]] / ti)? * cx.th(t[others[1]] / ti)?;
                    terms[i] = num * cx.v(&shifted(t, &[(i, 1.0 / q)]), diags)? / den;
                }
            }
        }
        Ok(VerificationReport::terms(id, &terms, tol))
    })
    .input("t", t)
}

/// The coefficient `A(t_1, ..., t_8, q; p)` of the elliptic hypergeometric equation.
pub fn potential_a(t: &[C64; 8], q: C64, p: C64, cfg: &VerifyConfig) -> Result<C64> {
    let th = |z: C64| theta(z, p, &cfg.budget);
    let (t1, t2, t3) = (t[0], t[1], t[2]);
    let mut v =
        th(t1 / (q * t3))? * th(t3 * t1)? * th(t3 / t1)? / (th(t1 / t2)? * th(t2 / (q * t1))? * th(t1 * t2 / q)?);
    for &tk in &t[3..] {
        v *= th(t2 * tk / q)? / th(t3 * tk)?;
    }
    Ok(v)
}

/// `A` through the S_8-symmetric parameterization
/// `u = (t1/t3, t1/(q t3), 1/(t1 t3), t_k t2 / q)`, `lambda = t2/(q t3)`.
pub fn potential_a_zagier(t: &[C64; 8], q: C64, p: C64, cfg: &VerifyConfig) -> Result<C64> {
    let th = |z: C64| theta(z, p, &cfg.budget);
    let (t1, t2, t3) = (t[0], t[1], t[2]);
    let lambda = t2 / (q * t3);
    let mut u = vec![t1 / t3, t1 / (q * t3), 1.0 / (t1 * t3)];
    u.extend(t[3..].iter().map(|&tk| tk * t2 / q));
    let mut v = lambda * lambda / (p * p);
    for &uk in &u {
        v *= th(uk)? / th(lambda / uk)?;
    }
    Ok(v)
}

/// `U(t) = V(t) / prod_{k=1,2} Gamma(t_k t_3^{+-1})`.
pub fn u_function(t: &[C64; 8], base: &BaseParams, cfg: &VerifyConfig) -> Result<(C64, QuadDiagnostics)> {
    let (v, d) = integrate_v(t, base, cfg)?;
    let g = |z: C64| elliptic_gamma(z, base, &cfg.budget);
    let den = g(t[0] * t[2])? * g(t[0] / t[2])? * g(t[1] * t[2])? * g(t[1] / t[2])?;
    Ok((v / den, d))
}

fn swap12(t: &[C64; 8]) -> [C64; 8] {
    let mut s = *t;
    s.swap(0, 1);
    s
}

/// `U` at `t`, `(q t1, t2/q)` and `(t1/q, q t2)`.
fn u_triple(t: &[C64; 8], base: &BaseParams, cfg: &VerifyConfig, diags: &mut Vec<QuadDiagnostics>) -> Result<[C64; 3]> {
    let q = base.q();
    let mut out = [C64::new(0.0, 0.0); 3];
    for (k, s) in [*t, shifted(t, &[(0, q), (1, 1.0 / q)]), shifted(t, &[(0, 1.0 / q), (1, q)])].iter().enumerate() {
        let (u, d) = u_function(s, base, cfg)?;
        diags.push(d);
        out[k] = u;
    }
    Ok(out)
}

pub fn verify_ehe(params: &VParams, cfg: &VerifyConfig) -> VerificationReport {
    let id = "eheq1";
    let tol = cfg.tol_or(1e-8);
    let t = params.t();
    let base = params.base();
    run_check(id, tol, |diags| {
        let (p, q) = (base.p(), base.q());
        let [u0, u1, u2] = u_triple(&t, base, cfg, diags)?;
        let terms = [potential_a(&t, q, p, cfg)? * (u1 - u0), potential_a(&swap12(&t), q, p, cfg)? * (u2 - u0), u0];
        Ok(VerificationReport::terms(id, &terms, tol))
    })
    .input("t", &t)
}

/// `t_1 = c x`, `t_2 = c / x` and the eight `epsilon_k`.
pub fn eheq2_parameters(t: &[C64; 8], base: &BaseParams) -> (C64, C64, [C64; 8]) {
    let (p, q) = (base.p(), base.q());
    let c = (t[0] * t[1]).sqrt();
    let x = t[0] / c;
    let mut eps = [C64::new(0.0, 0.0); 8];
    eps[0] = c / t[2];
    eps[1] = eps[0] / q;
    eps[2] = c * t[2] * p.powi(4);
    for k in 3..8 {
        eps[k] = q / (c * t[k]);
    }
    (c, x, eps)
}

/// The symmetric form `A(x)(f(qx) - f(x)) + A(1/x)(f(x/q) - f(x)) + nu f(x) = 0`
/// with `f` built from `U` through `t_1 = c x`, `t_2 = c/x`.
pub fn verify_eheq2_form(params: &VParams, cfg: &VerifyConfig) -> VerificationReport {
    let id = "eheq2";
    let tol = cfg.tol_or(1e-8);
    let t = params.t();
    let base = params.base();
    run_check(id, tol, |diags| {
        let (p, q) = (base.p(), base.q());
        let th = |z: C64| theta(z, p, &cfg.budget);
        let (_, x, eps) = eheq2_parameters(&t, base);
        let a_of = |x: C64| -> Result<C64> {
            let mut v = C64::new(1.0, 0.0);
            for &e in &eps {
                v *= th(e * x)?;
            }
            Ok(v / (th(x * x)? * th(q * x * x)?))
        };
        let mut nu = C64::new(1.0, 0.0);
        for &e in &eps[2..] {
            nu *= th(e * eps[0] / q)?;
        }
        let [u0, u1, u2] = u_triple(&t, base, cfg, diags)?;
        let terms = [a_of(x)? * (u1 - u0), a_of(1.0 / x)? * (u2 - u0), nu * u0];
        Ok(VerificationReport::terms(id, &terms, tol).input("x", &[x]).input("nu", &[nu]))
    })
    .input("t", &t)
}

/// The Casoratian relation; `t` satisfies `prod t_j = pq`.
pub fn verify_casoratian(t: &[C64; 8], base: &BaseParams, cfg: &VerifyConfig) -> VerificationReport {
    let id = "vdet";
    let tol = cfg.tol_or(1e-8);
    let cx = Ctx { base, cfg };
    run_check(id, tol, |diags| {
        let (p, q) = (base.p(), base.q());
        let pq = base.pq();
        require_product(t, pq)?;
        let a = cx.v(&shifted(t, &[(0, pq)]), diags)? * cx.v(&shifted(t, &[(1, pq)]), diags)?;
        let b = cx.v(&shifted(t, &[(0, q), (1, p)]), diags)? * cx.v(&shifted(t, &[(0, p), (1, q)]), diags)?;
        let b = b / (t[0] * t[0] * t[1] * t[1]);
        let g = |z: C64| elliptic_gamma(z, base, &cfg.budget);
        let (t1, t2) = (t[0], t[1]);
        let rhs = gamma_pair_product(t, base, cfg)? / (g(t1 * t2)? * g(t1 / t2)? * g(t2 / t1)? * g(1.0 / (t1 * t2))?);
        let scale = a.norm().max(b.norm());
        Ok(VerificationReport::two_sided_scaled(id, a - b, rhs, scale, tol))
    })
    .input("t", t)
}

/// The particular solution for `|q| > 1`. `params` are the V-function parameters
/// `s_j` at bases `(p, q')` with `|q'| < 1`; the equation is checked at `q = 1/q'`
/// with `t_j = p^{1/2} / s_j`.
pub fn verify_ehe_q_inverted(params: &VParams, cfg: &VerifyConfig) -> VerificationReport {
    let id = "eheq1_q_inverted";
    let tol = cfg.tol_or(1e-8);
    let s = params.t();
    let base = params.base();
    let (p, q_inner) = (base.p(), base.q());
    let q = 1.0 / q_inner;
    let sp = p.sqrt();
    let mut t = [C64::new(0.0, 0.0); 8];
    for j in 0..8 {
        t[j] = sp / s[j];
    }
    run_check(id, tol, |diags| {
        let g = |z: C64| gamma_with(z, p, q_inner, &cfg.budget);
        let mut u = |tt: &[C64; 8]| -> Result<C64> {
            let ss: Vec<C64> = tt.iter().map(|x| sp / x).collect();
            let (v, d) = integrate_v(&ss, base, cfg)?;
            diags.push(d);
            let (t1, t2, t3) = (tt[0], tt[1], tt[2]);
            Ok(v / (g(p / (t1 * t3))? * g(t3 / t1)? * g(p / (t2 * t3))? * g(t3 / t2)?))
        };
        let u0 = u(&t)?;
        let u1 = u(&shifted(&t, &[(0, q), (1, 1.0 / q)]))?;
        let u2 = u(&shifted(&t, &[(0, 1.0 / q), (1, q)]))?;
        let terms = [potential_a(&t, q, p, cfg)? * (u1 - u0), potential_a(&swap12(&t), q, p, cfg)? * (u2 - u0), u0];
        Ok(VerificationReport::terms(id, &terms, tol))
    })
    .input("s", &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::draw::Draw;

    fn arr(v: Vec<C64>) -> [C64; 8] {
        let mut a = [C64::new(0.0, 0.0); 8];
        a.copy_from_slice(&v);
        a
    }

    fn base() -> BaseParams {
        BaseParams::new(C64::from_polar(0.3, 0.3), C64::from_polar(0.35, -0.7)).unwrap()
    }

    #[test]
    fn contiguous_relations() {
        let cfg = VerifyConfig::default();
        let b = base();
        let mut d = Draw::new(21);
        let (p, q) = (b.p(), b.q());
        let t = arr(d.balanced(8, p * p * q, 0.1));
        let r1 = verify_contiguous(ContiguousRelation::Cont1, &t, &b, &cfg);
        assert!(r1.passed, "{:?} {:?}", r1.rel_residual, r1.failure);
        let r1s = verify_contiguous(ContiguousRelation::Cont1, &swap12(&t), &b, &cfg);
        assert!((r1s.abs_residual - r1.abs_residual).abs() <= 1e-9 * r1.abs_residual.max(1e-300) + 1e-15);
        let t = arr(d.balanced_with_small(8, &[0, 1, 2], 0.8 * q.norm(), p * p * q * q * q, 0.1));
        let r3 = verify_contiguous(ContiguousRelation::Cont3, &t, &b, &cfg);
        assert!(r3.passed, "{:?} {:?}", r3.rel_residual, r3.failure);
    }

    #[test]
    fn equation_and_potentials() {
        let cfg = VerifyConfig::default();
        let b = base();
        let (p, q) = (b.p(), b.q());
        let mut d = Draw::new(22);
        let t = arr(d.balanced_with_small(8, &[0, 1], 0.8 * q.norm(), b.pq() * b.pq(), 0.1));
        let v = VParams::new(t, b).unwrap();
        let r = verify_ehe(&v, &cfg);
        assert!(r.passed, "{:?} {:?}", r.rel_residual, r.failure);
        let a = potential_a(&t, q, p, &cfg).unwrap();
        let shifted_a = potential_a(&shifted(&t, &[(0, p), (1, 1.0 / p)]), q, p, &cfg).unwrap();
        assert!((shifted_a / a - 1.0).norm() < 1e-11);
        let z = potential_a_zagier(&t, q, p, &cfg).unwrap();
        assert!((z / a - 1.0).norm() < 1e-11);
        let r2 = verify_eheq2_form(&v, &cfg);
        assert!(r2.passed, "{:?} {:?}", r2.rel_residual, r2.failure);
    }

    #[test]
    fn eheq2_nu_and_balance() {
        let b = base();
        let mut d = Draw::new(23);
        let t = arr(d.balanced(8, b.pq() * b.pq(), 0.1));
        let (c, x, eps) = eheq2_parameters(&t, &b);
        let prod: C64 = eps.iter().product();
        assert!((prod / (b.pq() * b.pq()) - 1.0).norm() < 1e-13);
        assert!((c * x - t[0]).norm() < 1e-14 && (c / x - t[1]).norm() < 1e-14);
        assert!((eps[1] - eps[0] / b.q()).norm() < 1e-14);
    }

    #[test]
    fn casoratian_and_its_symmetries() {
        let cfg = VerifyConfig::default();
        let b = BaseParams::new(C64::from_polar(0.2, 0.4), C64::from_polar(0.15, -0.3)).unwrap();
        let mut d = Draw::new(24);
        let t = arr(d.balanced(8, b.pq(), 0.1));
        let r = verify_casoratian(&t, &b, &cfg);
        assert!(r.passed, "{:?} {:?}", r.rel_residual, r.failure);
        let rs = verify_casoratian(&swap12(&t), &b, &cfg);
        assert!((rs.lhs / r.lhs - 1.0).norm() < 1e-10 && (rs.rhs / r.rhs - 1.0).norm() < 1e-10);
        let rp = verify_casoratian(&t, &b.swapped(), &cfg);
        assert!((rp.lhs / r.lhs - 1.0).norm() < 1e-10 && (rp.rhs / r.rhs - 1.0).norm() < 1e-10);
    }

    #[test]
    fn inverted_q_solution() {
        let cfg = VerifyConfig::default();
        let b = base();
        let mut d = Draw::new(25);
        let s = arr(d.balanced_with_small(8, &[0, 1], 0.8 * b.q().norm(), b.pq() * b.pq(), 0.1));
        let r = verify_ehe_q_inverted(&VParams::new(s, b).unwrap(), &cfg);
        assert!(r.passed, "{:?} {:?}", r.rel_residual, r.failure);
    }
}
