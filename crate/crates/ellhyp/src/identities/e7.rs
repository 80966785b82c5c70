use serde::{Deserialize, Serialize};

use crate::base::{BaseParams, C64, ONE};
use crate::config::VerifyConfig;
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::special::elliptic_gamma;

use super::beta::{gamma_pair_product, integrate_v, VParams};
use super::run_check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum E7Transform {
    /// Splitting `{1,2,3,4} | {5,6,7,8}` with `c = sqrt(T/pq)`.
    One,
    /// `t_j -> sqrt(T)/t_j`, `t_{j+4} -> sqrt(S)/t_{j+4}`.
    Two,
    /// `t_j -> sqrt(pq)/t_j`.
    Three,
}

impl E7Transform {
    pub fn id(&self) -> &'static str {
        match self {
            E7Transform::One => "e7_1",
            E7Transform::Two => "e7_2",
            E7Transform::Three => "e7_3",
        }
    }
}

fn t_products(t: &[C64; 8]) -> (C64, C64) {
    (t[..4].iter().product(), t[4..].iter().product())
}

/// Checks the modulus windows under which both sides are defined by unit-circle integrals.
pub fn e7_window(tr: E7Transform, t: &[C64; 8], base: &BaseParams) -> Result<()> {
    let fail = |msg: String| Err(Error::WindowViolation(msg));
    for (j, x) in t.iter().enumerate() {
        if x.norm() >= 1.0 {
            return fail(format!("|t{}| = {:.6} >= 1", j + 1, x.norm()));
        }
    }
    match tr {
        E7Transform::One => {
            let s = e7_map(tr, t, base);
            for (j, x) in s.iter().enumerate() {
                if x.norm() >= 1.0 {
                    return fail(format!("|s{}| = {:.6} >= 1", j + 1, x.norm()));
                }
            }
        }
        E7Transform::Two => {
            let (tt, ss) = t_products(t);
            let (rt, rs) = (tt.norm().sqrt(), ss.norm().sqrt());
            for j in 0..4 {
                if t[j].norm() <= rt {
                    return fail(format!("|t{}| = {:.6} <= |T|^(1/2) = {:.6}", j + 1, t[j].norm(), rt));
                }
                if t[j + 4].norm() <= rs {
                    return fail(format!("|t{}| = {:.6} <= |S|^(1/2) = {:.6}", j + 5, t[j + 4].norm(), rs));
                }
            }
        }
        E7Transform::Three => {
            let r = base.pq().norm().sqrt();
            for (j, x) in t.iter().enumerate() {
                if x.norm() <= r {
                    return fail(format!("|t{}| = {:.6} <= |pq|^(1/2) = {:.6}", j + 1, x.norm(), r));
                }
            }
        }
    }
    Ok(())
}

fn e7_map(tr: E7Transform, t: &[C64; 8], base: &BaseParams) -> [C64; 8] {
    let mut s = [C64::new(0.0, 0.0); 8];
    match tr {
        E7Transform::One => {
            let (tt, _) = t_products(t);
            let c = (tt / base.pq()).sqrt();
            for j in 0..4 {
                s[j] = t[j] / c;
                s[j + 4] = t[j + 4] * c;
            }
        }
        E7Transform::Two => {
            let (tt, _) = t_products(t);
            let rt = tt.sqrt();
            let rs = base.pq() / rt;
            for j in 0..4 {
                s[j] = rt / t[j];
                s[j + 4] = rs / t[j + 4];
            }
        }
        E7Transform::Three => {
            let r = base.sqrt_pq();
            for j in 0..8 {
                s[j] = r / t[j];
            }
        }
    }
    s
}

/// Image parameters and the gamma prefactor `P` with `V(t) = P * V(image)`.
pub fn e7_image(tr: E7Transform, t: &[C64; 8], base: &BaseParams, cfg: &VerifyConfig) -> Result<([C64; 8], C64)> {
    let s = e7_map(tr, t, base);
    let pre = match tr {
        E7Transform::One => gamma_pair_product(&t[..4], base, cfg)? * gamma_pair_product(&t[4..], base, cfg)?,
        E7Transform::Two => {
            let mut v = ONE;
            for j in 0..4 {
                for k in 4..8 {
                    v *= elliptic_gamma(t[j] * t[k], base, &cfg.budget)?;
                }
            }
            v
        }
        E7Transform::Three => gamma_pair_product(t, base, cfg)?,
    };
    Ok((s, pre))
}

pub fn verify_e7(tr: E7Transform, params: &VParams, cfg: &VerifyConfig) -> VerificationReport {
    let id = tr.id();
    let tol = cfg.tol_or(1e-9);
    let t = params.t();
    let base = params.base();
    run_check(id, tol, |diags| {
        e7_window(tr, &t, base)?;
        let (s, pre) = e7_image(tr, &t, base, cfg)?;
        let (lhs, d1) = integrate_v(&t, base, cfg)?;
        let (v_s, d2) = integrate_v(&s, base, cfg)?;
        diags.extend([d1, d2]);
        Ok(VerificationReport::two_sided(id, lhs, pre * v_s, tol))
    })
    .input("t", &t)
    .input("p", &[base.p()])
    .input("q", &[base.q()])
}

fn e7_one_split(t: &[C64; 8], first: [usize; 4], base: &BaseParams, cfg: &VerifyConfig) -> Result<([C64; 8], C64)> {
    let rest: Vec<usize> = (0..8).filter(|i| !first.contains(i)).collect();
    let mut perm = [C64::new(0.0, 0.0); 8];
    for (k, &i) in first.iter().chain(rest.iter()).enumerate() {
        perm[k] = t[i];
    }
    let (img, pre) = e7_image(E7Transform::One, &perm, base, cfg)?;
    let mut out = [C64::new(0.0, 0.0); 8];
    for (k, &i) in first.iter().chain(rest.iter()).enumerate() {
        out[i] = img[k];
    }
    Ok((out, pre))
}

/// Applies the first transformation on the split `{3,4,5,6}`, then on `{1,2,5,6}`,
/// and compares `P1 P2 V(result)` with the second transformation's `P V(image)`.
/// The composite image equals the direct image up to a relabelling and a global sign.
pub fn verify_e7_composition(params: &VParams, cfg: &VerifyConfig) -> VerificationReport {
    let id = "e7_composition";
    let tol = cfg.tol_or(1e-9);
    let t = params.t();
    let base = params.base();
    run_check(id, tol, |diags| {
        e7_window(E7Transform::Two, &t, base)?;
        let (s1, p1) = e7_one_split(&t, [2, 3, 4, 5], base, cfg)?;
        let (s2, p2) = e7_one_split(&s1, [0, 1, 4, 5], base, cfg)?;
        for (j, x) in s1.iter().chain(s2.iter()).enumerate() {
            if x.norm() >= 1.0 {
                return Err(Error::WindowViolation(format!(
                    "intermediate parameter {} has modulus {:.6}",
                    j + 1,
                    x.norm()
                )));
            }
        }
        let (direct, p3) = e7_image(E7Transform::Two, &t, base, cfg)?;
        let (v2, d1) = integrate_v(&s2, base, cfg)?;
        let (v3, d2) = integrate_v(&direct, base, cfg)?;
        diags.extend([d1, d2]);
        Ok(VerificationReport::two_sided(id, p1 * p2 * v2, p3 * v3, tol))
    })
    .input("t", &t)
}
