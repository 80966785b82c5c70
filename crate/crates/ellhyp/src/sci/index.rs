//! One-particle index, its plethystic exponential as a gamma-function integrand,
//! and index integrals over the SU(N) Haar measure.

use num_rational::Ratio;

use crate::base::{BaseParams, SeriesBudget, C64, ONE};
use crate::config::VerifyConfig;
use crate::error::{Error, Result};
use crate::identities::run_check;
use crate::quadrature::{integrate_torus, IntegrandSpec, QuadDiagnostics};
use crate::report::VerificationReport;

use super::theory::{
    character, monomial, positive_roots, seiberg_electric, seiberg_magnetic, su_weights, FieldKind, TheorySpec,
};

/// `(pq)^{R/2}`: principal root `(pq)^{1/(2b)}` raised to the integer power `a`, for `R = a/b`.
pub fn r_weight(pq: C64, r: Ratio<i64>) -> C64 {
    let root = (pq.ln() / (2 * r.denom()) as f64).exp();
    root.powi(*r.numer() as i32)
}

fn check_base(p: C64, q: C64) -> Result<()> {
    BaseParams::new(p, q).map(|_| ())
}

fn check_point(spec: &TheorySpec, z: &[C64], y: &[C64]) -> Result<()> {
    if z.len() != spec.gauge.n {
        return Err(Error::InvalidArgument(format!("gauge torus point needs {} entries", spec.gauge.n)));
    }
    if y.len() != spec.flavor_rank {
        return Err(Error::InvalidArgument(format!("flavor point needs {} entries", spec.flavor_rank)));
    }
    Ok(())
}

/// `ind(p^n, q^n, z^n, y^n)` with `(pq)^{R/2}` continued as its `n`-th power.
fn ind_level(spec: &TheorySpec, p: C64, q: C64, n: i32, z: &[C64], y: &[C64]) -> Result<C64> {
    let (pn, qn) = (p.powi(n), q.powi(n));
    let den = (1.0 - pn) * (1.0 - qn);
    let g = spec.gauge.n;
    let zn: Vec<C64> = z.iter().map(|x| x.powi(n)).collect();
    let zbar: Vec<C64> = zn.iter().map(|x| 1.0 / x).collect();
    let yn: Vec<C64> = y.iter().map(|x| x.powi(n)).collect();
    let mut total = C64::new(0.0, 0.0);
    for f in &spec.fields {
        match f.kind {
            FieldKind::Vector => {
                total += (2.0 * pn * qn - pn - qn) / den * character(f.gauge_rep, g, &zn)?;
            }
            FieldKind::Chiral => {
                let a = r_weight(p * q, f.r_charge).powi(n);
                let abar = (p * q).powi(n) / a;
                let chi_f: C64 = f.flavor_weights.iter().map(|m| monomial(&yn, m)).sum();
                let chi_fbar: C64 = f.flavor_weights.iter().map(|m| 1.0 / monomial(&yn, m)).sum();
                let chi_g = character(f.gauge_rep, g, &zn)?;
                let chi_gbar = character(f.gauge_rep, g, &zbar)?;
                total += f.epsilon as f64 * (a * chi_f * chi_g - abar * chi_fbar * chi_gbar) / den;
            }
        }
    }
    Ok(total)
}

/// One-particle states index at a full gauge torus point `z` (`prod z = 1`) and flavor point `y`.
pub fn single_particle_index(spec: &TheorySpec, p: C64, q: C64, z: &[C64], y: &[C64]) -> Result<C64> {
    check_base(p, q)?;
    check_point(spec, z, y)?;
    ind_level(spec, p, q, 1, z, y)
}

/// `exp(sum_n ind(p^n, q^n, z^n, y^n)/n)`, summed until the terms drop below `1e-16`.
pub fn plethystic_exponential(
    spec: &TheorySpec,
    p: C64,
    q: C64,
    z: &[C64],
    y: &[C64],
    budget: &SeriesBudget,
) -> Result<C64> {
    check_base(p, q)?;
    check_point(spec, z, y)?;
    let mut sum = C64::new(0.0, 0.0);
    let mut small = 0;
    for n in 1..=budget.max_terms.max(64) as i32 {
        let term = ind_level(spec, p, q, n, z, y)? / n as f64;
        sum += term;
        small = if term.norm() < 1e-16 * sum.norm().max(1.0) { small + 1 } else { 0 };
        if small >= 3 {
            return Ok(sum.exp());
        }
    }
    Err(Error::BudgetExhausted { context: "plethystic sum", terms: budget.max_terms })
}

/// Gamma-product form of the plethystic exponential times the Haar density, as an
/// integrand over the independent gauge coordinates.
pub fn build_index_integrand(
    spec: &TheorySpec,
    p: C64,
    q: C64,
    y: &[C64],
    budget: &SeriesBudget,
) -> Result<IntegrandSpec> {
    spec.validate()?;
    let base = BaseParams::new(p, q)?;
    if y.len() != spec.flavor_rank {
        return Err(Error::InvalidArgument(format!("flavor point needs {} entries", spec.flavor_rank)));
    }
    let n = spec.gauge.n;
    let pq = base.pq();
    let mut out = IntegrandSpec::su(n);
    for (a, f) in spec.fields.iter().enumerate() {
        match f.kind {
            FieldKind::Vector => {
                for root in positive_roots(n) {
                    out = out.den_root(&root);
                }
                out = out.times(base.kappa(budget)?.powi(n as i32 - 1));
            }
            FieldKind::Chiral => {
                let w = r_weight(pq, f.r_charge);
                let gauge = su_weights(f.gauge_rep, n)?;
                for (k, m) in f.flavor_weights.iter().enumerate() {
                    let x = w * monomial(y, m);
                    let ok = if f.epsilon > 0 { x.norm() < 1.0 } else { x.norm() > pq.norm() };
                    if !ok {
                        return Err(Error::AuditFailure(format!(
                            "field {a} ({:?}), flavor weight {k}: |(pq)^(R/2) y^m| = {:.6}",
                            f.gauge_rep,
                            x.norm()
                        )));
                    }
                    for mu in &gauge {
                        for _ in 0..f.epsilon.unsigned_abs() {
                            out = if f.epsilon > 0 { out.num(x, mu) } else { out.den(x, mu) };
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Pointwise comparison of the gamma-product integrand with the truncated plethystic sum
/// times `prod_{a != b} (1 - z_a/z_b)`.
pub fn verify_plethystic(
    spec: &TheorySpec,
    p: C64,
    q: C64,
    z: &[C64],
    y: &[C64],
    budget: &SeriesBudget,
) -> VerificationReport {
    let id = "plethystic";
    let tol = 1e-8;
    run_check(id, tol, |_| {
        let integrand = build_index_integrand(spec, p, q, y, budget)?;
        check_point(spec, z, y)?;
        let n = z.len();
        let rho = integrand.eval_at(&z[..n - 1], 0, &BaseParams::new(p, q)?, budget)?;
        let mut haar = ONE;
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    haar *= 1.0 - z[a] / z[b];
                }
            }
        }
        let pe = plethystic_exponential(spec, p, q, z, y, budget)? * haar;
        Ok(VerificationReport::two_sided(id, rho, pe, tol))
    })
    .input("z", z)
    .input("y", y)
}

pub fn evaluate_index(
    spec: &TheorySpec,
    p: C64,
    q: C64,
    y: &[C64],
    cfg: &VerifyConfig,
) -> Result<(C64, QuadDiagnostics)> {
    if spec.gauge.n > 3 {
        return Err(Error::InvalidArgument(format!("SU({}) exceeds the supported rank", spec.gauge.n)));
    }
    let integrand = build_index_integrand(spec, p, q, y, &cfg.budget)?;
    let base = BaseParams::new(p, q)?;
    integrate_torus(&integrand, &cfg.quad(integrand.dim), &base, &cfg.budget)
}

/// Flavor coordinates `[y_l, y_r, b]` of the Seiberg specs reproducing quark parameters
/// `s_i = (pq)^{R/2} y_{l,i} b^{Ñc}`, `t_i = (pq)^{R/2} y_{r,i}^{-1} b^{-Ñc}` with `R = Ñc/Nf`.
pub fn seiberg_fugacities(nc: usize, nf: usize, s: &[C64], t: &[C64], p: C64, q: C64) -> Result<Vec<C64>> {
    if s.len() != nf || t.len() != nf || nf <= nc {
        return Err(Error::InvalidArgument(format!("need {nf} quark and {nf} antiquark parameters with Nf > Nc")));
    }
    let nct = (nf - nc) as i64;
    let pq = p * q;
    let (big_s, big_t) = (s.iter().product::<C64>(), t.iter().product::<C64>());
    let target = r_weight(pq, Ratio::from_integer(2 * nct));
    if ((big_s * big_t) / target - 1.0).norm() > 1e-12 {
        return Err(Error::InvalidArgument(format!("balancing ST = (pq)^{nct} violated")));
    }
    let c = r_weight(pq, Ratio::new(nct, nf as i64));
    let bn = big_s / r_weight(pq, Ratio::from_integer(nct));
    let b = (bn.ln() / (nct as f64 * nf as f64)).exp();
    let bk = b.powi(nct as i32);
    let mut y: Vec<C64> = s[..nf - 1].iter().map(|si| si / (c * bk)).collect();
    y.extend(t[..nf - 1].iter().map(|ti| c / (bk * ti)));
    y.push(b);
    Ok(y)
}

fn seiberg_windows(nc: usize, nf: usize, s: &[C64], t: &[C64], p: C64, q: C64) -> Result<()> {
    let nct = nf - nc;
    let pq = p * q;
    let s_root = (s.iter().product::<C64>().ln() / nct as f64).exp();
    let t_root = pq / s_root;
    let mut bad = Vec::new();
    for (i, (si, ti)) in s.iter().zip(t).enumerate() {
        for (name, v) in [("s", *si), ("t", *ti), ("S^(1/Ñc)/s", s_root / si), ("T^(1/Ñc)/t", t_root / ti)] {
            if v.norm() >= 1.0 {
                bad.push(format!("|{name}[{}]| = {:.4}", i + 1, v.norm()));
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::WindowViolation(bad.join(", ")))
    }
}

/// Electric SU(Nc) index against the magnetic SU(Nf - Nc) index.
pub fn verify_seiberg(
    nc: usize,
    nf: usize,
    s: &[C64],
    t: &[C64],
    p: C64,
    q: C64,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let id = "seiberg";
    let tol = cfg.tol_or(if nf == nc + 1 { 1e-9 } else { 1e-7 });
    run_check(id, tol, |diags| {
        let y = seiberg_fugacities(nc, nf, s, t, p, q)?;
        seiberg_windows(nc, nf, s, t, p, q)?;
        let (ie, de) = evaluate_index(&seiberg_electric(nc, nf)?, p, q, &y, cfg)?;
        diags.push(de);
        let (im, dm) = evaluate_index(&seiberg_magnetic(nc, nf)?, p, q, &y, cfg)?;
        diags.push(dm);
        Ok(VerificationReport::two_sided(id, ie, im, tol).note(format!("Nc = {nc}, Nf = {nf}")))
    })
    .input("s", s)
    .input("t", t)
}

/// With `s_Nf t_Nf = pq` the last flavor drops out of the electric index.
pub fn verify_seiberg_reduction(
    nc: usize,
    nf: usize,
    s: &[C64],
    t: &[C64],
    p: C64,
    q: C64,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let id = "seiberg_reduction";
    let tol = cfg.tol_or(1e-8);
    run_check(id, tol, |diags| {
        if s.len() != nf || t.len() != nf {
            return Err(Error::InvalidArgument(format!("need {nf} quark and antiquark parameters")));
        }
        if (s[nf - 1] * t[nf - 1] / (p * q) - 1.0).norm() > 1e-12 {
            return Err(Error::InvalidArgument("reduction needs s_Nf t_Nf = pq".into()));
        }
        let y = seiberg_fugacities(nc, nf, s, t, p, q)?;
        let (full, d1) = evaluate_index(&seiberg_electric(nc, nf)?, p, q, &y, cfg)?;
        diags.push(d1);
        let y2 = seiberg_fugacities(nc, nf - 1, &s[..nf - 1], &t[..nf - 1], p, q)?;
        let (reduced, d2) = evaluate_index(&seiberg_electric(nc, nf - 1)?, p, q, &y2, cfg)?;
        diags.push(d2);
        Ok(VerificationReport::two_sided(id, full, reduced, tol))
    })
    .input("s", s)
    .input("t", t)
}

/// `h_i(z) = rho(.., q z_i, ..)/rho(z)` must be invariant under `z_i -> p z_i`.
pub fn verify_p_ellipticity(
    spec: &TheorySpec,
    p: C64,
    q: C64,
    y: &[C64],
    points: &[Vec<C64>],
    budget: &SeriesBudget,
) -> VerificationReport {
    let id = "p_elliptic";
    let tol = 1e-10;
    run_check(id, tol, |_| {
        let integrand = build_index_integrand(spec, p, q, y, budget)?;
        let base = BaseParams::new(p, q)?;
        let rank = integrand.dim;
        let rho = |z: &[C64]| integrand.eval_at(z, 0, &base, budget);
        let shifted = |z: &[C64], i: usize, f: C64| {
            let mut w = z.to_vec();
            w[i] *= f;
            w
        };
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for z in points {
            if z.len() != rank {
                return Err(Error::InvalidArgument(format!("points need {rank} coordinates")));
            }
            for i in 0..rank {
                let h = rho(&shifted(z, i, q))? / rho(z)?;
                let zp = shifted(z, i, p);
                let hp = rho(&shifted(&zp, i, q))? / rho(&zp)?;
                lhs.push(hp / h);
                rhs.push(ONE);
            }
        }
        if lhs.is_empty() {
            return Ok(VerificationReport::two_sided(id, ONE, ONE, tol).note("no gauge variables"));
        }
        let mut worst = (0, 0.0);
        for (k, v) in lhs.iter().enumerate() {
            let d = (v - 1.0).norm();
            if d > worst.1 || d.is_nan() {
                worst = (k, d);
            }
        }
        Ok(VerificationReport::two_sided(id, lhs[worst.0], rhs[worst.0], tol))
    })
    .input("y", y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::draw::Draw;
    use crate::sci::theory::{FieldContent, GaugeGroup, Rep};
    use crate::special::elliptic_gamma;

    fn pq() -> (C64, C64) {
        (C64::from_polar(0.2, 0.3), C64::from_polar(0.25, -0.7))
    }

    fn su2_six(flavor: usize) -> TheorySpec {
        let weights = (0..6)
            .map(|k| {
                let mut w = vec![0; flavor];
                if k < 5 {
                    w[k] = 1;
                } else {
                    w.iter_mut().for_each(|x| *x = -1);
                }
                w
            })
            .collect();
        TheorySpec {
            name: "su2_six".into(),
            gauge: GaugeGroup::su(2),
            flavor_rank: flavor,
            fields: vec![
                FieldContent::chiral(Rep::Fundamental, weights, Ratio::new(1, 3)),
                FieldContent::vector(flavor),
            ],
            r_minus: None,
        }
    }

    fn six_y(d: &mut Draw) -> Vec<C64> {
        (0..5).map(|_| C64::from_polar(d.uniform(0.9, 1.1), d.phase())).collect()
    }

    #[test]
    fn vector_multiplet_at_identity() {
        let (p, q) = pq();
        for n in 2..=3 {
            let spec = TheorySpec {
                name: "v".into(),
                gauge: GaugeGroup::su(n),
                flavor_rank: 0,
                fields: vec![FieldContent::vector(0)],
                r_minus: None,
            };
            let v = single_particle_index(&spec, p, q, &vec![ONE; n], &[]).unwrap();
            let expect = (2.0 * p * q - p - q) / ((1.0 - p) * (1.0 - q)) * (n * n - 1) as f64;
            assert!((v - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn hand_assembled_one_particle_index() {
        let (p, q) = pq();
        let spec = su2_six(5);
        let mut d = Draw::new(3);
        let y5 = six_y(&mut d);
        let mut y6 = y5.clone();
        y6.push(1.0 / y5.iter().product::<C64>());
        let z = C64::from_polar(1.0, 0.77);
        let v = single_particle_index(&spec, p, q, &[z, 1.0 / z], &y5).unwrap();
        let c = (p * q).powf(1.0 / 6.0);
        let cbar = p * q / c;
        let den = (1.0 - p) * (1.0 - q);
        let chi = z + 1.0 / z;
        let fl: C64 = y6.iter().sum();
        let fbar: C64 = y6.iter().map(|x| 1.0 / x).sum();
        let expect =
            (2.0 * p * q - p - q) / den * (z * z + 1.0 / (z * z) + 1.0) + (c * fl * chi - cbar * fbar * chi) / den;
        assert!((v - expect).norm() < 1e-13, "{v} {expect}");
    }

    #[test]
    fn r_one_self_conjugate_cancels() {
        let (p, q) = pq();
        let spec = TheorySpec {
            name: "adj".into(),
            gauge: GaugeGroup::su(2),
            flavor_rank: 1,
            fields: vec![FieldContent::chiral(Rep::Adjoint, vec![vec![0]], Ratio::from_integer(1))],
            r_minus: None,
        };
        let spec = TheorySpec { fields: [spec.fields, vec![FieldContent::vector(1)]].concat(), ..spec };
        let z = C64::from_polar(1.0, 0.3);
        let with = single_particle_index(&spec, p, q, &[z, 1.0 / z], &[ONE]).unwrap();
        let bare = TheorySpec { fields: vec![FieldContent::vector(1)], ..spec.clone() };
        let without = single_particle_index(&bare, p, q, &[z, 1.0 / z], &[ONE]).unwrap();
        assert!((with - without).norm() < 1e-14);
    }

    #[test]
    fn electric_integrand_is_the_beta_integrand() {
        let (p, q) = pq();
        let base = BaseParams::new(p, q).unwrap();
        let budget = SeriesBudget::default();
        let mut d = Draw::new(5);
        let y5 = six_y(&mut d);
        let mut y6 = y5.clone();
        y6.push(1.0 / y5.iter().product::<C64>());
        let c = r_weight(p * q, Ratio::new(1, 3));
        let t: Vec<C64> = y6.iter().map(|y| c * y).collect();
        let spec = su2_six(5);
        let integrand = build_index_integrand(&spec, p, q, &y5, &budget).unwrap();
        let beta =
            crate::identities::beta_integrand(&[t[0], t[1], t[2], t[3], t[4], t[5]], &base, &VerifyConfig::default())
                .unwrap();
        for x in [0.1, 1.3, 2.9] {
            let z = [C64::from_polar(1.0, x)];
            let a = integrand.eval_at(&z, 0, &base, &budget).unwrap();
            let b = beta.eval_at(&z, 0, &base, &budget).unwrap();
            // the 1/2! Weyl factor lives in the Haar normalization
            assert!((a / (2.0 * b) - 1.0).norm() < 1e-12);
        }
        let (ie, _) = evaluate_index(&spec, p, q, &y5, &VerifyConfig::default()).unwrap();
        let antisym: Vec<Vec<i32>> = super::super::theory::su_weights(Rep::Antisym2, 6).unwrap();
        let magnetic = TheorySpec {
            name: "ta".into(),
            gauge: GaugeGroup::su(1),
            flavor_rank: 5,
            fields: vec![FieldContent::chiral(Rep::Trivial, antisym, Ratio::new(2, 3))],
            r_minus: None,
        };
        let (im, _) = evaluate_index(&magnetic, p, q, &y5, &VerifyConfig::default()).unwrap();
        let mut closed = ONE;
        for i in 0..6 {
            for j in i + 1..6 {
                closed *= elliptic_gamma(t[i] * t[j], &base, &budget).unwrap();
            }
        }
        assert!((im / closed - 1.0).norm() < 1e-12);
        assert!((ie / im - 1.0).norm() < 1e-10);
    }

    #[test]
    fn plethystic_cross_check() {
        let (p, q) = pq();
        let budget = SeriesBudget::default();
        let mut d = Draw::new(8);
        for (nc, nf) in [(2, 3), (2, 4), (3, 4)] {
            for spec in [seiberg_electric(nc, nf).unwrap(), seiberg_magnetic(nc, nf).unwrap()] {
                let y: Vec<C64> =
                    (0..spec.flavor_rank).map(|_| C64::from_polar(d.uniform(0.95, 1.05), d.phase())).collect();
                let n = spec.gauge.n;
                let mut z: Vec<C64> = (0..n - 1).map(|_| C64::from_polar(1.0, d.phase())).collect();
                z.push(1.0 / z.iter().product::<C64>());
                let r = verify_plethystic(&spec, p, q, &z, &y, &budget);
                assert!(r.passed, "{} {nc} {nf}: {:?} {:?}", spec.name, r.rel_residual, r.failure);
            }
        }
    }

    #[test]
    fn audit_names_the_field() {
        let (p, q) = pq();
        let spec = su2_six(5);
        let y = vec![C64::new(30.0, 0.0), ONE, ONE, ONE, ONE];
        match build_index_integrand(&spec, p, q, &y, &SeriesBudget::default()) {
            Err(Error::AuditFailure(m)) => assert!(m.contains("field 0"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    fn seiberg_draw(d: &mut Draw, nc: usize, nf: usize, p: C64, q: C64) -> (Vec<C64>, Vec<C64>) {
        let st = d.balanced(2 * nf, (p * q).powi((nf - nc) as i32), 0.1);
        (st[..nf].to_vec(), st[nf..].to_vec())
    }

    #[test]
    fn seiberg_pairs() {
        let (p, q) = pq();
        let cfg = VerifyConfig::default();
        let mut d = Draw::new(11);
        for nf in [3, 4] {
            let (s, t) = seiberg_draw(&mut d, 2, nf, p, q);
            let r = verify_seiberg(2, nf, &s, &t, p, q, &cfg);
            assert!(r.passed, "Nf = {nf}: {:?} {:?}", r.rel_residual, r.failure);
        }
        let (mut s, mut t) = seiberg_draw(&mut d, 2, 3, p, q);
        s[0] *= 3.0;
        t[0] /= 3.0;
        let r = verify_seiberg(2, 3, &s, &t, p, q, &cfg);
        assert_eq!(r.failure_kind(), Some("WindowViolation"));
    }

    #[test]
    fn seiberg_reduction_and_symmetries() {
        let (p, q) = pq();
        let cfg = VerifyConfig::default();
        let mut d = Draw::new(12);
        let (mut s, mut t) = seiberg_draw(&mut d, 2, 3, p, q);
        let extra = C64::from_polar(0.45, 0.6);
        s.push(extra);
        t.push(p * q / extra);
        let r = verify_seiberg_reduction(2, 4, &s, &t, p, q, &cfg);
        assert!(r.passed, "{:?} {:?}", r.rel_residual, r.failure);

        let (s, t) = seiberg_draw(&mut d, 2, 3, p, q);
        let spec = seiberg_electric(2, 3).unwrap();
        let y = seiberg_fugacities(2, 3, &s, &t, p, q).unwrap();
        let (base_val, _) = evaluate_index(&spec, p, q, &y, &cfg).unwrap();
        let s_perm = vec![s[2], s[0], s[1]];
        let t_perm = vec![t[1], t[2], t[0]];
        let yp = seiberg_fugacities(2, 3, &s_perm, &t_perm, p, q).unwrap();
        let (perm_val, _) = evaluate_index(&spec, p, q, &yp, &cfg).unwrap();
        assert!((perm_val / base_val - 1.0).norm() < 1e-11);
        let (swap_val, _) = evaluate_index(&spec, q, p, &y, &cfg).unwrap();
        assert!((swap_val / base_val - 1.0).norm() < 1e-11);
    }

    #[test]
    fn index_is_real_for_conjugate_fugacities() {
        let (p, q) = (C64::new(0.2, 0.0), C64::new(0.3, 0.0));
        let spec = seiberg_electric(2, 3).unwrap();
        let (a, b) = (C64::from_polar(1.0, 0.7), C64::from_polar(1.0, 1.9));
        let y = vec![a, 1.0 / a, b, 1.0 / b, ONE];
        let (v, _) = evaluate_index(&spec, p, q, &y, &VerifyConfig::default()).unwrap();
        assert!(v.im.abs() <= 1e-10 * v.norm(), "{v}");
    }

    #[test]
    fn p_ellipticity_of_anomaly_free_kernels() {
        let (p, q) = pq();
        let budget = SeriesBudget::default();
        let mut d = Draw::new(13);
        for (nc, nf) in [(2, 3), (2, 4), (3, 4)] {
            let spec = seiberg_electric(nc, nf).unwrap();
            let y: Vec<C64> =
                (0..spec.flavor_rank).map(|_| C64::from_polar(d.uniform(0.95, 1.05), d.phase())).collect();
            let points: Vec<Vec<C64>> = (0..4)
                .map(|_| (0..nc - 1).map(|_| C64::from_polar(d.uniform(0.8, 1.2), d.phase())).collect())
                .collect();
            let r = verify_p_ellipticity(&spec, p, q, &y, &points, &budget);
            assert!(r.passed, "{nc} {nf}: {:?} {:?}", r.rel_residual, r.failure);
        }
    }
}
