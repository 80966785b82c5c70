//! The elliptic Fourier transform `M(t)`, the multiplication operator `D`,
//! Bailey pairs, the star-triangle relation and its Coxeter form.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::base::{BaseParams, SeriesBudget, C64, ONE};
use crate::config::VerifyConfig;
use crate::error::{Error, Result};
use crate::identities::run_check;
use crate::quadrature::{integrate_torus, IntegrandSpec};
use crate::report::VerificationReport;
use crate::special::{elliptic_gamma, elliptic_gamma2, gamma_reciprocal_pair};

fn root(j: i64, n: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * j.rem_euclid(n as i64) as f64 / n as f64)
}

fn check_nodes(n: usize) -> Result<()> {
    if n < 16 || !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("node count {n} must be a power of two >= 16")));
    }
    Ok(())
}

/// A function with `f(z) = f(1/z)` sampled at `z_k = e^{2 pi i k/N}`, stored for `k = 0..=N/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledSymmetricFunction {
    n: usize,
    #[serde(with = "crate::cser::vec")]
    half: Vec<C64>,
}

impl SampledSymmetricFunction {
    pub fn from_fn(n: usize, f: impl Fn(C64) -> Result<C64>) -> Result<Self> {
        check_nodes(n)?;
        let half = (0..=n / 2).map(|k| f(root(k as i64, n))).collect::<Result<Vec<_>>>()?;
        Ok(SampledSymmetricFunction { n, half })
    }

    pub fn from_half(n: usize, half: Vec<C64>) -> Result<Self> {
        check_nodes(n)?;
        if half.len() != n / 2 + 1 {
            return Err(Error::InvalidArgument(format!("expected {} samples", n / 2 + 1)));
        }
        Ok(SampledSymmetricFunction { n, half })
    }

    /// `c_0 + sum_{k>=1} c_k (z^k + z^{-k})`.
    pub fn laurent(n: usize, coeffs: &[C64]) -> Result<Self> {
        Self::from_fn(n, |z| {
            let mut v = coeffs.first().copied().unwrap_or_default();
            for (k, c) in coeffs.iter().enumerate().skip(1) {
                v += c * (z.powi(k as i32) + z.powi(-(k as i32)));
            }
            Ok(v)
        })
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn half(&self) -> &[C64] {
        &self.half
    }

    /// Value at the full-circle index `k`.
    pub fn value(&self, k: usize) -> C64 {
        let k = k % self.n;
        self.half[k.min(self.n - k)]
    }

    pub fn node(&self, k: usize) -> C64 {
        root(k as i64, self.n)
    }

    pub fn linear(a: C64, f: &Self, b: C64, g: &Self) -> Result<Self> {
        if f.n != g.n {
            return Err(Error::InvalidArgument("resolution mismatch".into()));
        }
        let half = f.half.iter().zip(&g.half).map(|(x, y)| a * x + b * y).collect();
        Ok(SampledSymmetricFunction { n: f.n, half })
    }

    pub fn pointwise(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidArgument("resolution mismatch".into()));
        }
        let half = self.half.iter().zip(&other.half).map(|(x, y)| x * y).collect();
        Ok(SampledSymmetricFunction { n: self.n, half })
    }
}

/// A linear map between sampled symmetric functions, as a dense matrix over the half nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    n: usize,
    h: usize,
    mat: Vec<C64>,
}

impl Operator {
    pub fn diagonal(d: &SampledSymmetricFunction) -> Self {
        let h = d.half.len();
        let mut mat = vec![C64::new(0.0, 0.0); h * h];
        for i in 0..h {
            mat[i * h + i] = d.half[i];
        }
        Operator { n: d.n, h, mat }
    }

    pub fn entry(&self, i: usize, k: usize) -> C64 {
        self.mat[i * self.h + k]
    }

    pub fn apply(&self, f: &SampledSymmetricFunction) -> Result<SampledSymmetricFunction> {
        if f.n != self.n {
            return Err(Error::InvalidArgument("resolution mismatch".into()));
        }
        let h = self.h;
        let half = (0..h)
            .into_par_iter()
            .map(|i| {
                let row = &self.mat[i * h..(i + 1) * h];
                row.iter().zip(&f.half).map(|(a, b)| a * b).sum()
            })
            .collect();
        Ok(SampledSymmetricFunction { n: self.n, half })
    }

    /// `self * other`, i.e. `other` acts first.
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        if self.n != other.n {
            return Err(Error::InvalidArgument("resolution mismatch".into()));
        }
        let h = self.h;
        let rows: Vec<Vec<C64>> = (0..h)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![C64::new(0.0, 0.0); h];
                for k in 0..h {
                    let a = self.mat[i * h + k];
                    for j in 0..h {
                        row[j] += a * other.mat[k * h + j];
                    }
                }
                row
            })
            .collect();
        Ok(Operator { n: self.n, h, mat: rows.concat() })
    }
}

/// Trapezoid weights after folding `z_k` and `z_{N-k}`.
fn folded_weights(n: usize) -> Vec<f64> {
    (0..=n / 2).map(|k| if k == 0 || k == n / 2 { 1.0 / n as f64 } else { 2.0 / n as f64 }).collect()
}

/// `M(t)`: `beta(w) = kappa/2 * mean_z Gamma(t w^{+-1} z^{+-1}) / (Gamma(t^2) Gamma(z^{+-2})) alpha(z)`.
pub fn m_operator(t: C64, n: usize, base: &BaseParams, budget: &SeriesBudget) -> Result<Operator> {
    check_nodes(n)?;
    if t.norm() >= 1.0 {
        return Err(Error::WindowViolation(format!("|t| = {:.6} >= 1 in M(t)", t.norm())));
    }
    let pre = base.kappa(budget)? / (2.0 * elliptic_gamma(t * t, base, budget)?);
    let gt = (0..n)
        .into_par_iter()
        .map(|j| elliptic_gamma(t * root(j as i64, n), base, budget))
        .collect::<Result<Vec<_>>>()?;
    let h = n / 2 + 1;
    let weyl =
        (0..h).map(|k| gamma_reciprocal_pair(root(2 * k as i64, n), base, budget)).collect::<Result<Vec<_>>>()?;
    let w = folded_weights(n);
    let idx = |j: i64| j.rem_euclid(n as i64) as usize;
    let mat: Vec<C64> = (0..h * h)
        .into_par_iter()
        .map(|e| {
            let (i, k) = ((e / h) as i64, (e % h) as i64);
            let g = gt[idx(i + k)] * gt[idx(i - k)] * gt[idx(k - i)] * gt[idx(-i - k)];
            pre * g * weyl[k as usize] * w[k as usize]
        })
        .collect();
    Ok(Operator { n, h, mat })
}

pub fn apply_m(
    t: C64,
    f: &SampledSymmetricFunction,
    base: &BaseParams,
    budget: &SeriesBudget,
) -> Result<SampledSymmetricFunction> {
    m_operator(t, f.n, base, budget)?.apply(f)
}

/// `M(t) f` at arbitrary output points, from samples of `f`.
pub fn apply_m_at(
    t: C64,
    f: &SampledSymmetricFunction,
    outputs: &[C64],
    base: &BaseParams,
    budget: &SeriesBudget,
) -> Result<Vec<C64>> {
    let n = f.n;
    let pre = base.kappa(budget)? / (2.0 * elliptic_gamma(t * t, base, budget)?);
    let w = folded_weights(n);
    outputs
        .iter()
        .map(|&out| {
            let terms = (0..=n / 2)
                .into_par_iter()
                .map(|k| {
                    let z = root(k as i64, n);
                    let mut g = gamma_reciprocal_pair(z * z, base, budget)?;
                    for x in [t * out * z, t * out / z, t * z / out, t / (out * z)] {
                        g *= elliptic_gamma(x, base, budget)?;
                    }
                    Ok(g * f.half[k] * w[k])
                })
                .collect::<Result<Vec<C64>>>()?;
            Ok(pre * crate::special::pairwise_sum(&terms))
        })
        .collect()
}

/// `D(s; y, w) = Gamma(sqrt(pq)/s * y^{+-1} w^{+-1})`.
pub fn d_value(s: C64, y: C64, w: C64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    let c = base.sqrt_pq() / s;
    let mut v = ONE;
    for x in [c * y * w, c * y / w, c * w / y, c / (y * w)] {
        v *= elliptic_gamma(x, base, budget)?;
    }
    Ok(v)
}

pub fn d_kernel(
    s: C64,
    y: C64,
    n: usize,
    base: &BaseParams,
    budget: &SeriesBudget,
) -> Result<SampledSymmetricFunction> {
    SampledSymmetricFunction::from_fn(n, |w| d_value(s, y, w, base, budget))
}

pub fn apply_d(
    s: C64,
    y: C64,
    f: &SampledSymmetricFunction,
    base: &BaseParams,
    budget: &SeriesBudget,
) -> Result<SampledSymmetricFunction> {
    d_kernel(s, y, f.n, base, budget)?.pointwise(f)
}

fn str_window(s: C64, t: C64, y: C64, base: &BaseParams) -> Result<()> {
    let st = (s * t).norm();
    let r = base.sqrt_pq().norm();
    if s.norm() >= 1.0 || t.norm() >= 1.0 {
        return Err(Error::WindowViolation(format!("|s| = {:.6}, |t| = {:.6} must be < 1", s.norm(), t.norm())));
    }
    if r * y.norm().max(1.0 / y.norm()) >= st {
        return Err(Error::WindowViolation(format!(
            "|sqrt(pq) y^(+-1)| = {:.6} not below |st| = {st:.6}",
            r * y.norm().max(1.0 / y.norm())
        )));
    }
    Ok(())
}

/// Both sides of `M(s) D(st; y) M(t) = D(t; y) M(st) D(s; y)` as matrices.
pub fn star_triangle_sides(
    s: C64,
    t: C64,
    y: C64,
    n: usize,
    base: &BaseParams,
    budget: &SeriesBudget,
) -> Result<(Operator, Operator)> {
    str_window(s, t, y, base)?;
    let lhs = m_operator(s, n, base, budget)?
        .compose(&Operator::diagonal(&d_kernel(s * t, y, n, base, budget)?))?
        .compose(&m_operator(t, n, base, budget)?)?;
    let rhs = Operator::diagonal(&d_kernel(t, y, n, base, budget)?)
        .compose(&m_operator(s * t, n, base, budget)?)?
        .compose(&Operator::diagonal(&d_kernel(s, y, n, base, budget)?))?;
    Ok((lhs, rhs))
}

pub fn verify_star_triangle_operator(
    s: C64,
    t: C64,
    y: C64,
    base: &BaseParams,
    probe: &SampledSymmetricFunction,
    budget: &SeriesBudget,
) -> VerificationReport {
    let id = "str";
    let tol = 1e-8;
    run_check(id, tol, |_| {
        let (l, r) = star_triangle_sides(s, t, y, probe.n, base, budget)?;
        let (fl, fr) = (l.apply(probe)?, r.apply(probe)?);
        Ok(VerificationReport::sampled(id, &fl.half, &fr.half, tol))
    })
    .input("s", &[s])
    .input("t", &[t])
    .input("y", &[y])
}

/// `alpha(z) = prod Gamma(a_k z^{+-1})`, `beta(w) = prod Gamma(t a_k w^{+-1}) prod_{i<j} Gamma(a_i a_j)`
/// with `prod a_k = pq/t^2`.
pub fn bailey_seed_pair(
    a: [C64; 4],
    t: C64,
    n: usize,
    base: &BaseParams,
    budget: &SeriesBudget,
) -> Result<(SampledSymmetricFunction, SampledSymmetricFunction)> {
    let prod: C64 = a.iter().product();
    let target = base.pq() / (t * t);
    if !((prod / target - 1.0).norm() <= 1e-12) {
        return Err(Error::InvalidArgument("Bailey seed needs prod a_k = pq/t^2".into()));
    }
    let g = |x: C64| elliptic_gamma(x, base, budget);
    let alpha = SampledSymmetricFunction::from_fn(n, |z| {
        let mut v = ONE;
        for &ak in &a {
            v *= g(ak * z)? * g(ak / z)?;
        }
        Ok(v)
    })?;
    let mut pairs = ONE;
    for i in 0..4 {
        for j in i + 1..4 {
            pairs *= g(a[i] * a[j])?;
        }
    }
    let beta = SampledSymmetricFunction::from_fn(n, |w| {
        let mut v = pairs;
        for &ak in &a {
            v *= g(t * ak * w)? * g(t * ak / w)?;
        }
        Ok(v)
    })?;
    Ok((alpha, beta))
}

pub fn verify_bailey_pair(
    a: [C64; 4],
    t: C64,
    n: usize,
    base: &BaseParams,
    budget: &SeriesBudget,
) -> VerificationReport {
    let id = "bailey_pair";
    let tol = 1e-9;
    run_check(id, tol, |_| {
        let (alpha, beta) = bailey_seed_pair(a, t, n, base, budget)?;
        let image = apply_m(t, &alpha, base, budget)?;
        Ok(VerificationReport::sampled(id, &image.half, &beta.half, tol))
    })
    .input("a", &a)
    .input("t", &[t])
}

/// One step of the Bailey lemma from the seed pair: checks `beta' = M(st) alpha'`.
pub fn verify_bailey_lemma(
    a: [C64; 4],
    t: C64,
    s: C64,
    y: C64,
    n: usize,
    base: &BaseParams,
    budget: &SeriesBudget,
) -> VerificationReport {
    let id = "bailey_lemma";
    let tol = 1e-8;
    run_check(id, tol, |_| {
        str_window(s, t, y, base)?;
        let (alpha, beta) = bailey_seed_pair(a, t, n, base, budget)?;
        let alpha2 = apply_d(s, y, &alpha, base, budget)?;
        let inner = apply_d(s * t, y, &beta, base, budget)?;
        let beta2 = apply_d(1.0 / t, y, &apply_m(s, &inner, base, budget)?, base, budget)?;
        let image = apply_m(s * t, &alpha2, base, budget)?;
        Ok(VerificationReport::sampled(id, &beta2.half, &image.half, tol))
    })
    .input("a", &a)
    .input("t", &[t])
    .input("s", &[s])
    .input("y", &[y])
}

/// Errors `max |M(t) f (w) - f(w)|` over `outputs` for `t = 1 - 10^{-k}`, paired with
/// the node count used. The kernel concentrates on a width `~ 1 - t`, so the grid is
/// refined to `N >= 40/(1 - t)`.
pub fn m_identity_limit(
    probe: impl Fn(C64) -> C64 + Sync,
    ks: &[i32],
    outputs: &[C64],
    base: &BaseParams,
    budget: &SeriesBudget,
) -> Result<Vec<(usize, f64)>> {
    ks.iter()
        .map(|&k| {
            let eps = 10f64.powi(-k);
            let n = ((40.0 / eps).ceil() as usize).next_power_of_two().max(64);
            let f = SampledSymmetricFunction::from_fn(n, |z| Ok(probe(z)))?;
            let vals = apply_m_at(C64::new(1.0 - eps, 0.0), &f, outputs, base, budget)?;
            let err = vals.iter().zip(outputs).map(|(v, &w)| (v - probe(w)).norm()).fold(0.0, f64::max);
            Ok((n, err))
        })
        .collect()
}

/// Coxeter relations for `S_1 = M(t1/t2)` on `z1`, `S_2 = D(t2/t3; z1, z2)`,
/// `S_3 = M(t3/t4)` on `z2`, with products defined through the cocycle rule.
/// `S_1^2` and `S_3^2` need `|t_{j+1}/t_j| < 1` and `|t_j/t_{j+1}| < 1` at once,
/// so they are outside the unit-circle window and not checked.
pub fn verify_coxeter(t: [C64; 4], n: usize, base: &BaseParams, budget: &SeriesBudget) -> VerificationReport {
    let id = "coxeter";
    let tol = 1e-9;
    run_check(id, tol, |_| {
        check_nodes(n)?;
        let [t1, t2, t3, t4] = t;
        let h = n / 2 + 1;
        // S2^2 = D(t3/t2) D(t2/t3)
        let mut quad_dev: f64 = 0.0;
        for i in 0..h {
            let z1 = root(i as i64, n);
            for j in 0..h {
                let z2 = root(j as i64, n);
                let v = d_value(t3 / t2, z1, z2, base, budget)? * d_value(t2 / t3, z1, z2, base, budget)?;
                quad_dev = quad_dev.max((v - 1.0).norm());
            }
        }
        // S1 S3 = S3 S1 on a two-variable probe, columns indexed by z2
        let m1 = m_operator(t1 / t2, n, base, budget)?;
        let m3 = m_operator(t3 / t4, n, base, budget)?;
        let probe =
            |z1: C64, z2: C64| (z1 + 1.0 / z1) * (z2 + 1.0 / z2) + (z1 * z1 + 1.0 / (z1 * z1)) * (z2 + 1.0 / z2) + 0.5;
        let grid: Vec<Vec<C64>> =
            (0..h).map(|i| (0..h).map(|j| probe(root(i as i64, n), root(j as i64, n))).collect()).collect();
        let act_rows = |op: &Operator, g: &Vec<Vec<C64>>| -> Vec<Vec<C64>> {
            (0..h).map(|i| (0..h).map(|j| (0..h).map(|k| op.entry(i, k) * g[k][j]).sum()).collect()).collect()
        };
        let act_cols = |op: &Operator, g: &Vec<Vec<C64>>| -> Vec<Vec<C64>> {
            (0..h).map(|i| (0..h).map(|j| (0..h).map(|k| op.entry(j, k) * g[i][k]).sum()).collect()).collect()
        };
        let a = act_rows(&m1, &act_cols(&m3, &grid));
        let b = act_cols(&m3, &act_rows(&m1, &grid));
        let flat = |g: Vec<Vec<C64>>| g.concat();
        let comm = VerificationReport::sampled("s1s3", &flat(a), &flat(b), tol);
        // cubic: M(t2/t3) D(t1/t3; z1, z2) M(t1/t2) = D(t1/t2) M(t1/t3) D(t2/t3) for every z2
        let mut lhs_all = Vec::new();
        let mut rhs_all = Vec::new();
        for j in 0..h {
            let y = root(j as i64, n);
            let column: Vec<C64> = (0..h).map(|i| grid[i][j]).collect();
            let f = SampledSymmetricFunction::from_half(n, column)?;
            let (l, r) = star_triangle_sides(t2 / t3, t1 / t2, y, n, base, budget)?;
            lhs_all.extend(l.apply(&f)?.half);
            rhs_all.extend(r.apply(&f)?.half);
        }
        let cubic = VerificationReport::sampled("cubic", &lhs_all, &rhs_all, tol);
        let worst = quad_dev.max(comm.rel_residual).max(cubic.rel_residual);
        let mut rep = if cubic.rel_residual >= comm.rel_residual { cubic.clone() } else { comm.clone() };
        rep.identity_id = id.to_string();
        rep.rel_residual = worst;
        rep.passed = worst <= tol;
        Ok(rep
            .note(format!("S2^2 max deviation {quad_dev:.3e}"))
            .note(format!("S1S3 commutation {:.3e}", comm.rel_residual))
            .note(format!("cubic relation {:.3e}", cubic.rel_residual))
            .note("S1^2 and S3^2 skipped: M(t) M(1/t) has no unit-circle window"))
    })
    .input("t", &t)
}

/// `m(alpha) = Gamma(e^{2 alpha}(pq)^2; p, q, (pq)^2) / Gamma(e^{-2 alpha}(pq)^2; p, q, (pq)^2)`.
pub fn m_normalization(alpha: C64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    let pq2 = base.pq() * base.pq();
    let x = (2.0 * alpha).exp();
    Ok(elliptic_gamma2(x * pq2, base.p(), base.q(), pq2, budget)?
        / elliptic_gamma2(pq2 / x, base.p(), base.q(), pq2, budget)?)
}

/// `mu(x; p, q, t) = Gamma(x t sqrt(pqt); p, q, t^2) / Gamma(t sqrt(pqt)/x; p, q, t^2)`.
pub fn mu_function(x: C64, t: C64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
    let c = t * (base.pq() * t).sqrt();
    let (p, q) = (base.p(), base.q());
    Ok(elliptic_gamma2(x * c, p, q, t * t, budget)? / elliptic_gamma2(c / x, p, q, t * t, budget)?)
}

/// `exp(sum_{n != 0} (sqrt(pqt) x)^n / (n (1-p^n)(1-q^n)(1+t^n)))`, truncated at `|n| < terms`.
pub fn mu_series(x: C64, t: C64, base: &BaseParams, terms: i32) -> Result<C64> {
    let c = (base.pq() * t).sqrt() * x;
    let (p, q) = (base.p(), base.q());
    if c.norm() >= 1.0 || (base.pq() * t).sqrt().norm() / x.norm() >= 1.0 {
        return Err(Error::DomainError("mu series needs |sqrt(pqt) x^(+-1)| < 1".into()));
    }
    let mut s = C64::new(0.0, 0.0);
    for n in 1..terms {
        for m in [n, -n] {
            s += c.powi(m) / (m as f64 * (1.0 - p.powi(m)) * (1.0 - q.powi(m)) * (1.0 + t.powi(m)));
        }
    }
    Ok(s.exp())
}

/// Additive spectral parameters with `pq = e^{-2 eta}` (principal logarithm).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarTriangleWeights {
    #[serde(with = "crate::cser")]
    pub alpha: C64,
    #[serde(with = "crate::cser")]
    pub beta: C64,
    #[serde(with = "crate::cser")]
    pub eta: C64,
}

impl StarTriangleWeights {
    pub fn new(alpha: C64, beta: C64, base: &BaseParams) -> Self {
        StarTriangleWeights { alpha, beta, eta: -0.5 * base.pq().ln() }
    }

    /// `D_a(y, u) = Gamma(e^{a - eta +- iy +- iu})`.
    pub fn weight(&self, a: C64, y: f64, u: f64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
        let c = (a - self.eta).exp();
        d_value(base.sqrt_pq() / c, C64::from_polar(1.0, y), C64::from_polar(1.0, u), base, budget)
    }

    pub fn chi(&self, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
        let g = |x: C64| elliptic_gamma(x.exp(), base, budget);
        let (a, b, e) = (self.alpha, self.beta, self.eta);
        Ok(g(-2.0 * a)? * g(-2.0 * b)? * g(2.0 * a + 2.0 * b - 2.0 * e)?)
    }

    /// The integrand `rho(x) D_{eta-alpha}(w,x) D_{alpha+beta}(y,x) D_{eta-beta}(u,x)` with
    /// the `dx/(2 pi)` measure, as a unit-circle integrand in `z = e^{ix}`.
    pub fn integrand(&self, w: f64, y: f64, u: f64, base: &BaseParams, budget: &SeriesBudget) -> Result<IntegrandSpec> {
        let mut spec = IntegrandSpec::new(1).den_root(&[2]).times(base.kappa(budget)? / 2.0);
        for (a, v) in [(self.eta - self.alpha, w), (self.alpha + self.beta, y), (self.eta - self.beta, u)] {
            let c = (a - self.eta).exp();
            for sgn in [1.0, -1.0] {
                spec = spec.num_pm(c * C64::from_polar(1.0, sgn * v), &[1]);
            }
        }
        Ok(spec)
    }
}

/// Star-triangle relation in weight form at each `(w, y, u)`, its `W`-normalized
/// version, `m(alpha) m(-alpha) = 1`, and the `mu`-function equations at `t = pq`.
pub fn startriangle_weights_check(
    weights: &StarTriangleWeights,
    points: &[(f64, f64, f64)],
    base: &BaseParams,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let id = "astr";
    let tol = cfg.tol_or(1e-8);
    let budget = &cfg.budget;
    run_check(id, tol, |diags| {
        let StarTriangleWeights { alpha: a, beta: b, eta: e } = *weights;
        let m = |x: C64| m_normalization(x, base, budget);
        let chi = weights.chi(base, budget)?;
        let mut lhs_all = Vec::new();
        let mut rhs_all = Vec::new();
        let mut w_dev: f64 = 0.0;
        for &(w, y, u) in points {
            let spec = weights.integrand(w, y, u, base, budget)?;
            let (lhs, d) = integrate_torus(&spec, &cfg.quad(1), base, budget)?;
            diags.push(d);
            let rhs = chi
                * weights.weight(b, y, w, base, budget)?
                * weights.weight(e - a - b, w, u, base, budget)?
                * weights.weight(a, y, u, base, budget)?;
            let lhs_w = lhs / (m(e - a)? * m(a + b)? * m(e - b)?);
            let rhs_w = rhs / (chi * m(b)? * m(e - a - b)? * m(a)?);
            w_dev = w_dev.max((lhs_w - rhs_w).norm() / lhs_w.norm().max(rhs_w.norm()));
            lhs_all.push(lhs);
            rhs_all.push(rhs);
        }
        let mut rep = VerificationReport::sampled(id, &lhs_all, &rhs_all, tol);
        let refl = (m(a)? * m(-a)? - 1.0).norm();
        let x = (2.0 * a).exp();
        let t = base.pq();
        let mu_refl = (mu_function(x, t, base, budget)? * mu_function(1.0 / x, t, base, budget)? - 1.0).norm();
        let rhs_fe = elliptic_gamma(x * (base.pq() * t).sqrt() / t, base, budget)?;
        let mu_fe = (mu_function(x, t, base, budget)? * mu_function(x / t, t, base, budget)? / rhs_fe - 1.0).norm();
        // principal sqrt(pq t) at t = pq is -pq when |arg pq| > pi/2, which shifts alpha by i pi/2
        let flip = if ((base.pq() * t).sqrt() / base.pq()).re < 0.0 {
            C64::new(0.0, std::f64::consts::FRAC_PI_2)
        } else {
            C64::new(0.0, 0.0)
        };
        let mu_m = (mu_function(x, t, base, budget)? / m(a + flip)? - 1.0).norm();
        let worst = rep.rel_residual.max(w_dev).max(refl).max(mu_refl).max(mu_fe).max(mu_m);
        rep.rel_residual = worst;
        rep.passed = worst <= tol;
        Ok(rep
            .note(format!("W-normalized form {w_dev:.3e}"))
            .note(format!("m(a) m(-a) = 1: {refl:.3e}"))
            .note(format!("mu reflection {mu_refl:.3e}, mu shift {mu_fe:.3e}, mu vs m {mu_m:.3e}")))
    })
    .input("alpha", &[weights.alpha])
    .input("beta", &[weights.beta])
}
