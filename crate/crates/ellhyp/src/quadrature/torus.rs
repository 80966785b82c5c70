use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::base::{BaseParams, SeriesBudget, C64, ONE};
use crate::error::{Error, Result};
use crate::special::pairwise_sum;

use super::audit::audit_poles;
use super::compile::{normalize, Normalized};
use super::spec::{IntegrandSpec, Measure};

/// Node schedule and convergence target for tensor trapezoid rules.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusQuadrature {
    pub dim: usize,
    pub nodes_per_dim: usize,
    pub max_nodes_per_dim: usize,
    pub rel_tol: f64,
    /// Minimum distance between any pole and the unit circle.
    pub audit_guard: f64,
}

const MAX_TOTAL_NODES: f64 = (1u64 << 24) as f64;

impl TorusQuadrature {
    pub fn new(dim: usize) -> Self {
        let max = match dim {
            0 | 1 => 1 << 14,
            2 => 1 << 11,
            _ => 1 << 8,
        };
        TorusQuadrature { dim, nodes_per_dim: 32, max_nodes_per_dim: max, rel_tol: 1e-13, audit_guard: 1e-3 }
    }

    pub fn with_nodes(mut self, n: usize) -> Self {
        self.nodes_per_dim = n;
        self
    }

    pub fn with_max_nodes(mut self, n: usize) -> Self {
        self.max_nodes_per_dim = n;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self
    }

    /// The node cap after applying `ELLHYP_MAX_NODES`.
    pub fn effective_max(&self) -> usize {
        let env = std::env::var("ELLHYP_MAX_NODES").ok().and_then(|s| s.trim().parse::<usize>().ok());
        match env {
            Some(cap) if cap >= 16 => {
                let pow2 = 1usize << (usize::BITS - 1 - cap.leading_zeros());
                self.max_nodes_per_dim.min(pow2)
            }
            _ => self.max_nodes_per_dim,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim > 3 {
            return Err(Error::InvalidArgument(format!("dimension {} exceeds 3", self.dim)));
        }
        let n = self.nodes_per_dim;
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("nodes_per_dim = {n} must be a power of two >= 16")));
        }
        let max = self.max_nodes_per_dim;
        if !max.is_power_of_two() || max < n {
            return Err(Error::InvalidArgument(format!("max_nodes_per_dim = {max} must be a power of two >= {n}")));
        }
        if (max as f64).powi(self.dim as i32) > MAX_TOTAL_NODES {
            return Err(Error::InvalidArgument(format!("{max}^{} nodes exceed 2^24", self.dim)));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument("rel_tol must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeEstimate {
    pub nodes: usize,
    #[serde(with = "crate::cser")]
    pub value: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadDiagnostics {
    pub nodes_per_dim: usize,
    pub estimates: Vec<NodeEstimate>,
    /// `|I_{2N} - I_N|` for the last doubling.
    pub delta: f64,
    /// `max(|I|, mean |f|)`, the reference for `rel_tol`.
    pub scale: f64,
    pub audit_min_distance: f64,
}

/// Per-factor values on the `N` roots of unity; a monomial `prod z_i^{e_i}` at
/// grid point `k` is the root with index `sum e_i k_i mod N`.
struct Tables {
    n: usize,
    factors: Vec<(Vec<i32>, Vec<C64>)>,
    constant: C64,
    laurent: Option<Vec<(C64, Vec<i32>)>>,
}

fn root(j: usize, n: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)
}

fn build_tables(
    prog: &[Normalized],
    spec: &IntegrandSpec,
    n: usize,
    m2: i64,
    base: &BaseParams,
    budget: &SeriesBudget,
    prev: Option<&Tables>,
) -> Result<Tables> {
    let mut constant = spec.constant;
    let mut factors = Vec::new();
    for (idx, f) in prog.iter().enumerate() {
        if f.exponents.iter().all(|&e| e == 0) {
            constant *= f.eval(f.param, m2, base, budget)?;
            continue;
        }
        let old = prev.map(|t| &t.factors[factors.len()].1);
        let table: Result<Vec<C64>> = (0..n)
            .into_par_iter()
            .map(|j| match old {
                Some(o) if j % 2 == 0 => Ok(o[j / 2]),
                _ => f.eval(f.param * root(j, n), m2, base, budget),
            })
            .collect();
        let _ = idx;
        factors.push((f.exponents.clone(), table?));
    }
    let laurent = spec.multiplier.as_ref().map(|m| m.iter().map(|t| (t.coeff, t.exponents.clone())).collect());
    Ok(Tables { n, factors, constant, laurent })
}

fn index(e: &[i32], k: &[usize], n: usize) -> usize {
    let s: i64 = e.iter().zip(k).map(|(&ei, &ki)| ei as i64 * ki as i64).sum();
    s.rem_euclid(n as i64) as usize
}

fn point_value(t: &Tables, k: &[usize]) -> C64 {
    let mut v = ONE;
    for (e, tab) in &t.factors {
        v *= tab[index(e, k, t.n)];
    }
    if let Some(l) = &t.laurent {
        v *= l.iter().map(|(c, e)| c * root(index(e, k, t.n), t.n)).sum::<C64>();
    }
    v
}

/// Mean of the integrand over the grid together with the mean modulus.
fn grid_mean(t: &Tables, dim: usize) -> (C64, f64) {
    let n = t.n;
    if dim == 0 {
        let v = point_value(t, &[]) * t.constant;
        return (v, v.norm());
    }
    let inner = n.pow(dim as u32 - 1);
    let rows: Vec<(C64, f64)> = (0..n)
        .into_par_iter()
        .map(|k1| {
            let mut k = vec![0usize; dim];
            k[0] = k1;
            let vals: Vec<C64> = (0..inner)
                .map(|flat| {
                    let mut rest = flat;
                    for d in (1..dim).rev() {
                        k[d] = rest % n;
                        rest /= n;
                    }
                    point_value(t, &k)
                })
                .collect();
            let abs: f64 = vals.iter().map(|v| v.norm()).sum();
            (pairwise_sum(&vals), abs)
        })
        .collect();
    let sums: Vec<C64> = rows.iter().map(|r| r.0).collect();
    let abs: f64 = rows.iter().map(|r| r.1).sum();
    let total = (n as f64).powi(dim as i32);
    (pairwise_sum(&sums) / total * t.constant, abs / total * t.constant.norm())
}

fn measure_factor(spec: &IntegrandSpec) -> f64 {
    match spec.measure {
        Measure::Torus => 1.0,
        Measure::HaarSU(n) => 1.0 / (1..=n).map(|k| k as f64).product::<f64>(),
    }
}

fn doubling(
    prog: &[Normalized],
    spec: &IntegrandSpec,
    quad: &TorusQuadrature,
    base: &BaseParams,
    budget: &SeriesBudget,
    m2: i64,
    audit_dist: f64,
) -> Result<(C64, QuadDiagnostics)> {
    let w = measure_factor(spec);
    let mut n = quad.nodes_per_dim;
    let max = quad.effective_max().max(n);
    let mut tables = build_tables(prog, spec, n, m2, base, budget, None)?;
    let (mut prev, _) = grid_mean(&tables, spec.dim);
    prev *= w;
    let mut estimates = vec![NodeEstimate { nodes: n, value: prev }];
    if spec.dim == 0 {
        let diag = QuadDiagnostics {
            nodes_per_dim: 1,
            estimates,
            delta: 0.0,
            scale: prev.norm(),
            audit_min_distance: audit_dist,
        };
        return Ok((prev, diag));
    }
    let mut delta = f64::INFINITY;
    while n < max {
        n *= 2;
        tables = build_tables(prog, spec, n, m2, base, budget, Some(&tables))?;
        let (cur, mean_abs) = grid_mean(&tables, spec.dim);
        let cur = cur * w;
        estimates.push(NodeEstimate { nodes: n, value: cur });
        delta = (cur - prev).norm();
        let scale = cur.norm().max(mean_abs * w);
        if delta <= quad.rel_tol * scale {
            let diag = QuadDiagnostics { nodes_per_dim: n, estimates, delta, scale, audit_min_distance: audit_dist };
            return Ok((cur, diag));
        }
        prev = cur;
    }
    Err(Error::NoConvergence { nodes: n, delta })
}

fn prepare(spec: &IntegrandSpec, quad: &TorusQuadrature, base: &BaseParams) -> Result<(Vec<Normalized>, f64)> {
    spec.validate()?;
    let mut q = *quad;
    q.dim = spec.dim;
    q.validate()?;
    let audit = audit_poles(spec, base, quad.audit_guard)?;
    if !audit.passed {
        return Err(Error::PoleOnContour(format!(
            "min distance {:.3e} below guard {:.1e}: {}",
            audit.min_distance_to_contour,
            audit.guard,
            audit.offending.unwrap_or_default()
        )));
    }
    Ok((normalize(spec, base)?, audit.min_distance_to_contour))
}

/// `prod (1/(2 pi i)) oint dz_i/z_i` of the integrand, doubling the nodes until
/// two successive estimates agree to `rel_tol` relative to `max(|I|, mean |f|)`.
pub fn integrate_torus(
    spec: &IntegrandSpec,
    quad: &TorusQuadrature,
    base: &BaseParams,
    budget: &SeriesBudget,
) -> Result<(C64, QuadDiagnostics)> {
    if spec.has_charges() {
        return Err(Error::InvalidArgument("charged factors need integrate_rarefied".into()));
    }
    let (prog, dist) = prepare(spec, quad, base)?;
    doubling(&prog, spec, quad, base, budget, 0, dist)
}

/// Trapezoid estimates at the listed node counts with no convergence test.
pub fn convergence_profile(
    spec: &IntegrandSpec,
    base: &BaseParams,
    budget: &SeriesBudget,
    nodes: &[usize],
) -> Result<Vec<NodeEstimate>> {
    spec.validate()?;
    let prog = normalize(spec, base)?;
    let w = measure_factor(spec);
    nodes
        .iter()
        .map(|&n| {
            let t = build_tables(&prog, spec, n, 0, base, budget, None)?;
            Ok(NodeEstimate { nodes: n, value: grid_mean(&t, spec.dim).0 * w })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RarefiedResult {
    #[serde(with = "crate::cser")]
    pub value: C64,
    /// `(2m, c_m)` for every sector actually integrated.
    pub sectors: Vec<(i64, [f64; 2])>,
    pub diagnostics: Vec<QuadDiagnostics>,
}

/// `sum_{m in Z_r + nu} oint` of a charged integrand, `m = m2/2` running over
/// `nu, nu+1, ..., nu+r-1`. With `fold`, sectors `m` and `r - m` are integrated once.
pub fn integrate_rarefied(
    spec: &IntegrandSpec,
    quad: &TorusQuadrature,
    base: &BaseParams,
    budget: &SeriesBudget,
    nu2: i64,
    fold: bool,
) -> Result<RarefiedResult> {
    let r = base.require_r()? as i64;
    if nu2 != 0 && nu2 != 1 {
        return Err(Error::InvalidArgument(format!("nu must be 0 or 1/2, got {}/2", nu2)));
    }
    let (prog, dist) = prepare(spec, quad, base)?;
    let mut value = C64::new(0.0, 0.0);
    let mut sectors = Vec::new();
    let mut diagnostics = Vec::new();
    for k in 0..r {
        let m2 = nu2 + 2 * k;
        let partner = (2 * r - m2).rem_euclid(2 * r);
        let weight = if !fold || partner == m2 {
            1.0
        } else if m2 < partner {
            2.0
        } else {
            continue;
        };
        let (c, d) = doubling(&prog, spec, quad, base, budget, m2, dist)?;
        value += c * weight;
        sectors.push((m2, [c.re, c.im]));
        diagnostics.push(d);
    }
    Ok(RarefiedResult { value, sectors, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{Charge, LaurentTerm};
    use crate::special::{elliptic_gamma, q_pochhammer_inf};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn constant_and_laurent_integrands() {
        let base = BaseParams::new(c(0.3, 0.0), c(0.2, 0.0)).unwrap();
        let b = SeriesBudget::default();
        let q = TorusQuadrature::new(1).with_nodes(16);
        let one = IntegrandSpec::new(1);
        let (v, _) = integrate_torus(&one, &q, &base, &b).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
        let zz = IntegrandSpec::new(1).with_multiplier(vec![
            LaurentTerm { coeff: ONE, exponents: vec![1] },
            LaurentTerm { coeff: ONE, exponents: vec![-1] },
        ]);
        let (v, _) = integrate_torus(&zz, &q, &base, &b).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn laurent_exactness_below_half_the_nodes() {
        let base = BaseParams::new(c(0.3, 0.0), c(0.2, 0.0)).unwrap();
        let b = SeriesBudget::default();
        let mut terms = vec![LaurentTerm { coeff: c(2.5, -1.0), exponents: vec![0, 0] }];
        for (e1, e2) in [(1, 2), (-2, 1), (2, -2), (1, -1)] {
            terms.push(LaurentTerm { coeff: c(0.3, 0.7), exponents: vec![e1, e2] });
        }
        let spec = IntegrandSpec::new(2).with_multiplier(terms);
        let est = convergence_profile(&spec, &base, &b, &[16, 32]).unwrap();
        for e in est {
            assert!((e.value - c(2.5, -1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn elliptic_beta_reference_case() {
        let b = SeriesBudget::default();
        let base = BaseParams::new(c(0.3, 0.0), c(0.2, 0.0)).unwrap();
        let mut t = vec![c(0.6, 0.0), c(0.7, 0.0), c(0.5, 0.3), c(0.5, -0.3), c(0.55, 0.0)];
        let prod: C64 = t.iter().product();
        t.push(base.pq() / prod);
        let kappa =
            q_pochhammer_inf(base.p(), base.p(), &b).unwrap() * q_pochhammer_inf(base.q(), base.q(), &b).unwrap();
        let mut spec = IntegrandSpec::new(1).den_root(&[2]).times(kappa / 2.0);
        for &tj in &t {
            spec = spec.num_pm(tj, &[1]);
        }
        let (lhs, diag) = integrate_torus(&spec, &TorusQuadrature::new(1), &base, &b).unwrap();
        let mut rhs = ONE;
        for i in 0..6 {
            for j in i + 1..6 {
                rhs *= elliptic_gamma(t[i] * t[j], &base, &b).unwrap();
            }
        }
        assert!((lhs / rhs - 1.0).norm() < 1e-10, "{lhs} {rhs}");
        assert!(diag.estimates.len() >= 2);
    }

    #[test]
    fn audit_failure_and_bad_configs() {
        let b = SeriesBudget::default();
        let base = BaseParams::new(c(0.3, 0.0), c(0.2, 0.0)).unwrap();
        let spec = IntegrandSpec::new(1).num_pm(c(1.001, 0.0), &[1]);
        assert!(matches!(integrate_torus(&spec, &TorusQuadrature::new(1), &base, &b), Err(Error::PoleOnContour(_))));
        let ok = IntegrandSpec::new(1);
        assert!(integrate_torus(&ok, &TorusQuadrature::new(1).with_nodes(24), &base, &b).is_err());
        assert!(integrate_torus(&IntegrandSpec::new(4), &TorusQuadrature::new(1), &base, &b).is_err());
        let charged = IntegrandSpec::new(1).num_charged(c(0.5, 0.0), &[1], Charge { fixed2: 0, m_coeff: 2 });
        assert!(integrate_torus(&charged, &TorusQuadrature::new(1), &base, &b).is_err());
    }

    #[test]
    fn thread_count_does_not_change_bits() {
        let b = SeriesBudget::default();
        let base = BaseParams::new(c(0.3, 0.1), c(0.2, -0.1)).unwrap();
        let spec = IntegrandSpec::new(2)
            .den_root(&[1, 1])
            .den_root(&[1, -1])
            .num_pm(c(0.4, 0.2), &[1, 0])
            .num_pm(c(0.5, -0.1), &[0, 1]);
        let q = TorusQuadrature::new(2).with_tol(1e-12);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| integrate_torus(&spec, &q, &base, &b).unwrap().0);
        let bb = four.install(|| integrate_torus(&spec, &q, &base, &b).unwrap().0);
        assert_eq!(a.re.to_bits(), bb.re.to_bits());
        assert_eq!(a.im.to_bits(), bb.im.to_bits());
    }
}
