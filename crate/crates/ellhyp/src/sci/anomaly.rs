//! Exact Diophantine constraints on the exponents of a gamma-product kernel
//! `(p;p)^{r_-} (q;q)^{r_-} prod_a Gamma((pq)^{R_a/2} x^{m^{(a)}})^{epsilon_a}`.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::theory::{positive_roots, su_weights, FieldKind, TheorySpec};

type Q = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnomalySystem {
    pub epsilon: Vec<i64>,
    pub r_charge: Vec<Ratio<i64>>,
    /// `m[a][j]`: exponent of `x_j` in the `a`-th gamma argument.
    pub m: Vec<Vec<i64>>,
    pub r_minus: i64,
    /// The first `gauge_rank` coordinates are integration variables.
    pub gauge_rank: usize,
}

impl AnomalySystem {
    pub fn new(
        epsilon: Vec<i64>,
        r_charge: Vec<Ratio<i64>>,
        m: Vec<Vec<i64>>,
        r_minus: i64,
        gauge_rank: usize,
    ) -> Result<Self> {
        let k = epsilon.len();
        if r_charge.len() != k || m.len() != k {
            return Err(Error::InvalidArgument("epsilon, R and m need one entry per gamma factor".into()));
        }
        let n = m.first().map_or(0, Vec::len);
        if m.iter().any(|row| row.len() != n) || gauge_rank > n.max(gauge_rank * (k == 0) as usize) {
            return Err(Error::InvalidArgument(
                "exponent rows must share one length covering the gauge coordinates".into(),
            ));
        }
        Ok(AnomalySystem { epsilon, r_charge, m, r_minus, gauge_rank })
    }

    pub fn variables(&self) -> usize {
        self.m.first().map_or(0, Vec::len)
    }

    fn push_theory(&mut self, spec: &TheorySpec, offset: usize, total_gauge: usize, sign: i64) -> Result<()> {
        let n = spec.gauge.n;
        let rank = spec.gauge_rank();
        let width = total_gauge + spec.flavor_rank;
        for f in &spec.fields {
            match f.kind {
                FieldKind::Vector => {
                    for root in positive_roots(n) {
                        for s in [1, -1] {
                            let mut row = vec![0i64; width];
                            for (j, &e) in root.iter().enumerate() {
                                row[offset + j] = s * e as i64;
                            }
                            self.m.push(row);
                            self.epsilon.push(-sign);
                            self.r_charge.push(Ratio::zero());
                        }
                    }
                }
                FieldKind::Chiral => {
                    for mu in su_weights(f.gauge_rep, n)? {
                        for fw in &f.flavor_weights {
                            let mut row = vec![0i64; width];
                            for j in 0..rank {
                                row[offset + j] = mu[j] as i64;
                            }
                            for (j, &e) in fw.iter().enumerate() {
                                row[total_gauge + j] = e as i64;
                            }
                            self.m.push(row);
                            self.epsilon.push(sign * f.epsilon as i64);
                            self.r_charge.push(f.r_charge);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Kernel of a single theory over `[gauge, flavor]` coordinates; `r_minus` is taken from the spec.
    pub fn from_spec(spec: &TheorySpec) -> Result<Self> {
        spec.validate()?;
        let rank = spec.gauge_rank();
        let mut sys = AnomalySystem {
            epsilon: vec![],
            r_charge: vec![],
            m: vec![],
            r_minus: spec.r_minus.unwrap_or(0),
            gauge_rank: rank,
        };
        sys.push_theory(spec, 0, rank, 1)?;
        Ok(sys)
    }

    /// Ratio of the electric kernel to the magnetic one over
    /// `[electric gauge, magnetic gauge, flavor]`, with `r_minus` the difference of gauge ranks.
    pub fn duality(electric: &TheorySpec, magnetic: &TheorySpec) -> Result<Self> {
        electric.validate()?;
        magnetic.validate()?;
        if electric.flavor_rank != magnetic.flavor_rank {
            return Err(Error::InvalidArgument("dual theories must share the flavor torus".into()));
        }
        let (re, rm) = (electric.gauge_rank(), magnetic.gauge_rank());
        let mut sys = AnomalySystem {
            epsilon: vec![],
            r_charge: vec![],
            m: vec![],
            r_minus: re as i64 - rm as i64,
            gauge_rank: re + rm,
        };
        sys.push_theory(electric, 0, re + rm, 1)?;
        sys.push_theory(magnetic, re, re + rm, -1)?;
        Ok(sys)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub indices: Vec<usize>,
    /// Exact residual as `a/b`.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub family: String,
    pub equations: usize,
    pub violations: Vec<Violation>,
}

impl FamilyCheck {
    pub fn zero(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnomalyReport {
    /// `cubic`, `quadratic_r`, `linear_r2`, `linear`, `r_cubic`, `r_linear`, in that order.
    pub families: Vec<FamilyCheck>,
    /// `sum_a epsilon_a m_i m_j` even for gauge indices `i, j`.
    pub evenness: FamilyCheck,
    pub all_zero: bool,
}

fn fmt(x: Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn family(name: &str, sets: Vec<Vec<usize>>, eval: impl Fn(&[usize]) -> Q, bad: impl Fn(Q) -> bool) -> FamilyCheck {
    let equations = sets.len();
    let violations = sets
        .into_iter()
        .filter_map(|idx| {
            let v = eval(&idx);
            bad(v).then(|| Violation { indices: idx, residual: fmt(v) })
        })
        .collect();
    FamilyCheck { family: name.to_string(), equations, violations }
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    match k {
        0 => vec![vec![]],
        _ => {
            let mut out = Vec::new();
            for t in tuples(n, k - 1) {
                let start = t.last().copied().unwrap_or(0);
                for i in start..n {
                    let mut u = t.clone();
                    u.push(i);
                    out.push(u);
                }
            }
            out
        }
    }
}

/// Evaluates the six families of anomaly equations and the evenness condition in exact arithmetic.
pub fn check_anomalies(sys: &AnomalySystem) -> AnomalyReport {
    let n = sys.variables();
    let eps: Vec<Q> = sys.epsilon.iter().map(|&e| Q::from_integer(e as i128)).collect();
    let rm1: Vec<Q> = sys.r_charge.iter().map(|r| Q::new(*r.numer() as i128, *r.denom() as i128) - Q::one()).collect();
    let m = |a: usize, i: usize| Q::from_integer(sys.m[a][i] as i128);
    let k = eps.len();
    let sum = |f: &dyn Fn(usize) -> Q| (0..k).fold(Q::zero(), |acc, a| acc + eps[a] * f(a));
    let nonzero = |v: Q| !v.is_zero();
    let r_minus = Q::from_integer(sys.r_minus as i128);
    let families = vec![
        family("cubic", tuples(n, 3), |ix| sum(&|a| m(a, ix[0]) * m(a, ix[1]) * m(a, ix[2])), nonzero),
        family("quadratic_r", tuples(n, 2), |ix| sum(&|a| m(a, ix[0]) * m(a, ix[1]) * rm1[a]), nonzero),
        family("linear_r2", tuples(n, 1), |ix| sum(&|a| m(a, ix[0]) * rm1[a] * rm1[a]), nonzero),
        family("linear", tuples(n, 1), |ix| sum(&|a| m(a, ix[0])), nonzero),
        family("r_cubic", vec![vec![]], |_| sum(&|a| rm1[a] * rm1[a] * rm1[a]) + r_minus, nonzero),
        family("r_linear", vec![vec![]], |_| sum(&|a| rm1[a]) + r_minus, nonzero),
    ];
    let evenness = family(
        "evenness",
        tuples(sys.gauge_rank, 2),
        |ix| sum(&|a| m(a, ix[0]) * m(a, ix[1])),
        |v| !v.is_integer() || v.to_integer() % 2 != 0,
    );
    let all_zero = families.iter().all(FamilyCheck::zero);
    AnomalyReport { families, evenness, all_zero }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sci::theory::{seiberg_electric, seiberg_magnetic};

    #[test]
    fn seiberg_pairs_are_anomaly_free() {
        for (nc, nf) in [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (3, 7)] {
            let sys =
                AnomalySystem::duality(&seiberg_electric(nc, nf).unwrap(), &seiberg_magnetic(nc, nf).unwrap()).unwrap();
            let rep = check_anomalies(&sys);
            assert!(rep.all_zero, "{nc} {nf}: {:?}", rep.families.iter().filter(|f| !f.zero()).collect::<Vec<_>>());
            assert!(rep.evenness.zero());
            assert_eq!(rep.families.len(), 6);
        }
    }

    #[test]
    fn single_chiral_violates_r_linear() {
        let sys = AnomalySystem::new(vec![1], vec![Ratio::new(2, 3)], vec![vec![]], 0, 0).unwrap();
        let rep = check_anomalies(&sys);
        let fam = |name: &str| rep.families.iter().find(|f| f.family == name).unwrap().clone();
        assert_eq!(fam("r_linear").violations[0].residual, "-1/3");
        assert_eq!(fam("r_cubic").violations[0].residual, "-1/27");
        assert!(!rep.all_zero);
    }

    #[test]
    fn empty_system_is_zero() {
        let sys = AnomalySystem::new(vec![], vec![], vec![], 0, 0).unwrap();
        assert!(check_anomalies(&sys).all_zero);
        let shifted = AnomalySystem::new(vec![], vec![], vec![], 1, 0).unwrap();
        assert!(!check_anomalies(&shifted).all_zero);
    }

    #[test]
    fn electric_kernel_gauge_conditions() {
        let sys = AnomalySystem::from_spec(&seiberg_electric(3, 5).unwrap()).unwrap();
        let rep = check_anomalies(&sys);
        let g = sys.gauge_rank;
        let cubic = &rep.families[0];
        assert!(cubic.violations.iter().all(|v| v.indices.iter().filter(|&&i| i < g).count() < 3));
        let quad = &rep.families[1];
        assert!(quad.violations.iter().all(|v| v.indices.iter().filter(|&&i| i < g).count() < 2));
        assert!(rep.evenness.zero());
        let gauge_only =
            AnomalySystem::new(vec![1, 1], vec![Ratio::new(1, 2); 2], vec![vec![1], vec![0]], 0, 1).unwrap();
        assert!(!check_anomalies(&gauge_only).evenness.zero());
    }

    #[test]
    fn shape_errors() {
        assert!(AnomalySystem::new(vec![1], vec![], vec![vec![1]], 0, 0).is_err());
        assert!(AnomalySystem::new(vec![1, 1], vec![Ratio::new(1, 2); 2], vec![vec![1], vec![1, 2]], 0, 0).is_err());
    }
}
