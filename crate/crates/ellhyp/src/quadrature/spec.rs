use serde::{Deserialize, Serialize};

use crate::base::{BaseParams, SeriesBudget, C64, ONE};
use crate::error::{Error, Result};

/// Doubled discrete charge `fixed2 + m_coeff * m2` of a rarefied factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Charge {
    pub fixed2: i64,
    pub m_coeff: i64,
}

impl Charge {
    pub fn at(&self, m2: i64) -> i64 {
        self.fixed2 + self.m_coeff * m2
    }

    pub fn neg(&self) -> Charge {
        Charge { fixed2: -self.fixed2, m_coeff: -self.m_coeff }
    }
}

/// `Gamma(param * prod z_i^{exponents_i})`, rarefied when a charge is attached.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaFactor {
    #[serde(with = "crate::cser")]
    pub param: C64,
    pub exponents: Vec<i32>,
    pub charge: Option<Charge>,
}

/// `coeff * prod z_i^{exponents_i}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentTerm {
    #[serde(with = "crate::cser")]
    pub coeff: C64,
    pub exponents: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Measure {
    /// `prod dz_i / (2 pi i z_i)`.
    Torus,
    /// SU(N) torus with `z_N = 1/(z_1...z_{N-1})` eliminated and the `1/N!` Weyl factor.
    /// The Weyl density itself is carried by gamma denominators.
    HaarSU(usize),
}

/// Symbolic gamma-ratio integrand over an `dim`-torus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegrandSpec {
    pub dim: usize,
    pub numerator: Vec<GammaFactor>,
    pub denominator: Vec<GammaFactor>,
    pub measure: Measure,
    #[serde(with = "crate::cser")]
    pub constant: C64,
    /// Raw Laurent-polynomial multiplier; `None` means 1.
    pub multiplier: Option<Vec<LaurentTerm>>,
}

impl IntegrandSpec {
    pub fn new(dim: usize) -> Self {
        IntegrandSpec {
            dim,
            numerator: Vec::new(),
            denominator: Vec::new(),
            measure: Measure::Torus,
            constant: ONE,
            multiplier: None,
        }
    }

    pub fn su(n: usize) -> Self {
        let mut s = Self::new(n.saturating_sub(1));
        s.measure = Measure::HaarSU(n);
        s
    }

    pub fn num(mut self, param: C64, exponents: &[i32]) -> Self {
        self.numerator.push(GammaFactor { param, exponents: exponents.to_vec(), charge: None });
        self
    }

    pub fn den(mut self, param: C64, exponents: &[i32]) -> Self {
        self.denominator.push(GammaFactor { param, exponents: exponents.to_vec(), charge: None });
        self
    }

    pub fn num_charged(mut self, param: C64, exponents: &[i32], charge: Charge) -> Self {
        self.numerator.push(GammaFactor { param, exponents: exponents.to_vec(), charge: Some(charge) });
        self
    }

    pub fn den_charged(mut self, param: C64, exponents: &[i32], charge: Charge) -> Self {
        self.denominator.push(GammaFactor { param, exponents: exponents.to_vec(), charge: Some(charge) });
        self
    }

    /// `Gamma(param z^{+e}) Gamma(param z^{-e})`.
    pub fn num_pm(self, param: C64, exponents: &[i32]) -> Self {
        let neg: Vec<i32> = exponents.iter().map(|e| -e).collect();
        self.num(param, exponents).num(param, &neg)
    }

    /// `1/(Gamma(z^{e}) Gamma(z^{-e}))`.
    pub fn den_root(self, exponents: &[i32]) -> Self {
        let neg: Vec<i32> = exponents.iter().map(|e| -e).collect();
        self.den(ONE, exponents).den(ONE, &neg)
    }

    pub fn times(mut self, c: C64) -> Self {
        self.constant *= c;
        self
    }

    pub fn with_multiplier(mut self, terms: Vec<LaurentTerm>) -> Self {
        self.multiplier = Some(terms);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim > 3 {
            return Err(Error::InvalidArgument(format!("dimension {} exceeds 3", self.dim)));
        }
        if let Measure::HaarSU(n) = self.measure {
            if n == 0 || self.dim + 1 != n {
                return Err(Error::InvalidArgument(format!(
                    "SU({n}) needs {} variables, got {}",
                    n.saturating_sub(1),
                    self.dim
                )));
            }
        }
        let all = self.numerator.iter().chain(&self.denominator);
        for f in all {
            if f.exponents.len() != self.dim {
                return Err(Error::InvalidArgument(format!(
                    "factor with {} exponents in a {}-dimensional integrand",
                    f.exponents.len(),
                    self.dim
                )));
            }
            if f.exponents.iter().any(|e| e.abs() > 2) {
                return Err(Error::InvalidArgument("exponents are bounded by |e| <= 2".into()));
            }
            if f.param == C64::new(0.0, 0.0) {
                return Err(Error::InvalidArgument("zero gamma parameter".into()));
            }
        }
        if let Some(m) = &self.multiplier {
            if m.iter().any(|t| t.exponents.len() != self.dim) {
                return Err(Error::InvalidArgument("Laurent term has wrong arity".into()));
            }
        }
        Ok(())
    }

    pub fn has_charges(&self) -> bool {
        self.numerator.iter().chain(&self.denominator).any(|f| f.charge.is_some())
    }

    /// Integrand value at the torus point `z` (length `dim`), sector `m2` for charged factors.
    pub fn eval_at(&self, z: &[C64], m2: i64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
        self.validate()?;
        let prog = super::compile::normalize(self, base)?;
        let mut acc = self.constant;
        for f in &prog {
            let x = f.param * monomial(z, &f.exponents);
            acc *= f.eval(x, m2, base, budget)?;
        }
        if let Some(m) = &self.multiplier {
            acc *= m.iter().map(|t| t.coeff * monomial(z, &t.exponents)).sum::<C64>();
        }
        Ok(acc)
    }
}

pub(crate) fn monomial(z: &[C64], e: &[i32]) -> C64 {
    z.iter().zip(e).fold(ONE, |acc, (zi, &ei)| acc * zi.powi(ei))
}
