//! Reduction of an integrand to numerator gammas and entire reciprocal pairs.

use crate::base::{BaseParams, SeriesBudget, C64};
use crate::error::Result;
use crate::special::{elliptic_gamma, gamma_reciprocal_pair, rarefied_gamma, rarefied_reciprocal_pair};

use super::spec::{Charge, GammaFactor, IntegrandSpec};

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Kind {
    Gamma,
    Rarefied(Charge),
    /// `1/(Gamma(x) Gamma(1/x))`
    ThetaPair,
    /// `1/(Gamma^(r)(x, M) Gamma^(r)(1/x, -M))`
    RarefiedPair(Charge),
}

#[derive(Clone, Debug)]
pub(crate) struct Normalized {
    pub param: C64,
    pub exponents: Vec<i32>,
    pub kind: Kind,
}

impl Normalized {
    pub fn eval(&self, x: C64, m2: i64, base: &BaseParams, budget: &SeriesBudget) -> Result<C64> {
        match self.kind {
            Kind::Gamma => elliptic_gamma(x, base, budget),
            Kind::Rarefied(c) => rarefied_gamma(x, c.at(m2), base, budget),
            Kind::ThetaPair => gamma_reciprocal_pair(x, base, budget),
            Kind::RarefiedPair(c) => {
                let big = c.at(m2);
                if big % 2 == 0 {
                    rarefied_reciprocal_pair(x, big / 2, base, budget)
                } else {
                    Ok(1.0 / (rarefied_gamma(x, big, base, budget)? * rarefied_gamma(1.0 / x, -big, base, budget)?))
                }
            }
        }
    }

    /// Numerator gammas are the only factors with poles.
    pub fn has_poles(&self) -> bool {
        matches!(self.kind, Kind::Gamma | Kind::Rarefied(_)) && self.exponents.iter().any(|&e| e != 0)
    }
}

fn opposite(a: &GammaFactor, b: &GammaFactor) -> bool {
    let exps = a.exponents.iter().zip(&b.exponents).all(|(x, y)| x == &-y);
    let params = (a.param * b.param - 1.0).norm() < 1e-13;
    let charges = match (a.charge, b.charge) {
        (None, None) => true,
        (Some(x), Some(y)) => x.fixed2 == -y.fixed2 && x.m_coeff == -y.m_coeff,
        _ => false,
    };
    exps && params && charges
}

/// Denominator pairs `Gamma(a x) Gamma(1/(a x))` become theta pairs; any other
/// denominator is inverted into a numerator through `1/Gamma(x) = Gamma(pq/x)`.
pub(crate) fn normalize(spec: &IntegrandSpec, base: &BaseParams) -> Result<Vec<Normalized>> {
    let mut out: Vec<Normalized> = spec
        .numerator
        .iter()
        .map(|f| Normalized {
            param: f.param,
            exponents: f.exponents.clone(),
            kind: f.charge.map_or(Kind::Gamma, Kind::Rarefied),
        })
        .collect();
    let den = &spec.denominator;
    let mut used = vec![false; den.len()];
    for i in 0..den.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let partner = (i + 1..den.len()).find(|&j| !used[j] && opposite(&den[i], &den[j]));
        match partner {
            Some(j) => {
                used[j] = true;
                out.push(Normalized {
                    param: den[i].param,
                    exponents: den[i].exponents.clone(),
                    kind: den[i].charge.map_or(Kind::ThetaPair, Kind::RarefiedPair),
                });
            }
            None => {
                let f = &den[i];
                out.push(Normalized {
                    param: base.pq() / f.param,
                    exponents: f.exponents.iter().map(|e| -e).collect(),
                    kind: f.charge.map_or(Kind::Gamma, |c| Kind::Rarefied(c.neg())),
                });
            }
        }
    }
    Ok(out)
}
