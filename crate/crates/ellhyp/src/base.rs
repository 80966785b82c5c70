//! Bases, quasi-periods and truncation budgets.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Truncation policy for every infinite product and sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesBudget {
    /// Absolute bound on the neglected tail.
    pub tail_tol: f64,
    pub max_terms: usize,
    /// Relative distance to a pole below which evaluation refuses.
    pub pole_guard: f64,
}

impl Default for SeriesBudget {
    fn default() -> Self {
        SeriesBudget { tail_tol: 1e-16, max_terms: 10_000, pole_guard: 1e-8 }
    }
}

/// The bases `p`, `q` and optionally the rarefication order `r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseParams {
    #[serde(with = "crate::cser")]
    p: C64,
    #[serde(with = "crate::cser")]
    q: C64,
    r: Option<u32>,
}

impl BaseParams {
    pub fn new(p: C64, q: C64) -> Result<Self> {
        for (name, b) in [("p", p), ("q", q)] {
            let m = b.norm();
            if !(m < 1.0) || m == 0.0 {
                return Err(Error::InvalidBase(format!("|{name}| = {m} must lie in (0, 1)")));
            }
        }
        Ok(BaseParams { p, q, r: None })
    }

    pub fn with_r(mut self, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidBase("rarefication order r must be >= 1".into()));
        }
        self.r = Some(r);
        Ok(self)
    }

    pub fn p(&self) -> C64 {
        self.p
    }

    pub fn q(&self) -> C64 {
        self.q
    }

    pub fn r(&self) -> Option<u32> {
        self.r
    }

    pub fn pq(&self) -> C64 {
        self.p * self.q
    }

    /// Principal square root of `pq`.
    pub fn sqrt_pq(&self) -> C64 {
        (self.p * self.q).sqrt()
    }

    /// The same bases with `p` and `q` exchanged.
    pub fn swapped(&self) -> Self {
        BaseParams { p: self.q, q: self.p, r: self.r }
    }

    pub(crate) fn require_r(&self) -> Result<u32> {
        self.r.ok_or_else(|| Error::InvalidBase("rarefication order r is not set".into()))
    }

    /// `(p;p)_inf (q;q)_inf`.
    pub fn kappa(&self, budget: &SeriesBudget) -> Result<C64> {
        use crate::special::q_pochhammer_inf;
        Ok(q_pochhammer_inf(self.p, self.p, budget)? * q_pochhammer_inf(self.q, self.q, budget)?)
    }
}

/// `exp(2 pi i x)`.
pub fn e2pi(x: C64) -> C64 {
    (C64::new(0.0, 2.0 * PI) * x).exp()
}

/// Three quasi-periods and the six exponential bases built from them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuasiPeriods {
    #[serde(with = "crate::cser")]
    pub omega1: C64,
    #[serde(with = "crate::cser")]
    pub omega2: C64,
    #[serde(with = "crate::cser")]
    pub omega3: C64,
}

impl QuasiPeriods {
    /// Incommensurability is not checked.
    pub fn new(omega1: C64, omega2: C64, omega3: C64) -> Result<Self> {
        if omega1 == C64::new(0.0, 0.0) || omega2 == C64::new(0.0, 0.0) || omega3 == C64::new(0.0, 0.0) {
            return Err(Error::InvalidArgument("quasi-periods must be nonzero".into()));
        }
        Ok(QuasiPeriods { omega1, omega2, omega3 })
    }

    pub fn sum(&self) -> C64 {
        self.omega1 + self.omega2 + self.omega3
    }

    /// `e(omega3/omega2)`
    pub fn p(&self) -> C64 {
        e2pi(self.omega3 / self.omega2)
    }

    /// `e(omega1/omega2)`
    pub fn q(&self) -> C64 {
        e2pi(self.omega1 / self.omega2)
    }

    /// `e(omega3/omega1)`
    pub fn r(&self) -> C64 {
        e2pi(self.omega3 / self.omega1)
    }

    /// `e(-omega2/omega3)`
    pub fn p_tilde(&self) -> C64 {
        e2pi(-self.omega2 / self.omega3)
    }

    /// `e(-omega2/omega1)`
    pub fn q_tilde(&self) -> C64 {
        e2pi(-self.omega2 / self.omega1)
    }

    /// `e(-omega1/omega3)`
    pub fn r_tilde(&self) -> C64 {
        e2pi(-self.omega1 / self.omega3)
    }
}
