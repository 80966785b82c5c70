//! Extended-precision products for oracle cross-checks.

use std::fmt;

use astro_float::{BigFloat, RoundingMode};

use crate::base::C64;
use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Complex number with an `astro_float` real and imaginary part.
#[derive(Clone, Debug)]
pub struct ExtComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    prec: usize,
}

impl ExtComplex {
    pub fn from_c64(z: C64, prec: usize) -> Self {
        ExtComplex { re: BigFloat::from_f64(z.re, prec), im: BigFloat::from_f64(z.im, prec), prec }
    }

    fn one(prec: usize) -> Self {
        Self::from_c64(C64::new(1.0, 0.0), prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        ExtComplex { re: self.re.add(&o.re, self.prec, RM), im: self.im.add(&o.im, self.prec, RM), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ExtComplex { re: self.re.sub(&o.re, self.prec, RM), im: self.im.sub(&o.im, self.prec, RM), prec: self.prec }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec;
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        ExtComplex { re, im, prec: p }
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec;
        let den = o.re.mul(&o.re, p, RM).add(&o.im.mul(&o.im, p, RM), p, RM);
        let re = self.re.mul(&o.re, p, RM).add(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.im.mul(&o.re, p, RM).sub(&self.re.mul(&o.im, p, RM), p, RM);
        ExtComplex { re: re.div(&den, p, RM), im: im.div(&den, p, RM), prec: p }
    }

    /// Nearest binary64 value, via the decimal rendering.
    pub fn to_c64(&self) -> C64 {
        let conv = |x: &BigFloat| {
            if x.is_zero() {
                0.0
            } else {
                x.to_string().parse::<f64>().unwrap_or(f64::NAN)
            }
        };
        C64::new(conv(&self.re), conv(&self.im))
    }
}

impl fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

fn check_prec(prec: usize) -> Result<()> {
    if prec < 64 {
        return Err(Error::InvalidArgument(format!("extended precision needs at least 64 bits, got {prec}")));
    }
    Ok(())
}

/// Number of factors `J` with `|z||p|^J` below the working precision.
fn horizon(az: f64, ap: f64, prec: usize) -> Result<usize> {
    if !(ap < 1.0) {
        return Err(Error::InvalidBase(format!("|p| = {ap} >= 1")));
    }
    if az == 0.0 || ap == 0.0 {
        return Ok(1);
    }
    let target = -((prec + 8) as f64) * std::f64::consts::LN_2;
    let j = ((target - az.ln()) / ap.ln()).ceil().max(1.0);
    if j > 1e6 {
        return Err(Error::BudgetExhausted { context: "extended product", terms: j as usize });
    }
    Ok(j as usize)
}

fn poch_ext(z: &ExtComplex, p: &ExtComplex, n: usize) -> ExtComplex {
    let one = ExtComplex::one(z.prec);
    let mut acc = one.clone();
    let mut a = z.clone();
    for _ in 0..n {
        acc = acc.mul(&one.sub(&a));
        a = a.mul(p);
    }
    acc
}

/// `prod_{j<terms} (1 - z p^j)` at `prec` bits, rounded to binary64.
pub fn q_pochhammer_inf_ext(z: C64, p: C64, prec: usize, terms: usize) -> Result<C64> {
    check_prec(prec)?;
    let (ze, pe) = (ExtComplex::from_c64(z, prec), ExtComplex::from_c64(p, prec));
    Ok(poch_ext(&ze, &pe, terms).to_c64())
}

/// `theta(z;p)` at `prec` bits with the horizon picked from the precision.
pub fn theta_ext(z: C64, p: C64, prec: usize) -> Result<ExtComplex> {
    check_prec(prec)?;
    if z == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("theta(z;p) needs z != 0".into()));
    }
    let ze = ExtComplex::from_c64(z, prec);
    let pe = ExtComplex::from_c64(p, prec);
    let w = pe.div(&ze);
    let a = poch_ext(&ze, &pe, horizon(z.norm(), p.norm(), prec)?);
    let b = poch_ext(&w, &pe, horizon((p / z).norm(), p.norm(), prec)?);
    Ok(a.mul(&b))
}

/// `Gamma(z;p,q)` at `prec` bits.
pub fn elliptic_gamma_ext(z: C64, p: C64, q: C64, prec: usize) -> Result<ExtComplex> {
    check_prec(prec)?;
    if z == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("elliptic gamma needs z != 0".into()));
    }
    let scale = z.norm().max((p * q / z).norm());
    let jmax = horizon(scale, p.norm(), prec)?;
    let ze = ExtComplex::from_c64(z, prec);
    let pe = ExtComplex::from_c64(p, prec);
    let qe = ExtComplex::from_c64(q, prec);
    let w = pe.mul(&qe).div(&ze);
    let mut num = ExtComplex::one(prec);
    let mut den = ExtComplex::one(prec);
    let mut pj = ExtComplex::one(prec);
    let mut apj = 1.0;
    for _ in 0..jmax {
        let kmax = horizon(scale * apj, q.norm(), prec)?;
        num = num.mul(&poch_ext(&w.mul(&pj), &qe, kmax));
        den = den.mul(&poch_ext(&ze.mul(&pj), &qe, kmax));
        pj = pj.mul(&pe);
        apj *= p.norm();
    }
    Ok(num.div(&den))
}

/// `Gamma(z;p,q,t)` at `prec` bits.
pub fn elliptic_gamma2_ext(z: C64, p: C64, q: C64, t: C64, prec: usize) -> Result<ExtComplex> {
    check_prec(prec)?;
    if z == C64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("second-order gamma needs z != 0".into()));
    }
    let scale = z.norm().max((p * q * t / z).norm());
    let ze = ExtComplex::from_c64(z, prec);
    let pe = ExtComplex::from_c64(p, prec);
    let qe = ExtComplex::from_c64(q, prec);
    let te = ExtComplex::from_c64(t, prec);
    let w = pe.mul(&qe).mul(&te).div(&ze);
    let mut acc = ExtComplex::one(prec);
    let mut pj = ExtComplex::one(prec);
    let mut apj = 1.0;
    for _ in 0..horizon(scale, p.norm(), prec)? {
        let mut tl = pj.clone();
        let mut atl = apj;
        for _ in 0..horizon(scale * apj, t.norm(), prec)? {
            let kmax = horizon(scale * atl, q.norm(), prec)?;
            acc = acc.mul(&poch_ext(&ze.mul(&tl), &qe, kmax));
            acc = acc.mul(&poch_ext(&w.mul(&tl), &qe, kmax));
            tl = tl.mul(&te);
            atl *= t.norm();
        }
        pj = pj.mul(&pe);
        apj *= p.norm();
    }
    Ok(acc)
}
