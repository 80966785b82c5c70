//! Seeded parameter draws. The generator is ChaCha20 seeded from a `u64`
//! through `SeedableRng::seed_from_u64`, so batteries are reproducible.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::base::{BaseParams, C64};
use crate::error::Result;

pub struct Draw {
    rng: ChaCha20Rng,
}

impl Draw {
    pub fn new(seed: u64) -> Self {
        Draw { rng: ChaCha20Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return lo;
        }
        self.rng.gen_range(lo..hi)
    }

    pub fn phase(&mut self) -> f64 {
        self.uniform(-PI, PI)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Uniform modulus in `[r_min, r_max)` and uniform argument.
    pub fn annulus(&mut self, r_min: f64, r_max: f64) -> C64 {
        let r = self.uniform(r_min, r_max);
        C64::from_polar(r, self.phase())
    }

    pub fn base(&mut self, r_min: f64, r_max: f64) -> Result<BaseParams> {
        let p = self.annulus(r_min, r_max);
        let q = self.annulus(r_min, r_max);
        BaseParams::new(p, q)
    }

    /// `n` values with product exactly `target`: equal moduli `|target|^{1/n}`
    /// perturbed by `exp(spread * u)` with centred `u`, arbitrary phases, and
    /// the last entry solved from the product.
    pub fn balanced(&mut self, n: usize, target: C64, spread: f64) -> Vec<C64> {
        let mut logs: Vec<C64> = (0..n).map(|_| C64::new(self.uniform(-spread, spread), self.phase())).collect();
        let mean: C64 = logs.iter().sum::<C64>() / n as f64;
        for l in &mut logs {
            *l -= mean;
        }
        let root = target.powf(1.0 / n as f64);
        let mut t: Vec<C64> = logs.iter().map(|l| root * l.exp()).collect();
        let rest: C64 = t[..n - 1].iter().product();
        t[n - 1] = target / rest;
        t
    }

    /// As [`Draw::balanced`], but the entries listed in `small` get moduli in
    /// `[0.85, 1) * small_scale` before the rest are balanced.
    pub fn balanced_with_small(
        &mut self,
        n: usize,
        small: &[usize],
        small_scale: f64,
        target: C64,
        spread: f64,
    ) -> Vec<C64> {
        let mut t = vec![C64::new(0.0, 0.0); n];
        let mut fixed = C64::new(1.0, 0.0);
        for &i in small {
            t[i] = C64::from_polar(small_scale * self.uniform(0.85, 1.0), self.phase());
            fixed *= t[i];
        }
        let others: Vec<usize> = (0..n).filter(|i| !small.contains(i)).collect();
        let rest = self.balanced(others.len(), target / fixed, spread);
        for (k, &i) in others.iter().enumerate() {
            t[i] = rest[k];
        }
        t
    }
}
