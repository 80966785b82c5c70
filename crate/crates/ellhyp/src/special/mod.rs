//! The elliptic gamma family and its building blocks.

mod bernoulli;
mod extended;
mod gamma;
mod gamma2;
mod hyperbolic;
mod modified;
pub(crate) mod modular;
mod pochhammer;
mod rarefied;
mod sum;
mod theta;

pub use bernoulli::{bernoulli_b22, bernoulli_b22_pair, bernoulli_b33};
pub use extended::{elliptic_gamma2_ext, elliptic_gamma_ext, q_pochhammer_inf_ext, theta_ext, ExtComplex};
pub use gamma::{elliptic_gamma, elliptic_gamma_log, gamma_reciprocal_pair, gamma_with, ratio_with};
pub use gamma2::elliptic_gamma2;
pub use hyperbolic::hyperbolic_gamma;
pub use modified::{modified_gamma_a, modified_gamma_b, modified_gamma_g, Representation};
pub use pochhammer::{elliptic_pochhammer, q_pochhammer_inf};
pub use rarefied::{rarefied_gamma, rarefied_gamma_unnormalized, rarefied_reciprocal_pair};
pub use sum::pairwise_sum;
pub use theta::{theta, theta_series};
