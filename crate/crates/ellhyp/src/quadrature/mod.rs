//! Trapezoidal quadrature on the unit torus for gamma-ratio integrands.

mod audit;
mod compile;
mod spec;
mod torus;

pub use audit::{audit_poles, PoleAudit};
pub use spec::{Charge, GammaFactor, IntegrandSpec, LaurentTerm, Measure};
pub use torus::{
    convergence_profile, integrate_rarefied, integrate_torus, NodeEstimate, QuadDiagnostics, RarefiedResult,
    TorusQuadrature,
};
