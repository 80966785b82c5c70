//! Univariate identities: the elliptic beta integral, the W(E7) symmetries of
//! the V-function, contiguous relations, the elliptic hypergeometric equation
//! and the Casoratian quadratic relation.

mod beta;
mod e7;
mod equations;

pub use beta::{beta_integrand, eval_v, gamma_pair_product, integrate_v, verify_elliptic_beta, BetaParams, VParams};
pub use e7::{e7_image, e7_window, verify_e7, verify_e7_composition, E7Transform};
pub use equations::{
    eheq2_parameters, potential_a, potential_a_zagier, u_function, verify_casoratian, verify_contiguous, verify_ehe,
    verify_ehe_q_inverted, verify_eheq2_form, ContiguousRelation,
};

use crate::error::Result;
use crate::quadrature::QuadDiagnostics;
use crate::report::VerificationReport;

/// Runs a check, turning any error into a failed report.
pub(crate) fn run_check(
    id: &str,
    tol: f64,
    check: impl FnOnce(&mut Vec<QuadDiagnostics>) -> Result<VerificationReport>,
) -> VerificationReport {
    let mut diags = Vec::new();
    match check(&mut diags) {
        Ok(r) => r.diags(diags),
        Err(e) => VerificationReport::failed(id, &e, tol).diags(diags),
    }
}
