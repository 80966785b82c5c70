//! Quadrature and tolerance settings shared by the verifiers.

use serde::{Deserialize, Serialize};

use crate::base::SeriesBudget;
use crate::quadrature::TorusQuadrature;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub start_nodes: usize,
    /// Node caps for one-, two- and three-dimensional integrals.
    pub max_nodes: [usize; 3],
    /// Doubling tolerances per dimension.
    pub rel_tol: [f64; 3],
    pub audit_guard: f64,
    pub budget: SeriesBudget,
    /// Replaces each verifier's default pass threshold.
    pub tol: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            start_nodes: 32,
            max_nodes: [1 << 14, 1 << 10, 1 << 8],
            rel_tol: [1e-13, 1e-10, 1e-8],
            audit_guard: 1e-3,
            budget: SeriesBudget::default(),
            tol: None,
        }
    }
}

impl VerifyConfig {
    pub fn quad(&self, dim: usize) -> TorusQuadrature {
        let k = dim.clamp(1, 3) - 1;
        let start = self.start_nodes.min(self.max_nodes[k]);
        TorusQuadrature {
            dim,
            nodes_per_dim: start,
            max_nodes_per_dim: self.max_nodes[k],
            rel_tol: self.rel_tol[k],
            audit_guard: self.audit_guard,
        }
    }

    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}
