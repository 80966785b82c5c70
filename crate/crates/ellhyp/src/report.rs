//! Verification reports shared by every identity checker.

use serde::{Deserialize, Serialize};

use crate::base::C64;
use crate::error::Error;
use crate::quadrature::QuadDiagnostics;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub kind: String,
    pub message: String,
}

/// A labelled input recorded so that a report can be reproduced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    #[serde(with = "crate::cser")]
    pub value: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    #[serde(with = "crate::cser")]
    pub lhs: C64,
    #[serde(with = "crate::cser")]
    pub rhs: C64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance_used: f64,
    pub passed: bool,
    pub quad_diag: Vec<QuadDiagnostics>,
    pub inputs: Vec<NamedValue>,
    pub failure: Option<Failure>,
    pub notes: Vec<String>,
}

fn nan() -> C64 {
    C64::new(f64::NAN, f64::NAN)
}

impl VerificationReport {
    fn blank(id: &str, tol: f64) -> Self {
        VerificationReport {
            identity_id: id.to_string(),
            lhs: nan(),
            rhs: nan(),
            abs_residual: f64::NAN,
            rel_residual: f64::NAN,
            tolerance_used: tol,
            passed: false,
            quad_diag: Vec::new(),
            inputs: Vec::new(),
            failure: None,
            notes: Vec::new(),
        }
    }

    /// Residual `|lhs - rhs| / max(|lhs|, |rhs|)`.
    pub fn two_sided(id: &str, lhs: C64, rhs: C64, tol: f64) -> Self {
        let abs = (lhs - rhs).norm();
        let scale = lhs.norm().max(rhs.norm());
        let rel = if scale > 0.0 { abs / scale } else { abs };
        let mut r = Self::blank(id, tol);
        r.lhs = lhs;
        r.rhs = rhs;
        r.abs_residual = abs;
        r.rel_residual = rel;
        r.passed = rel <= tol;
        r
    }

    /// Residual `|lhs - rhs| / scale` for relations whose sides are differences.
    pub fn two_sided_scaled(id: &str, lhs: C64, rhs: C64, scale: f64, tol: f64) -> Self {
        let mut r = Self::two_sided(id, lhs, rhs, tol);
        let scale = scale.max(lhs.norm()).max(rhs.norm());
        r.rel_residual = if scale > 0.0 { r.abs_residual / scale } else { r.abs_residual };
        r.passed = r.rel_residual <= tol;
        r
    }

    /// Node-wise comparison: `max_i |l_i - r_i| / max_i max(|l_i|, |r_i|)`;
    /// `lhs`/`rhs` hold the values at the worst node.
    pub fn sampled(id: &str, lhs: &[C64], rhs: &[C64], tol: f64) -> Self {
        let mut worst = (0usize, -1.0f64);
        let mut scale = 0.0f64;
        for (i, (l, r)) in lhs.iter().zip(rhs).enumerate() {
            let d = (l - r).norm();
            if d > worst.1 || d.is_nan() {
                worst = (i, d);
            }
            scale = scale.max(l.norm()).max(r.norm());
        }
        let mut r = Self::blank(id, tol);
        if lhs.is_empty() || lhs.len() != rhs.len() {
            return r;
        }
        r.lhs = lhs[worst.0];
        r.rhs = rhs[worst.0];
        r.abs_residual = worst.1;
        r.rel_residual = if scale > 0.0 { worst.1 / scale } else { worst.1 };
        r.passed = r.rel_residual <= tol;
        r
    }

    /// A nonnegative figure of merit that must not exceed `tol`.
    pub fn bound(id: &str, value: f64, tol: f64) -> Self {
        let mut r = Self::blank(id, tol);
        r.lhs = C64::new(value, 0.0);
        r.rhs = C64::new(0.0, 0.0);
        r.abs_residual = value;
        r.rel_residual = value;
        r.passed = value <= tol;
        r
    }

    /// Multi-term relation `sum terms = 0`, normalized by the largest term.
    pub fn terms(id: &str, terms: &[C64], tol: f64) -> Self {
        let sum: C64 = terms.iter().sum();
        let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        let abs = sum.norm();
        let rel = if scale > 0.0 { abs / scale } else { abs };
        let mut r = Self::blank(id, tol);
        r.lhs = sum;
        r.rhs = C64::new(0.0, 0.0);
        r.abs_residual = abs;
        r.rel_residual = rel;
        r.passed = rel <= tol;
        r
    }

    /// Report for a check that could not be carried out.
    pub fn failed(id: &str, err: &Error, tol: f64) -> Self {
        let mut r = Self::blank(id, tol);
        r.failure = Some(Failure { kind: err.kind().to_string(), message: err.to_string() });
        r
    }

    pub fn input(mut self, name: &str, values: &[C64]) -> Self {
        if values.len() == 1 {
            self.inputs.push(NamedValue { name: name.to_string(), value: values[0] });
        } else {
            for (k, v) in values.iter().enumerate() {
                self.inputs.push(NamedValue { name: format!("{name}[{}]", k + 1), value: *v });
            }
        }
        self
    }

    pub fn diag(mut self, d: QuadDiagnostics) -> Self {
        self.quad_diag.push(d);
        self
    }

    pub fn diags(mut self, ds: impl IntoIterator<Item = QuadDiagnostics>) -> Self {
        self.quad_diag.extend(ds);
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn failure_kind(&self) -> Option<&str> {
        self.failure.as_ref().map(|f| f.kind.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_conventions() {
        let r = VerificationReport::two_sided("x", C64::new(1.0, 0.0), C64::new(1.0 + 1e-12, 0.0), 1e-10);
        assert!(r.passed);
        assert!((r.rel_residual - 1e-12).abs() < 1e-15);
        let t = VerificationReport::terms("y", &[C64::new(2.0, 0.0), C64::new(-2.0, 0.0)], 1e-12);
        assert!(t.passed && t.rel_residual == 0.0);
        let f = VerificationReport::failed("z", &Error::WindowViolation("|s| < 1".into()), 1e-9);
        assert!(!f.passed);
        assert_eq!(f.failure_kind(), Some("WindowViolation"));
    }

    #[test]
    fn json_round_trip_writes_complex_pairs() {
        let r = VerificationReport::two_sided("x", C64::new(1.0, 2.0), C64::new(1.0, 2.0), 1e-10)
            .input("t", &[C64::new(0.5, -0.5)]);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"lhs\":[1.0,2.0]"));
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back.lhs, r.lhs);
    }
}
