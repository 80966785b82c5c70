//! Elliptic gamma functions, elliptic hypergeometric integrals and
//! quadrature-based certification of their identities.

pub mod bailey;
pub mod base;
pub mod battery;
pub mod config;
pub(crate) mod cser;
pub mod draw;
pub mod error;
pub mod identities;
pub mod quadrature;
pub mod report;
pub mod roots;
pub mod sci;
pub mod series;
pub mod special;

pub use base::{BaseParams, QuasiPeriods, SeriesBudget, C64};
pub use config::VerifyConfig;
pub use error::{Error, Result};
pub use report::VerificationReport;
