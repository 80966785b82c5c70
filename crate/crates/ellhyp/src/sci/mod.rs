//! Superconformal indices built from field content: characters, the one-particle
//! index, its plethystic exponential, Seiberg dual pairs and anomaly constraints.

mod anomaly;
mod index;
mod theory;

pub use anomaly::{check_anomalies, AnomalyReport, AnomalySystem, FamilyCheck, Violation};
pub use index::{
    build_index_integrand, evaluate_index, plethystic_exponential, r_weight, seiberg_fugacities, single_particle_index,
    verify_p_ellipticity, verify_plethystic, verify_seiberg, verify_seiberg_reduction,
};
pub use theory::{
    builtin, character, positive_roots, seiberg_electric, seiberg_magnetic, su_weights, FieldContent, FieldKind,
    GaugeGroup, GaugeKind, Rep, TheorySpec, BUILTIN_NAMES,
};
