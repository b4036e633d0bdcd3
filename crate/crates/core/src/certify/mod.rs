//! Executable error-bound certificates.
//!
//! Each check returns a [`Certificate`]. Only the polyhedral check is an
//! exact characterization and may return [`Verdict::Fails`]; the others
//! are sufficient conditions and report `Holds` or `Inconclusive`, with
//! `condition_met` recording whether the tested condition holds.

mod certificate;
mod polyhedral;
mod set;
mod system;
mod tau;
mod theorems;

pub use certificate::{Certificate, Quantity, Scope, TheoremTag, Verdict, Witness};
pub use polyhedral::{certify_polyhedral, certify_polyhedral_stratified};
pub use set::SetSpec;
pub use system::{certify_system, ConstraintSystem};
pub use tau::{estimate_tau, sample_tau, EstimateConfig, RatioSummary, TauEstimate};
pub use theorems::{
    certify_bounded, certify_strict_sublevel, check_coercive_on_cone, check_geometric, check_growth,
    geometric_condition, classify_robinson,
    uniform_local_radius,
};
