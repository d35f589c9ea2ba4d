//! Default tolerances. All absolute values apply to unit-length inputs.

/// Identities that hold by construction and only see roundoff.
pub const CONSTRUCTED: f64 = 1e-12;
/// Structure suites (ambient and frame identities).
pub const STRUCTURE: f64 = 1e-10;
/// Derived quantities and cross-route comparisons.
pub const DERIVED: f64 = 1e-9;
/// Relative tolerance for obstruction values against their closed forms.
pub const OBSTRUCTION_REL: f64 = 1e-6;
/// Relative tolerance for trigonometric closed-form identities.
pub const CLOSED_FORM_REL: f64 = 1e-9;
/// Eigenvalue clustering threshold.
pub const CLUSTER: f64 = 1e-9;
/// Admissible deviation of an input normal from unit length before rejection.
pub const UNIT_INPUT: f64 = 1e-9;
/// Below this the D-component of the Reeb vector is treated as absent.
pub const REEB_SPLIT: f64 = 1e-12;
