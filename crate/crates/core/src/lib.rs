//! `g2lab` is a pointwise laboratory for real hypersurfaces of the complex
//! two-plane Grassmannian `G2(C^{m+2})`.
//!
//! Everything is evaluated at a single point: the ambient tangent space is
//! modelled as `H^m` with its Kähler structure `J` and quaternionic Kähler
//! structure `J1, J2, J3`, a hypersurface is a unit normal `N` together with a
//! symmetric shape operator, and curvature is evaluated lazily per triple.
//! On top of this sit scripted scenarios that reproduce the non-existence
//! argument for Hopf hypersurfaces with semi-parallel normal Jacobi operator
//! and report every intermediate identity with its measured deviation.

pub mod ambient_curvature;
pub mod cli;
pub mod error;
pub mod frame;
pub mod gauss;
pub mod linalg;
pub mod quaternion_space;
pub mod report;
pub mod scenario;
pub mod shape;
pub mod tolerance;

pub use ambient_curvature::{
    curvature_ambient, normal_jacobi_closed, normal_jacobi_direct, sectional_curvature,
    AmbientCurvature, CurvatureSource, CurvatureTensor, JacobiRoute,
};
pub use error::{Error, Result};
pub use frame::{build_frame, frame_identity_suite, reeb_decompose, PointFrame, ReebDecomposition};
pub use gauss::{gauss_curvature, semiparallel_residual, GaussCurvature, GaussRoute};
pub use linalg::{Matrix, Vector};
pub use quaternion_space::{ambient_identity_suite, build_ambient, quat_mul, AmbientModel, Quaternion};
pub use report::{Check, CheckReport, Provenance, Report, Verdict};
pub use shape::{
    find_quaternionic_slot, synthetic_hopf_shape, type_a_shape, type_b_shape, PrincipalCurvatures,
    ShapeKind, ShapeOperator, SyntheticSpec,
};
