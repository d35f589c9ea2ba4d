//! Induced curvature tensor of a hypersurface through the Gauss equation, and
//! the residual of the semi-parallelism condition for the normal Jacobi operator.

use serde::{Deserialize, Serialize};

use crate::ambient_curvature::{
    jacobi_unchecked, symmetry_deviations, AmbientCurvature, CurvatureSource, CurvatureTensor, JacobiRoute,
};
use crate::error::Result;
use crate::frame::PointFrame;
use crate::linalg::{Matrix, Vector};
use crate::report::{Check, CheckReport, Provenance};
use crate::shape::ShapeOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaussRoute {
    /// The expansion in `phi`, `phi_nu`, `eta`, `eta_nu`, `xi_nu` plus the `A` block.
    #[default]
    Closed,
    /// Tangential projection of the ambient tensor plus the `A` block.
    Projected,
}

/// `R` of a hypersurface with shape operator `a` at `frame`.
#[derive(Debug, Clone)]
pub struct GaussCurvature<'a> {
    pub frame: &'a PointFrame,
    pub a: &'a Matrix,
    pub route: GaussRoute,
    pub label: String,
}

impl<'a> GaussCurvature<'a> {
    pub fn new(frame: &'a PointFrame, shape: &'a ShapeOperator) -> Self {
        GaussCurvature {
            frame,
            a: &shape.matrix,
            route: GaussRoute::Closed,
            label: shape_label(shape),
        }
    }

    pub fn from_matrix(frame: &'a PointFrame, a: &'a Matrix, route: GaussRoute) -> Self {
        GaussCurvature {
            frame,
            a,
            route,
            label: "matrix".to_owned(),
        }
    }
}

fn shape_label(shape: &ShapeOperator) -> String {
    use crate::shape::ShapeKind::*;
    match &shape.kind {
        TypeA { .. } => "type-a",
        TypeB { swapped: false, .. } => "type-b",
        TypeB { swapped: true, .. } => "type-b-swapped",
        SyntheticLemma1 { .. } => "lemma1",
        SyntheticLemma2 { .. } => "lemma2",
    }
    .to_owned()
}

impl CurvatureTensor for GaussCurvature<'_> {
    fn eval(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        gauss_eval(self.frame, self.a, x, y, z, self.route)
    }

    fn source(&self) -> CurvatureSource {
        CurvatureSource::Gauss {
            shape: self.label.clone(),
        }
    }

    fn domain_projector(&self) -> Matrix {
        self.frame.tangent_projector.clone()
    }
}

/// Evaluates the Gauss equation without tangency checks.
pub fn gauss_eval(frame: &PointFrame, a: &Matrix, x: &Vector, y: &Vector, z: &Vector, route: GaussRoute) -> Vector {
    let mut r = match route {
        GaussRoute::Closed => structural_blocks(frame, x, y, z),
        GaussRoute::Projected => {
            let ambient = AmbientCurvature { model: &frame.model };
            frame.project(&ambient.eval(x, y, z))
        }
    };
    let (ax, ay) = (a * x, a * y);
    r += &ax * ay.dot(z) - &ay * ax.dot(z);
    r
}

fn structural_blocks(f: &PointFrame, x: &Vector, y: &Vector, z: &Vector) -> Vector {
    let g = |a: &Vector, b: &Vector| a.dot(b);
    let mut r = x * g(y, z) - y * g(x, z);

    let (px, py, pz) = (f.phi_x(x), f.phi_x(y), f.phi_x(z));
    r += &px * g(&py, z) - &py * g(&px, z) - &pz * (2.0 * g(&px, y));

    let (ex, ey) = (f.eta(x), f.eta(y));
    for nu in 0..3 {
        let (qx, qy, qz) = (f.phi_nu_x(nu, x), f.phi_nu_x(nu, y), f.phi_nu_x(nu, z));
        r += &qx * g(&qy, z) - &qy * g(&qx, z) - &qz * (2.0 * g(&qx, y));

        let (qpx, qpy) = (f.phi_nu_x(nu, &px), f.phi_nu_x(nu, &py));
        r += &qpx * g(&qpy, z) - &qpy * g(&qpx, z);

        let ez = f.eta_nu(nu, z);
        r -= &qpx * (ey * ez) - &qpy * (ex * ez);
        r -= &f.xi_nu[nu] * (ex * g(&qpy, z) - ey * g(&qpx, z));
    }
    r
}

/// `R(X, Y) Z` from the Gauss equation.
pub fn gauss_curvature(frame: &PointFrame, shape: &ShapeOperator, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
    for v in [x, y, z] {
        frame.require_tangent(v)?;
    }
    Ok(gauss_eval(frame, &shape.matrix, x, y, z, GaussRoute::Closed))
}

/// `S(X,Y)Z = R(X,Y)(R_N Z) - R_N(R(X,Y)Z)`; vanishes identically iff the
/// normal Jacobi operator is semi-parallel at the point.
pub fn semiparallel_residual(frame: &PointFrame, shape: &ShapeOperator, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
    for v in [x, y, z] {
        frame.require_tangent(v)?;
    }
    Ok(residual_with(frame, &shape.matrix, x, y, z, GaussRoute::Closed, JacobiRoute::Closed))
}

/// Residual with explicit routes for both operators; no tangency checks.
pub fn residual_with(
    frame: &PointFrame,
    a: &Matrix,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    gauss: GaussRoute,
    jacobi: JacobiRoute,
) -> Vector {
    let rn_z = jacobi_unchecked(frame, z, jacobi);
    let lhs = gauss_eval(frame, a, x, y, &rn_z, gauss);
    let rxyz = gauss_eval(frame, a, x, y, z, gauss);
    lhs - jacobi_unchecked(frame, &rxyz, jacobi)
}

/// Algebraic curvature-tensor symmetries of the Gauss tensor built from `a`.
pub fn curvature_symmetry_suite(frame: &PointFrame, a: &Matrix, nsamples: usize, seed: u64, tol: f64) -> CheckReport {
    let mut report = CheckReport::new("gauss curvature symmetries");
    let tensor = GaussCurvature::from_matrix(frame, a, GaussRoute::Closed);
    let dev = symmetry_deviations(&tensor, nsamples, seed);
    let tag = "eq-Gauss-real-hyp";
    let p = Provenance::DerivedOracle;
    report.push(Check::vanishes(tag, "antisymmetry R(X,Y) = -R(Y,X)", dev.antisymmetry, p, tol));
    report.push(Check::vanishes(tag, "pair symmetry R(X,Y,Z,W) = R(Z,W,X,Y)", dev.pair_symmetry, p, tol));
    report.push(Check::vanishes(tag, "first Bianchi identity", dev.first_bianchi, p, tol));
    report
}
