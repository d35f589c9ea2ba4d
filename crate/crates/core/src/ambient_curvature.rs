//! Ambient curvature tensor of `G2(C^{m+2})` (maximal sectional curvature 8)
//! and the normal Jacobi operator `X -> R(X, N) N`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::PointFrame;
use crate::linalg::{gram_deviation, random_unit_in, seeded_rng, Matrix, Vector};
use crate::quaternion_space::AmbientModel;
use crate::tolerance;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurvatureSource {
    Ambient,
    Gauss { shape: String },
}

/// A trilinear map `(X, Y, Z) -> R(X, Y) Z`, evaluated per triple.
pub trait CurvatureTensor {
    fn eval(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector;

    fn source(&self) -> CurvatureSource;

    /// Projector onto the space the tensor is defined on.
    fn domain_projector(&self) -> Matrix;

    fn covariant(&self, x: &Vector, y: &Vector, z: &Vector, w: &Vector) -> f64 {
        self.eval(x, y, z).dot(w)
    }
}

/// Largest deviations from the algebraic curvature-tensor symmetries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetryDeviations {
    pub antisymmetry: f64,
    pub pair_symmetry: f64,
    pub first_bianchi: f64,
}

/// Samples `nsamples` unit quadruples from the tensor's domain and records the
/// largest violation of `R(X,Y) = -R(Y,X)`, `R(X,Y,Z,W) = R(Z,W,X,Y)` and the
/// first Bianchi identity.
pub fn symmetry_deviations<T: CurvatureTensor + ?Sized>(tensor: &T, nsamples: usize, seed: u64) -> SymmetryDeviations {
    let p = tensor.domain_projector();
    let mut rng = seeded_rng(seed);
    let mut dev = SymmetryDeviations {
        antisymmetry: 0.0,
        pair_symmetry: 0.0,
        first_bianchi: 0.0,
    };
    for _ in 0..nsamples {
        let x = random_unit_in(&mut rng, &p);
        let y = random_unit_in(&mut rng, &p);
        let z = random_unit_in(&mut rng, &p);
        let w = random_unit_in(&mut rng, &p);
        let rxy = tensor.eval(&x, &y, &z);
        let ryx = tensor.eval(&y, &x, &z);
        dev.antisymmetry = dev.antisymmetry.max((&rxy + &ryx).norm());
        let pair = rxy.dot(&w) - tensor.eval(&z, &w, &x).dot(&y);
        dev.pair_symmetry = dev.pair_symmetry.max(pair.abs());
        let bianchi = &rxy + tensor.eval(&y, &z, &x) + tensor.eval(&z, &x, &y);
        dev.first_bianchi = dev.first_bianchi.max(bianchi.norm());
    }
    dev
}

#[derive(Debug, Clone, Copy)]
pub struct AmbientCurvature<'a> {
    pub model: &'a AmbientModel,
}

impl CurvatureTensor for AmbientCurvature<'_> {
    fn eval(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        eval_ambient(self.model, x, y, z)
    }

    fn source(&self) -> CurvatureSource {
        CurvatureSource::Ambient
    }

    fn domain_projector(&self) -> Matrix {
        Matrix::identity(self.model.dim, self.model.dim)
    }
}

fn eval_ambient(model: &AmbientModel, x: &Vector, y: &Vector, z: &Vector) -> Vector {
    let g = |a: &Vector, b: &Vector| a.dot(b);
    let mut r = x * g(y, z) - y * g(x, z);

    let (jx, jy, jz) = (&model.j * x, &model.j * y, &model.j * z);
    r += &jx * g(&jy, z) - &jy * g(&jx, z) - &jz * (2.0 * g(&jx, y));

    for nu in 0..3 {
        let a = &model.jq[nu];
        let (ax, ay, az) = (a * x, a * y, a * z);
        r += &ax * g(&ay, z) - &ay * g(&ax, z) - &az * (2.0 * g(&ax, y));

        let (ajx, ajy) = (a * &jx, a * &jy);
        r += &ajx * g(&ajy, z) - &ajy * g(&ajx, z);
    }
    r
}

/// `R(X, Y) Z` of the ambient space.
pub fn curvature_ambient(model: &AmbientModel, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
    for v in [x, y, z] {
        model.check_dim(v.len())?;
    }
    Ok(eval_ambient(model, x, y, z))
}

/// `g(R(X, Y) Y, X)` for an orthonormal pair.
pub fn sectional_curvature(model: &AmbientModel, x: &Vector, y: &Vector) -> Result<f64> {
    model.check_dim(x.len())?;
    model.check_dim(y.len())?;
    let deviation = gram_deviation(&[x.clone(), y.clone()]);
    if deviation > tolerance::DERIVED {
        return Err(Error::NotOrthonormal { deviation });
    }
    Ok(eval_ambient(model, x, y, y).dot(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JacobiRoute {
    /// Expansion in the induced structure tensors.
    #[default]
    Closed,
    /// `R(X, N) N` from the ambient curvature tensor.
    Direct,
}

/// `R(X, N) N` through the ambient curvature tensor.
pub fn normal_jacobi_direct(model: &AmbientModel, n: &Vector, x: &Vector) -> Result<Vector> {
    model.check_dim(n.len())?;
    model.check_dim(x.len())?;
    let norm = n.norm();
    if (norm - 1.0).abs() > tolerance::UNIT_INPUT {
        return Err(Error::NotUnit { norm });
    }
    let normal_component = n.dot(x).abs();
    if normal_component > tolerance::DERIVED * x.norm().max(1.0) {
        return Err(Error::NotTangent { normal_component });
    }
    Ok(eval_ambient(model, x, n, n))
}

/// Closed form of the normal Jacobi operator on a tangent vector:
///
/// `X + 3 eta(X) xi + 3 sum eta_nu(X) xi_nu
///    - sum { eta_nu(xi) (phi_nu phi X - eta(X) xi_nu) - eta_nu(phi X) phi_nu xi }`.
pub fn normal_jacobi_closed(frame: &PointFrame, x: &Vector) -> Result<Vector> {
    frame.require_tangent(x)?;
    Ok(closed_unchecked(frame, x))
}

pub(crate) fn closed_unchecked(frame: &PointFrame, x: &Vector) -> Vector {
    let eta_x = frame.eta(x);
    let phi_x = frame.phi_x(x);
    let mut r = x + &frame.xi * (3.0 * eta_x);
    for nu in 0..3 {
        let xn = &frame.xi_nu[nu];
        r += xn * (3.0 * frame.eta_nu(nu, x));
        let eta_nu_xi = frame.eta_nu(nu, &frame.xi);
        r -= (frame.phi_nu_x(nu, &phi_x) - xn * eta_x) * eta_nu_xi;
        r += frame.phi_nu_x(nu, &frame.xi) * frame.eta_nu(nu, &phi_x);
    }
    r
}

/// Evaluates the normal Jacobi operator on a tangent vector along `route`.
pub fn normal_jacobi(frame: &PointFrame, x: &Vector, route: JacobiRoute) -> Result<Vector> {
    match route {
        JacobiRoute::Closed => normal_jacobi_closed(frame, x),
        JacobiRoute::Direct => {
            frame.require_tangent(x)?;
            Ok(eval_ambient(&frame.model, x, &frame.n, &frame.n))
        }
    }
}

pub(crate) fn jacobi_unchecked(frame: &PointFrame, x: &Vector, route: JacobiRoute) -> Vector {
    match route {
        JacobiRoute::Closed => closed_unchecked(frame, x),
        JacobiRoute::Direct => eval_ambient(&frame.model, x, &frame.n, &frame.n),
    }
}

/// Matrix of the normal Jacobi operator in an orthonormal tangent basis.
pub fn normal_jacobi_matrix(frame: &PointFrame, basis: &[Vector], route: JacobiRoute) -> Matrix {
    let images: Vec<Vector> = basis.iter().map(|b| jacobi_unchecked(frame, b, route)).collect();
    Matrix::from_fn(basis.len(), basis.len(), |i, j| basis[i].dot(&images[j]))
}
