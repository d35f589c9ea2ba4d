//! Shape operators at a point: the two homogeneous model families and the
//! synthetic Hopf operators used to probe the lemma arguments.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, SQRT_2};

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{reeb_decompose, PointFrame};
use crate::linalg::{
    basis_matrix, derive_seed, gaussian_vector, gram_deviation, max_abs, orthonormalize, outer,
    projector_onto, random_symmetric_in, range_basis, seeded_rng, symmetric_eigenvalues, Matrix, Vector,
};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    TypeA,
    TypeB,
}

/// Constant principal curvatures of a model tube of radius `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrincipalCurvatures {
    pub family: Family,
    pub r: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: Option<f64>,
    pub lambda: f64,
    pub mu: f64,
    pub multiplicities: BTreeMap<String, usize>,
}

pub const TYPE_A_RADIUS_MAX: f64 = std::f64::consts::PI / (2.0 * SQRT_2);
pub const TYPE_B_RADIUS_MAX: f64 = FRAC_PI_4;

fn require_open(name: &'static str, value: f64, hi: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 && value < hi {
        Ok(())
    } else {
        Err(Error::ParameterDomain {
            name,
            value,
            domain: format!("(0, {hi})"),
        })
    }
}

impl PrincipalCurvatures {
    /// Tube around `G2(C^{m+1})`, `r in (0, pi/sqrt 8)`.
    pub fn type_a(m: usize, r: f64) -> Result<Self> {
        require_open("r", r, TYPE_A_RADIUS_MAX)?;
        let s8 = 2.0 * SQRT_2;
        let mut mult = BTreeMap::new();
        mult.insert("alpha".to_owned(), 1);
        mult.insert("beta".to_owned(), 2);
        mult.insert("lambda".to_owned(), 2 * m - 2);
        mult.insert("mu".to_owned(), 2 * m - 2);
        Ok(PrincipalCurvatures {
            family: Family::TypeA,
            r,
            alpha: s8 / (s8 * r).tan(),
            beta: SQRT_2 / (SQRT_2 * r).tan(),
            gamma: None,
            lambda: -SQRT_2 * (SQRT_2 * r).tan(),
            mu: 0.0,
            multiplicities: mult,
        })
    }

    /// Tube around `HP^n` in `G2(C^{2n+2})`, `r in (0, pi/4)`.
    pub fn type_b(m: usize, r: f64) -> Result<Self> {
        require_open("r", r, TYPE_B_RADIUS_MAX)?;
        let mut mult = BTreeMap::new();
        mult.insert("alpha".to_owned(), 1);
        mult.insert("beta".to_owned(), 3);
        mult.insert("gamma".to_owned(), 3);
        mult.insert("lambda".to_owned(), 2 * m - 4);
        mult.insert("mu".to_owned(), 2 * m - 4);
        Ok(PrincipalCurvatures {
            family: Family::TypeB,
            r,
            alpha: -2.0 * (2.0 * r).tan(),
            beta: 2.0 / (2.0 * r).tan(),
            gamma: Some(0.0),
            lambda: 1.0 / r.tan(),
            mu: -r.tan(),
            multiplicities: mult,
        })
    }

    pub fn value(&self, label: &str) -> Option<f64> {
        match label {
            "alpha" => Some(self.alpha),
            "beta" => Some(self.beta),
            "gamma" => self.gamma,
            "lambda" => Some(self.lambda),
            "mu" => Some(self.mu),
            _ => None,
        }
    }

    /// Eigenvalues with multiplicity, sorted descending.
    pub fn expected_spectrum(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for (label, &k) in &self.multiplicities {
            if let Some(v) = self.value(label) {
                out.extend(std::iter::repeat_n(v, k));
            }
        }
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeKind {
    TypeA { r: f64 },
    /// `swapped` assigns `mu` to the quaternionic slots and `lambda` to their `J`-images.
    TypeB { r: f64, swapped: bool, seed: u64 },
    SyntheticLemma1 { alpha: f64, seed: u64 },
    SyntheticLemma2 { alpha: f64, c2: f64, c3: f64, w: Vector, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenspace {
    pub label: &'static str,
    pub value: f64,
    pub basis: Vec<Vector>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeOperator {
    /// Ambient matrix; annihilates `N` and is symmetric.
    pub matrix: Matrix,
    pub kind: ShapeKind,
    pub alpha: f64,
    pub curvatures: Option<PrincipalCurvatures>,
    pub eigenspaces: Vec<Eigenspace>,
}

impl ShapeOperator {
    pub fn apply(&self, x: &Vector) -> Vector {
        &self.matrix * x
    }

    pub fn symmetry_deviation(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.transpose()))
    }

    /// `|A xi - alpha xi|`.
    pub fn hopf_residual(&self, frame: &PointFrame) -> f64 {
        (self.apply(&frame.xi) - &frame.xi * self.alpha).norm()
    }

    pub fn eigenspace(&self, label: &str) -> Option<&Eigenspace> {
        self.eigenspaces.iter().find(|e| e.label == label)
    }

    /// Sorted (descending) eigenvalues of `A` restricted to the tangent space.
    pub fn tangent_spectrum(&self, frame: &PointFrame) -> Vec<f64> {
        let basis = frame.tangent_basis();
        let q = basis_matrix(&basis, frame.dim());
        symmetric_eigenvalues(&(q.transpose() * &self.matrix * q))
    }

    /// Largest deviation between the tangent spectrum and the model spectrum.
    pub fn spectral_reconstruction_residual(&self, frame: &PointFrame) -> Option<f64> {
        let expected = self.curvatures.as_ref()?.expected_spectrum();
        let measured = self.tangent_spectrum(frame);
        if expected.len() != measured.len() {
            return Some(f64::INFINITY);
        }
        Some(
            expected
                .iter()
                .zip(&measured)
                .fold(0.0_f64, |acc, (e, m)| acc.max((e - m).abs())),
        )
    }

    fn from_eigenspaces(kind: ShapeKind, alpha: f64, curvatures: Option<PrincipalCurvatures>, spaces: Vec<Eigenspace>, dim: usize) -> Self {
        let mut matrix = Matrix::zeros(dim, dim);
        for s in &spaces {
            matrix += projector_onto(&s.basis) * s.value;
        }
        ShapeOperator {
            matrix,
            kind,
            alpha,
            curvatures,
            eigenspaces: spaces,
        }
    }
}

fn check_dim(label: &'static str, basis: &[Vector], expected: usize) -> Result<()> {
    if basis.len() != expected {
        return Err(Error::EigenspaceDimension {
            label,
            expected,
            actual: basis.len(),
        });
    }
    Ok(())
}

fn require_reeb_in_dperp(frame: &PointFrame) -> Result<()> {
    let e1 = frame.eta(&frame.xi_nu[0]);
    if (e1 - 1.0).abs() > tolerance::UNIT_INPUT {
        return Err(Error::FrameConfiguration(format!(
            "needs JN = J1 N (eta(xi_1) = 1), got eta(xi_1) = {e1}"
        )));
    }
    Ok(())
}

/// Model operator of the tube around `G2(C^{m+1})`.
///
/// Eigenspaces: `span{xi}` (alpha), `span{xi_2, xi_3}` (beta), and on the
/// orthogonal complement of `H xi` the `-1` (lambda) and `+1` (mu)
/// eigenspaces of the involution `J J_1`.
pub fn type_a_shape(frame: &PointFrame, r: f64) -> Result<ShapeOperator> {
    require_reeb_in_dperp(frame)?;
    let m = frame.model.m;
    let pc = PrincipalCurvatures::type_a(m, r)?;
    let dim = frame.dim();
    let xi = &frame.xi;
    let quaternionic_line = [xi.clone(), frame.xi_nu[1].clone(), frame.xi_nu[2].clone()];
    let complement = &frame.tangent_projector - projector_onto(&quaternionic_line);
    let involution = frame.model.jj(0);
    let id = Matrix::identity(dim, dim);
    let lambda_space = range_basis(&(&complement * (&id - &involution) * 0.5 * &complement));
    let mu_space = range_basis(&(&complement * (&id + &involution) * 0.5 * &complement));
    check_dim("lambda", &lambda_space, 2 * m - 2)?;
    check_dim("mu", &mu_space, 2 * m - 2)?;

    let spaces = vec![
        Eigenspace { label: "alpha", value: pc.alpha, basis: vec![xi.clone()] },
        Eigenspace {
            label: "beta",
            value: pc.beta,
            basis: vec![frame.xi_nu[1].clone(), frame.xi_nu[2].clone()],
        },
        Eigenspace { label: "lambda", value: pc.lambda, basis: lambda_space },
        Eigenspace { label: "mu", value: pc.mu, basis: mu_space },
    ];
    let alpha = pc.alpha;
    Ok(ShapeOperator::from_eigenspaces(ShapeKind::TypeA { r }, alpha, Some(pc), spaces, dim))
}

/// Upper bound on slot-search restarts.
pub const SLOT_RESTARTS: usize = 64;
const SLOT_ITERATIONS: usize = 200;
/// Acceptance threshold on `sum_nu g(X, J J_nu X)^2`.
const SLOT_OBJECTIVE: f64 = 1e-24;

/// Finds a unit `X` in the span of `subspace_basis` with `g(X, J J_nu X) = 0`
/// for all `nu`. Then `H X = span{X, J_1 X, J_2 X, J_3 X}` is orthogonal to
/// `J H X`.
///
/// The subspace must be invariant under `J` and the quaternionic structure.
/// Minimizes the squared moment map on the unit sphere of the subspace with
/// Gauss-Newton steps, restarting from seeded random points.
pub fn find_quaternionic_slot(frame: &PointFrame, subspace_basis: &[Vector], seed: u64) -> Result<Vector> {
    let k = subspace_basis.len();
    if k < 8 {
        return Err(Error::FrameConfiguration(format!(
            "slot search needs a subspace of dimension >= 8, got {k}"
        )));
    }
    let q = basis_matrix(subspace_basis, frame.dim());
    let reduced: Vec<Matrix> = (0..3).map(|nu| q.transpose() * frame.model.jj(nu) * &q).collect();
    let objective = |c: &Vector| -> (Vector, f64) {
        let mu = Vector::from_iterator(3, reduced.iter().map(|s| c.dot(&(s * c))));
        let f = mu.norm_squared();
        (mu, f)
    };

    let mut best = f64::INFINITY;
    for restart in 0..SLOT_RESTARTS {
        let mut rng = seeded_rng(derive_seed(seed, restart as u64));
        let mut c = gaussian_vector(&mut rng, k).normalize();
        for _ in 0..SLOT_ITERATIONS {
            let (mu, f) = objective(&c);
            best = best.min(f);
            if f < SLOT_OBJECTIVE {
                let x = (&q * &c).normalize();
                let worst = (0..3)
                    .map(|nu| x.dot(&(frame.model.jj(nu) * &x)).abs())
                    .fold(0.0_f64, f64::max);
                if worst < tolerance::CONSTRUCTED {
                    return Ok(x);
                }
                break;
            }
            // rows: gradient of mu_nu projected onto the sphere's tangent space
            let rows: Vec<Vector> = (0..3)
                .map(|nu| (&reduced[nu] * &c - &c * mu[nu]) * 2.0)
                .collect();
            let gram = Matrix3::from_fn(|i, j| rows[i].dot(&rows[j]));
            let rhs = nalgebra::Vector3::new(mu[0], mu[1], mu[2]);
            let step: Vector = match gram.try_inverse() {
                Some(inv) => {
                    let y = inv * rhs;
                    -(&rows[0] * y[0] + &rows[1] * y[1] + &rows[2] * y[2])
                }
                None => -(&rows[0] * mu[0] + &rows[1] * mu[1] + &rows[2] * mu[2]) * 0.1,
            };
            c = (c + step).normalize();
        }
    }
    Err(Error::SlotSearch {
        restarts: SLOT_RESTARTS,
        best_residual: best.sqrt(),
    })
}

/// Splits a `J`- and quaternion-invariant subspace into `T ⊕ J T` with `T`
/// quaternion-invariant, by repeatedly extracting a quaternionic slot and its
/// `J`-image. Returns `(T, J T)` as orthonormal bases.
pub fn quaternionic_split(frame: &PointFrame, subspace_basis: &[Vector], seed: u64) -> Result<(Vec<Vector>, Vec<Vector>)> {
    let model = &frame.model;
    let mut remaining = subspace_basis.to_vec();
    let mut t_space = Vec::new();
    let mut jt_space = Vec::new();
    let mut round = 0u64;
    while !remaining.is_empty() {
        let x = find_quaternionic_slot(frame, &remaining, derive_seed(seed, 1000 + round))?;
        let slot: Vec<Vector> = std::iter::once(x.clone())
            .chain(model.jq.iter().map(|a| a * &x))
            .collect();
        let image: Vec<Vector> = slot.iter().map(|v| &model.j * v).collect();
        let block: Vec<Vector> = slot.iter().chain(&image).cloned().collect();
        let dev = gram_deviation(&block);
        if dev > tolerance::STRUCTURE {
            return Err(Error::SlotSearch {
                restarts: SLOT_RESTARTS,
                best_residual: dev,
            });
        }
        let projected: Vec<Vector> = remaining
            .iter()
            .map(|v| {
                let mut w = v.clone();
                for b in &block {
                    w -= b * b.dot(v);
                }
                w
            })
            .collect();
        remaining = orthonormalize(&projected, 1e-6);
        if remaining.len() + 8 * (round as usize + 1) != subspace_basis.len() {
            return Err(Error::FrameConfiguration(format!(
                "slot block left the subspace (remaining dimension {})",
                remaining.len()
            )));
        }
        t_space.extend(slot);
        jt_space.extend(image);
        round += 1;
    }
    Ok((t_space, jt_space))
}

/// Model operator of the tube around `HP^n`, `m = 2n >= 4`.
///
/// Eigenspaces: `span{xi}` (alpha), `span{xi_nu}` (beta), `span{phi_nu xi}`
/// (gamma = 0); the complement of `HC xi` is split by
/// [`quaternionic_split`] into a quaternion-invariant `T` and `J T`. The
/// unswapped labeling puts lambda on `T` and mu on `J T`.
pub fn type_b_shape(frame: &PointFrame, r: f64, seed: u64, swapped: bool) -> Result<ShapeOperator> {
    let m = frame.model.m;
    if m % 2 != 0 || m < 4 {
        return Err(Error::FrameConfiguration(format!(
            "type B needs even m >= 4, got m = {m}"
        )));
    }
    let worst = frame
        .xi_nu
        .iter()
        .map(|x| frame.eta(x).abs())
        .fold(0.0_f64, f64::max);
    if worst > tolerance::UNIT_INPUT {
        return Err(Error::FrameConfiguration(format!(
            "needs xi in D, got max |eta(xi_nu)| = {worst}"
        )));
    }
    let pc = PrincipalCurvatures::type_b(m, r)?;
    let dim = frame.dim();
    let xi = frame.xi.clone();
    let beta_space: Vec<Vector> = frame.xi_nu.to_vec();
    let gamma_space: Vec<Vector> = (0..3).map(|nu| frame.phi_nu_x(nu, &xi)).collect();
    let hc_line: Vec<Vector> = std::iter::once(xi.clone())
        .chain(beta_space.iter().cloned())
        .chain(gamma_space.iter().cloned())
        .collect();
    if gram_deviation(&hc_line) > tolerance::STRUCTURE {
        return Err(Error::FrameConfiguration("xi, xi_nu, phi_nu xi are not orthonormal".into()));
    }
    let complement = range_basis(&(&frame.tangent_projector - projector_onto(&hc_line)));
    check_dim("lambda+mu", &complement, 4 * m - 8)?;
    let (t_space, jt_space) = quaternionic_split(frame, &complement, seed)?;
    let (lambda_space, mu_space) = if swapped { (jt_space, t_space) } else { (t_space, jt_space) };
    check_dim("lambda", &lambda_space, 2 * m - 4)?;
    check_dim("mu", &mu_space, 2 * m - 4)?;

    let spaces = vec![
        Eigenspace { label: "alpha", value: pc.alpha, basis: vec![xi] },
        Eigenspace { label: "beta", value: pc.beta, basis: beta_space },
        Eigenspace { label: "gamma", value: 0.0, basis: gamma_space },
        Eigenspace { label: "lambda", value: pc.lambda, basis: lambda_space },
        Eigenspace { label: "mu", value: pc.mu, basis: mu_space },
    ];
    let alpha = pc.alpha;
    Ok(ShapeOperator::from_eigenspaces(
        ShapeKind::TypeB { r, swapped, seed },
        alpha,
        Some(pc),
        spaces,
        dim,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SyntheticSpec {
    /// `A = alpha` on `span{U, xi_1, xi_2, xi_3}`.
    Lemma1 { alpha: f64 },
    /// `A xi = alpha xi` and `g(A W, xi_2) = c2`, `g(A W, xi_3) = c3`.
    Lemma2 { alpha: f64, c2: f64, c3: f64, w: Vector },
}

/// Symmetric operator equal to `alpha` on the span of `invariant` and seeded
/// random symmetric on its tangent complement.
pub fn invariant_block_operator(frame: &PointFrame, invariant: &[Vector], alpha: f64, seed: u64) -> Matrix {
    let q = orthonormalize(invariant, 1e-9);
    let pq = projector_onto(&q);
    let complement = &frame.tangent_projector - &pq;
    let mut rng = seeded_rng(seed);
    pq * alpha + random_symmetric_in(&mut rng, &complement)
}

pub fn synthetic_hopf_shape(frame: &PointFrame, spec: &SyntheticSpec, seed: u64) -> Result<ShapeOperator> {
    match spec {
        SyntheticSpec::Lemma1 { alpha } => {
            let reeb = reeb_decompose(frame);
            let u = reeb.u.ok_or_else(|| {
                Error::FrameConfiguration("Lemma 1 operator needs eta(U) > 0".into())
            })?;
            let invariant: Vec<Vector> = std::iter::once(u).chain(frame.xi_nu.iter().cloned()).collect();
            let matrix = invariant_block_operator(frame, &invariant, *alpha, seed);
            Ok(ShapeOperator {
                matrix,
                kind: ShapeKind::SyntheticLemma1 { alpha: *alpha, seed },
                alpha: *alpha,
                curvatures: None,
                eigenspaces: vec![Eigenspace { label: "alpha", value: *alpha, basis: invariant }],
            })
        }
        SyntheticSpec::Lemma2 { alpha, c2, c3, w } => {
            require_reeb_in_dperp(frame)?;
            frame.model.check_dim(w.len())?;
            let norm = w.norm();
            if (norm - 1.0).abs() > tolerance::UNIT_INPUT {
                return Err(Error::NotUnit { norm });
            }
            let off_d = (&frame.dperp_projector * w).norm() + frame.n.dot(w).abs();
            if off_d > tolerance::DERIVED {
                return Err(Error::FrameConfiguration(format!(
                    "W must lie in D (off-D component {off_d:e})"
                )));
            }
            let (xi, x2, x3) = (&frame.xi, &frame.xi_nu[1], &frame.xi_nu[2]);
            let structural = projector_onto(&[xi.clone(), x2.clone(), x3.clone()]);
            let complement = &frame.tangent_projector - &structural;
            let pair = projector_onto(&[x2.clone(), x3.clone()]);
            let mut rng = seeded_rng(seed);
            let mut matrix = outer(xi, xi) * *alpha;
            matrix += random_symmetric_in(&mut rng, &complement);
            matrix += random_symmetric_in(&mut rng, &pair);
            matrix += (outer(w, x2) + outer(x2, w)) * *c2;
            matrix += (outer(w, x3) + outer(x3, w)) * *c3;
            Ok(ShapeOperator {
                matrix,
                kind: ShapeKind::SyntheticLemma2 {
                    alpha: *alpha,
                    c2: *c2,
                    c3: *c3,
                    w: w.clone(),
                    seed,
                },
                alpha: *alpha,
                curvatures: None,
                eigenspaces: vec![Eigenspace { label: "alpha", value: *alpha, basis: vec![xi.clone()] }],
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{build_frame, complex_slot_normal, mixed_normal, quaternionic_normal};
    use crate::linalg::random_unit_in;
    use crate::quaternion_space::build_ambient;
    use std::sync::Arc;

    fn frame_a(m: usize) -> PointFrame {
        let model = Arc::new(build_ambient(m).unwrap());
        let n = complex_slot_normal(&model);
        build_frame(&model, &n).unwrap()
    }

    fn frame_b(m: usize) -> PointFrame {
        let model = Arc::new(build_ambient(m).unwrap());
        let n = quaternionic_normal(&model).unwrap();
        build_frame(&model, &n).unwrap()
    }

    #[test]
    fn type_a_at_quarter_turn() {
        let r = std::f64::consts::PI * SQRT_2 / 8.0;
        let pc = PrincipalCurvatures::type_a(3, r).unwrap();
        assert!(pc.alpha.abs() < 1e-15);
        assert!((pc.beta - SQRT_2).abs() < 1e-14);
        assert!((pc.lambda + SQRT_2).abs() < 1e-14);
        assert_eq!(pc.mu, 0.0);
    }

    #[test]
    fn type_a_operator_structure() {
        let f = frame_a(3);
        let a = type_a_shape(&f, 0.3).unwrap();
        let pc = a.curvatures.clone().unwrap();
        assert!(a.symmetry_deviation() < 1e-12);
        assert!(a.hopf_residual(&f) < 1e-10);
        assert!((a.apply(&f.xi_nu[1]) - &f.xi_nu[1] * pc.beta).norm() < 1e-10);
        let dims: Vec<usize> = a.eigenspaces.iter().map(|e| e.basis.len()).collect();
        assert_eq!(dims, vec![1, 2, 4, 4]);
        assert!(a.spectral_reconstruction_residual(&f).unwrap() < 1e-10);
        // J X = J_1 X on T_lambda, J X = -J_1 X on T_mu
        let model = &f.model;
        for x in &a.eigenspace("lambda").unwrap().basis {
            assert!((&model.j * x - &model.jq[0] * x).norm() < 1e-10);
        }
        for x in &a.eigenspace("mu").unwrap().basis {
            assert!((&model.j * x + &model.jq[0] * x).norm() < 1e-10);
        }
    }

    #[test]
    fn type_a_rejects_wrong_frame_and_radius() {
        let f = frame_b(4);
        assert!(matches!(type_a_shape(&f, 0.3), Err(Error::FrameConfiguration(_))));
        let f = frame_a(3);
        assert!(matches!(type_a_shape(&f, 0.0), Err(Error::ParameterDomain { .. })));
        assert!(matches!(type_a_shape(&f, TYPE_A_RADIUS_MAX), Err(Error::ParameterDomain { .. })));
    }

    #[test]
    fn type_b_at_pi_over_six() {
        let pc = PrincipalCurvatures::type_b(4, std::f64::consts::FRAC_PI_6).unwrap();
        let s3 = 3f64.sqrt();
        assert!((pc.alpha + 2.0 * s3).abs() < 1e-12);
        assert!((pc.beta - 2.0 / s3).abs() < 1e-12);
        assert!((pc.lambda - s3).abs() < 1e-12);
        assert!((pc.mu + 1.0 / s3).abs() < 1e-12);
    }

    #[test]
    fn type_b_operator_structure() {
        for m in [4, 6] {
            let f = frame_b(m);
            let a = type_b_shape(&f, 0.4, 42, false).unwrap();
            let dims: Vec<usize> = a.eigenspaces.iter().map(|e| e.basis.len()).collect();
            assert_eq!(dims, vec![1, 3, 3, 2 * m - 4, 2 * m - 4]);
            assert_eq!(dims.iter().sum::<usize>(), 4 * m - 1);
            assert!(a.symmetry_deviation() < 1e-12);
            assert!(a.hopf_residual(&f) < 1e-10);
            assert!(a.spectral_reconstruction_residual(&f).unwrap() < 1e-10);
            for nu in 0..3 {
                assert!(a.apply(&f.phi_nu_x(nu, &f.xi)).norm() < 1e-10);
            }
            // T_lambda is quaternion-invariant and orthogonal to its J-image
            let lam = &a.eigenspace("lambda").unwrap().basis;
            let p = projector_onto(lam);
            for x in lam {
                for q in &f.model.jq {
                    let y = q * x;
                    assert!((&p * &y - &y).norm() < 1e-10);
                }
                assert!((&p * (&f.model.j * x)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn type_b_rejects_odd_m() {
        let model = Arc::new(build_ambient(3).unwrap());
        let f = build_frame(&model, &quaternionic_normal(&model).unwrap()).unwrap();
        assert!(matches!(type_b_shape(&f, 0.4, 1, false), Err(Error::FrameConfiguration(_))));
    }

    #[test]
    fn slot_search_in_eight_dimensional_complement() {
        let f = frame_b(4);
        let hc: Vec<Vector> = std::iter::once(f.xi.clone())
            .chain(f.xi_nu.iter().cloned())
            .chain((0..3).map(|nu| f.phi_nu_x(nu, &f.xi)))
            .collect();
        let comp = range_basis(&(&f.tangent_projector - projector_onto(&hc)));
        assert_eq!(comp.len(), 8);
        let x = find_quaternionic_slot(&f, &comp, 7).unwrap();
        assert!((x.norm() - 1.0).abs() < 1e-14);
        let slot: Vec<Vector> = std::iter::once(x.clone()).chain(f.model.jq.iter().map(|a| a * &x)).collect();
        assert!(gram_deviation(&slot) < 1e-12);
        let all: Vec<Vector> = slot.iter().cloned().chain(slot.iter().map(|v| &f.model.j * v)).collect();
        assert!(gram_deviation(&all) < 1e-10);
    }

    #[test]
    fn slot_search_rejects_small_subspace() {
        let f = frame_b(4);
        let basis = f.tangent_basis()[..4].to_vec();
        assert!(find_quaternionic_slot(&f, &basis, 0).is_err());
    }

    #[test]
    fn lemma1_operator_is_invariant_on_reeb_block() {
        let model = Arc::new(build_ambient(3).unwrap());
        let f = build_frame(&model, &mixed_normal(&model, 0.8).unwrap()).unwrap();
        let a = synthetic_hopf_shape(&f, &SyntheticSpec::Lemma1 { alpha: 1.0 }, 5).unwrap();
        let u = reeb_decompose(&f).u.unwrap();
        assert!((a.apply(&u) - &u).norm() < 1e-12);
        for x in &f.xi_nu {
            assert!((a.apply(x) - x).norm() < 1e-12);
        }
        assert!(a.symmetry_deviation() < 1e-12);
        assert!(a.hopf_residual(&f) < 1e-12);
    }

    #[test]
    fn lemma1_operator_needs_mixed_frame() {
        let f = frame_a(3);
        assert!(synthetic_hopf_shape(&f, &SyntheticSpec::Lemma1 { alpha: 1.0 }, 5).is_err());
    }

    #[test]
    fn lemma2_operator_imposes_couplings() {
        let f = frame_a(3);
        let mut rng = seeded_rng(11);
        let w = random_unit_in(&mut rng, &f.d_projector);
        let spec = SyntheticSpec::Lemma2 { alpha: 2.0, c2: 0.7, c3: 0.0, w: w.clone() };
        let a = synthetic_hopf_shape(&f, &spec, 11).unwrap();
        let aw = a.apply(&w);
        assert!((aw.dot(&f.xi_nu[1]) - 0.7).abs() < 1e-12);
        assert!(aw.dot(&f.xi_nu[2]).abs() < 1e-12);
        assert!(a.symmetry_deviation() < 1e-12);
        assert!(a.hopf_residual(&f) < 1e-12);
        // W outside D is rejected
        let spec = SyntheticSpec::Lemma2 { alpha: 2.0, c2: 0.7, c3: 0.0, w: f.xi_nu[1].clone() };
        assert!(synthetic_hopf_shape(&f, &spec, 11).is_err());
    }
}
