//! Induced structures on a hypersurface at a point, given its unit normal.

use std::sync::Arc;


use crate::error::{Error, Result};
use crate::linalg::{max_abs, outer, projector_onto, random_unit_in, range_basis, seeded_rng, Matrix, Vector};
use crate::quaternion_space::{AmbientModel, Quaternion};
use crate::report::{Check, CheckReport, Provenance};
use crate::tolerance;

/// Hypersurface data at one point: `N`, the Reeb vectors `xi = -JN`,
/// `xi_nu = -J_nu N`, and the tangential parts `phi`, `phi_nu` of `J`, `J_nu`.
///
/// Endomorphisms are stored as ambient matrices that annihilate `N`; on
/// tangent vectors they act as the induced tensors.
#[derive(Debug, Clone)]
pub struct PointFrame {
    pub model: Arc<AmbientModel>,
    pub n: Vector,
    pub xi: Vector,
    pub xi_nu: [Vector; 3],
    pub phi: Matrix,
    pub phi_nu: [Matrix; 3],
    pub tangent_projector: Matrix,
    pub dperp_projector: Matrix,
    pub d_projector: Matrix,
}

impl PointFrame {
    pub fn dim(&self) -> usize {
        self.model.dim
    }

    pub fn eta(&self, x: &Vector) -> f64 {
        self.xi.dot(x)
    }

    pub fn eta_nu(&self, nu: usize, x: &Vector) -> f64 {
        self.xi_nu[nu].dot(x)
    }

    pub fn phi_x(&self, x: &Vector) -> Vector {
        &self.phi * x
    }

    pub fn phi_nu_x(&self, nu: usize, x: &Vector) -> Vector {
        &self.phi_nu[nu] * x
    }

    pub fn project(&self, x: &Vector) -> Vector {
        &self.tangent_projector * x
    }

    /// Rejects vectors of the wrong length or with a normal component.
    pub fn require_tangent(&self, x: &Vector) -> Result<()> {
        self.model.check_dim(x.len())?;
        let normal_component = self.n.dot(x).abs();
        if normal_component > tolerance::DERIVED * x.norm().max(1.0) {
            return Err(Error::NotTangent { normal_component });
        }
        Ok(())
    }

    /// Orthonormal basis of the tangent space `N^perp` (deterministic).
    pub fn tangent_basis(&self) -> Vec<Vector> {
        range_basis(&self.tangent_projector)
    }

    /// Orthonormal basis of the distribution `D`.
    pub fn d_basis(&self) -> Vec<Vector> {
        range_basis(&self.d_projector)
    }

    /// Seeded unit tangent vector.
    pub fn random_tangent(&self, rng: &mut crate::linalg::Rng) -> Vector {
        random_unit_in(rng, &self.tangent_projector)
    }
}

pub fn build_frame(model: &Arc<AmbientModel>, n: &Vector) -> Result<PointFrame> {
    model.check_dim(n.len())?;
    let norm = n.norm();
    if norm < tolerance::REEB_SPLIT {
        return Err(Error::ZeroNormal);
    }
    if (norm - 1.0).abs() > tolerance::UNIT_INPUT {
        return Err(Error::NotUnit { norm });
    }
    let n = n / norm;
    let dim = model.dim;
    let p = Matrix::identity(dim, dim) - outer(&n, &n);
    let xi = -(&model.j * &n);
    let xi_nu = [
        -(&model.jq[0] * &n),
        -(&model.jq[1] * &n),
        -(&model.jq[2] * &n),
    ];
    let phi = &p * &model.j * &p;
    let phi_nu = [
        &p * &model.jq[0] * &p,
        &p * &model.jq[1] * &p,
        &p * &model.jq[2] * &p,
    ];
    let dperp = projector_onto(&xi_nu);
    let d = &p - &dperp;
    Ok(PointFrame {
        model: Arc::clone(model),
        n,
        xi,
        xi_nu,
        phi,
        phi_nu,
        tangent_projector: p,
        dperp_projector: dperp,
        d_projector: d,
    })
}

/// Normal lying in a complex slot: `JN = J1 N`, so `xi = xi_1`.
pub fn complex_slot_normal(model: &AmbientModel) -> Vector {
    model.vector_from_slots(&[(0, Quaternion::ONE)])
}

/// Normal `(1, j)/sqrt 2` in the first two slots; its Reeb vector lies in `D`.
pub fn quaternionic_normal(model: &AmbientModel) -> Result<Vector> {
    if model.m < 2 {
        return Err(Error::FrameConfiguration(
            "a Reeb vector in D needs at least two quaternionic slots".into(),
        ));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(model.vector_from_slots(&[
        (0, Quaternion::new(s, 0.0, 0.0, 0.0)),
        (1, Quaternion::new(0.0, 0.0, s, 0.0)),
    ]))
}

/// `cos t * N_A + sin t * N_B`, normalized, with `N_A` the complex-slot normal
/// and `N_B` the quaternionic normal. `t = 0` gives `xi in Dperp`,
/// `t = pi/2` gives `xi in D`.
pub fn mixed_normal(model: &AmbientModel, t: f64) -> Result<Vector> {
    let a = complex_slot_normal(model);
    let b = quaternionic_normal(model)?;
    let v = a * t.cos() + b * t.sin();
    let norm = v.norm();
    if norm < tolerance::REEB_SPLIT {
        return Err(Error::ZeroNormal);
    }
    Ok(v / norm)
}

const SUITE_SEED: u64 = 0x5EED_F4A3;
const SUITE_SAMPLES: usize = 50;

pub fn frame_identity_suite(frame: &PointFrame, tol: f64) -> CheckReport {
    frame_identity_suite_with(frame, tol, SUITE_SAMPLES, SUITE_SEED)
}

/// Induced-structure identities, each evaluated as the largest residual norm
/// over `nsamples` seeded unit tangent vectors.
pub fn frame_identity_suite_with(frame: &PointFrame, tol: f64, nsamples: usize, seed: u64) -> CheckReport {
    let mut rng = seeded_rng(seed);
    let samples: Vec<Vector> = (0..nsamples).map(|_| frame.random_tangent(&mut rng)).collect();
    let max_over = |f: &dyn Fn(&Vector) -> f64| samples.iter().map(f).fold(0.0_f64, f64::max);

    let mut report = CheckReport::new("hypersurface frame structure");
    let mut add = |tag: &str, name: String, dev: f64| {
        report.push(Check::vanishes(tag, name, dev, Provenance::Paper, tol));
    };
    let model = &frame.model;
    let n = &frame.n;
    let xi = &frame.xi;

    // almost contact structure induced by J
    add("almost-contact", "|xi| = 1".into(), (xi.norm() - 1.0).abs());
    add("almost-contact", "g(xi, N) = 0".into(), xi.dot(n).abs());
    add("almost-contact", "phi xi = 0".into(), frame.phi_x(xi).norm());
    // printed with X in place of xi in the usual list of relations
    add("almost-contact", "eta(xi) = 1".into(), (frame.eta(xi) - 1.0).abs());
    add(
        "almost-contact",
        "phi^2 X = -X + eta(X) xi".into(),
        max_over(&|x| (frame.phi_x(&frame.phi_x(x)) + x - xi * frame.eta(x)).norm()),
    );
    add("almost-contact", "phi skew on TM".into(), max_abs(&(&frame.phi + frame.phi.transpose())));
    for nu in 0..3 {
        let l = nu + 1;
        let xn = &frame.xi_nu[nu];
        add("almost-contact", format!("|xi_{l}| = 1"), (xn.norm() - 1.0).abs());
        add("almost-contact", format!("g(xi_{l}, N) = 0"), xn.dot(n).abs());
        add("almost-contact", format!("phi_{l} xi_{l} = 0"), frame.phi_nu_x(nu, xn).norm());
        add("almost-contact", format!("eta_{l}(xi_{l}) = 1"), (frame.eta_nu(nu, xn) - 1.0).abs());
        add(
            "almost-contact",
            format!("phi_{l}^2 X = -X + eta_{l}(X) xi_{l}"),
            max_over(&|x| (frame.phi_nu_x(nu, &frame.phi_nu_x(nu, x)) + x - xn * frame.eta_nu(nu, x)).norm()),
        );
        let pn = &frame.phi_nu[nu];
        add("almost-contact", format!("phi_{l} skew on TM"), max_abs(&(pn + pn.transpose())));
    }

    add(
        "eq-JX",
        "J X = phi X + eta(X) N".into(),
        max_over(&|x| (&model.j * x - frame.phi_x(x) - n * frame.eta(x)).norm()),
    );
    for nu in 0..3 {
        add(
            "eq-JX",
            format!("J_{} X = phi_{} X + eta_{}(X) N", nu + 1, nu + 1, nu + 1),
            max_over(&|x| (&model.jq[nu] * x - frame.phi_nu_x(nu, x) - n * frame.eta_nu(nu, x)).norm()),
        );
    }
    let rank_dperp = frame.dperp_projector.trace();
    add("eq-JX", "rank Dperp = 3".into(), (rank_dperp - 3.0).abs());
    add(
        "eq-JX",
        "D + Dperp = tangent projector".into(),
        max_abs(&(&frame.d_projector + &frame.dperp_projector - &frame.tangent_projector)),
    );
    add(
        "eq-JX",
        "Dperp tangent".into(),
        (&frame.dperp_projector * n).norm(),
    );

    for nu in 0..3 {
        let (a, b, c) = (nu, (nu + 1) % 3, (nu + 2) % 3);
        let (la, lb, lc) = (a + 1, b + 1, c + 1);
        add(
            "eq-induced-hyp",
            format!("phi_{la} xi_{lb} = xi_{lc}"),
            (frame.phi_nu_x(a, &frame.xi_nu[b]) - &frame.xi_nu[c]).norm(),
        );
        add(
            "eq-induced-hyp",
            format!("phi_{lb} xi_{la} = -xi_{lc}"),
            (frame.phi_nu_x(b, &frame.xi_nu[a]) + &frame.xi_nu[c]).norm(),
        );
        add(
            "eq-induced-hyp",
            format!("phi xi_{la} = phi_{la} xi"),
            (frame.phi_x(&frame.xi_nu[a]) - frame.phi_nu_x(a, xi)).norm(),
        );
        add(
            "eq-induced-hyp",
            format!("eta_{la}(phi X) = eta(phi_{la} X)"),
            max_over(&|x| (frame.eta_nu(a, &frame.phi_x(x)) - frame.eta(&frame.phi_nu_x(a, x))).abs()),
        );
        add(
            "eq-induced-hyp",
            format!("phi_{la} phi_{lb} X = phi_{lc} X + eta_{lb}(X) xi_{la}"),
            max_over(&|x| {
                (frame.phi_nu_x(a, &frame.phi_nu_x(b, x))
                    - frame.phi_nu_x(c, x)
                    - &frame.xi_nu[a] * frame.eta_nu(b, x))
                    .norm()
            }),
        );
        add(
            "eq-induced-hyp",
            format!("phi_{lb} phi_{la} X = -phi_{lc} X + eta_{la}(X) xi_{lb}"),
            max_over(&|x| {
                (frame.phi_nu_x(b, &frame.phi_nu_x(a, x)) + frame.phi_nu_x(c, x)
                    - &frame.xi_nu[b] * frame.eta_nu(a, x))
                    .norm()
            }),
        );
        add(
            "phi-nu-phi-commutation",
            format!("phi_{la} phi X = phi phi_{la} X - eta_{la}(X) xi + eta(X) xi_{la}"),
            max_over(&|x| {
                (frame.phi_nu_x(a, &frame.phi_x(x)) - frame.phi_x(&frame.phi_nu_x(a, x)) + xi * frame.eta_nu(a, x)
                    - &frame.xi_nu[a] * frame.eta(x))
                    .norm()
            }),
        );
    }
    report
}

/// Splitting `xi = eta(U) U + sum eta(xi_nu) xi_nu` with `U` a unit vector in `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReebDecomposition {
    pub eta_u: f64,
    /// `None` when `eta(U)` is below the split threshold (pure Dperp Reeb vector).
    pub u: Option<Vector>,
    pub eta_xi: [f64; 3],
}

impl ReebDecomposition {
    pub fn norm_identity_residual(&self) -> f64 {
        (self.eta_u * self.eta_u + self.eta_xi.iter().map(|e| e * e).sum::<f64>() - 1.0).abs()
    }

    /// `|xi - (eta(U) U + sum eta(xi_nu) xi_nu)|`.
    pub fn reconstruction_residual(&self, frame: &PointFrame) -> f64 {
        let mut v = frame.xi.clone();
        if let Some(u) = &self.u {
            v -= u * self.eta_u;
        }
        for nu in 0..3 {
            v -= &frame.xi_nu[nu] * self.eta_xi[nu];
        }
        v.norm()
    }

    /// Expansion of `phi_kappa xi` through the splitting:
    /// `eta(U) phi_k U + eta(xi_{k+1}) xi_{k+2} - eta(xi_{k+2}) xi_{k+1}`.
    pub fn phi_kappa_xi_expansion(&self, frame: &PointFrame, kappa: usize) -> Vector {
        let (k1, k2) = ((kappa + 1) % 3, (kappa + 2) % 3);
        let mut v = &frame.xi_nu[k2] * self.eta_xi[k1] - &frame.xi_nu[k1] * self.eta_xi[k2];
        if let Some(u) = &self.u {
            v += frame.phi_nu_x(kappa, u) * self.eta_u;
        }
        v
    }

    pub fn phi_kappa_xi_residual(&self, frame: &PointFrame, kappa: usize) -> f64 {
        (frame.phi_nu_x(kappa, &frame.xi) - self.phi_kappa_xi_expansion(frame, kappa)).norm()
    }
}

pub fn reeb_decompose(frame: &PointFrame) -> ReebDecomposition {
    let eta_xi = [
        frame.xi.dot(&frame.xi_nu[0]),
        frame.xi.dot(&frame.xi_nu[1]),
        frame.xi.dot(&frame.xi_nu[2]),
    ];
    let mut d_part = frame.xi.clone();
    for nu in 0..3 {
        d_part -= &frame.xi_nu[nu] * eta_xi[nu];
    }
    let eta_u = d_part.norm();
    let u = (eta_u > tolerance::REEB_SPLIT).then(|| d_part / eta_u);
    ReebDecomposition {
        eta_u: if u.is_some() { eta_u } else { 0.0 },
        u,
        eta_xi,
    }
}
