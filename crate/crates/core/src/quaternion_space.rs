//! Matrix model of the ambient tangent space `V = H^m`.
//!
//! `J` is right multiplication by `i` and `J_nu` is left multiplication by
//! `i, j, k`, slot by slot. Left and right multiplications commute, so every
//! algebraic relation between `J` and the quaternionic structure holds
//! exactly. Coordinate `q` of slot `s` lives at index `4s + q` with
//! `q` running over `(1, i, j, k)`.

use std::ops::{Mul, Neg};

use crate::error::{Error, Result};
use crate::linalg::{max_abs, Matrix};
use crate::report::{Check, CheckReport, Provenance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// `1, i, j, k` for `index = 0..4`.
    pub fn unit(index: usize) -> Self {
        [Self::ONE, Self::I, Self::J, Self::K][index]
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn components(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn from_components(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }

    /// Matrix of `q -> self * q` in the basis `(1, i, j, k)`.
    pub fn left_matrix(self) -> Matrix {
        Matrix::from_fn(4, 4, |row, col| (self * Quaternion::unit(col)).components()[row])
    }

    /// Matrix of `q -> q * self` in the basis `(1, i, j, k)`.
    pub fn right_matrix(self) -> Matrix {
        Matrix::from_fn(4, 4, |row, col| (Quaternion::unit(col) * self).components()[row])
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        Quaternion::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

/// The ambient tangent space with its Kähler structure `j` and canonical
/// quaternionic basis `jq = [J1, J2, J3]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientModel {
    pub m: usize,
    pub dim: usize,
    pub j: Matrix,
    pub jq: [Matrix; 3],
}

impl AmbientModel {
    /// `J J_nu`, the symmetric involutions.
    pub fn jj(&self, nu: usize) -> Matrix {
        &self.j * &self.jq[nu]
    }

    /// `J_nu J`, as it appears in the curvature tensor.
    pub fn jq_j(&self, nu: usize) -> Matrix {
        &self.jq[nu] * &self.j
    }

    /// Basis vector for coordinate `q` of quaternion slot `slot`.
    pub fn slot_index(slot: usize, q: usize) -> usize {
        4 * slot + q
    }

    /// Embeds one quaternion per slot into `V`.
    pub fn vector_from_slots(&self, slots: &[(usize, Quaternion)]) -> crate::linalg::Vector {
        let mut v = crate::linalg::Vector::zeros(self.dim);
        for &(s, q) in slots {
            for (c, val) in q.components().into_iter().enumerate() {
                v[Self::slot_index(s, c)] += val;
            }
        }
        v
    }

    pub fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: len,
            });
        }
        Ok(())
    }
}

fn block_diag(block: &Matrix, copies: usize) -> Matrix {
    let b = block.nrows();
    let mut out = Matrix::zeros(b * copies, b * copies);
    for s in 0..copies {
        out.view_mut((b * s, b * s), (b, b)).copy_from(block);
    }
    out
}

pub fn build_ambient(m: usize) -> Result<AmbientModel> {
    if m == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let j = block_diag(&Quaternion::I.right_matrix(), m);
    let jq = [
        block_diag(&Quaternion::I.left_matrix(), m),
        block_diag(&Quaternion::J.left_matrix(), m),
        block_diag(&Quaternion::K.left_matrix(), m),
    ];
    Ok(AmbientModel { m, dim: 4 * m, j, jq })
}

/// One named check per algebraic invariant of the model.
pub fn ambient_identity_suite(model: &AmbientModel, tol: f64) -> CheckReport {
    let n = model.dim;
    let id = Matrix::identity(n, n);
    let mut report = CheckReport::new(format!("ambient structure, m = {}", model.m));
    let mut add = |tag: &str, name: String, dev: f64| {
        report.push(Check::vanishes(tag, name, dev, Provenance::Paper, tol));
    };

    let j = &model.j;
    add("JJnu-properties", "J^2 = -I".into(), max_abs(&(j * j + &id)));
    add("JJnu-properties", "J orthogonal".into(), max_abs(&(j.transpose() * j - &id)));
    add("JJnu-properties", "J skew".into(), max_abs(&(j + j.transpose())));

    for nu in 0..3 {
        let a = &model.jq[nu];
        let l = nu + 1;
        add("JJnu-properties", format!("J{l}^2 = -I"), max_abs(&(a * a + &id)));
        add("JJnu-properties", format!("J{l} orthogonal"), max_abs(&(a.transpose() * a - &id)));
        add("JJnu-properties", format!("J{l} skew"), max_abs(&(a + a.transpose())));
    }

    for nu in 0..3 {
        let (a, b, c) = (&model.jq[nu], &model.jq[(nu + 1) % 3], &model.jq[(nu + 2) % 3]);
        let (la, lb, lc) = (nu + 1, (nu + 1) % 3 + 1, (nu + 2) % 3 + 1);
        add("quaternion-relations", format!("J{la} J{lb} = J{lc}"), max_abs(&(a * b - c)));
        add("quaternion-relations", format!("J{lb} J{la} = -J{lc}"), max_abs(&(b * a + c)));
    }

    for nu in 0..3 {
        let l = nu + 1;
        let jj = model.jj(nu);
        add("JJnu-properties", format!("J J{l} = J{l} J"), max_abs(&(&jj - model.jq_j(nu))));
        add("JJnu-properties", format!("J J{l} symmetric"), max_abs(&(&jj - jj.transpose())));
        add("JJnu-properties", format!("(J J{l})^2 = I"), max_abs(&(&jj * &jj - &id)));
        add("JJnu-properties", format!("tr(J J{l}) = 0"), jj.trace().abs());
    }
    report
}
