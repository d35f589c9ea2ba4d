//! Test-side reference implementation on plain `Vec<f64>`.
//!
//! Nothing here calls into the library except to convert vectors. The
//! quaternion maps, the ambient tensor, the Gauss tensor (projected route),
//! the normal Jacobi operator and the eigensolver are written out again.

#![allow(dead_code)]

pub type V = Vec<f64>;
pub type Mat = Vec<Vec<f64>>;

fn hamilton(p: [f64; 4], q: [f64; 4]) -> [f64; 4] {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

const UNITS: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
];

fn slotwise(m: usize, f: impl Fn([f64; 4]) -> [f64; 4]) -> Mat {
    let n = 4 * m;
    let mut out = vec![vec![0.0; n]; n];
    for s in 0..m {
        for col in 0..4 {
            let image = f(UNITS[col]);
            for row in 0..4 {
                out[4 * s + row][4 * s + col] = image[row];
            }
        }
    }
    out
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn axpy(acc: &mut [f64], c: f64, x: &[f64]) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a += c * b;
    }
}

pub fn scale(c: f64, x: &[f64]) -> V {
    x.iter().map(|v| c * v).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> V {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn apply(a: &Mat, x: &[f64]) -> V {
    a.iter().map(|row| dot(row, x)).collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b[0].len();
    (0..n)
        .map(|i| (0..k).map(|j| (0..b.len()).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

pub fn max_entry_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn to_vec(v: &g2lab::Vector) -> V {
    v.iter().copied().collect()
}

pub fn to_mat(m: &g2lab::Matrix) -> Mat {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

pub fn from_vec(v: &[f64]) -> g2lab::Vector {
    g2lab::Vector::from_column_slice(v)
}

pub struct Oracle {
    pub m: usize,
    pub n: usize,
    pub j: Mat,
    pub q: [Mat; 3],
    jq_j: [Mat; 3],
}

impl Oracle {
    pub fn new(m: usize) -> Self {
        let j = slotwise(m, |x| hamilton(x, UNITS[1]));
        let q = [1, 2, 3].map(|u| slotwise(m, |x| hamilton(UNITS[u], x)));
        let jq_j = [0, 1, 2].map(|nu| matmul(&q[nu], &j));
        Oracle { m, n: 4 * m, j, q, jq_j }
    }

    /// Ambient curvature, term by term.
    pub fn curvature(&self, x: &[f64], y: &[f64], z: &[f64]) -> V {
        let g = dot;
        let mut out = vec![0.0; self.n];
        axpy(&mut out, g(y, z), x);
        axpy(&mut out, -g(x, z), y);
        let (jx, jy, jz) = (apply(&self.j, x), apply(&self.j, y), apply(&self.j, z));
        axpy(&mut out, g(&jy, z), &jx);
        axpy(&mut out, -g(&jx, z), &jy);
        axpy(&mut out, -2.0 * g(&jx, y), &jz);
        for nu in 0..3 {
            let (qx, qy, qz) = (apply(&self.q[nu], x), apply(&self.q[nu], y), apply(&self.q[nu], z));
            axpy(&mut out, g(&qy, z), &qx);
            axpy(&mut out, -g(&qx, z), &qy);
            axpy(&mut out, -2.0 * g(&qx, y), &qz);
            let (px, py) = (apply(&self.jq_j[nu], x), apply(&self.jq_j[nu], y));
            axpy(&mut out, g(&py, z), &px);
            axpy(&mut out, -g(&px, z), &py);
        }
        out
    }

    pub fn project(&self, nrm: &[f64], x: &[f64]) -> V {
        let mut out = x.to_vec();
        axpy(&mut out, -dot(x, nrm), nrm);
        out
    }

    /// Hypersurface curvature as tangential part of the ambient tensor plus the shape block.
    pub fn gauss(&self, nrm: &[f64], a: &Mat, x: &[f64], y: &[f64], z: &[f64]) -> V {
        let mut out = self.project(nrm, &self.curvature(x, y, z));
        let (ax, ay) = (apply(a, x), apply(a, y));
        axpy(&mut out, dot(&ay, z), &ax);
        axpy(&mut out, -dot(&ax, z), &ay);
        out
    }

    pub fn jacobi(&self, nrm: &[f64], x: &[f64]) -> V {
        self.curvature(x, nrm, nrm)
    }

    pub fn residual(&self, nrm: &[f64], a: &Mat, x: &[f64], y: &[f64], z: &[f64]) -> V {
        let first = self.gauss(nrm, a, x, y, &self.jacobi(nrm, z));
        let second = self.jacobi(nrm, &self.gauss(nrm, a, x, y, z));
        sub(&first, &second)
    }

    pub fn reeb(&self, nrm: &[f64]) -> V {
        scale(-1.0, &apply(&self.j, nrm))
    }

    pub fn reeb_nu(&self, nrm: &[f64], nu: usize) -> V {
        scale(-1.0, &apply(&self.q[nu], nrm))
    }

    /// Orthonormal basis of `N^perp` by Gram-Schmidt on the standard basis.
    pub fn tangent_basis(&self, nrm: &[f64]) -> Vec<V> {
        let mut basis: Vec<V> = Vec::new();
        for i in 0..self.n {
            let mut e = vec![0.0; self.n];
            e[i] = 1.0;
            let mut v = self.project(nrm, &e);
            for b in &basis {
                let c = dot(&v, b);
                axpy(&mut v, -c, b);
            }
            let len = norm(&v);
            if len > 1e-6 {
                basis.push(scale(1.0 / len, &v));
            }
        }
        basis
    }

    /// Matrix of `X -> op(X)` in `basis`.
    pub fn restrict(&self, basis: &[V], op: impl Fn(&[f64]) -> V) -> Mat {
        let images: Vec<V> = basis.iter().map(|b| op(b)).collect();
        basis
            .iter()
            .map(|bi| images.iter().map(|img| dot(bi, img)).collect())
            .collect()
    }
}

/// Cyclic Jacobi eigenvalues of a symmetric matrix, sorted descending.
pub fn jacobi_eigenvalues(mut a: Mat) -> V {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut vals: V = (0..n).map(|i| a[i][i]).collect();
    vals.sort_by(|x, y| y.total_cmp(x));
    vals
}

/// `(value, multiplicity)` groups of a descending list; neighbours closer than `tol` merge.
pub fn clusters(sorted_desc: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in sorted_desc {
        match out.last_mut() {
            Some((rep, k)) if (*rep - v).abs() < tol => *k += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Deterministic pseudo-random unit vectors, independent of the library RNG.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }

    pub fn vector(&mut self, n: usize) -> V {
        (0..n).map(|_| self.next_f64()).collect()
    }

    pub fn unit_tangent(&mut self, oracle: &Oracle, nrm: &[f64]) -> V {
        let v = oracle.project(nrm, &self.vector(oracle.n));
        scale(1.0 / norm(&v), &v)
    }
}
