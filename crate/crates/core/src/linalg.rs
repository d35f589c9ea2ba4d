//! Small dense helpers on top of `nalgebra` shared by every module.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;
pub type Rng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream seed for sub-task `index` of `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn inner(a: &Vector, b: &Vector) -> f64 {
    a.dot(b)
}

pub fn basis_vector(dim: usize, index: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[index] = 1.0;
    v
}

pub fn gaussian_vector(rng: &mut Rng, dim: usize) -> Vector {
    Vector::from_iterator(dim, (0..dim).map(|_| StandardNormal.sample(rng)))
}

/// Unit vector drawn uniformly from the range of the orthogonal projector `p`.
pub fn random_unit_in(rng: &mut Rng, p: &Matrix) -> Vector {
    loop {
        let v = p * gaussian_vector(rng, p.nrows());
        let n = v.norm();
        if n > 1e-8 {
            return v / n;
        }
    }
}

/// Random symmetric matrix with standard normal entries, compressed to the
/// range of the projector `p`.
pub fn random_symmetric_in(rng: &mut Rng, p: &Matrix) -> Matrix {
    let n = p.nrows();
    let g = Matrix::from_fn(n, n, |_, _| StandardNormal.sample(rng));
    let s = (&g + g.transpose()) * 0.5;
    p * s * p
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

pub fn outer(a: &Vector, b: &Vector) -> Matrix {
    a * b.transpose()
}

pub fn projector_onto(basis: &[Vector]) -> Matrix {
    let dim = basis.first().map_or(0, |v| v.len());
    basis
        .iter()
        .fold(Matrix::zeros(dim, dim), |acc, v| acc + outer(v, v))
}

/// Orthonormalizes `vectors` (modified Gram-Schmidt with one
/// re-orthogonalization pass) and drops directions with residual norm below
/// `tol`.
pub fn orthonormalize(vectors: &[Vector], tol: f64) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = q.dot(&w);
                w -= q * c;
            }
        }
        let n = w.norm();
        if n > tol {
            out.push(w / n);
        }
    }
    out
}

/// Orthonormal basis of the range of an orthogonal projector.
pub fn range_basis(p: &Matrix) -> Vec<Vector> {
    let cols: Vec<Vector> = (0..p.ncols()).map(|j| p.column(j).into_owned()).collect();
    orthonormalize(&cols, 1e-6)
}

pub fn basis_matrix(basis: &[Vector], dim: usize) -> Matrix {
    let mut m = Matrix::zeros(dim, basis.len());
    for (j, v) in basis.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// Largest deviation of the Gram matrix of `basis` from the identity.
pub fn gram_deviation(basis: &[Vector]) -> f64 {
    let mut dev = 0.0_f64;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((a.dot(b) - target).abs());
        }
    }
    dev
}

/// Sorted (descending) eigenvalues of a symmetric matrix.
pub fn symmetric_eigenvalues(m: &Matrix) -> Vec<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let mut vals: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// An eigenvalue together with the number of eigenvalues merged into it.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

/// Groups descending-sorted values whose consecutive gaps are below `tol`.
pub fn cluster_values(sorted_desc: &[f64], tol: f64) -> Vec<Cluster> {
    let mut clusters: Vec<(f64, usize, f64)> = Vec::new();
    for &v in sorted_desc {
        match clusters.last_mut() {
            Some((sum, count, last)) if (*last - v).abs() < tol => {
                *sum += v;
                *count += 1;
                *last = v;
            }
            _ => clusters.push((v, 1, v)),
        }
    }
    clusters
        .into_iter()
        .map(|(sum, count, _)| Cluster {
            value: sum / count as f64,
            multiplicity: count,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clustering_merges_close_values() {
        let c = cluster_values(&[8.0, 2.0 + 1e-12, 2.0, 0.0, -1e-13], 1e-9);
        assert_eq!(c.len(), 3);
        assert_eq!(c[1].multiplicity, 2);
        assert_eq!(c[2].multiplicity, 2);
    }

    #[test]
    fn orthonormalize_drops_dependent_vectors() {
        let a = basis_vector(3, 0);
        let b = &a * 2.0;
        let c = basis_vector(3, 2);
        let q = orthonormalize(&[a, b, c], 1e-9);
        assert_eq!(q.len(), 2);
        assert!(gram_deviation(&q) < 1e-15);
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(42, 0), derive_seed(42, 1));
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }
}
