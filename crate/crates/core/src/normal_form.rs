//! Orthogonal normal form of real skew-symmetric matrices:
//! `Q B Qᵀ = diag(b₁J, …, b_kJ, 0, …, 0)` with `J = ((0, 1), (−1, 0))`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Input skewness tolerance `‖B + Bᵀ‖∞`.
pub const SKEW_TOLERANCE: f64 = 1e-12;
/// Orthogonality tolerance `‖QQᵀ − I‖∞`.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-12;
/// Reconstruction tolerance `‖QBQᵀ − N‖∞`.
pub const BLOCK_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct SkewNormalForm {
    /// Rows are the new orthonormal basis.
    pub q: Matrix<f64>,
    /// Block magnitudes, positive and descending.
    pub blocks: Vec<f64>,
    pub zero_count: usize,
}

impl SkewNormalForm {
    pub fn size(&self) -> usize {
        2 * self.blocks.len() + self.zero_count
    }

    /// The block-diagonal matrix `N`.
    pub fn assembled(&self) -> Matrix<f64> {
        block_diagonal(&self.blocks, self.zero_count)
    }
}

/// `diag(b₁J, …, b_kJ, 0_zeros)`.
pub fn block_diagonal(blocks: &[f64], zeros: usize) -> Matrix<f64> {
    let n = 2 * blocks.len() + zeros;
    let mut m = Matrix::zeros(n, n);
    for (k, &b) in blocks.iter().enumerate() {
        m.set(2 * k, 2 * k + 1, b);
        m.set(2 * k + 1, 2 * k, -b);
    }
    m
}

/// Largest absolute entry of `a − b`.
pub fn max_abs_diff(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    a.sub(b).max_magnitude()
}

fn to_dmatrix(m: &Matrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Removes the components along `basis` twice (classical Gram–Schmidt with
/// reorthogonalization).
fn orthogonalize(v: &mut DVector<f64>, basis: &[DVector<f64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = b.dot(v);
            v.axpy(-c, b, 1.0);
        }
    }
}

pub fn skew_normal_form(b: &Matrix<f64>) -> Result<SkewNormalForm> {
    if !b.is_square() {
        return Err(Error::input("skew normal form needs a square matrix"));
    }
    let asym = b.add(&b.transpose()).max_magnitude();
    if asym > SKEW_TOLERANCE {
        return Err(Error::input(format!("matrix is not skew-symmetric: ‖B + Bᵀ‖∞ = {asym:e}")));
    }
    let n = b.rows();
    let bm = to_dmatrix(b);
    let norm = b.max_magnitude().max(1.0);
    let zero_threshold = 1e-9 * norm;

    let eig = SymmetricEigen::new(bm.transpose() * &bm);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let magnitude = |k: usize| eig.eigenvalues[k].max(0.0).sqrt();

    // clusters of numerically equal singular values
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &k in &order {
        match clusters.last_mut() {
            Some(c) if (magnitude(c[0]) - magnitude(k)).abs() <= 1e-8 * norm => c.push(k),
            _ => clusters.push(vec![k]),
        }
    }

    let mut rows: Vec<DVector<f64>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    let mut zero_vectors: Vec<DVector<f64>> = Vec::new();
    for cluster in &clusters {
        if magnitude(cluster[0]) <= zero_threshold {
            for &k in cluster {
                zero_vectors.push(eig.eigenvectors.column(k).into_owned());
            }
            continue;
        }
        // candidates: standard basis projected onto the cluster's eigenspace,
        // which makes the result independent of the eigensolver's basis choice
        let span: Vec<DVector<f64>> = cluster.iter().map(|&k| eig.eigenvectors.column(k).into_owned()).collect();
        let target = rows.len() + span.len();
        for i in 0..n {
            if rows.len() >= target {
                break;
            }
            let mut v = DVector::<f64>::zeros(n);
            for s in &span {
                v.axpy(s[i], s, 1.0);
            }
            orthogonalize(&mut v, &rows);
            if v.norm() < 1e-3 {
                continue;
            }
            v.normalize_mut();
            // B v = −b u for the pair (v, u)
            let mut u = -(&bm * &v);
            let bu = u.norm();
            if bu <= zero_threshold {
                zero_vectors.push(v);
                continue;
            }
            u /= bu;
            let mut with_v = rows.clone();
            with_v.push(v.clone());
            orthogonalize(&mut u, &with_v);
            u.normalize_mut();
            blocks.push(v.dot(&(&bm * &u)));
            rows.push(v);
            rows.push(u);
        }
    }
    let block_rows = rows.len();
    for mut z in zero_vectors.into_iter().chain((0..n).map(|i| DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 }))) {
        if rows.len() == n {
            break;
        }
        orthogonalize(&mut z, &rows);
        if z.norm() > 0.5 {
            z.normalize_mut();
            rows.push(z);
        }
    }
    if rows.len() != n {
        return Err(Error::invariant("could not complete an orthonormal basis"));
    }

    // order pairs by descending block size
    let mut pairs: Vec<(f64, DVector<f64>, DVector<f64>)> = blocks
        .iter()
        .enumerate()
        .map(|(k, &bk)| (bk, rows[2 * k].clone(), rows[2 * k + 1].clone()))
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut ordered: Vec<DVector<f64>> = Vec::with_capacity(n);
    for (_, v, u) in &pairs {
        ordered.push(v.clone());
        ordered.push(u.clone());
    }
    ordered.extend(rows[block_rows..].iter().cloned());
    let q = Matrix::from_fn(n, n, |i, j| ordered[i][j]);
    let nf = SkewNormalForm {
        blocks: pairs.iter().map(|p| p.0).collect(),
        zero_count: n - block_rows,
        q,
    };

    let orth = max_abs_diff(&nf.q.mul(&nf.q.transpose()), &Matrix::identity(n));
    if orth > ORTHOGONALITY_TOLERANCE {
        return Err(Error::invariant(format!("Q is not orthogonal: ‖QQᵀ − I‖∞ = {orth:e}")));
    }
    let residual = max_abs_diff(&nf.q.mul(b).mul(&nf.q.transpose()), &nf.assembled());
    if residual > BLOCK_TOLERANCE * norm {
        return Err(Error::invariant(format!("‖QBQᵀ − N‖∞ = {residual:e} exceeds tolerance")));
    }
    Ok(nf)
}
