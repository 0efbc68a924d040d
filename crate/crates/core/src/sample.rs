//! Seeded random generators for property checks.
//!
//! Metrics come out positive-definite or associated to a contact form. Skew
//! matrices come with a known normal form.

use rand::Rng;

use crate::contact::ContactStructure;
use crate::error::Result;
use crate::forms::{increasing_tuples, AlternatingForm};
use crate::linalg::Matrix;
use crate::metric::{pull_back_metric, transvection, MetricData};
use crate::normal_form::block_diagonal;
use crate::scalar::Scalar;

/// `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 4`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    Scalar::ratio(rng.random_range(-5..=5), rng.random_range(1..=4))
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let s = rational(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A `degree`-form with each basis coefficient zero with probability ½.
pub fn form<R: Rng + ?Sized>(rng: &mut R, dim: usize, degree: usize) -> AlternatingForm {
    let mut f = AlternatingForm::zero(dim, degree);
    for idx in increasing_tuples(dim, degree) {
        if rng.random_bool(0.5) {
            f.add_term(idx, rational(rng)).expect("valid indices");
        }
    }
    f
}

/// `AᵀA + I` for a random rational `A`.
pub fn positive_definite<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> MetricData<Scalar> {
    let a = Matrix::from_fn(dim, dim, |_, _| rational(rng));
    let g = a.transpose().mul(&a).add(&Matrix::identity(dim));
    MetricData::new(g).expect("symmetric")
}

/// An exact associated metric: `base` pulled back by a few transvections along
/// random horizontal directions.
pub fn associated_metric<R: Rng + ?Sized>(
    rng: &mut R,
    c: &ContactStructure,
    base: &MetricData<Scalar>,
    steps: usize,
) -> Result<MetricData<Scalar>> {
    let mut g = base.clone();
    for _ in 0..steps {
        let dim = c.dim();
        let mut v = vec![Scalar::zero(); dim];
        for h in c.horizontal_basis() {
            let coef = rational(rng);
            for (x, y) in v.iter_mut().zip(h) {
                *x = &*x + &(&coef * y);
            }
        }
        let t = nonzero_rational(rng);
        g = pull_back_metric(&g, &transvection(c, &v, &t)?)?;
    }
    Ok(g)
}

/// Bound on `‖M‖∞·‖M⁻¹‖∞` for the mixing matrix in [`horizontal_basis`], so
/// that floating metrics built on the result stay well scaled.
const MAX_CONDITION: f64 = 50.0;

/// A random basis of `H`: a well-conditioned rational recombination of the
/// kernel basis.
pub fn horizontal_basis<R: Rng + ?Sized>(rng: &mut R, c: &ContactStructure) -> Vec<Vec<Scalar>> {
    let hb = c.horizontal_basis();
    let m = hb.len();
    loop {
        let mix = Matrix::from_fn(m, m, |_, _| rational(rng));
        let Some(inv) = mix.inverse() else {
            continue;
        };
        if inf_norm(&mix) * inf_norm(&inv) > MAX_CONDITION {
            continue;
        }
        return (0..m)
            .map(|j| {
                let mut v = vec![Scalar::zero(); c.dim()];
                for (i, h) in hb.iter().enumerate() {
                    for (x, y) in v.iter_mut().zip(h) {
                        *x = &*x + &(&mix[(i, j)] * y);
                    }
                }
                v
            })
            .collect();
    }
}

/// Largest absolute row sum.
fn inf_norm(m: &Matrix<Scalar>) -> f64 {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_f64().abs()).sum()).fold(0.0, f64::max)
}

/// Haar-like random rotation: QR of a Gaussian-ish matrix by Gram–Schmidt.
pub fn rotation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<f64> {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        for _ in 0..2 {
            for c in &cols {
                let d: f64 = c.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= d * y;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.1 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    Matrix::from_columns(&cols)
}

/// A skew matrix `RᵀNR` with known blocks (descending) and zero count.
pub fn skew_with_known_form<R: Rng + ?Sized>(rng: &mut R, size: usize) -> (Matrix<f64>, Vec<f64>, usize) {
    let pairs = rng.random_range(if size >= 2 { 1 } else { 0 }..=size / 2);
    let zeros = size - 2 * pairs;
    let mut blocks: Vec<f64> = (0..pairs).map(|_| rng.random_range(0.25..5.0)).collect();
    blocks.sort_by(|a, b| b.total_cmp(a));
    let r = rotation(rng, size);
    let b = r.transpose().mul(&block_diagonal(&blocks, zeros)).mul(&r);
    // exact skew symmetry despite rounding
    let b = Matrix::from_fn(size, size, |i, j| 0.5 * (b[(i, j)] - b[(j, i)]));
    (b, blocks, zeros)
}
