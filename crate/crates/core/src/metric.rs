//! Associated metrics on contact Lie algebras: the tensors `φ` and `h`, the
//! Levi-Civita connection of a left-invariant metric, the two K-contact
//! criteria and the spectral obstruction.
//!
//! Everything is generic over [`Field`]: rational metrics are checked with
//! zero tolerance, floating metrics (from [`construct_associated_metric`])
//! within [`FLOAT_TOLERANCE`] relative to the size of the terms compared.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::algebra::{FieldKind, LieAlgebra, Vector};
use crate::contact::ContactStructure;
use crate::error::{check_dim, Error, Result};
use crate::forms::AlternatingForm;
use crate::linalg::{dot, outer, unit, vec_add, Matrix};
use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar, FLOAT_TOLERANCE};
use crate::spectral::minimal_polynomial;

/// A symmetric bilinear form `g(X, Y) = Xᵀ G Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricData<F> {
    matrix: Matrix<F>,
}

impl<F: Field> MetricData<F> {
    pub fn new(matrix: Matrix<F>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::input("metric matrix must be square"));
        }
        if !matrix.is_symmetric() {
            return Err(Error::input("metric matrix must be symmetric"));
        }
        Ok(MetricData { matrix })
    }

    pub fn diagonal(entries: &[F]) -> Self {
        MetricData {
            matrix: Matrix::diagonal(entries),
        }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.matrix.is_positive_definite()
    }

    pub fn inner(&self, x: &[F], y: &[F]) -> F {
        dot(x, &self.matrix.mul_vec(y))
    }

    fn require_positive_definite(&self) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::input("metric is not positive definite"))
        }
    }
}

impl MetricData<Scalar> {
    pub fn to_f64(&self) -> MetricData<f64> {
        MetricData {
            matrix: self.matrix.map(Scalar::to_f64),
        }
    }
}

/// The contact data of a [`ContactStructure`] converted into the arithmetic
/// of `F`.
#[derive(Clone, Debug)]
pub struct Frame<F> {
    pub dim: usize,
    pub cube: Vec<Vec<Vec<F>>>,
    pub eta: Vec<F>,
    pub reeb: Vec<F>,
    pub d_eta: Matrix<F>,
    pub projector: Matrix<F>,
    pub horizontal: Vec<Vec<F>>,
}

fn convert_vec<F: Field>(v: &[Scalar]) -> Vec<F> {
    v.iter().map(F::from_scalar).collect()
}

pub(crate) fn convert_cube<F: Field>(algebra: &LieAlgebra) -> Vec<Vec<Vec<F>>> {
    algebra
        .structure_cube()
        .iter()
        .map(|row| row.iter().map(|v| convert_vec(v)).collect())
        .collect()
}

pub(crate) fn bracket_in<F: Field>(cube: &[Vec<Vec<F>>], x: &[F], y: &[F]) -> Vec<F> {
    let n = x.len();
    let mut out = vec![F::zero(); n];
    for i in 0..n {
        if x[i].is_negligible() && x[i] == F::zero() {
            continue;
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let coef = x[i].clone() * y[j].clone();
            for (o, c) in out.iter_mut().zip(&cube[i][j]) {
                *o = o.clone() + coef.clone() * c.clone();
            }
        }
    }
    out
}

impl<F: Field> Frame<F> {
    pub fn new(c: &ContactStructure) -> Self {
        Frame {
            dim: c.dim(),
            cube: convert_cube(c.algebra()),
            eta: convert_vec(&c.eta().as_covector().expect("1-form")),
            reeb: convert_vec(c.reeb()),
            d_eta: c.d_eta().as_matrix().expect("2-form").map(F::from_scalar),
            projector: c.projector().map(F::from_scalar),
            horizontal: c.horizontal_basis().iter().map(|h| convert_vec(h)).collect(),
        }
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        bracket_in(&self.cube, x, y)
    }

    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.dim)
            .map(|j| self.bracket(x, &unit(self.dim, j)))
            .collect();
        Matrix::from_columns(&cols)
    }

    pub fn ad_reeb(&self) -> Matrix<F> {
        self.ad(&self.reeb)
    }

    pub fn eta_of(&self, x: &[F]) -> F {
        dot(&self.eta, x)
    }

    pub fn d_eta_of(&self, x: &[F], y: &[F]) -> F {
        dot(x, &self.d_eta.mul_vec(y))
    }
}

/// Christoffel symbols of a left-invariant connection: `∇_{e_i} e_j = Γ[i][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<F> {
    gamma: Vec<Vec<Vec<F>>>,
}

impl<F: Field> Connection<F> {
    pub fn symbol(&self, i: usize, j: usize) -> &[F] {
        &self.gamma[i][j]
    }

    /// `∇_X Y` for left-invariant `X`, `Y`.
    pub fn covariant(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = x.len();
        let mut out = vec![F::zero(); n];
        for i in 0..n {
            for j in 0..n {
                let c = x[i].clone() * y[j].clone();
                if c.is_negligible() && c == F::zero() {
                    continue;
                }
                for (o, g) in out.iter_mut().zip(&self.gamma[i][j]) {
                    *o = o.clone() + c.clone() * g.clone();
                }
            }
        }
        out
    }
}

/// Levi-Civita connection of a left-invariant metric, from the Koszul formula
/// `g(∇_{e_i}e_j, e_k) = −½(g([e_j,e_k],e_i) + g([e_i,e_k],e_j) + g([e_j,e_i],e_k))`.
pub fn levi_civita<F: Field>(algebra: &LieAlgebra, g: &MetricData<F>) -> Result<Connection<F>> {
    let n = algebra.dim();
    check_dim(n, g.dim())?;
    g.require_positive_definite()?;
    let cube: Vec<Vec<Vec<F>>> = convert_cube(algebra);
    levi_civita_cube(&cube, g)
}

fn levi_civita_cube<F: Field>(cube: &[Vec<Vec<F>>], g: &MetricData<F>) -> Result<Connection<F>> {
    let n = g.dim();
    let gm = g.matrix();
    let g_inv = gm
        .inverse()
        .ok_or_else(|| Error::input("metric matrix is singular"))?;
    // lowered[a][b][k] = g([e_a, e_b], e_k)
    let lowered: Vec<Vec<Vec<F>>> = cube
        .iter()
        .map(|row| row.iter().map(|v| gm.mul_vec(v)).collect())
        .collect();
    let half = F::one() / F::from_i64(2);
    let gamma = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let rhs: Vec<F> = (0..n)
                        .map(|k| {
                            let s = lowered[j][k][i].clone()
                                + lowered[i][k][j].clone()
                                + lowered[j][i][k].clone();
                            -(half.clone() * s)
                        })
                        .collect();
                    g_inv.mul_vec(&rhs)
                })
                .collect()
        })
        .collect();
    Ok(Connection { gamma })
}

/// The endomorphism `φ` with `g(X, φY) = dη(X, Y)`, i.e. `φ = G⁻¹·D`.
pub fn compute_phi<F: Field>(c: &ContactStructure, g: &MetricData<F>) -> Result<Matrix<F>> {
    check_dim(c.dim(), g.dim())?;
    g.require_positive_definite()?;
    let frame = Frame::<F>::new(c);
    phi_in_frame(&frame, g)
}

fn phi_in_frame<F: Field>(frame: &Frame<F>, g: &MetricData<F>) -> Result<Matrix<F>> {
    let g_inv = g
        .matrix()
        .inverse()
        .ok_or_else(|| Error::input("metric matrix is singular"))?;
    Ok(g_inv.mul(&frame.d_eta))
}

/// Zero test for a residual whose terms have size up to `scale`: exact for
/// rational matrices, `FLOAT_TOLERANCE·max(1, scale)` for floating ones.
fn vanishes<F: Field>(residual: &Matrix<F>, scale: f64) -> bool {
    if F::is_exact() {
        residual.is_zero()
    } else {
        residual.max_magnitude() <= FLOAT_TOLERANCE * scale.max(1.0)
    }
}

fn vector_size<F: Field>(v: &[F]) -> f64 {
    v.iter().map(Field::magnitude).fold(0.0, f64::max)
}

fn associated_in_frame<F: Field>(frame: &Frame<F>, g: &MetricData<F>, phi: &Matrix<F>) -> bool {
    let n = frame.dim;
    let gm = g.matrix();
    let g_xi = Matrix::from_columns(&[gm.mul_vec(&frame.reeb)]);
    let eta = Matrix::from_columns(std::slice::from_ref(&frame.eta));
    let eta_ok = vanishes(&g_xi.sub(&eta), n as f64 * gm.max_magnitude() * vector_size(&frame.reeb));
    let target = Matrix::identity(n)
        .scale(&-F::one())
        .add(&outer(&frame.reeb, &frame.eta));
    let phi_size = phi.max_magnitude();
    eta_ok && vanishes(&phi.mul(phi).sub(&target), n as f64 * phi_size * phi_size)
}

/// Both associated-metric axioms: `η(X) = g(X, ξ)` and `φ² = −I + η⊗ξ`.
pub fn is_associated<F: Field>(c: &ContactStructure, g: &MetricData<F>) -> Result<bool> {
    let frame = Frame::<F>::new(c);
    check_dim(frame.dim, g.dim())?;
    g.require_positive_definite()?;
    let phi = phi_in_frame(&frame, g)?;
    Ok(associated_in_frame(&frame, g, &phi))
}

/// `φ`, `h` and `∇` of an associated metric, with the structure identities
/// verified at construction.
#[derive(Clone, Debug)]
pub struct AssociatedGeometry<F> {
    pub metric: MetricData<F>,
    pub phi: Matrix<F>,
    pub h: Matrix<F>,
    pub connection: Connection<F>,
    /// Columns `∇_{e_j} ξ`.
    pub nabla_reeb: Matrix<F>,
    frame: Frame<F>,
}

impl<F: Field> AssociatedGeometry<F> {
    pub fn new(c: &ContactStructure, g: &MetricData<F>) -> Result<Self> {
        let frame = Frame::<F>::new(c);
        check_dim(frame.dim, g.dim())?;
        g.require_positive_definite()?;
        let phi = phi_in_frame(&frame, g)?;
        if !associated_in_frame(&frame, g, &phi) {
            return Err(Error::input("metric is not associated to the contact form"));
        }
        let connection = levi_civita_cube(&frame.cube, g)?;
        let n = frame.dim;
        let cols: Vec<Vec<F>> = (0..n)
            .map(|j| connection.covariant(&unit(n, j), &frame.reeb))
            .collect();
        let nabla_reeb = Matrix::from_columns(&cols);
        // hX = φ(∇_X ξ) − X on H, hξ = 0
        let h = phi
            .mul(&nabla_reeb)
            .sub(&Matrix::identity(n))
            .mul(&frame.projector);
        let geo = AssociatedGeometry {
            metric: g.clone(),
            phi,
            h,
            connection,
            nabla_reeb,
            frame,
        };
        geo.check_structure_identities()?;
        Ok(geo)
    }

    fn check_structure_identities(&self) -> Result<()> {
        let n = self.frame.dim as f64;
        let (g_size, phi_size, h_size) = (
            self.metric.matrix().max_magnitude(),
            self.phi.max_magnitude(),
            self.h.max_magnitude(),
        );
        // ∇_X ξ + φX + φhX = 0 for every basis X
        let residual = self
            .nabla_reeb
            .add(&self.phi)
            .add(&self.phi.mul(&self.h));
        let scale = self.nabla_reeb.max_magnitude() + phi_size + n * phi_size * h_size;
        if !vanishes(&residual, scale) {
            return Err(Error::invariant(format!(
                "∇_X ξ ≠ −φX − φhX (residual {:e})",
                residual.max_magnitude()
            )));
        }
        let gm = self.metric.matrix();
        if !vanishes(&gm.mul(&self.h).sub(&self.h.transpose().mul(gm)), n * g_size * h_size) {
            return Err(Error::invariant("h is not g-symmetric"));
        }
        let h_xi = Matrix::from_columns(&[self.h.mul_vec(&self.frame.reeb)]);
        if !vanishes(&h_xi, n * h_size * vector_size(&self.frame.reeb)) {
            return Err(Error::invariant("hξ ≠ 0"));
        }
        if !vanishes(&gm.mul(&self.phi).add(&self.phi.transpose().mul(gm)), n * g_size * phi_size) {
            return Err(Error::invariant("φ is not g-skew"));
        }
        Ok(())
    }

    pub fn frame(&self) -> &Frame<F> {
        &self.frame
    }

    /// `h = 0`.
    pub fn h_vanishes(&self) -> bool {
        let n = self.frame.dim as f64;
        vanishes(&self.h, n * self.phi.max_magnitude() * self.nabla_reeb.max_magnitude())
    }

    /// `g(ad(ξ)X, Y) + g(X, ad(ξ)Y) = 0` for horizontal basis vectors.
    pub fn ad_reeb_is_skew_on_h(&self) -> bool {
        let ad = self.frame.ad_reeb();
        let hb = &self.frame.horizontal;
        let values = Matrix::from_fn(hb.len(), hb.len(), |i, j| {
            let (x, y) = (&hb[i], &hb[j]);
            self.metric.inner(&ad.mul_vec(x), y) + self.metric.inner(x, &ad.mul_vec(y))
        });
        let n = self.frame.dim as f64;
        let basis_size = hb.iter().map(|v| vector_size(v)).fold(0.0, f64::max);
        vanishes(&values, n * n * self.metric.matrix().max_magnitude() * ad.max_magnitude() * basis_size * basis_size)
    }
}

pub fn compute_h<F: Field>(c: &ContactStructure, g: &MetricData<F>) -> Result<Matrix<F>> {
    Ok(AssociatedGeometry::new(c, g)?.h)
}

/// K-contact verdict from `h = 0` and from g-skewness of `ad(ξ)|_H`; the two
/// must agree.
pub fn is_kcontact<F: Field>(c: &ContactStructure, g: &MetricData<F>) -> Result<bool> {
    let geo = AssociatedGeometry::new(c, g)?;
    kcontact_verdict(&geo)
}

pub(crate) fn kcontact_verdict<F: Field>(geo: &AssociatedGeometry<F>) -> Result<bool> {
    let by_h = geo.h_vanishes();
    let by_skew = geo.ad_reeb_is_skew_on_h();
    if by_h != by_skew {
        return Err(Error::invariant(format!(
            "K-contact criteria disagree: h = 0 is {by_h}, ad(ξ)|_H g-skew is {by_skew}"
        )));
    }
    Ok(by_h)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ObstructionReason {
    /// The minimal polynomial of `ad(ξ)` has a repeated factor (a nontrivial
    /// Jordan block).
    NotDiagonalizable { minimal_polynomial: Polynomial<Scalar> },
    /// Some eigenvalue of `ad(ξ)` lies off the imaginary axis.
    SpectrumNotImaginary { minimal_polynomial: Polynomial<Scalar> },
    /// K-contact metrics are defined for real algebras only.
    ComplexAlgebra,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Obstruction {
    NoObstruction,
    Obstructed(ObstructionReason),
}

impl fmt::Display for ObstructionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionReason::NotDiagonalizable { minimal_polynomial } => write!(
                f,
                "ad(ξ) is not diagonalizable: minimal polynomial {minimal_polynomial} is not squarefree"
            ),
            ObstructionReason::SpectrumNotImaginary { minimal_polynomial } => write!(
                f,
                "ad(ξ) has eigenvalues off the imaginary axis: minimal polynomial {minimal_polynomial}"
            ),
            ObstructionReason::ComplexAlgebra => f.write_str("complex algebra: K-contact metrics are real"),
        }
    }
}

/// Necessary condition for a K-contact metric: `ad(ξ)` diagonalizable over ℂ
/// with purely imaginary spectrum. `NoObstruction` does not assert existence.
pub fn kcontact_obstruction(c: &ContactStructure) -> Obstruction {
    if c.field() == FieldKind::Complex {
        return Obstruction::Obstructed(ObstructionReason::ComplexAlgebra);
    }
    let m = minimal_polynomial(&c.ad_reeb());
    match imaginary_spectrum_check(&m) {
        None => Obstruction::NoObstruction,
        Some(reason) => Obstruction::Obstructed(reason),
    }
}

/// `None` when the real minimal polynomial `m` is squarefree with all roots
/// on the imaginary axis.
///
/// Writes `m(t) = t^δ·p(t)`; requires `δ ≤ 1`, `p` even, and the polynomial
/// `q(s) = p(√−s)` to have all of its roots real and positive (Sturm count).
pub(crate) fn imaginary_spectrum_check(m: &Polynomial<Scalar>) -> Option<ObstructionReason> {
    if !m.is_squarefree() {
        return Some(ObstructionReason::NotDiagonalizable {
            minimal_polynomial: m.clone(),
        });
    }
    let off_axis = || {
        Some(ObstructionReason::SpectrumNotImaginary {
            minimal_polynomial: m.clone(),
        })
    };
    if !m.is_real() {
        return off_axis();
    }
    let delta = m.trailing_zeros();
    let p = Polynomial::new(m.coeffs()[delta..].to_vec());
    if !p.is_even() {
        return off_axis();
    }
    let deg_p = p.degree().unwrap_or(0);
    // t² = −s: coefficient of s^k is p_{2k}·(−1)^k
    let q = Polynomial::new(
        (0..=deg_p / 2)
            .map(|k| {
                let c = p.coeff(2 * k);
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect(),
    );
    let want = q.degree().unwrap_or(0);
    if q.count_positive_roots() == Some(want) {
        None
    } else {
        off_axis()
    }
}

/// Associated metric built from the kernel basis of the contact structure.
pub fn construct_associated_metric(c: &ContactStructure) -> Result<MetricData<f64>> {
    associated_metric_from_basis(c, c.horizontal_basis())
}

/// Polar construction: with `(basis, ξ)` as orthonormal seed frame, let `A` be
/// the matrix of `dη` on `H` and `P = √(AᵀA)`; the metric is `P` on `H`,
/// `g(ξ, ξ) = 1` and `g(ξ, H) = 0`.
pub fn associated_metric_from_basis(
    c: &ContactStructure,
    basis: &[Vector],
) -> Result<MetricData<f64>> {
    let n = c.dim();
    let m = n - 1;
    if basis.len() != m {
        return Err(Error::input(format!("need {m} horizontal vectors, got {}", basis.len())));
    }
    for b in basis {
        check_dim(n, b.len())?;
        if !c.eta_of(b).is_zero() {
            return Err(Error::input("seed basis vector is not horizontal"));
        }
    }
    let mut cols = basis.to_vec();
    cols.push(c.reeb().clone());
    let frame_matrix = Matrix::from_columns(&cols);
    let frame_inv = frame_matrix
        .inverse()
        .ok_or_else(|| Error::input("seed vectors do not span the horizontal space"))?;

    let d = c.d_eta();
    let a = DMatrix::from_fn(m, m, |i, j| {
        d.evaluate(&[&basis[i], &basis[j]]).expect("dimension checked").to_f64()
    });
    let ata = a.transpose() * &a;
    let eig = SymmetricEigen::new(ata);
    if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
        return Err(Error::invariant("dη is degenerate on the horizontal space"));
    }
    let sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    let p = &eig.eigenvectors * sqrt * eig.eigenvectors.transpose();

    let adapted = Matrix::from_fn(n, n, |i, j| match (i < m, j < m) {
        (true, true) => 0.5 * (p[(i, j)] + p[(j, i)]),
        (false, false) => 1.0,
        _ => 0.0,
    });
    let inv = frame_inv.map(Scalar::to_f64);
    let g = inv.transpose().mul(&adapted).mul(&inv);
    let g = Matrix::from_fn(n, n, |i, j| 0.5 * (g[(i, j)] + g[(j, i)]));
    let metric = MetricData::new(g)?;
    if !is_associated(c, &metric)? {
        return Err(Error::invariant("constructed metric is not associated within tolerance"));
    }
    Ok(metric)
}

/// Whether the unique `J` with `k(X, JY) = ω(X, Y)` satisfies `J² = −I`.
pub fn symplectic_is_associated<F: Field>(
    omega: &AlternatingForm,
    k: &MetricData<F>,
) -> Result<(bool, Matrix<F>)> {
    let n = omega.dim();
    check_dim(n, k.dim())?;
    k.require_positive_definite()?;
    let w = omega.as_matrix()?.map(F::from_scalar);
    if w.inverse().is_none() {
        return Err(Error::input("ω is degenerate"));
    }
    let j = k.matrix().inverse().expect("positive definite").mul(&w);
    let ok = j.mul(&j).add(&Matrix::identity(n)).is_zero();
    Ok((ok, j))
}

/// `S(x) = x + t·dη(v, x)·v` for horizontal `v`: fixes `ξ`, preserves `H` and
/// `dη`, so `SᵀGS` is associated whenever `G` is.
pub fn transvection(c: &ContactStructure, v: &[Scalar], t: &Scalar) -> Result<Matrix<Scalar>> {
    check_dim(c.dim(), v.len())?;
    if !c.eta_of(v).is_zero() {
        return Err(Error::input("transvection direction must be horizontal"));
    }
    let d = c.d_eta().as_matrix()?;
    let n = c.dim();
    // column j: e_j + t·dη(v, e_j)·v
    let cols: Vec<Vector> = (0..n)
        .map(|j| {
            let coef = t * &dot(v, &d.column(j));
            vec_add(&unit(n, j), &v.iter().map(|x| &coef * x).collect::<Vec<_>>())
        })
        .collect();
    Ok(Matrix::from_columns(&cols))
}

/// `g'(X, Y) = g(SX, SY)`.
pub fn pull_back_metric(g: &MetricData<Scalar>, s: &Matrix<Scalar>) -> Result<MetricData<Scalar>> {
    MetricData::new(s.transpose().mul(g.matrix()).mul(s))
}
