//! Spectral analysis of `ad(ξ)` on complex contact algebras.
//!
//! Root spaces come with the graded bracket and the `dη` pairing between
//! them. For diagonalizable `ad(ξ)` in dimension ≥ 5 the root data force
//! `ad(ξ) = 0`.

use std::fmt;

use num_complex::Complex64;

use crate::algebra::{Endomorphism, FieldKind, Vector};
use crate::contact::ContactStructure;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{is_zero_vec, vec_scale, vec_sub, Matrix};
use crate::poly::Polynomial;
use crate::scalar::{Scalar, FLOAT_TOLERANCE};

/// Monic minimal polynomial, found as the first power of `m` that depends
/// linearly on the lower ones.
pub fn minimal_polynomial(m: &Endomorphism) -> Polynomial<Scalar> {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let n = m.rows();
    let flatten = |a: &Endomorphism| a.to_rows().concat();
    let mut powers = vec![flatten(&Matrix::identity(n))];
    let mut current = Matrix::identity(n);
    loop {
        current = current.mul(m);
        let target = flatten(&current);
        let basis = Matrix::from_columns(&powers);
        if let Some(c) = basis.solve_unique(&target) {
            let mut coeffs: Vec<Scalar> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Scalar::one());
            return Polynomial::new(coeffs);
        }
        powers.push(target);
    }
}

/// Characteristic polynomial `det(tI − M)` by the Faddeev–LeVerrier
/// recursion.
pub fn characteristic_polynomial(m: &Endomorphism) -> Polynomial<Scalar> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut aux = Matrix::<Scalar>::zeros(n, n);
    for k in 1..=n {
        aux = m.mul(&aux).add(&Matrix::identity(n).scale(&coeffs[n - k + 1]));
        let trace: Scalar = (0..n).map(|i| m.mul(&aux)[(i, i)].clone()).sum();
        coeffs[n - k] = -(trace / Scalar::from_int(k as i64));
    }
    Polynomial::new(coeffs)
}

pub fn is_diagonalizable(m: &Endomorphism) -> bool {
    minimal_polynomial(m).is_squarefree()
}

fn eigenspace(m: &Endomorphism, alpha: &Scalar) -> Vec<Vector> {
    let n = m.rows();
    m.sub(&Matrix::identity(n).scale(alpha)).nullspace()
}

/// An eigenvalue of `ad(ξ)` with a basis of its eigenspace.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSpace<F> {
    pub root: F,
    pub basis: Vec<Vec<F>>,
}

/// Exact root decomposition `𝔤 = ⊕ 𝔤_α` of a complex contact algebra.
#[derive(Clone, Debug)]
pub struct RootDecomposition {
    contact: ContactStructure,
    ad_reeb: Endomorphism,
    spaces: Vec<RootSpace<Scalar>>,
}

/// Eigenbases computed in floating point when the spectrum is not Gaussian
/// rational.
#[derive(Clone, Debug)]
pub struct ApproximateRoots {
    pub spaces: Vec<RootSpace<Complex64>>,
    pub warning: String,
}

#[derive(Clone, Debug)]
pub enum Roots {
    Exact(RootDecomposition),
    Approximate(ApproximateRoots),
}

impl Roots {
    pub fn values(&self) -> RootValues {
        match self {
            Roots::Exact(rd) => RootValues::Exact(rd.roots()),
            Roots::Approximate(a) => RootValues::Approximate(a.spaces.iter().map(|s| s.root).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RootValues {
    Exact(Vec<Scalar>),
    Approximate(Vec<Complex64>),
    Unavailable,
}

impl fmt::Display for RootValues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootValues::Exact(r) => {
                let parts: Vec<String> = r.iter().map(Scalar::to_string).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            RootValues::Approximate(r) => {
                let parts: Vec<String> = r.iter().map(|z| format!("{:.9}{:+.9}i", z.re, z.im)).collect();
                write!(f, "≈{{{}}}", parts.join(", "))
            }
            RootValues::Unavailable => f.write_str("unavailable"),
        }
    }
}

fn require_complex(c: &ContactStructure) -> Result<()> {
    if c.field() == FieldKind::Complex {
        Ok(())
    } else {
        Err(Error::input("root decomposition needs a complex contact structure; complexify first"))
    }
}

/// Root spaces of `ad(ξ)`, exact when the minimal polynomial splits over the
/// Gaussian rationals and floating (tolerance 1e-9) otherwise.
pub fn root_decomposition(c: &ContactStructure) -> Result<Roots> {
    require_complex(c)?;
    let ad = c.ad_reeb();
    let m = minimal_polynomial(&ad);
    if !m.is_squarefree() {
        return Err(Error::NotDiagonalizable(m.to_string()));
    }
    match m.gaussian_rational_roots() {
        Some(mut roots) => {
            // zero first, the rest in lexicographic order
            roots.sort_by(|a, b| b.is_zero().cmp(&a.is_zero()).then(a.lex_cmp(b)));
            let spaces = roots
                .into_iter()
                .map(|root| {
                    let basis = eigenspace(&ad, &root);
                    RootSpace { root, basis }
                })
                .collect();
            let rd = RootDecomposition {
                contact: c.clone(),
                ad_reeb: ad,
                spaces,
            };
            rd.check_invariants()?;
            Ok(Roots::Exact(rd))
        }
        None => approximate_roots(c, &ad, &m).map(Roots::Approximate),
    }
}

fn approximate_roots(
    c: &ContactStructure,
    ad: &Endomorphism,
    m: &Polynomial<Scalar>,
) -> Result<ApproximateRoots> {
    let n = c.dim();
    let adf = ad.map(Scalar::to_complex64);
    let mut roots = m.numeric_roots();
    roots.sort_by(|a, b| {
        (a.norm() > FLOAT_TOLERANCE)
            .cmp(&(b.norm() > FLOAT_TOLERANCE))
            .then(a.re.total_cmp(&b.re))
            .then(a.im.total_cmp(&b.im))
    });
    let mut spaces = Vec::new();
    for root in roots {
        let shifted = adf.sub(&Matrix::identity(n).scale(&root));
        let basis = shifted.nullspace();
        for v in &basis {
            let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let residual = shifted.mul_vec(v).iter().map(|z| z.norm()).fold(0.0, f64::max);
            if residual > FLOAT_TOLERANCE * scale {
                return Err(Error::invariant(format!(
                    "floating eigenvector residual {residual:e} exceeds tolerance for root {root}"
                )));
            }
        }
        spaces.push(RootSpace { root, basis });
    }
    let total: usize = spaces.iter().map(|s| s.basis.len()).sum();
    if total != n {
        return Err(Error::invariant(format!(
            "floating eigenspaces have total dimension {total}, expected {n}; the spectrum is ill-conditioned"
        )));
    }
    Ok(ApproximateRoots {
        spaces,
        warning: format!(
            "minimal polynomial {m} does not split over the Gaussian rationals; eigenbases are floating with tolerance {FLOAT_TOLERANCE:e}"
        ),
    })
}

impl RootDecomposition {
    fn check_invariants(&self) -> Result<()> {
        let n = self.contact.dim();
        let total: usize = self.spaces.iter().map(|s| s.basis.len()).sum();
        if total != n {
            return Err(Error::invariant(format!("root spaces have total dimension {total}, expected {n}")));
        }
        if !self.spaces.iter().any(|s| s.root.is_zero()) {
            return Err(Error::invariant("0 is not a root although ad(ξ)ξ = 0"));
        }
        for s in &self.spaces {
            for v in &s.basis {
                if self.ad_reeb.mul_vec(v) != vec_scale(&s.root, v) {
                    return Err(Error::invariant(format!("eigenvector equation fails for root {}", s.root)));
                }
                if !s.root.is_zero() && !self.contact.eta_of(v).is_zero() {
                    return Err(Error::invariant(format!("root space of {} is not horizontal", s.root)));
                }
            }
        }
        Ok(())
    }

    pub fn contact(&self) -> &ContactStructure {
        &self.contact
    }

    pub fn spaces(&self) -> &[RootSpace<Scalar>] {
        &self.spaces
    }

    pub fn roots(&self) -> Vec<Scalar> {
        self.spaces.iter().map(|s| s.root.clone()).collect()
    }

    /// Basis of `𝔤_α`, empty when `α` is not a root.
    pub fn space(&self, alpha: &Scalar) -> &[Vector] {
        self.spaces
            .iter()
            .find(|s| &s.root == alpha)
            .map(|s| s.basis.as_slice())
            .unwrap_or(&[])
    }

    pub fn multiplicity(&self, alpha: &Scalar) -> usize {
        self.space(alpha).len()
    }

    /// Basis of `𝔤₀ ∩ H`.
    pub fn zero_horizontal(&self) -> Vec<Vector> {
        let g0 = self.space(&Scalar::zero());
        if g0.is_empty() {
            return Vec::new();
        }
        let etas = Matrix::from_rows(vec![g0.iter().map(|v| self.contact.eta_of(v)).collect()]);
        let span = Matrix::from_columns(g0);
        etas.nullspace().iter().map(|c| span.mul_vec(c)).collect()
    }

    /// The space `dη` pairs with `𝔤_α`: `𝔤_{−α}` for `α ≠ 0`, `𝔤₀ ∩ H` for
    /// `α = 0` (the Reeb field spans the kernel of `dη` on `𝔤₀`).
    fn partner_space(&self, alpha: &Scalar) -> Vec<Vector> {
        if alpha.is_zero() {
            self.zero_horizontal()
        } else {
            self.space(&-alpha).to_vec()
        }
    }

    /// Matrix `dη(x_i, y_j)` between the bases of `𝔤_α` (or `𝔤₀ ∩ H`) and its
    /// partner space.
    pub fn pairing_matrix(&self, alpha: &Scalar) -> Matrix<Scalar> {
        let left = if alpha.is_zero() {
            self.zero_horizontal()
        } else {
            self.space(alpha).to_vec()
        };
        let right = self.partner_space(alpha);
        let d = self.contact.d_eta();
        Matrix::from_fn(left.len(), right.len(), |i, j| {
            d.evaluate(&[&left[i], &right[j]]).expect("dimension-consistent")
        })
    }

    /// Whether `dη` pairs `𝔤_α` and its partner nondegenerately.
    pub fn pairing_is_nondegenerate(&self, alpha: &Scalar) -> bool {
        let p = self.pairing_matrix(alpha);
        p.rows() == p.cols() && p.rank() == p.rows()
    }
}

/// Outcome of [`verify_graded_bracket`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBracketReport {
    pub pairs_checked: usize,
    /// Pairs with `α + β = 0` and `dη(X, Y) ≠ 0`.
    pub opposite_pairings: usize,
}

/// Checks `ad(ξ)[X, Y] = (α+β)[X, Y]` and `α+β ≠ 0 ⇒ dη(X, Y) = 0` on all
/// pairs of root-space basis vectors.
pub fn verify_graded_bracket(rd: &RootDecomposition) -> Result<GradedBracketReport> {
    let algebra = rd.contact.algebra();
    let d = rd.contact.d_eta();
    let mut report = GradedBracketReport {
        pairs_checked: 0,
        opposite_pairings: 0,
    };
    for a in &rd.spaces {
        for b in &rd.spaces {
            let sum = &a.root + &b.root;
            for x in &a.basis {
                for y in &b.basis {
                    report.pairs_checked += 1;
                    let z = algebra.bracket(x, y)?;
                    if rd.ad_reeb.mul_vec(&z) != vec_scale(&sum, &z) {
                        return Err(Error::invariant(format!(
                            "[g_{}, g_{}] is not contained in g_{}",
                            a.root, b.root, sum
                        )));
                    }
                    let value = d.evaluate(&[x, y])?;
                    if sum.is_zero() {
                        if !value.is_zero() {
                            report.opposite_pairings += 1;
                        }
                    } else if !value.is_zero() {
                        return Err(Error::invariant(format!(
                            "dη(X, Y) = {value} ≠ 0 for X ∈ g_{}, Y ∈ g_{}",
                            a.root, b.root
                        )));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// For `X ∈ 𝔤_α` finds `Y ∈ 𝔤_{−α}` with `η([X, Y]) = 1`; returns `(Y, Z)`
/// with `[X, Y] = ξ + Z` and `Z ∈ 𝔤₀ ∩ H`.
///
/// For `α = 0`, `X` must be horizontal and `Y` is taken in `𝔤₀ ∩ H`.
pub fn find_dual_partner(rd: &RootDecomposition, x: &[Scalar], alpha: &Scalar) -> Result<(Vector, Vector)> {
    let c = &rd.contact;
    check_dim(c.dim(), x.len())?;
    if is_zero_vec(x) {
        return Err(Error::input("dual partner of the zero vector"));
    }
    if rd.ad_reeb.mul_vec(x) != vec_scale(alpha, x) {
        return Err(Error::input(format!("vector is not in the root space of {alpha}")));
    }
    if alpha.is_zero() && !c.eta_of(x).is_zero() {
        return Err(Error::input("for the root 0 the vector must lie in g₀ ∩ H"));
    }
    let algebra = c.algebra();
    let candidates = rd.partner_space(alpha);
    let mut found = None;
    for y in &candidates {
        let value = c.eta_of(&algebra.bracket(x, y)?);
        if !value.is_zero() {
            let coef = value.recip().expect("nonzero");
            found = Some(vec_scale(&coef, y));
            break;
        }
    }
    let y = found.ok_or_else(|| {
        Error::invariant(format!("no dual partner in g_{} for a vector of g_{alpha}", -alpha))
    })?;
    let z = vec_sub(&algebra.bracket(x, &y)?, c.reeb());
    if !c.eta_of(&z).is_zero() || !is_zero_vec(&rd.ad_reeb.mul_vec(&z)) {
        return Err(Error::invariant("[X, Y] − ξ is not in g₀ ∩ H"));
    }
    Ok((y, z))
}

#[derive(Clone, Debug, PartialEq)]
pub enum HypothesisFailure {
    NotDiagonalizable { minimal_polynomial: Polynomial<Scalar> },
    /// `dim = 3`: the vanishing theorem needs `n > 1`.
    LowDimension,
}

impl fmt::Display for HypothesisFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypothesisFailure::NotDiagonalizable { minimal_polynomial } => {
                write!(f, "not diagonalizable (minimal polynomial {minimal_polynomial})")
            }
            HypothesisFailure::LowDimension => f.write_str("n=1 exclusion"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    /// `ad(ξ)` diagonalizable and `n > 1`.
    pub applicable: bool,
    pub hypothesis_failures: Vec<HypothesisFailure>,
    /// `ad(ξ) = 0`.
    pub conclusion_verified: bool,
    pub roots: RootValues,
}

/// On a complex contact algebra of dimension `2n+1` with `n > 1` and
/// diagonalizable `ad(ξ)`, asserts `ad(ξ) = 0`.
pub fn verify_reeb_theorem(c: &ContactStructure) -> Result<TheoremReport> {
    require_complex(c)?;
    let ad = c.ad_reeb();
    let m = minimal_polynomial(&ad);
    let mut hypothesis_failures = Vec::new();
    let diagonalizable = m.is_squarefree();
    if !diagonalizable {
        hypothesis_failures.push(HypothesisFailure::NotDiagonalizable {
            minimal_polynomial: m.clone(),
        });
    }
    if c.n() <= 1 {
        hypothesis_failures.push(HypothesisFailure::LowDimension);
    }
    let applicable = hypothesis_failures.is_empty();
    let ad_zero = ad.is_zero();
    if applicable && !ad_zero {
        return Err(Error::invariant(format!(
            "diagonalizable ad(ξ) ≠ 0 on {} (dim {}): minimal polynomial {m}, ad(ξ) = {:?}",
            c.algebra().name(),
            c.dim(),
            ad.to_rows().iter().map(|r| r.iter().map(Scalar::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()
        )));
    }
    let roots = if diagonalizable {
        root_decomposition(c)?.values()
    } else {
        RootValues::Unavailable
    };
    Ok(TheoremReport {
        applicable,
        hypothesis_failures,
        conclusion_verified: ad_zero,
        roots,
    })
}
