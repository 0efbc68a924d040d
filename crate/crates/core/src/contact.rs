//! Contact structures: the Reeb field, the horizontal distribution `H = ker η`
//! and the splitting `X = η(X)ξ + HX`.

use crate::algebra::{Endomorphism, FieldKind, LieAlgebra, Vector};
use crate::error::{check_dim, Error, Result};
use crate::forms::{ce_differential, check_form_field, is_contact, AlternatingForm};
use crate::linalg::{outer, vec_scale, vec_sub, Matrix};
use crate::scalar::Scalar;

/// Solves `η(ξ) = 1`, `dη(ξ, e_j) = 0` for all `j`.
///
/// The system has a unique solution exactly when `η∧(dη)ⁿ ≠ 0`; the contact
/// test is run alongside and the two verdicts must agree.
pub fn reeb(algebra: &LieAlgebra, eta: &AlternatingForm) -> Result<Vector> {
    let (contact, _) = is_contact(algebra, eta)?;
    let solved = solve_reeb_system(algebra, eta)?;
    match (contact, solved) {
        (true, Some(xi)) => Ok(xi),
        (false, None) => Err(Error::NoUniqueReeb),
        (c, s) => Err(Error::invariant(format!(
            "contact verdict {c} disagrees with Reeb solvability {}",
            s.is_some()
        ))),
    }
}

fn solve_reeb_system(algebra: &LieAlgebra, eta: &AlternatingForm) -> Result<Option<Vector>> {
    let n = algebra.dim();
    let d = ce_differential(algebra, eta)?.as_matrix()?;
    let eta_row = eta.as_covector()?;
    // row 0: η(ξ) = 1; row 1+j: Σ_i ξ_i dη(e_i, e_j) = 0
    let system = Matrix::from_fn(n + 1, n, |r, i| {
        if r == 0 {
            eta_row[i].clone()
        } else {
            d[(i, r - 1)].clone()
        }
    });
    let mut rhs = vec![Scalar::zero(); n + 1];
    rhs[0] = Scalar::one();
    Ok(system.solve_unique(&rhs))
}

/// A validated contact Lie algebra `(𝔤, η, ξ)` together with a basis of
/// `H = ker η` and the projector onto it along `ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactStructure {
    algebra: LieAlgebra,
    eta: AlternatingForm,
    d_eta: AlternatingForm,
    top_coefficient: Scalar,
    reeb: Vector,
    horizontal_basis: Vec<Vector>,
    projector: Endomorphism,
}

impl ContactStructure {
    pub fn new(algebra: LieAlgebra, eta: AlternatingForm) -> Result<Self> {
        check_form_field(&algebra, &eta)?;
        let (_, top_coefficient) = is_contact(&algebra, &eta)?;
        let reeb = reeb(&algebra, &eta)?;
        let d_eta = ce_differential(&algebra, &eta)?;
        let covector = eta.as_covector()?;
        let horizontal_basis = Matrix::from_rows(vec![covector.clone()]).nullspace();
        let n = algebra.dim();
        let projector = Matrix::identity(n).sub(&outer(&reeb, &covector));

        let c = ContactStructure {
            algebra,
            eta,
            d_eta,
            top_coefficient,
            reeb,
            horizontal_basis,
            projector,
        };
        c.check_invariants()?;
        Ok(c)
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.dim();
        let p = &self.projector;
        let eta = self.eta.as_covector()?;
        let ok = self.horizontal_basis.len() == n - 1
            && self.eta_of(&self.reeb).is_one()
            && p.mul(p) == *p
            && p.mul_vec(&self.reeb).iter().all(Scalar::is_zero)
            && Matrix::from_rows(vec![eta]).mul(p).is_zero()
            && self
                .horizontal_basis
                .iter()
                .all(|h| self.eta_of(h).is_zero());
        if ok {
            Ok(())
        } else {
            Err(Error::invariant("contact splitting invariants fail"))
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn eta(&self) -> &AlternatingForm {
        &self.eta
    }

    pub fn d_eta(&self) -> &AlternatingForm {
        &self.d_eta
    }

    pub fn top_coefficient(&self) -> &Scalar {
        &self.top_coefficient
    }

    pub fn reeb(&self) -> &Vector {
        &self.reeb
    }

    pub fn horizontal_basis(&self) -> &[Vector] {
        &self.horizontal_basis
    }

    pub fn projector(&self) -> &Endomorphism {
        &self.projector
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `dim = 2n + 1`.
    pub fn n(&self) -> usize {
        self.dim() / 2
    }

    pub fn field(&self) -> FieldKind {
        self.algebra.field()
    }

    pub fn eta_of(&self, x: &[Scalar]) -> Scalar {
        self.eta.evaluate(&[x]).expect("dimension checked by caller")
    }

    pub fn ad_reeb(&self) -> Endomorphism {
        self.algebra.ad(&self.reeb).expect("reeb has algebra dimension")
    }

    /// `(η(X), HX)` with `X = η(X)·ξ + HX`.
    pub fn decompose(&self, x: &[Scalar]) -> Result<(Scalar, Vector)> {
        check_dim(self.dim(), x.len())?;
        let c = self.eta_of(x);
        let hx = self.projector.mul_vec(x);
        debug_assert_eq!(vec_sub(x, &vec_scale(&c, &self.reeb)), hx);
        Ok((c, hx))
    }

    /// Complexified structure: `η^ℂ` has the same coefficients and the Reeb
    /// field is recomputed on `𝔤^ℂ` (it must coincide with the real one).
    pub fn complexify(&self) -> Result<Self> {
        let algebra = self.algebra.complexify()?;
        let c = ContactStructure::new(algebra, self.eta.complexify())?;
        if c.reeb != self.reeb {
            return Err(Error::invariant(
                "Reeb field of the complexification differs from the real Reeb field",
            ));
        }
        Ok(c)
    }
}
