//! Central extensions of symplectic Lie algebras and their inverse, the
//! quotient by a central Reeb field.
//!
//! [`analyze_kcontact`] runs the K-contact test and ends at the quotient.

use crate::algebra::{FieldKind, LieAlgebra, Vector};
use crate::contact::ContactStructure;
use crate::error::{Error, Result};
use crate::forms::{ce_differential, check_form_field, increasing_tuples, AlternatingForm};
use crate::linalg::{unit, Matrix};
use crate::metric::{kcontact_obstruction, kcontact_verdict, AssociatedGeometry, MetricData, Obstruction};
use crate::scalar::{Field, Scalar};
use crate::spectral::{minimal_polynomial, root_decomposition, verify_reeb_theorem, RootValues};

/// An even-dimensional Lie algebra with a closed nondegenerate 2-form.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticAlgebra {
    algebra: LieAlgebra,
    omega: AlternatingForm,
}

impl SymplecticAlgebra {
    pub fn new(algebra: LieAlgebra, omega: AlternatingForm) -> Result<Self> {
        check_form_field(&algebra, &omega)?;
        if omega.degree() != 2 {
            return Err(Error::input(format!("ω must be a 2-form, got degree {}", omega.degree())));
        }
        let dim = algebra.dim();
        if !dim.is_multiple_of(2) {
            return Err(Error::input(format!("symplectic algebra needs even dimension, got {dim}")));
        }
        if let Some(&(i, j, k)) = algebra.check_jacobi().first() {
            return Err(Error::Jacobi(i, j, k));
        }
        let d_omega = ce_differential(&algebra, &omega)?;
        if let Some((idx, value)) = d_omega.terms().next() {
            return Err(Error::input(format!(
                "ω not closed: dω(f{}, f{}, f{}) = {value}",
                idx[0] + 1,
                idx[1] + 1,
                idx[2] + 1
            )));
        }
        if omega.as_matrix()?.rank() != dim {
            return Err(Error::input("ω is degenerate"));
        }
        Ok(SymplecticAlgebra { algebra, omega })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn omega(&self) -> &AlternatingForm {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// `𝔤 = 𝔰 ⊕ ⟨ξ⟩` with `[X, Y]_𝔤 = [X, Y]_𝔰 − 2ω(X, Y)ξ` and `ξ` central,
/// without any validation of `ω`.
pub fn central_extension_raw(algebra: &LieAlgebra, omega: &AlternatingForm) -> Result<LieAlgebra> {
    check_form_field(algebra, omega)?;
    let w = omega.as_matrix()?;
    let m = algebra.dim();
    let n = m + 1;
    let mut brackets = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut v = algebra.structure(i, j);
            v.push(-(Scalar::from_int(2) * w[(i, j)].clone()));
            brackets.push((i, j, v));
        }
    }
    let mut labels = algebra.labels().to_vec();
    labels.push("xi".to_string());
    LieAlgebra::from_brackets(format!("{}_ext", algebra.name()), algebra.field(), n, Some(labels), brackets)
}

/// Central extension of a symplectic algebra, with `η = ξ*`.
///
/// Checks that the result satisfies Jacobi, is contact with Reeb field `ξ`,
/// and that `dη` restricted to `𝔰` equals `ω`.
pub fn central_extension(s: &SymplecticAlgebra) -> Result<ContactStructure> {
    let g = central_extension_raw(&s.algebra, &s.omega)?;
    if let Some(t) = g.check_jacobi().first() {
        return Err(Error::invariant(format!("extension of a closed form fails Jacobi on {t:?}")));
    }
    let n = g.dim();
    let eta = AlternatingForm::dual_basis(n, n - 1);
    let eta = if s.algebra.field() == FieldKind::Complex { eta.complexify() } else { eta };
    let c = ContactStructure::new(g, eta).map_err(|e| match e {
        Error::NoUniqueReeb => Error::invariant("extension of a nondegenerate form is not contact"),
        other => other,
    })?;
    if c.reeb() != &unit::<Scalar>(n, n - 1) {
        return Err(Error::invariant("Reeb field of the extension is not the adjoined generator"));
    }
    let d = c.d_eta();
    for t in increasing_tuples(n - 1, 2) {
        if d.on_basis(&t) != s.omega.on_basis(&t) {
            return Err(Error::invariant(format!("dη ≠ ω on (f{}, f{})", t[0] + 1, t[1] + 1)));
        }
    }
    Ok(c)
}

/// Validates `ω` on `algebra` and builds the central extension.
pub fn extend(algebra: LieAlgebra, omega: AlternatingForm) -> Result<ContactStructure> {
    central_extension(&SymplecticAlgebra::new(algebra, omega)?)
}

/// `𝔤/⟨ξ⟩` for a central Reeb field, on the images of the horizontal basis,
/// with `ω(X̄, Ȳ) = dη(X, Y)`.
pub fn central_quotient(c: &ContactStructure) -> Result<SymplecticAlgebra> {
    if !c.ad_reeb().is_zero() {
        return Err(Error::ReebNotCentral);
    }
    let hb = c.horizontal_basis();
    let m = hb.len();
    let frame = Matrix::from_columns(hb);
    let coords = |v: &Vector| -> Result<Vector> {
        frame
            .solve_unique(&c.projector().mul_vec(v))
            .ok_or_else(|| Error::invariant("projection is not in the span of the horizontal basis"))
    };
    let algebra = c.algebra();
    let mut brackets = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            brackets.push((a, b, coords(&algebra.bracket(&hb[a], &hb[b])?)?));
        }
    }
    let labels = (1..=m).map(|k| format!("f{k}")).collect();
    let quotient = LieAlgebra::from_brackets(
        format!("{}_quotient", algebra.name()),
        algebra.field(),
        m,
        Some(labels),
        brackets,
    )?;
    let d = c.d_eta();
    let mut entries = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            entries.push((a, b, d.evaluate(&[&hb[a], &hb[b]])?));
        }
    }
    let mut omega = AlternatingForm::two_form(m, &entries)?;
    if algebra.field() == FieldKind::Complex {
        omega = omega.complexify();
    }
    SymplecticAlgebra::new(quotient, omega)
        .map_err(|e| Error::invariant(format!("quotient is not symplectic: {e}")))
}

/// Whether quotienting the central extension returns `S` exactly.
pub fn round_trip(s: &SymplecticAlgebra) -> Result<bool> {
    let q = central_quotient(&central_extension(s)?)?;
    Ok(q.algebra.structure_cube() == s.algebra.structure_cube() && q.omega.as_matrix()? == s.omega.as_matrix()?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MainTheoremReport {
    pub is_kcontact: bool,
    pub dim: usize,
    pub ad_xi_zero: bool,
    pub quotient: Option<SymplecticAlgebra>,
    pub complexification_roots: RootValues,
    /// Exact rational metric (as opposed to a floating one checked within
    /// tolerance).
    pub exact_metric: bool,
    pub notes: Vec<String>,
}

/// K-contact test followed by the spectral consequences on `𝔤^ℂ`. In
/// dimension ≥ 5 it also checks `ad(ξ) = 0` and builds the quotient.
pub fn analyze_kcontact<F: Field>(c: &ContactStructure, g: &MetricData<F>) -> Result<MainTheoremReport> {
    if c.field() != FieldKind::Real {
        return Err(Error::input("K-contact analysis needs a real contact algebra"));
    }
    let geo = AssociatedGeometry::new(c, g)?;
    let is_kcontact = kcontact_verdict(&geo)?;
    let ad_xi_zero = c.ad_reeb().is_zero();
    let mut report = MainTheoremReport {
        is_kcontact,
        dim: c.dim(),
        ad_xi_zero,
        quotient: None,
        complexification_roots: RootValues::Unavailable,
        exact_metric: F::is_exact(),
        notes: Vec::new(),
    };
    if !is_kcontact {
        report.notes.push("not K-contact: h ≠ 0; pipeline stops".into());
        return Ok(report);
    }
    if let Obstruction::Obstructed(reason) = kcontact_obstruction(c) {
        return Err(Error::invariant(format!("K-contact metric on an obstructed algebra: {reason}")));
    }
    let cc = c.complexify()?;
    let m = minimal_polynomial(&cc.ad_reeb());
    if !m.is_squarefree() {
        return Err(Error::invariant(format!("ad(ξ^C) of a K-contact algebra is not diagonalizable: {m}")));
    }
    let roots = root_decomposition(&cc)?.values();
    let imaginary = match &roots {
        RootValues::Exact(r) => r.iter().all(Scalar::is_imaginary),
        RootValues::Approximate(r) => r.iter().all(|z| z.re.abs() <= crate::scalar::FLOAT_TOLERANCE),
        RootValues::Unavailable => false,
    };
    if !imaginary {
        return Err(Error::invariant(format!("ad(ξ^C) of a K-contact algebra has roots {roots} off the imaginary axis")));
    }
    report.complexification_roots = roots;
    if c.n() > 1 {
        let theorem = verify_reeb_theorem(&cc)?;
        if !theorem.applicable || !theorem.conclusion_verified || !ad_xi_zero {
            return Err(Error::invariant("K-contact algebra of dimension ≥ 5 with ad(ξ) ≠ 0"));
        }
        report.quotient = Some(central_quotient(c)?);
        report.notes.push("ad(ξ) = 0: central extension of the symplectic quotient".into());
    } else {
        report.notes.push(format!(
            "n=1 exclusion: dimension 3 lies outside the vanishing theorem; ad(ξ) {} 0",
            if ad_xi_zero { "=" } else { "≠" }
        ));
    }
    Ok(report)
}
