//! Built-in examples.
//!
//! Contact entries carry the form `eta` and, where a rational associated
//! metric is known, the metric `g`. Symplectic entries carry `omega` and the
//! metric `k`.

use std::collections::BTreeMap;

use crate::algebra::LieAlgebra;
use crate::contact::ContactStructure;
use crate::error::{Error, Result};
use crate::extension::{central_extension, SymplecticAlgebra};
use crate::forms::AlternatingForm;
use crate::io::AlgebraFile;
use crate::metric::MetricData;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Contact,
    Symplectic,
    /// Not contact; kept as a negative example.
    Reference,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub kind: EntryKind,
    pub algebra: LieAlgebra,
    pub forms: BTreeMap<String, AlternatingForm>,
    pub metrics: BTreeMap<String, MetricData<Scalar>>,
}

impl CatalogEntry {
    fn new(
        name: &'static str,
        description: &'static str,
        kind: EntryKind,
        algebra: LieAlgebra,
        form: (&str, AlternatingForm),
        metric: Option<(&str, MetricData<Scalar>)>,
    ) -> Self {
        CatalogEntry {
            name,
            description,
            kind,
            algebra: algebra.with_name(name),
            forms: BTreeMap::from([(form.0.to_string(), form.1)]),
            metrics: metric.into_iter().map(|(k, g)| (k.to_string(), g)).collect(),
        }
    }

    pub fn eta(&self) -> Option<&AlternatingForm> {
        self.forms.get("eta")
    }

    pub fn omega(&self) -> Option<&AlternatingForm> {
        self.forms.get("omega")
    }

    /// The distinguished metric (`g` or `k`).
    pub fn metric(&self) -> Option<&MetricData<Scalar>> {
        self.metrics.get("g").or_else(|| self.metrics.get("k"))
    }

    pub fn contact_structure(&self) -> Result<ContactStructure> {
        let eta = self
            .eta()
            .ok_or_else(|| Error::input(format!("{} has no contact form", self.name)))?;
        ContactStructure::new(self.algebra.clone(), eta.clone())
    }

    pub fn symplectic(&self) -> Result<SymplecticAlgebra> {
        let omega = self
            .omega()
            .ok_or_else(|| Error::input(format!("{} has no symplectic form", self.name)))?;
        SymplecticAlgebra::new(self.algebra.clone(), omega.clone())
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile::from_parts(&self.algebra, &self.forms, &self.metrics).expect("catalog forms have degree ≤ 2")
    }
}

fn q(p: i64, d: i64) -> Scalar {
    Scalar::ratio(p, d)
}

/// `[e_{2k−1}, e_{2k}] = e_{2n+1}`.
pub fn heisenberg(n: usize) -> LieAlgebra {
    let dim = 2 * n + 1;
    let brackets: Vec<_> = (0..n)
        .map(|k| {
            let mut v = vec![Scalar::zero(); dim];
            v[dim - 1] = Scalar::one();
            (2 * k, 2 * k + 1, v)
        })
        .collect();
    LieAlgebra::from_brackets(format!("h{dim}"), crate::FieldKind::Real, dim, None, brackets)
        .expect("valid brackets")
}

/// `diag(½, …, ½, 1)`.
fn half_metric(dim: usize) -> MetricData<Scalar> {
    let mut d = vec![q(1, 2); dim];
    d[dim - 1] = Scalar::one();
    MetricData::diagonal(&d)
}

fn standard_omega(dim: usize) -> AlternatingForm {
    let entries: Vec<_> = (0..dim / 2).map(|k| (2 * k, 2 * k + 1, Scalar::one())).collect();
    AlternatingForm::two_form(dim, &entries).expect("valid entries")
}

fn last_dual(dim: usize) -> AlternatingForm {
    AlternatingForm::dual_basis(dim, dim - 1)
}

fn relabel(a: LieAlgebra, labels: &[&str]) -> LieAlgebra {
    let brackets: Vec<_> = a.nonzero_brackets().into_iter().map(|(i, j, v)| (i, j, v.clone())).collect();
    LieAlgebra::from_brackets(
        a.name().to_string(),
        a.field(),
        a.dim(),
        Some(labels.iter().map(|s| s.to_string()).collect()),
        brackets,
    )
    .expect("same brackets")
}

fn aff1_aff1() -> LieAlgebra {
    let a = LieAlgebra::real_rational("aff1_aff1", 4, &[(0, 1, &[(1, 1, 1)]), (2, 3, &[(3, 1, 1)])]).expect("valid");
    relabel(a, &["f1", "f2", "f3", "f4"])
}

fn abelian_labeled(dim: usize) -> LieAlgebra {
    let labels: Vec<String> = (1..=dim).map(|k| format!("f{k}")).collect();
    LieAlgebra::from_brackets(format!("r{dim}"), crate::FieldKind::Real, dim, Some(labels), std::iter::empty())
        .expect("abelian")
}

fn heisenberg_entry(name: &'static str, n: usize) -> CatalogEntry {
    let dim = 2 * n + 1;
    CatalogEntry::new(
        name,
        "Heisenberg algebra, the central extension of an abelian symplectic algebra",
        EntryKind::Contact,
        heisenberg(n),
        ("eta", last_dual(dim)),
        Some(("g", half_metric(dim))),
    )
}

fn build(name: &str) -> Option<CatalogEntry> {
    use EntryKind::*;
    let entry = match name {
        "heisenberg3" => heisenberg_entry("heisenberg3", 1),
        "heisenberg5" => heisenberg_entry("heisenberg5", 2),
        "heisenberg7" => heisenberg_entry("heisenberg7", 3),
        "su2" => CatalogEntry::new(
            "su2",
            "su(2): K-contact with ad(ξ) ≠ 0, excluded from the vanishing theorem since n = 1",
            Contact,
            LieAlgebra::real_rational(
                "su2",
                3,
                &[(0, 1, &[(2, 1, 1)]), (1, 2, &[(0, 1, 1)]), (2, 0, &[(1, 1, 1)])],
            )
            .ok()?,
            ("eta", last_dual(3)),
            Some(("g", half_metric(3))),
        ),
        "sl2r" => CatalogEntry::new(
            "sl2r",
            "sl(2,R): contact, ad(ξ) has real spectrum ±1, not K-contact",
            Contact,
            LieAlgebra::real_rational(
                "sl2r",
                3,
                &[(2, 0, &[(0, 1, 1)]), (2, 1, &[(1, -1, 1)]), (0, 1, &[(2, 1, 1)])],
            )
            .ok()?,
            ("eta", last_dual(3)),
            Some(("g", half_metric(3))),
        ),
        "aff1_aff1_ext5" => {
            let s = SymplecticAlgebra::new(aff1_aff1(), standard_omega(4)).ok()?;
            let c = central_extension(&s).ok()?;
            CatalogEntry::new(
                "aff1_aff1_ext5",
                "central extension of aff(1)⊕aff(1) by ω = f1*∧f2* + f3*∧f4*",
                Contact,
                c.algebra().clone(),
                ("eta", c.eta().clone()),
                None,
            )
        }
        "nilpotent_nondiag5" => {
            // g1 ⊕ aff(1): [e1,e2] = e5, [e5,e1] = e2, [e3,e4] = e4
            let a = LieAlgebra::real_rational(
                "nilpotent_nondiag5",
                5,
                &[(0, 1, &[(4, 1, 1)]), (4, 0, &[(1, 1, 1)]), (2, 3, &[(3, 1, 1)])],
            )
            .ok()?;
            let eta = AlternatingForm::one_form(vec![q(0, 1), q(0, 1), q(0, 1), q(1, 1), q(1, 1)]);
            CatalogEntry::new(
                "nilpotent_nondiag5",
                "ad(ξ) is a nonzero nilpotent Jordan block: not diagonalizable",
                Contact,
                a,
                ("eta", eta),
                None,
            )
        }
        "r2_sympl" => CatalogEntry::new(
            "r2_sympl",
            "abelian plane with ω = f1*∧f2*",
            Symplectic,
            abelian_labeled(2),
            ("omega", standard_omega(2)),
            Some(("k", MetricData::diagonal(&[q(1, 1), q(1, 1)]))),
        ),
        "r4_sympl" => CatalogEntry::new(
            "r4_sympl",
            "abelian R^4 with ω = f1*∧f2* + f3*∧f4*",
            Symplectic,
            abelian_labeled(4),
            ("omega", standard_omega(4)),
            Some(("k", MetricData::diagonal(&vec![q(1, 1); 4]))),
        ),
        "aff1_aff1_sympl" => CatalogEntry::new(
            "aff1_aff1_sympl",
            "aff(1)⊕aff(1) with ω = f1*∧f2* + f3*∧f4*",
            Symplectic,
            aff1_aff1(),
            ("omega", standard_omega(4)),
            None,
        ),
        "abelian3" => CatalogEntry::new(
            "abelian3",
            "abelian R^3 with η = e3*: not contact",
            Reference,
            LieAlgebra::abelian("abelian3", 3),
            ("eta", last_dual(3)),
            None,
        ),
        _ => return None,
    };
    Some(entry)
}

pub const NAMES: [&str; 11] = [
    "heisenberg3",
    "heisenberg5",
    "heisenberg7",
    "su2",
    "sl2r",
    "aff1_aff1_ext5",
    "nilpotent_nondiag5",
    "r2_sympl",
    "r4_sympl",
    "aff1_aff1_sympl",
    "abelian3",
];

pub fn entry(name: &str) -> Option<CatalogEntry> {
    build(name)
}

pub fn catalog() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| build(n).expect("catalog entries build")).collect()
}
