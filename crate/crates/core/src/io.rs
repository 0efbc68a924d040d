//! JSON algebra files.
//!
//! ```json
//! {
//!   "name": "heisenberg3",
//!   "field": "real",
//!   "dim": 3,
//!   "basis": ["e1", "e2", "e3"],
//!   "brackets": [{"i": 0, "j": 1, "terms": [[2, "1"]]}],
//!   "forms": {"eta": ["0", "0", "1"], "omega": [[0, 1, "1/2"]]},
//!   "metrics": {"g": {"diag": ["1/2", "1/2", "1"]}}
//! }
//! ```
//!
//! Indices are 0-based, brackets are listed with `i < j`, coefficients are
//! exact text (`"p/q"`, or `"p/q,r/s"` for `p/q + (r/s)i`). A 1-form is an
//! array of `dim` coefficients, a 2-form a list of `[i, j, κ(e_i, e_j)]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{FieldKind, LieAlgebra};
use crate::error::{Error, Result};
use crate::forms::AlternatingForm;
use crate::linalg::Matrix;
use crate::metric::MetricData;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub field: FieldKind,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, FormEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, MetricEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, Scalar)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormEntry {
    OneForm(Vec<Scalar>),
    TwoForm(Vec<(usize, usize, Scalar)>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricEntry {
    Diag(Vec<Scalar>),
    Matrix(Vec<Vec<Scalar>>),
}

/// A loaded file: the algebra with its named forms and metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct Loaded {
    pub algebra: LieAlgebra,
    pub forms: BTreeMap<String, AlternatingForm>,
    pub metrics: BTreeMap<String, MetricData<Scalar>>,
}

impl Loaded {
    pub fn form(&self, name: &str) -> Result<&AlternatingForm> {
        self.forms.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.forms.keys().map(String::as_str).collect();
            Error::input(format!("no form named {name:?} (available: {})", known.join(", ")))
        })
    }

    pub fn metric(&self, name: &str) -> Result<&MetricData<Scalar>> {
        self.metrics.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.metrics.keys().map(String::as_str).collect();
            Error::input(format!("no metric named {name:?} (available: {})", known.join(", ")))
        })
    }
}

/// Parses the JSON text; structural and coefficient errors carry the JSON path.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Parse {
            location: if path == "." {
                format!("line {} column {}", inner.line(), inner.column())
            } else {
                format!("{path} (line {} column {})", inner.line(), inner.column())
            },
            message: strip_position(&inner.to_string()),
        }
    })
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(k) => message[..k].to_string(),
        None => message.to_string(),
    }
}

fn out_of_range(location: String, index: usize, dim: usize) -> Error {
    Error::Parse {
        location,
        message: format!("index {index} out of range for dimension {dim}"),
    }
}

impl AlgebraFile {
    /// Builds the algebra after checking indices and the Jacobi identity.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let dim = self.dim;
        let mut items = Vec::with_capacity(self.brackets.len());
        for (n, b) in self.brackets.iter().enumerate() {
            for (idx, name) in [(b.i, "i"), (b.j, "j")] {
                if idx >= dim {
                    return Err(out_of_range(format!("brackets[{n}].{name}"), idx, dim));
                }
            }
            if b.i >= b.j {
                return Err(Error::Parse {
                    location: format!("brackets[{n}]"),
                    message: format!("brackets must be listed with i < j, got ({}, {})", b.i, b.j),
                });
            }
            let mut v = vec![Scalar::zero(); dim];
            for (t, (k, c)) in b.terms.iter().enumerate() {
                if *k >= dim {
                    return Err(out_of_range(format!("brackets[{n}].terms[{t}]"), *k, dim));
                }
                v[*k] = &v[*k] + c;
            }
            items.push((b.i, b.j, v));
        }
        let algebra = LieAlgebra::from_brackets(self.name.clone(), self.field, dim, self.basis.clone(), items)?;
        if let Some(&(i, j, k)) = algebra.check_jacobi().first() {
            return Err(Error::Jacobi(i, j, k));
        }
        Ok(algebra)
    }

    pub fn load(&self) -> Result<Loaded> {
        let algebra = self.to_algebra()?;
        let dim = self.dim;
        let mut forms = BTreeMap::new();
        for (name, entry) in &self.forms {
            let location = format!("forms.{name}");
            let form = match entry {
                FormEntry::OneForm(c) if c.is_empty() => AlternatingForm::zero(dim, 2),
                FormEntry::OneForm(c) => {
                    if c.len() != dim {
                        return Err(Error::Parse {
                            location,
                            message: format!("1-form has {} coefficients, expected {dim}", c.len()),
                        });
                    }
                    AlternatingForm::one_form(c.clone())
                }
                FormEntry::TwoForm(entries) => {
                    for (t, (i, j, _)) in entries.iter().enumerate() {
                        for idx in [*i, *j] {
                            if idx >= dim {
                                return Err(out_of_range(format!("{location}[{t}]"), idx, dim));
                            }
                        }
                    }
                    AlternatingForm::two_form(dim, entries).map_err(|e| Error::Parse {
                        location: location.clone(),
                        message: e.to_string(),
                    })?
                }
            };
            crate::forms::check_form_field(&algebra, &form).map_err(|e| Error::Parse {
                location: format!("forms.{name}"),
                message: e.to_string(),
            })?;
            forms.insert(name.clone(), form);
        }
        let mut metrics = BTreeMap::new();
        for (name, entry) in &self.metrics {
            let location = format!("metrics.{name}");
            let fail = |message: String| Error::Parse {
                location: location.clone(),
                message,
            };
            let matrix = match entry {
                MetricEntry::Diag(d) => {
                    if d.len() != dim {
                        return Err(fail(format!("diagonal has {} entries, expected {dim}", d.len())));
                    }
                    Matrix::diagonal(d)
                }
                MetricEntry::Matrix(rows) => {
                    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                        return Err(fail(format!("metric matrix must be {dim}×{dim}")));
                    }
                    Matrix::from_rows(rows.clone())
                }
            };
            if matrix.to_rows().iter().flatten().any(|c| !c.is_real()) {
                return Err(fail("metric entries must be real".into()));
            }
            let metric = MetricData::new(matrix).map_err(|e| fail(e.to_string()))?;
            metrics.insert(name.clone(), metric);
        }
        Ok(Loaded { algebra, forms, metrics })
    }

    /// Serializes an algebra with named forms (degree 1 or 2) and metrics.
    pub fn from_parts(
        algebra: &LieAlgebra,
        forms: &BTreeMap<String, AlternatingForm>,
        metrics: &BTreeMap<String, MetricData<Scalar>>,
    ) -> Result<Self> {
        let brackets = algebra
            .nonzero_brackets()
            .into_iter()
            .map(|(i, j, v)| BracketEntry {
                i,
                j,
                terms: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect(),
            })
            .collect();
        let mut form_entries = BTreeMap::new();
        for (name, form) in forms {
            let entry = match form.degree() {
                1 => FormEntry::OneForm(form.as_covector()?),
                2 => FormEntry::TwoForm(form.terms().map(|(idx, c)| (idx[0], idx[1], c.clone())).collect()),
                d => return Err(Error::input(format!("cannot store a form of degree {d}"))),
            };
            form_entries.insert(name.clone(), entry);
        }
        let metric_entries = metrics
            .iter()
            .map(|(name, g)| {
                let m = g.matrix();
                let n = m.rows();
                let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)].is_zero()));
                let entry = if diagonal {
                    MetricEntry::Diag((0..n).map(|i| m[(i, i)].clone()).collect())
                } else {
                    MetricEntry::Matrix(m.to_rows())
                };
                (name.clone(), entry)
            })
            .collect();
        Ok(AlgebraFile {
            name: algebra.name().to_string(),
            field: algebra.field(),
            dim: algebra.dim(),
            basis: Some(algebra.labels().to_vec()),
            brackets,
            forms: form_entries,
            metrics: metric_entries,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("file types serialize")
    }
}

/// Parses and loads in one step.
pub fn load_str(text: &str) -> Result<Loaded> {
    parse_algebra_file(text)?.load()
}

/// Reads a skew matrix file: a JSON array of rows of numbers or rational
/// strings.
pub fn parse_real_matrix(text: &str) -> Result<Matrix<f64>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Number(f64),
        Exact(Scalar),
    }
    let de = &mut serde_json::Deserializer::from_str(text);
    let rows: Vec<Vec<Entry>> = serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
        location: e.path().to_string(),
        message: strip_position(&e.into_inner().to_string()),
    })?;
    let n = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse {
            location: ".".into(),
            message: "matrix rows must be nonempty and of equal length".into(),
        });
    }
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.into_iter().enumerate() {
        let mut vals = Vec::with_capacity(n);
        for (c, e) in row.into_iter().enumerate() {
            vals.push(match e {
                Entry::Number(x) => x,
                Entry::Exact(s) if s.is_real() => s.to_f64(),
                Entry::Exact(_) => {
                    return Err(Error::Parse {
                        location: format!("[{r}][{c}]"),
                        message: "matrix entries must be real".into(),
                    })
                }
            });
        }
        out.push(vals);
    }
    Ok(Matrix::from_rows(out))
}
