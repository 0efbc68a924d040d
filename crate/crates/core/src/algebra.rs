//! Finite-dimensional Lie algebras given by structure constants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Coordinates on the algebra's fixed ordered basis.
pub type Vector = Vec<Scalar>;

/// A linear map of the algebra, columns are images of basis vectors.
pub type Endomorphism = Matrix<Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Real,
    Complex,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Real => f.write_str("real"),
            FieldKind::Complex => f.write_str("complex"),
        }
    }
}

/// Structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k`, stored for `i < j`
/// only.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    name: String,
    field: FieldKind,
    dim: usize,
    labels: Vec<String>,
    upper: Vec<Vector>,
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * (2 * dim - i - 1) / 2 + (j - i - 1)
}

impl LieAlgebra {
    /// Builds an algebra from brackets `(i, j, [e_i, e_j])`.
    ///
    /// Pairs with `i > j` are stored negated, `i == j` must carry the zero
    /// vector, and each unordered pair may appear once.
    pub fn from_brackets(
        name: impl Into<String>,
        field: FieldKind,
        dim: usize,
        labels: Option<Vec<String>>,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("dimension must be at least 1"));
        }
        let labels = match labels {
            Some(l) => {
                check_dim(dim, l.len())?;
                l
            }
            None => (1..=dim).map(|k| format!("e{k}")).collect(),
        };
        let mut upper = vec![vec![Scalar::zero(); dim]; dim * (dim - 1) / 2];
        let mut seen = vec![false; upper.len()];
        for (i, j, v) in brackets {
            if i >= dim || j >= dim {
                return Err(Error::input(format!(
                    "bracket index ({i}, {j}) out of range for dimension {dim}"
                )));
            }
            check_dim(dim, v.len())?;
            if field == FieldKind::Real && v.iter().any(|c| !c.is_real()) {
                return Err(Error::input(format!(
                    "complex structure constant in [e{i}, e{j}] of a real algebra"
                )));
            }
            if i == j {
                if v.iter().any(|c| !c.is_zero()) {
                    return Err(Error::Antisymmetry { i, j });
                }
                continue;
            }
            let (a, b, v) = if i < j {
                (i, j, v)
            } else {
                (j, i, v.iter().map(|c| -c).collect())
            };
            let idx = pair_index(dim, a, b);
            if seen[idx] {
                return Err(Error::input(format!("duplicate bracket for pair ({a}, {b})")));
            }
            seen[idx] = true;
            upper[idx] = v;
        }
        Ok(LieAlgebra {
            name: name.into(),
            field,
            dim,
            labels,
            upper,
        })
    }

    /// Convenience constructor for real algebras with integer/rational data:
    /// `(i, j, &[(k, p, q)])` means `[e_i, e_j]` gets `p/q · e_k`.
    pub fn real_rational(
        name: &str,
        dim: usize,
        brackets: &[(usize, usize, &[(usize, i64, i64)])],
    ) -> Result<Self> {
        let items = brackets.iter().map(|(i, j, terms)| {
            let mut v = vec![Scalar::zero(); dim];
            for &(k, p, q) in terms.iter() {
                if k < dim {
                    v[k] = &v[k] + &Scalar::ratio(p, q);
                }
            }
            (*i, *j, v)
        });
        Self::from_brackets(name, FieldKind::Real, dim, None, items)
    }

    pub fn abelian(name: &str, dim: usize) -> Self {
        Self::from_brackets(name, FieldKind::Real, dim, None, std::iter::empty())
            .expect("abelian algebra of positive dimension")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `[e_i, e_j]`, synthesizing antisymmetry.
    pub fn structure(&self, i: usize, j: usize) -> Vector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper[pair_index(self.dim, i, j)].clone(),
            Greater => self.upper[pair_index(self.dim, j, i)].iter().map(|c| -c).collect(),
            Equal => vec![Scalar::zero(); self.dim],
        }
    }

    /// Full cube `c[i][j][k]`.
    pub fn structure_cube(&self) -> Vec<Vec<Vector>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.structure(i, j)).collect())
            .collect()
    }

    /// Nonzero brackets with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, &Vector)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = &self.upper[pair_index(self.dim, i, j)];
                if v.iter().any(|c| !c.is_zero()) {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.upper.iter().flatten().all(Scalar::is_zero)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        check_dim(self.dim, x.len())?;
        check_dim(self.dim, y.len())?;
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let coef = &x[i] * &y[j] - &x[j] * &y[i];
                if coef.is_zero() {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(&self.upper[pair_index(self.dim, i, j)]) {
                    if !c.is_zero() {
                        *o = &*o + &(&coef * c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn ad(&self, x: &[Scalar]) -> Result<Endomorphism> {
        check_dim(self.dim, x.len())?;
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| {
                let mut col = vec![Scalar::zero(); self.dim];
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() || i == j {
                        continue;
                    }
                    for (o, c) in col.iter_mut().zip(self.structure(i, j)) {
                        *o = &*o + &(xi * &c);
                    }
                }
                col
            })
            .collect();
        Ok(Matrix::from_columns(&cols))
    }

    /// Basis triples `i < j < k` on which the cyclic Jacobi sum is nonzero.
    /// Exact; empty iff the structure constants define a Lie algebra.
    pub fn check_jacobi(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    if !self.jacobi_sum(i, j, k).iter().all(Scalar::is_zero) {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobi_sum(&self, i: usize, j: usize, k: usize) -> Vector {
        let unit = |m: usize| crate::linalg::unit::<Scalar>(self.dim, m);
        let term = |a: usize, b: usize, c: usize| {
            self.bracket(&self.structure(a, b), &unit(c)).expect("dimension-consistent")
        };
        let t1 = term(i, j, k);
        let t2 = term(j, k, i);
        let t3 = term(k, i, j);
        t1.iter()
            .zip(&t2)
            .zip(&t3)
            .map(|((a, b), c)| a + b + c.clone())
            .collect()
    }

    /// Same structure constants over ℂ.
    pub fn complexify(&self) -> Result<Self> {
        if self.field == FieldKind::Complex {
            return Err(Error::input(format!(
                "algebra {:?} is already complex",
                self.name
            )));
        }
        let mut out = self.clone();
        out.field = FieldKind::Complex;
        out.name = format!("{}^C", self.name);
        Ok(out)
    }
}
