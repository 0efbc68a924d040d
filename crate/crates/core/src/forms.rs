//! Alternating forms on a Lie algebra, the wedge product and the
//! Chevalley–Eilenberg differential.
//!
//! Conventions:
//!
//! * the basis form `e_I*` evaluates to the determinant of the `I`-rows of the
//!   argument vectors, so `(e1*∧e2*)(e1, e2) = 1` (shuffle wedge, no factorial
//!   prefactors);
//! * `dκ(X₀,…,X_k) = 1/(k+1) · Σ_{i<j} (−1)^{i+j} κ([X_i,X_j], X₀,…,X̂_i,…,X̂_j,…)`,
//!   so that `dη(X,Y) = −½ η([X,Y])` for 1-forms.
//!
//! With these two conventions `d∘d = 0`, and the product rule takes the
//! degree-weighted form `(p+q+1)·d(a∧b) = (p+1)·da∧b + (−1)^p (q+1)·a∧db`,
//! which is the ordinary Leibniz rule for the unnormalized coboundary
//! [`coboundary`].

use std::collections::BTreeMap;

use crate::algebra::{FieldKind, LieAlgebra};
use crate::error::{check_dim, Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct AlternatingForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Scalar>,
}

/// Sorts `indices` in place and returns the permutation sign, or `None` when
/// an index repeats.
fn sort_with_sign(indices: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

/// All strictly increasing `k`-tuples from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

fn determinant(rows: Vec<Vec<Scalar>>) -> Scalar {
    if rows.is_empty() {
        return Scalar::one();
    }
    Matrix::from_rows(rows).determinant()
}

impl AlternatingForm {
    /// The zero form. Degrees above `dim` are allowed and denote the
    /// (necessarily zero) forms past the top degree.
    pub fn zero(dim: usize, degree: usize) -> Self {
        AlternatingForm {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one_form(coeffs: Vec<Scalar>) -> Self {
        let dim = coeffs.len();
        let mut f = Self::zero(dim, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            f.add_term(vec![i], c).expect("in range");
        }
        f
    }

    /// `e_i*` on a `dim`-dimensional algebra.
    pub fn dual_basis(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim, 1);
        f.add_term(vec![i], Scalar::one()).expect("in range");
        f
    }

    /// A 2-form from `(i, j, κ(e_i, e_j))` triples.
    pub fn two_form(dim: usize, entries: &[(usize, usize, Scalar)]) -> Result<Self> {
        let mut f = Self::zero(dim, 2);
        for (i, j, c) in entries {
            if i == j {
                if !c.is_zero() {
                    return Err(Error::Antisymmetry { i: *i, j: *j });
                }
                continue;
            }
            f.add_term(vec![*i, *j], c.clone())?;
        }
        Ok(f)
    }

    /// Adds `c · e_{indices}*`; indices may be in any order.
    pub fn add_term(&mut self, mut indices: Vec<usize>, c: Scalar) -> Result<()> {
        check_dim(self.degree, indices.len())?;
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.dim) {
            return Err(Error::input(format!(
                "form index {bad} out of range for dimension {}",
                self.dim
            )));
        }
        let Some(negative) = sort_with_sign(&mut indices) else {
            return Err(Error::input("repeated index in alternating form term"));
        };
        let c = if negative { -c } else { c };
        let entry = self.coeffs.entry(indices).or_insert_with(Scalar::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// True for forms whose degree exceeds the dimension.
    pub fn is_beyond_top(&self) -> bool {
        self.degree > self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients on increasing index tuples.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.coeffs.iter()
    }

    /// Value on basis vectors `e_{i₁},…,e_{i_k}` in the given order.
    pub fn on_basis(&self, indices: &[usize]) -> Scalar {
        let mut sorted = indices.to_vec();
        match sort_with_sign(&mut sorted) {
            None => Scalar::zero(),
            Some(negative) => {
                let c = self.coeffs.get(&sorted).cloned().unwrap_or_default();
                if negative {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Coefficient on the top form `e₁*∧…∧e_dim*`.
    pub fn top_coefficient(&self) -> Scalar {
        if self.degree != self.dim {
            return Scalar::zero();
        }
        self.on_basis(&(0..self.dim).collect::<Vec<_>>())
    }

    /// 1-form coefficients `κ(e_i)`.
    pub fn as_covector(&self) -> Result<Vec<Scalar>> {
        if self.degree != 1 {
            return Err(Error::input(format!("expected a 1-form, got degree {}", self.degree)));
        }
        Ok((0..self.dim).map(|i| self.on_basis(&[i])).collect())
    }

    /// Matrix `D_ij = κ(e_i, e_j)` of a 2-form.
    pub fn as_matrix(&self) -> Result<Matrix<Scalar>> {
        if self.degree != 2 {
            return Err(Error::input(format!("expected a 2-form, got degree {}", self.degree)));
        }
        Ok(Matrix::from_fn(self.dim, self.dim, |i, j| self.on_basis(&[i, j])))
    }

    pub fn evaluate(&self, vectors: &[&[Scalar]]) -> Result<Scalar> {
        if vectors.len() != self.degree {
            return Err(Error::input(format!(
                "a {}-form takes {} arguments, got {}",
                self.degree,
                self.degree,
                vectors.len()
            )));
        }
        for v in vectors {
            check_dim(self.dim, v.len())?;
        }
        let mut total = Scalar::zero();
        for (idx, c) in &self.coeffs {
            let rows: Vec<Vec<Scalar>> = vectors
                .iter()
                .map(|v| idx.iter().map(|&i| v[i].clone()).collect())
                .collect();
            let d = determinant(rows);
            if !d.is_zero() {
                total = &total + &(c * &d);
            }
        }
        Ok(total)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(idx.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        out.coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        check_dim(self.dim, other.dim)?;
        if self.degree != other.degree {
            return Err(Error::input(format!(
                "degree mismatch: {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// Shuffle-convention wedge product. Past the top degree the result is
    /// the zero form.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(self.dim, degree);
        if degree > self.dim {
            return Ok(out);
        }
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let mut idx: Vec<usize> = a.iter().chain(b).copied().collect();
                let negative = sort_with_sign(&mut idx).expect("disjoint");
                let c = ca * cb;
                out.add_term(idx, if negative { -c } else { c })?;
            }
        }
        Ok(out)
    }

    /// `κ^k` under the wedge product (`κ⁰ = 1`).
    pub fn wedge_power(&self, k: usize) -> Result<Self> {
        let mut acc = Self::zero(self.dim, 0);
        acc.coeffs.insert(Vec::new(), Scalar::one());
        for _ in 0..k {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Complex-linear extension; coefficients are unchanged.
    pub fn complexify(&self) -> Self {
        self.clone()
    }
}

/// The 1/(k+1)-normalized Chevalley–Eilenberg differential.
pub fn ce_differential(algebra: &LieAlgebra, form: &AlternatingForm) -> Result<AlternatingForm> {
    let raw = coboundary(algebra, form)?;
    Ok(raw.scale(&Scalar::ratio(1, form.degree as i64 + 1)))
}

/// Unnormalized coboundary `δκ = (k+1)·dκ`.
pub fn coboundary(algebra: &LieAlgebra, form: &AlternatingForm) -> Result<AlternatingForm> {
    let n = algebra.dim();
    check_dim(n, form.dim())?;
    let k = form.degree();
    let mut out = AlternatingForm::zero(n, k + 1);
    if k + 1 > n || form.is_zero() {
        return Ok(out);
    }
    let cube = algebra.structure_cube();
    for tuple in increasing_tuples(n, k + 1) {
        let mut value = Scalar::zero();
        for a in 0..=k {
            for b in a + 1..=k {
                let bracket = &cube[tuple[a]][tuple[b]];
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != a && p != b)
                    .map(|(_, &t)| t)
                    .collect();
                let mut term = Scalar::zero();
                for (m, c) in bracket.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut args = Vec::with_capacity(k);
                    args.push(m);
                    args.extend_from_slice(&rest);
                    let v = form.on_basis(&args);
                    if !v.is_zero() {
                        term = &term + &(c * &v);
                    }
                }
                if (a + b) % 2 == 1 {
                    value = &value - &term;
                } else {
                    value = &value + &term;
                }
            }
        }
        if !value.is_zero() {
            out.add_term(tuple, value)?;
        }
    }
    Ok(out)
}

/// Verdict and coefficient of `η∧(dη)ⁿ` on `e₁*∧…∧e_{2n+1}*`.
pub fn is_contact(algebra: &LieAlgebra, eta: &AlternatingForm) -> Result<(bool, Scalar)> {
    let dim = algebra.dim();
    if dim.is_multiple_of(2) {
        return Err(Error::EvenDimension(dim));
    }
    check_dim(dim, eta.dim())?;
    if eta.degree() != 1 {
        return Err(Error::input("a contact form must have degree 1"));
    }
    let d_eta = ce_differential(algebra, eta)?;
    let top = eta.wedge(&d_eta.wedge_power(dim / 2)?)?;
    let c = top.top_coefficient();
    Ok((!c.is_zero(), c))
}

/// Rejects forms carrying non-real coefficients on a real algebra.
pub fn check_form_field(algebra: &LieAlgebra, form: &AlternatingForm) -> Result<()> {
    check_dim(algebra.dim(), form.dim())?;
    if algebra.field() == FieldKind::Real && form.terms().any(|(_, c)| !c.is_real()) {
        return Err(Error::input("complex coefficient in a form on a real algebra"));
    }
    Ok(())
}
