//! Independent reference computations used to cross-check the library.
//!
//! Forms are dense maps over *all* ordered index tuples (fully antisymmetric
//! tensors), the wedge is the shuffle sum over permutations, and linear
//! solves use a separate Gaussian elimination on `BigRational`. Only real
//! algebras are handled.
#![allow(dead_code)]

use std::collections::BTreeMap;

use contact_lie::{AlternatingForm, LieAlgebra, Scalar};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(p: i64, d: i64) -> Q {
    Q::new(p.into(), d.into())
}

pub fn re(s: &Scalar) -> Q {
    assert!(s.is_real());
    s.re().clone()
}

/// Structure constants `c[i][j][k]`, read through `bracket` on basis vectors.
pub fn constants(a: &LieAlgebra) -> Vec<Vec<Vec<Q>>> {
    let n = a.dim();
    let e = |i: usize| -> Vec<Scalar> { (0..n).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect() };
    (0..n)
        .map(|i| (0..n).map(|j| a.bracket(&e(i), &e(j)).unwrap().iter().map(re).collect()).collect())
        .collect()
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    if k == 0 {
        return vec![(vec![], false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut np = p.clone();
            np.insert(pos, k - 1);
            // inserting at pos moves k-1 past (len - pos) elements
            let flips = p.len() - pos;
            out.push((np, odd ^ (flips % 2 == 1)));
        }
    }
    out
}

fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in increasing_tuples(n, k - 1) {
        let start = t.last().map_or(0, |&x| x + 1);
        for i in start..n {
            let mut u = t.clone();
            u.push(i);
            out.push(u);
        }
    }
    out
}

/// A fully antisymmetric tensor on basis tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub dim: usize,
    pub degree: usize,
    pub values: BTreeMap<Vec<usize>, Q>,
}

impl Dense {
    pub fn get(&self, idx: &[usize]) -> Q {
        self.values.get(idx).cloned().unwrap_or_else(Q::zero)
    }

    pub fn from_form(f: &AlternatingForm) -> Dense {
        let mut values = BTreeMap::new();
        for (idx, c) in f.terms() {
            for (p, odd) in permutations(idx.len()) {
                let t: Vec<usize> = p.iter().map(|&k| idx[k]).collect();
                let v = re(c);
                values.insert(t, if odd { -v } else { v });
            }
        }
        Dense { dim: f.dim(), degree: f.degree(), values }
    }

    /// Coefficients on increasing tuples.
    pub fn increasing(&self) -> BTreeMap<Vec<usize>, Q> {
        self.values
            .iter()
            .filter(|(k, v)| k.windows(2).all(|w| w[0] < w[1]) && !v.is_zero())
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    /// Multilinear evaluation on vectors.
    pub fn eval(&self, vs: &[Vec<Q>]) -> Q {
        let mut total = Q::zero();
        for (idx, c) in &self.values {
            let mut term = c.clone();
            for (slot, &i) in idx.iter().enumerate() {
                term *= &vs[slot][i];
            }
            total += term;
        }
        total
    }

    /// Builds the tensor from its values on increasing tuples, extended by
    /// antisymmetry.
    fn from_fn(dim: usize, degree: usize, f: impl Fn(&[usize]) -> Q) -> Dense {
        let mut values = BTreeMap::new();
        let perms = permutations(degree);
        for t in increasing_tuples(dim, degree) {
            let v = f(&t);
            if v.is_zero() {
                continue;
            }
            for (p, odd) in &perms {
                let u: Vec<usize> = p.iter().map(|&k| t[k]).collect();
                values.insert(u, if *odd { -v.clone() } else { v.clone() });
            }
        }
        Dense { dim, degree, values }
    }
}

fn factorial(k: usize) -> Q {
    (1..=k as i64).fold(Q::one(), |acc, x| acc * q(x, 1))
}

/// `(a∧b)(v_1..v_{p+q}) = (1/(p! q!)) Σ_σ sgn σ · a(v_σ..)·b(v_σ..)`.
pub fn wedge(a: &Dense, b: &Dense) -> Dense {
    let (p, r) = (a.degree, b.degree);
    let perms = permutations(p + r);
    let norm = factorial(p) * factorial(r);
    Dense::from_fn(a.dim, p + r, |t| {
        let mut total = Q::zero();
        for (perm, odd) in &perms {
            let s: Vec<usize> = perm.iter().map(|&k| t[k]).collect();
            let v = a.get(&s[..p]) * b.get(&s[p..]);
            if *odd {
                total -= v;
            } else {
                total += v;
            }
        }
        total / &norm
    })
}

/// `(dκ)(X_0..X_k) = (1/(k+1)) Σ_{i<j} (−1)^{i+j} κ([X_i, X_j], X_0..X̂_i..X̂_j..X_k)`.
pub fn differential(c: &[Vec<Vec<Q>>], k: &Dense) -> Dense {
    let n = k.dim;
    let deg = k.degree;
    Dense::from_fn(n, deg + 1, |t| {
        let mut total = Q::zero();
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let rest: Vec<usize> = t.iter().enumerate().filter(|(m, _)| *m != i && *m != j).map(|(_, &x)| x).collect();
                let br = &c[t[i]][t[j]];
                for (m, coef) in br.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let mut idx = vec![m];
                    idx.extend(&rest);
                    let v = coef * k.get(&idx);
                    if (i + j) % 2 == 0 {
                        total += v;
                    } else {
                        total -= v;
                    }
                }
            }
        }
        total / q(deg as i64 + 1, 1)
    })
}

/// `(η∧(dη)ⁿ)(e_1, …, e_{2n+1})`.
pub fn top_coefficient(a: &LieAlgebra, eta: &AlternatingForm) -> Q {
    let c = constants(a);
    let e = Dense::from_form(eta);
    let d = differential(&c, &e);
    let mut acc = e;
    for _ in 0..a.dim() / 2 {
        acc = wedge(&acc, &d);
    }
    acc.get(&(0..a.dim()).collect::<Vec<_>>())
}

/// Solves `A x = b` for square invertible `A`.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// `Γ[i][j] = ∇_{e_i} e_j` from the Koszul formula, with a direct double loop.
pub fn christoffel(a: &LieAlgebra, g: &[Vec<Q>]) -> Vec<Vec<Vec<Q>>> {
    let c = constants(a);
    let n = a.dim();
    let gv = |x: &[Q], k: usize| -> Q { (0..n).map(|m| &x[m] * &g[m][k]).sum() };
    // columns of g⁻¹
    let inv: Vec<Vec<Q>> = (0..n)
        .map(|k| {
            let e: Vec<Q> = (0..n).map(|m| q((m == k) as i64, 1)).collect();
            solve(g, &e).expect("metric invertible")
        })
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let rhs: Vec<Q> = (0..n)
                        .map(|k| -(gv(&c[j][k], i) + gv(&c[i][k], j) + gv(&c[j][i], k)) / q(2, 1))
                        .collect();
                    (0..n).map(|r| (0..n).map(|k| &inv[k][r] * &rhs[k]).sum()).collect()
                })
                .collect()
        })
        .collect()
}

pub fn abs_max(v: &[Q]) -> Q {
    v.iter().map(|x| x.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a })
}

/// Basis of the closed 2-forms on `a`.
pub fn closed_two_forms(a: &LieAlgebra) -> Vec<AlternatingForm> {
    use contact_lie::forms::{ce_differential, increasing_tuples};
    use contact_lie::Matrix;
    let n = a.dim();
    let pairs = increasing_tuples(n, 2);
    let triples = increasing_tuples(n, 3);
    let cols: Vec<Vec<Scalar>> = pairs
        .iter()
        .map(|p| {
            let mut f = AlternatingForm::zero(n, 2);
            f.add_term(p.clone(), Scalar::one()).unwrap();
            let d = ce_differential(a, &f).unwrap();
            triples.iter().map(|t| d.on_basis(t)).collect()
        })
        .collect();
    let m = Matrix::from_columns(&cols);
    m.nullspace()
        .into_iter()
        .map(|c| {
            let mut f = AlternatingForm::zero(n, 2);
            for (p, x) in pairs.iter().zip(c) {
                f.add_term(p.clone(), x).unwrap();
            }
            f
        })
        .collect()
}
