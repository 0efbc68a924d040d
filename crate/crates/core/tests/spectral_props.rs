use contact_lie::catalog::{self, EntryKind};
use contact_lie::linalg::vec_scale;
use contact_lie::spectral::{
    characteristic_polynomial, find_dual_partner, is_diagonalizable, minimal_polynomial, root_decomposition,
    verify_graded_bracket, Roots,
};
use contact_lie::{AlternatingForm, ContactStructure, Error, LieAlgebra, Matrix, Polynomial, Scalar};
use proptest::prelude::*;

fn complexified(name: &str) -> ContactStructure {
    catalog::entry(name).unwrap().contact_structure().unwrap().complexify().unwrap()
}

fn exact(c: &ContactStructure) -> contact_lie::spectral::RootDecomposition {
    match root_decomposition(c).unwrap() {
        Roots::Exact(rd) => rd,
        Roots::Approximate(a) => panic!("unexpected fallback: {}", a.warning),
    }
}

fn evaluate_at(p: &Polynomial<Scalar>, m: &Matrix<Scalar>) -> Matrix<Scalar> {
    let n = m.rows();
    p.coeffs()
        .iter()
        .rev()
        .fold(Matrix::zeros(n, n), |acc, c| acc.mul(m).add(&Matrix::identity(n).scale(c)))
}

fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    let k = a.iter().position(|x| !x.is_zero()).unwrap();
    if b[k].is_zero() {
        return false;
    }
    let r = &b[k] / &a[k];
    vec_scale(&r, a) == b
}

#[test]
fn su2_roots_and_root_vectors() {
    let rd = exact(&complexified("su2"));
    let roots: Vec<String> = rd.roots().iter().map(Scalar::to_string).collect();
    assert_eq!(roots.len(), 3);
    for r in ["0", "i", "-i"] {
        assert!(roots.iter().any(|x| x == r), "{roots:?}");
    }
    let x = &rd.space(&Scalar::i())[0];
    let expected = vec![Scalar::one(), -Scalar::i(), Scalar::zero()];
    assert!(proportional(&expected, x), "{x:?}");
}

#[test]
fn su2_dual_partner_constant() {
    // X = e1 − i·e2 ∈ g_i, Y = c(e1 + i·e2) with c = −i/2 and Z = 0
    let rd = exact(&complexified("su2"));
    let x = vec![Scalar::one(), -Scalar::i(), Scalar::zero()];
    let (y, z) = find_dual_partner(&rd, &x, &Scalar::i()).unwrap();
    let c = Scalar::complex((0, 1), (-1, 2));
    assert_eq!(y, vec![c.clone(), &c * &Scalar::i(), Scalar::zero()]);
    assert!(z.iter().all(Scalar::is_zero));
}

#[test]
fn sl2r_root_spaces() {
    let rd = exact(&complexified("sl2r"));
    let e = |k: usize| contact_lie::linalg::unit::<Scalar>(3, k);
    assert!(proportional(&e(0), &rd.space(&Scalar::one())[0]));
    assert!(proportional(&e(1), &rd.space(&Scalar::from_int(-1))[0]));
    assert!(proportional(&e(2), &rd.space(&Scalar::zero())[0]));
    let (y, z) = find_dual_partner(&rd, &e(0), &Scalar::one()).unwrap();
    assert_eq!(y, e(1));
    assert!(z.iter().all(Scalar::is_zero));
}

#[test]
fn heisenberg_partner_in_the_zero_root_space() {
    let rd = exact(&complexified("heisenberg3"));
    let e = |k: usize| contact_lie::linalg::unit::<Scalar>(3, k);
    let (y, z) = find_dual_partner(&rd, &e(0), &Scalar::zero()).unwrap();
    assert_eq!(y, e(1));
    assert!(z.iter().all(Scalar::is_zero));
}

#[test]
fn root_decompositions_of_the_catalog() {
    for e in catalog::catalog().into_iter().filter(|e| e.kind == EntryKind::Contact) {
        let c = e.contact_structure().unwrap().complexify().unwrap();
        match root_decomposition(&c) {
            Ok(Roots::Exact(rd)) => {
                let total: usize = rd.spaces().iter().map(|s| s.basis.len()).sum();
                assert_eq!(total, c.dim(), "{}", e.name);
                verify_graded_bracket(&rd).unwrap();
                for r in rd.roots() {
                    assert!(rd.pairing_is_nondegenerate(&r), "{} at {r}", e.name);
                }
                if c.n() > 1 {
                    assert_eq!(rd.roots(), vec![Scalar::zero()], "{}", e.name);
                    assert!(c.ad_reeb().is_zero());
                }
            }
            Ok(Roots::Approximate(_)) => panic!("{}: catalog roots are Gaussian rationals", e.name),
            Err(Error::NotDiagonalizable(m)) => {
                assert_eq!(e.name, "nilpotent_nondiag5");
                assert_eq!(m, "t^2");
            }
            Err(other) => panic!("{}: {other}", e.name),
        }
    }
}

#[test]
fn floating_fallback_has_small_residuals() {
    // ad(e3) has eigenvalues 0, ±√2
    let a = LieAlgebra::real_rational("sqrt2", 3, &[(2, 0, &[(1, 1, 1)]), (2, 1, &[(0, 2, 1)]), (0, 1, &[(2, 1, 1)])]).unwrap();
    let c = ContactStructure::new(a, AlternatingForm::dual_basis(3, 2)).unwrap().complexify().unwrap();
    let Roots::Approximate(approx) = root_decomposition(&c).unwrap() else {
        panic!("expected the floating fallback");
    };
    assert!(!approx.warning.is_empty());
    let ad = c.ad_reeb().map(Scalar::to_complex64);
    let mut roots: Vec<f64> = approx.spaces.iter().map(|s| s.root.re).collect();
    roots.sort_by(f64::total_cmp);
    let s2 = 2f64.sqrt();
    for (r, want) in roots.iter().zip([-s2, 0.0, s2]) {
        assert!((r - want).abs() < 1e-9);
    }
    for s in &approx.spaces {
        for v in &s.basis {
            let av = ad.mul_vec(v);
            let size = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
            let residual = av.iter().zip(v).map(|(a, x)| (a - s.root * x).norm()).fold(0.0, f64::max);
            assert!(residual <= 1e-9 * size, "{residual:e}");
        }
    }
}

#[test]
fn frozen_minimal_polynomials() {
    let m = |rows: &[&[i64]]| Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect());
    assert_eq!(minimal_polynomial(&m(&[&[0, 0], &[0, 0]])).to_string(), "t");
    let nil = m(&[&[0, 1], &[0, 0]]);
    assert_eq!(minimal_polynomial(&nil).to_string(), "t^2");
    assert!(!is_diagonalizable(&nil));
    let su2 = catalog::entry("su2").unwrap().contact_structure().unwrap();
    assert_eq!(minimal_polynomial(&su2.ad_reeb()).to_string(), "t^3 + t");
    assert!(is_diagonalizable(&su2.ad_reeb()));
}

fn small_matrix() -> impl Strategy<Value = Matrix<Scalar>> {
    (1usize..6).prop_flat_map(|n| {
        prop::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
            Matrix::from_fn(n, n, |i, j| Scalar::from_int(v[i * n + j]))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn minimal_polynomial_annihilates_and_divides(m in small_matrix()) {
        let min = minimal_polynomial(&m);
        prop_assert!(evaluate_at(&min, &m).is_zero());
        let chi = characteristic_polynomial(&m);
        prop_assert_eq!(chi.degree(), Some(m.rows()));
        prop_assert!(evaluate_at(&chi, &m).is_zero());
        prop_assert!(chi.div_rem(&min).1.is_zero());
    }

    #[test]
    fn block_duplication_keeps_the_minimal_polynomial(m in small_matrix()) {
        // diag(M, M) has the same minimal polynomial as M
        let n = m.rows();
        let d = Matrix::from_fn(2 * n, 2 * n, |i, j| {
            if i / n == j / n { m[(i % n, j % n)].clone() } else { Scalar::zero() }
        });
        prop_assert_eq!(minimal_polynomial(&d), minimal_polynomial(&m));
    }
}
