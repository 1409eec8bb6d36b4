mod common;

use alfeld::polyforms::{
    build_pr_lambda_k, canonical_dof_matrix, canonical_projection, trace, vertex_split, wedge_of_covectors, AffineMap,
    KForm,
};
use alfeld::ratlinalg::rank_exact;
use alfeld::simplicial::{combinations, Simplex};
use alfeld::{RatMatrix, Rational};
use common::{random_form, random_simplex, rng};
use proptest::prelude::*;

#[test]
fn d_squared_and_koszul_squared_vanish() {
    let mut g = rng(7);
    for n in 1..=4 {
        let base = vec![Rational::zero(); n];
        for k in 0..=n {
            for r in 0..=4 {
                for _ in 0..100 {
                    let w = random_form(&mut g, n, k, r);
                    assert!(w.d().d().is_zero());
                    if k >= 2 {
                        assert!(w.koszul(&base).unwrap().koszul(&base).unwrap().is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn trace_commutes_with_d() {
    let mut g = rng(11);
    for n in 2..=3 {
        let t = random_simplex(&mut g, n);
        for k in 0..n {
            let w = random_form(&mut g, n, k, 3);
            for s in 1..=n {
                for f in combinations(n + 1, s + 1) {
                    let pts = t.sub_points(&f);
                    assert_eq!(trace(&w.d(), &pts), trace(&w, &pts).d());
                }
            }
        }
    }
}

fn restricted_coefficients_vanish(w: &KForm, face: &[Vec<Rational>]) -> bool {
    let mut map = AffineMap::from_vertices(face);
    w.coeffs().iter().all(|c| map.pullback(c).is_zero())
}

#[test]
fn zero_trace_iff_wedge_with_dlambda_vanishes_on_facet() {
    let mut g = rng(13);
    let n = 3;
    let t = random_simplex(&mut g, n);
    let l = t.barycentric_coords();
    for i in 0..=n {
        let facet: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
        let pts = t.sub_points(&facet);
        let dli = wedge_of_covectors(n, &[l[i].grad.clone()]);
        for k in 1..n {
            for case in 0..20 {
                let mut v = random_form(&mut g, n, k - 1, 2);
                if case % 2 == 0 {
                    let u = random_form(&mut g, n, k - 1, 1).mul_poly(&l[i].to_poly());
                    v = if k >= 2 { dli.wedge(&random_form(&mut g, n, k - 2, 2)).unwrap().add(&u).unwrap() } else { u };
                }
                let lhs = trace(&v, &pts).is_zero();
                let rhs = restricted_coefficients_vanish(&dli.wedge(&v).unwrap(), &pts);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn constant_forms_with_vanishing_facet_traces_are_zero() {
    for n in 2..=4 {
        let t = Simplex::reference(n);
        for k in 0..n {
            let basis = build_pr_lambda_k(n, 0, k);
            let mut rows: Vec<Vec<Rational>> = Vec::new();
            for i in 1..=n {
                let facet: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
                let pts = t.sub_points(&facet);
                let traces: Vec<KForm> = basis.iter().map(|b| trace(b, &pts)).collect();
                for c in 0..traces[0].coeffs().len() {
                    rows.push(traces.iter().map(|tr| tr.coeff(c).coeff(&Default::default())).collect());
                }
            }
            assert_eq!(rank_exact(&RatMatrix::from_rows(rows)), basis.len(), "n={n} k={k}");
        }
    }
}

#[test]
fn canonical_matrices_are_nonsingular() {
    for n in 2..=3 {
        let t = Simplex::reference(n);
        for k in 0..=n {
            for r in 1..=4 {
                let m = canonical_dof_matrix(&t, r, k).unwrap();
                assert_eq!(m.nrows(), m.ncols(), "n={n} k={k} r={r}");
                assert_eq!(rank_exact(&m), m.nrows(), "n={n} k={k} r={r}");
            }
        }
    }
}

#[test]
fn canonical_projection_reproduces_polynomials() {
    let mut g = rng(17);
    let t = random_simplex(&mut g, 3);
    for k in 0..=3 {
        let w = random_form(&mut g, 3, k, 2);
        assert_eq!(canonical_projection(&t, 2, k, &w).unwrap(), w);
    }
}

#[test]
fn vertex_split_of_lambda_times_form() {
    let t = Simplex::reference(3);
    let l = t.barycentric_coords();
    let w = wedge_of_covectors(3, &[l[1].grad.clone()]).mul_poly(&l[3].to_poly());
    let s = vertex_split(&t, &w, 3).unwrap();
    assert!(s.v.unwrap().is_zero());
    assert_eq!(s.u, wedge_of_covectors(3, &[l[1].grad.clone()]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertex_split_reconstructs(seed in any::<u64>(), i in 0usize..=3, k in 1usize..=3) {
        let mut g = rng(seed);
        let t = random_simplex(&mut g, 3);
        let l = t.barycentric_coords();
        let dli = wedge_of_covectors(3, &[l[i].grad.clone()]);
        let v = random_form(&mut g, 3, k - 1, 2);
        let u = random_form(&mut g, 3, k, 1);
        let w = dli.wedge(&v).unwrap().add(&u.mul_poly(&l[i].to_poly())).unwrap();
        let s = vertex_split(&t, &w, i).unwrap();
        let back = dli.wedge(s.v.as_ref().unwrap()).unwrap().add(&s.u.mul_poly(&l[i].to_poly())).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn wedge_is_graded_anticommutative(seed in any::<u64>(), k in 0usize..=3, m in 0usize..=3) {
        prop_assume!(k + m <= 3);
        let mut g = rng(seed);
        let a = random_form(&mut g, 3, k, 1);
        let b = random_form(&mut g, 3, m, 1);
        let sign = if (k * m) % 2 == 0 { Rational::one() } else { Rational::from_int(-1) };
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&sign));
    }
}
