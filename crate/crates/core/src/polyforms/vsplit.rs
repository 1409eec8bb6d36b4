use crate::error::{Error, Result};
use crate::ratlinalg::{det_bareiss, inverse, RatMatrix, Rational};
use crate::simplicial::Simplex;

use super::calculus::trace;
use super::form::{sigma_index, sigmas, KForm};
use super::poly::{AffineMap, Exp, Poly};

/// `w = d lambda_i ^ v + lambda_i u` for a form whose trace on the facet
/// opposite vertex `i` vanishes.
#[derive(Clone, Debug)]
pub struct VertexSplit {
    /// `None` for zero-forms.
    pub v: Option<KForm>,
    pub u: KForm,
}

fn minor(m: &RatMatrix, rows: &[usize], cols: &[usize]) -> Rational {
    if rows.is_empty() {
        return Rational::one();
    }
    let r: Vec<Vec<Rational>> = rows.iter().map(|&i| cols.iter().map(|&j| m[(i, j)].clone()).collect()).collect();
    det_bareiss(&RatMatrix::from_rows(r))
}

/// Coefficients `c'_s = sum_t c_t det(m[t, s])`: change of coframe through `m`.
fn change_coframe(w: &KForm, m: &RatMatrix) -> KForm {
    let n = w.n();
    let k = w.k();
    let ss = sigmas(n, k);
    let mut out = KForm::zero(n, k);
    for (ti, t) in ss.iter().enumerate() {
        let c = w.coeff(ti);
        if c.is_zero() {
            continue;
        }
        for (si, s) in ss.iter().enumerate() {
            let d = minor(m, t, s);
            if !d.is_zero() {
                out.coeff_mut(si).add_scaled(c, &d);
            }
        }
    }
    out
}

pub fn vertex_split(t: &Simplex, w: &KForm, i: usize) -> Result<VertexSplit> {
    let n = t.dim();
    if w.n() != n || i > n {
        return Err(Error::FormMismatch("form or vertex does not fit the simplex".into()));
    }
    let facet: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
    if !trace(w, &t.sub_points(&facet)).is_zero() {
        return Err(Error::Precondition(format!("trace on the facet opposite vertex {i} is nonzero")));
    }
    let k = w.k();
    let m = if i == 0 { 1 } else { 0 };
    let frame: Vec<usize> = (0..=n).filter(|&j| j != m).collect();
    let p = frame.iter().position(|&j| j == i).unwrap();
    let lambdas = t.barycentric_coords();
    let g = RatMatrix::from_rows(frame.iter().map(|&j| lambdas[j].grad.clone()).collect());
    let ginv = inverse(&g)?;

    // dx_t = sum_s det(ginv[t, s]) dlambda_s, so coefficients transform by ginv.
    let a = change_coframe(w, &ginv);

    let xm = t.vertex(m).clone();
    let jac: Vec<Vec<Rational>> =
        (0..n).map(|r| frame.iter().map(|&j| &t.vertex(j)[r] - &xm[r]).collect()).collect();
    let mut to_bary = AffineMap::new(xm, jac, n);
    let mut from_bary = AffineMap::new(
        frame.iter().map(|&j| lambdas[j].constant.clone()).collect(),
        frame.iter().map(|&j| lambdas[j].grad.clone()).collect(),
        n,
    );

    let ss = sigmas(n, k);
    let mut v = if k > 0 { Some(KForm::zero(n, k - 1)) } else { None };
    let mut u = KForm::zero(n, k);
    for (si, s) in ss.iter().enumerate() {
        let c = a.coeff(si);
        if c.is_zero() {
            continue;
        }
        if let Some(q) = s.iter().position(|&x| x == p) {
            let rest: Vec<usize> = s.iter().copied().filter(|&x| x != p).collect();
            let idx = sigma_index(n, &rest).unwrap();
            let sign = Rational::from_int(if q % 2 == 0 { 1 } else { -1 });
            v.as_mut().unwrap().coeff_mut(idx).add_scaled(c, &sign);
        } else {
            let cb = to_bary.pullback(c);
            let mut quotient = Poly::zero(n);
            for (e, val) in cb.terms() {
                if e.0[p] == 0 {
                    return Err(Error::Precondition("coefficient not divisible by the barycentric coordinate".into()));
                }
                let mut f: Exp = *e;
                f.0[p] -= 1;
                quotient.add_term(f, val);
            }
            *u.coeff_mut(si) = from_bary.pullback(&quotient);
        }
    }
    // dlambda_s = sum_t det(g[s, t]) dx_t: the inverse change uses g transposed roles.
    let back = |f: &KForm| -> KForm {
        let n = f.n();
        let kk = f.k();
        let ss = sigmas(n, kk);
        let mut out = KForm::zero(n, kk);
        for (si, s) in ss.iter().enumerate() {
            let c = f.coeff(si);
            if c.is_zero() {
                continue;
            }
            for (ti, tt) in ss.iter().enumerate() {
                let d = minor(&g, s, tt);
                if !d.is_zero() {
                    out.coeff_mut(ti).add_scaled(c, &d);
                }
            }
        }
        out
    };
    Ok(VertexSplit { v: v.as_ref().map(back), u: back(&u) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyforms::form::wedge_of_covectors;

    #[test]
    fn split_of_dlambda_pair() {
        let t = Simplex::reference(3);
        let l = t.barycentric_coords();
        let w = wedge_of_covectors(3, &[l[1].grad.clone(), l[3].grad.clone()]);
        let s = vertex_split(&t, &w, 3).unwrap();
        let expect = wedge_of_covectors(3, &[l[1].grad.clone()]).scale(&Rational::from_int(-1));
        assert_eq!(s.v.unwrap(), expect);
        assert!(s.u.is_zero());
    }

    #[test]
    fn nonzero_trace_rejected() {
        let t = Simplex::reference(2);
        let w = KForm::scalar(Poly::one(2));
        assert!(matches!(vertex_split(&t, &w, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn reconstructs_form() {
        let t = Simplex::reference(3);
        let l = t.barycentric_coords();
        let l2 = l[2].to_poly();
        let x = Poly::var(3, 0);
        let w = KForm::from_coeffs(3, 1, vec![l2.mul(&x), Poly::zero(3), l2.clone()]).unwrap();
        let dl2 = wedge_of_covectors(3, &[l[2].grad.clone()]);
        let w = w.add(&dl2.mul_poly(&x)).unwrap();
        let s = vertex_split(&t, &w, 2).unwrap();
        let v = s.v.unwrap();
        let back = dl2.wedge(&v).unwrap().add(&s.u.mul_poly(&l2)).unwrap();
        assert_eq!(back, w);
    }
}
