use crate::error::{Error, Result};
use crate::ratlinalg::Rational;
use crate::simplicial::{Point, Simplex};

use super::form::KForm;
use super::poly::{factorial, AffineMap, Poly};

/// `int y^alpha dy` over the reference `m`-simplex: `alpha! / (|alpha| + m)!`.
pub fn reference_moment(alpha: &[u8], m: usize) -> Rational {
    let num: u128 = alpha.iter().map(|&a| factorial(a as usize)).product();
    let d: usize = alpha.iter().map(|&a| a as usize).sum();
    let den = factorial(d + m);
    Rational::from_big_ratio(num.into(), den.into())
}

/// Integral over the reference simplex of the polynomial's own variable count.
pub fn integrate_reference(p: &Poly) -> Rational {
    let m = p.nvars();
    p.terms().map(|(e, c)| c * &reference_moment(e.slice(m), m)).sum()
}

/// `int_T p dx` over a full-dimensional simplex.
pub fn integrate(p: &Poly, t: &Simplex) -> Rational {
    let mut map = t.reference_map();
    let q = map.pullback(p);
    &integrate_reference(&q) * &t.det().abs()
}

/// `int_T lambda^alpha dx = alpha! n! / (|alpha| + n)! vol(T)`.
pub fn barycentric_moment(alpha: &[u8], t: &Simplex) -> Rational {
    let n = t.dim();
    assert_eq!(alpha.len(), n + 1);
    let num: u128 = alpha.iter().map(|&a| factorial(a as usize)).product();
    let d: usize = alpha.iter().map(|&a| a as usize).sum();
    let r = Rational::from_big_ratio((num * factorial(n)).into(), factorial(d + n).into());
    &r * &t.volume()
}

/// Trace onto the sub-simplex with the given vertices, as a form on its reference simplex.
pub fn trace(w: &KForm, face: &[Point]) -> KForm {
    let mut map = AffineMap::from_vertices(face);
    w.pullback(&mut map)
}

/// Integral of a top-degree form on the reference simplex of its dimension.
pub fn integrate_top(w: &KForm) -> Result<Rational> {
    if w.k() != w.n() {
        return Err(Error::FormMismatch(format!("integrating a {}-form over an {}-simplex", w.k(), w.n())));
    }
    Ok(integrate_reference(w.coeff(0)))
}

/// `int_f tr_f w ^ tr_f eta`, with the orientation given by the vertex order of `f`.
pub fn pairing(face: &[Point], w: &KForm, eta: &KForm) -> Result<Rational> {
    let s = face.len() - 1;
    if w.k() + eta.k() != s {
        return Err(Error::FormMismatch(format!(
            "degrees {} + {} do not match face dimension {s}",
            w.k(),
            eta.k()
        )));
    }
    let tw = trace(w, face);
    let te = trace(eta, face);
    integrate_top(&tw.wedge(&te)?)
}

/// `lambda^alpha` on `t` in Cartesian monomials, `alpha` indexed by vertex.
pub fn barycentric_monomial(t: &Simplex, alpha: &[u8]) -> Poly {
    let n = t.dim();
    let mut out = Poly::one(n);
    for (l, &a) in t.barycentric_coords().iter().zip(alpha) {
        out = out.mul(&l.to_poly().pow(a as usize));
    }
    out
}

/// Expansion in `lambda_1, .., lambda_n`: variable `j` of the result stands for `lambda_{j+1}`.
pub fn to_barycentric(t: &Simplex, p: &Poly) -> Poly {
    let mut map = t.reference_map();
    map.pullback(p)
}

/// Inverse of [`to_barycentric`].
pub fn from_barycentric(t: &Simplex, q: &Poly) -> Poly {
    let n = t.dim();
    let l = t.barycentric_coords();
    let mut map = AffineMap::new(
        (1..=n).map(|j| l[j].constant.clone()).collect(),
        (1..=n).map(|j| l[j].grad.clone()).collect(),
        n,
    );
    map.pullback(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::point;

    #[test]
    fn reference_tet_moments() {
        let t = Simplex::reference(3);
        assert_eq!(integrate(&Poly::one(3), &t), Rational::new(1, 6));
        assert_eq!(barycentric_moment(&[0, 1, 1, 0], &t), Rational::new(1, 120));
        let xy = Poly::var(3, 0).mul(&Poly::var(3, 1));
        assert_eq!(integrate(&xy, &t), Rational::new(1, 120));
    }

    #[test]
    fn barycentric_round_trip() {
        let t = Simplex::new(vec![point(&[1, 0, 0]), point(&[0, 2, 0]), point(&[0, 0, 1]), point(&[1, 1, 1])]).unwrap();
        let p = barycentric_monomial(&t, &[1, 0, 2, 0]);
        let q = to_barycentric(&t, &p);
        assert_eq!(from_barycentric(&t, &q), p);
        assert_eq!(integrate(&p, &t), barycentric_moment(&[1, 0, 2, 0], &t));
    }

    #[test]
    fn integral_scales_with_volume() {
        let t = Simplex::new(vec![point(&[0, 0]), point(&[2, 0]), point(&[0, 3])]).unwrap();
        assert_eq!(integrate(&Poly::one(2), &t), Rational::from_int(3));
        assert_eq!(integrate(&Poly::var(2, 0), &t), Rational::from_int(2));
    }
}
