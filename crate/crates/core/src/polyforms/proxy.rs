use crate::error::{Error, Result};
use crate::ratlinalg::Rational;

use super::form::KForm;
use super::poly::Poly;

/// Scalar or vector field standing for a form on `R^3`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Proxy {
    Scalar(Poly),
    Vector([Poly; 3]),
}

fn need3(n: usize) -> Result<()> {
    if n != 3 {
        return Err(Error::FormMismatch(format!("vector proxies need n = 3, got {n}")));
    }
    Ok(())
}

/// 0- and 3-forms map to scalars, 1- and 2-forms to vectors; `d` becomes grad, curl, div.
pub fn form_to_proxy(w: &KForm) -> Result<Proxy> {
    need3(w.n())?;
    let c = w.coeffs();
    Ok(match w.k() {
        0 | 3 => Proxy::Scalar(c[0].clone()),
        1 => Proxy::Vector([c[0].clone(), c[1].clone(), c[2].clone()]),
        2 => Proxy::Vector([c[2].clone(), c[1].neg(), c[0].clone()]),
        _ => return Err(Error::FormMismatch("no proxy for this degree".into())),
    })
}

pub fn proxy_to_form(p: &Proxy, k: usize) -> Result<KForm> {
    match (p, k) {
        (Proxy::Scalar(s), 0 | 3) => {
            need3(s.nvars())?;
            KForm::from_coeffs(3, k, vec![s.clone()])
        }
        (Proxy::Vector(v), 1) => {
            need3(v[0].nvars())?;
            KForm::from_coeffs(3, 1, v.to_vec())
        }
        (Proxy::Vector(v), 2) => {
            need3(v[0].nvars())?;
            KForm::from_coeffs(3, 2, vec![v[2].clone(), v[1].neg(), v[0].clone()])
        }
        _ => Err(Error::FormMismatch(format!("proxy kind does not match degree {k}"))),
    }
}

pub fn grad(p: &Poly) -> [Poly; 3] {
    [p.deriv(0), p.deriv(1), p.deriv(2)]
}

pub fn curl(v: &[Poly; 3]) -> [Poly; 3] {
    [
        v[2].deriv(1).sub(&v[1].deriv(2)),
        v[0].deriv(2).sub(&v[2].deriv(0)),
        v[1].deriv(0).sub(&v[0].deriv(1)),
    ]
}

pub fn div(v: &[Poly; 3]) -> Poly {
    v[0].deriv(0).add(&v[1].deriv(1)).add(&v[2].deriv(2))
}

pub fn cross(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    vec![
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn poly_dot(v: &[Poly; 3], c: &[Rational]) -> Poly {
    let mut out = Poly::zero(v[0].nvars());
    for (p, x) in v.iter().zip(c) {
        out.add_scaled(p, x);
    }
    out
}

/// `v x c` for a polynomial field and a constant vector.
pub fn poly_cross_const(v: &[Poly; 3], c: &[Rational]) -> [Poly; 3] {
    let t = |a: &Poly, x: &Rational, b: &Poly, y: &Rational| a.scale(x).sub(&b.scale(y));
    [t(&v[1], &c[2], &v[2], &c[1]), t(&v[2], &c[0], &v[0], &c[2]), t(&v[0], &c[1], &v[1], &c[0])]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyforms::poly::Exp;

    fn xyz() -> [Poly; 3] {
        [Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2)]
    }

    #[test]
    fn d_is_grad_curl_div() {
        let [x, y, _] = xyz();
        let p = x.mul(&x).mul(&y);
        let g = proxy_to_form(&Proxy::Scalar(p.clone()), 0).unwrap().d();
        assert_eq!(form_to_proxy(&g).unwrap(), Proxy::Vector(grad(&p)));
        assert_eq!(grad(&p)[0], x.mul(&y).scale(&Rational::from_int(2)));

        let v = [y.neg(), x.clone(), Poly::zero(3)];
        let w = proxy_to_form(&Proxy::Vector(v.clone()), 1).unwrap();
        let c = form_to_proxy(&w.d()).unwrap();
        assert_eq!(c, Proxy::Vector(curl(&v)));
        assert_eq!(curl(&v)[2], Poly::constant(3, Rational::from_int(2)));
        assert!(curl(&v)[0].is_zero() && curl(&v)[1].is_zero());

        let u = [x.mul(&y), y.mul(&y), Poly::monomial(3, Exp::from_slice(&[1, 0, 1]), Rational::one())];
        let f = proxy_to_form(&Proxy::Vector(u.clone()), 2).unwrap();
        assert_eq!(form_to_proxy(&f.d()).unwrap(), Proxy::Scalar(div(&u)));
        assert!(div(&curl(&v)).is_zero());
    }

    #[test]
    fn proxies_need_three_dimensions() {
        assert!(form_to_proxy(&KForm::zero(2, 1)).is_err());
    }
}
