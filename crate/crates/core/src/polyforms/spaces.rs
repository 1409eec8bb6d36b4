use crate::ratlinalg::{Echelon, Rational, Q};

use super::form::{sigmas, KForm};
use super::poly::{binomial, monomials, MonomialBasis, Poly};

pub fn dim_pr(n: usize, r: i64, k: usize) -> i64 {
    if r < 0 {
        return 0;
    }
    binomial(r + n as i64, n as i64) * binomial(n as i64, k as i64)
}

pub fn dim_pr_minus(n: usize, r: i64, k: usize) -> i64 {
    if r <= 0 || k > n {
        return 0;
    }
    let (n, k) = (n as i64, k as i64);
    binomial(r + n, r + k) * binomial(r + k - 1, k)
}

/// Coefficient vector of a form in the layout `sigma x monomial(deg)`.
pub fn form_vector(w: &KForm, basis: &MonomialBasis) -> Option<Vec<Rational>> {
    let mut v = Vec::with_capacity(w.coeffs().len() * basis.len());
    for p in w.coeffs() {
        v.extend(p.coefficients(basis)?);
    }
    Some(v)
}

/// Monomial basis of `P_r Lambda^k(R^n)`: coframe outer, monomials inner.
pub fn build_pr_lambda_k(n: usize, r: i64, k: usize) -> Vec<KForm> {
    if r < 0 || k > n {
        return Vec::new();
    }
    let mons = monomials(n, r as usize);
    let mut out = Vec::new();
    for s in sigmas(n, k) {
        for e in &mons {
            out.push(KForm::basic(n, &s, Poly::monomial(n, *e, Rational::one())));
        }
    }
    out
}

fn greedy_independent(n: usize, deg: usize, candidates: Vec<KForm>) -> Vec<KForm> {
    let basis = MonomialBasis::new(n, deg);
    let ncols = candidates.first().map_or(0, |w| w.coeffs().len() * basis.len());
    let mut ech = Echelon::new(Q, ncols);
    let mut out = Vec::new();
    for w in candidates {
        let v = form_vector(&w, &basis).expect("degree within layout");
        if ech.insert_dense(v).is_some() {
            out.push(w);
        }
    }
    out
}

fn trimmed(n: usize, r: i64, k: usize, base: &[Rational], lift: i64) -> Vec<KForm> {
    if r <= 0 || k > n {
        return Vec::new();
    }
    let mut cands = build_pr_lambda_k(n, r - 1, k);
    if k < n {
        for w in build_pr_lambda_k(n, r - 1 + lift, k + 1) {
            cands.push(w.koszul(base).expect("positive degree"));
        }
    }
    let deg = (r + lift) as usize;
    greedy_independent(n, deg, cands)
}

/// Basis of `P_r^- Lambda^k = P_{r-1} Lambda^k + kappa P_{r-1} Lambda^{k+1}`,
/// with the Koszul operator based at `base`, as a greedy independent subset.
pub fn build_pr_minus(n: usize, r: i64, k: usize, base: &[Rational]) -> Vec<KForm> {
    trimmed(n, r, k, base, 0)
}

/// The variant `P_{r-1} Lambda^k + kappa P_{r+1} Lambda^{k+1}`.
pub fn build_pr_minus_shifted(n: usize, r: i64, k: usize, base: &[Rational]) -> Vec<KForm> {
    trimmed(n, r, k, base, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whitney_dimension() {
        let base = vec![Rational::zero(); 3];
        assert_eq!(build_pr_minus(3, 1, 1, &base).len(), 6);
        for n in 1..=3 {
            for k in 0..=n {
                for r in 1..=3 {
                    assert_eq!(build_pr_minus(n, r, k, &vec![Rational::zero(); n]).len() as i64, dim_pr_minus(n, r, k));
                    assert_eq!(build_pr_lambda_k(n, r, k).len() as i64, dim_pr(n, r, k));
                }
            }
        }
    }
}
