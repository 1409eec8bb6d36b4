use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::ratlinalg::Rational;

/// Largest number of variables a polynomial may carry.
pub const MAX_VARS: usize = 4;

/// Exponent vector; unused trailing slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Exp(pub [u8; MAX_VARS]);

impl Exp {
    pub fn zero() -> Self {
        Exp([0; MAX_VARS])
    }

    pub fn unit(i: usize) -> Self {
        let mut e = Exp::zero();
        e.0[i] = 1;
        e
    }

    pub fn from_slice(a: &[u8]) -> Self {
        assert!(a.len() <= MAX_VARS, "too many variables");
        let mut e = Exp::zero();
        e.0[..a.len()].copy_from_slice(a);
        e
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn add(&self, o: &Exp) -> Exp {
        let mut e = *self;
        for i in 0..MAX_VARS {
            e.0[i] += o.0[i];
        }
        e
    }

    /// `alpha!` as an integer.
    pub fn factorial(&self) -> u128 {
        self.0.iter().map(|&a| factorial(a as usize)).product()
    }

    pub fn slice(&self, n: usize) -> &[u8] {
        &self.0[..n]
    }
}

impl Ord for Exp {
    /// Graded order; within a degree, larger leading exponents come first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

/// All exponents in `n` variables of total degree at most `deg`, in graded order.
pub fn monomials(n: usize, deg: usize) -> Vec<Exp> {
    let mut out = Vec::new();
    for d in 0..=deg {
        out.extend(monomials_of_degree(n, d));
    }
    out
}

/// Exponents of exact total degree `d`, leading exponent largest first.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Exp> {
    fn rec(n: usize, i: usize, left: usize, cur: &mut [u8; MAX_VARS], out: &mut Vec<Exp>) {
        if i + 1 == n {
            cur[i] = left as u8;
            out.push(Exp(*cur));
            cur[i] = 0;
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a as u8;
            rec(n, i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Exp::zero());
        }
        return out;
    }
    let mut cur = [0u8; MAX_VARS];
    rec(n, 0, d, &mut cur, &mut out);
    out
}

/// Index lookup over `monomials(n, deg)`.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub n: usize,
    pub deg: usize,
    pub exps: Vec<Exp>,
    index: HashMap<Exp, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, deg: usize) -> Self {
        let exps = monomials(n, deg);
        let index = exps.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        MonomialBasis { n, deg, exps, index }
    }

    /// Basis of the zero space, standing for negative degrees.
    pub fn empty(n: usize) -> Self {
        MonomialBasis { n, deg: 0, exps: Vec::new(), index: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn index_of(&self, e: &Exp) -> Option<usize> {
        self.index.get(e).copied()
    }
}

/// Polynomial with rational coefficients in Cartesian monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Exp, Rational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS, "too many variables");
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(n, Exp::zero(), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n);
        Self::monomial(n, Exp::unit(i), Rational::one())
    }

    pub fn monomial(n: usize, e: Exp, c: Rational) -> Self {
        let mut p = Poly::zero(n);
        debug_assert!(e.0[n..].iter().all(|&x| x == 0));
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// Affine function `c + sum_i a_i x_i`.
    pub fn affine(a: &[Rational], c: &Rational) -> Self {
        let n = a.len();
        let mut p = Poly::constant(n, c.clone());
        for (i, ai) in a.iter().enumerate() {
            p.add_term(Exp::unit(i), ai);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exp) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    pub fn add_term(&mut self, e: Exp, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, s: &Rational) {
        assert_eq!(self.n, other.n, "variable count mismatch");
        if s.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(*e, &(c * s));
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(other, &Rational::one());
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(other, &Rational::from_int(-1));
        p
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Rational::from_int(-1))
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut p = Poly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                p.add_term(e1.add(e2), &(c1 * c2));
            }
        }
        p
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn deriv(&self, i: usize) -> Poly {
        assert!(i < self.n);
        let mut p = Poly::zero(self.n);
        for (e, c) in &self.terms {
            let a = e.0[i];
            if a > 0 {
                let mut f = *e;
                f.0[i] -= 1;
                p.add_term(f, &(c * &Rational::from_int(a as i64)));
            }
        }
        p
    }

    /// Mixed derivative `D^alpha`.
    pub fn deriv_multi(&self, alpha: &Exp) -> Poly {
        let mut p = self.clone();
        for i in 0..self.n {
            for _ in 0..alpha.0[i] {
                p = p.deriv(i);
            }
        }
        p
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.n, "point dimension mismatch");
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(self.n);
        let maxd = self.degree().unwrap_or(0);
        for xi in x {
            let mut v = vec![Rational::one()];
            for k in 1..=maxd {
                let nx = &v[k - 1] * xi;
                v.push(nx);
            }
            powers.push(v);
        }
        let mut s = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.n {
                let a = e.0[i] as usize;
                if a > 0 {
                    t = &t * &powers[i][a];
                }
            }
            s += t;
        }
        s
    }

    /// Same polynomial viewed in more variables.
    pub fn lift(&self, n: usize) -> Poly {
        assert!(n >= self.n && n <= MAX_VARS);
        Poly { n, terms: self.terms.clone() }
    }

    pub fn coefficients(&self, basis: &MonomialBasis) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); basis.len()];
        for (e, c) in &self.terms {
            v[basis.index_of(e)?] = c.clone();
        }
        Some(v)
    }

    pub fn from_coefficients(basis: &MonomialBasis, v: &[Rational]) -> Poly {
        let mut p = Poly::zero(basis.n);
        for (e, c) in basis.exps.iter().zip(v) {
            p.add_term(*e, c);
        }
        p
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{}*x^{:?}", c, &e.0[..self.n]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Affine change of variables `x = offset + jac * y` from `m` to `n` variables.
///
/// Images of monomials are cached, which pays off when many polynomials are
/// pulled back through the same map.
#[derive(Clone, Debug)]
pub struct AffineMap {
    pub offset: Vec<Rational>,
    /// `n` rows, `m` columns.
    pub jac: Vec<Vec<Rational>>,
    m: usize,
    linear: Vec<Poly>,
    powers: Vec<Vec<Poly>>,
    cache: HashMap<Exp, Poly>,
}

impl AffineMap {
    pub fn new(offset: Vec<Rational>, jac: Vec<Vec<Rational>>, m: usize) -> Self {
        assert_eq!(offset.len(), jac.len());
        assert!(jac.iter().all(|r| r.len() == m));
        let linear: Vec<Poly> = offset.iter().zip(&jac).map(|(c, row)| Poly::affine(row, c)).collect();
        let powers = linear.iter().map(|_| vec![Poly::one(m)]).collect();
        AffineMap { offset, jac, m, linear, powers, cache: HashMap::new() }
    }

    /// Map from the reference simplex onto the simplex with the given vertices.
    pub fn from_vertices(vertices: &[Vec<Rational>]) -> Self {
        let a = &vertices[0];
        let n = a.len();
        let m = vertices.len() - 1;
        let jac: Vec<Vec<Rational>> =
            (0..n).map(|i| (1..=m).map(|j| &vertices[j][i] - &a[i]).collect()).collect();
        AffineMap::new(a.clone(), jac, m)
    }

    pub fn source_dim(&self) -> usize {
        self.m
    }

    pub fn target_dim(&self) -> usize {
        self.offset.len()
    }

    pub fn apply(&self, y: &[Rational]) -> Vec<Rational> {
        self.offset
            .iter()
            .zip(&self.jac)
            .map(|(c, row)| {
                let mut s = c.clone();
                for (a, b) in row.iter().zip(y) {
                    s += a * b;
                }
                s
            })
            .collect()
    }

    fn power(&mut self, i: usize, k: usize) -> Poly {
        while self.powers[i].len() <= k {
            let last = self.powers[i].last().unwrap().clone();
            let next = last.mul(&self.linear[i]);
            self.powers[i].push(next);
        }
        self.powers[i][k].clone()
    }

    fn monomial_image(&mut self, e: &Exp) -> Poly {
        if let Some(p) = self.cache.get(e) {
            return p.clone();
        }
        let mut acc = Poly::one(self.m);
        for i in 0..self.offset.len() {
            let a = e.0[i] as usize;
            if a > 0 {
                let pw = self.power(i, a);
                acc = acc.mul(&pw);
            }
        }
        self.cache.insert(*e, acc.clone());
        acc
    }

    /// `p(offset + jac * y)` as a polynomial in `y`.
    pub fn pullback(&mut self, p: &Poly) -> Poly {
        assert_eq!(p.nvars(), self.offset.len(), "variable count mismatch");
        let mut out = Poly::zero(self.m);
        for (e, c) in p.terms() {
            let img = self.monomial_image(e);
            out.add_scaled(&img, c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 5).len(), 56);
        assert_eq!(monomials(2, 0).len(), 1);
        assert_eq!(monomials(0, 3).len(), 1);
        let m = monomials(2, 2);
        assert_eq!(m[1], Exp::from_slice(&[1, 0]));
        assert_eq!(m[3], Exp::from_slice(&[2, 0]));
    }

    #[test]
    fn product_rule() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.mul(&x).mul(&y);
        assert_eq!(p.deriv(0), x.mul(&y).scale(&q(2)));
        assert_eq!(p.eval(&[q(2), q(3)]), q(12));
    }

    #[test]
    fn pullback_along_segment() {
        let mut m = AffineMap::from_vertices(&[vec![q(1), q(0)], vec![q(0), q(1)]]);
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y);
        assert_eq!(m.pullback(&p), Poly::one(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(2, 3), 0);
    }
}
