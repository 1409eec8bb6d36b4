use crate::error::{Error, Result};
use crate::ratlinalg::{det_bareiss, RatMatrix, Rational};
use crate::simplicial::combinations;

use super::poly::{binomial, AffineMap, Poly};

/// Increasing `k`-subsets of `0..n`, the coframe index set of `k`-forms.
pub fn sigmas(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations(n, k)
}

/// Lexicographic rank of an increasing index set among `sigmas(n, |sigma|)`.
pub fn sigma_index(n: usize, sigma: &[usize]) -> Option<usize> {
    let k = sigma.len();
    if sigma.windows(2).any(|w| w[0] >= w[1]) || sigma.last().is_some_and(|&l| l >= n) {
        return None;
    }
    let mut rank = 0i64;
    let mut prev: i64 = -1;
    for (i, &s) in sigma.iter().enumerate() {
        for j in (prev + 1)..(s as i64) {
            rank += binomial(n as i64 - 1 - j, (k - 1 - i) as i64);
        }
        prev = s as i64;
    }
    Some(rank as usize)
}

/// Sign of the permutation sorting the concatenation of two increasing lists,
/// or `None` when they intersect.
pub fn merge_sign(a: &[usize], b: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut inv = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return None;
            }
            if x > y {
                inv += 1;
            }
        }
    }
    let mut m: Vec<usize> = a.iter().chain(b).copied().collect();
    m.sort_unstable();
    Some((if inv.is_multiple_of(2) { 1 } else { -1 }, m))
}

/// Polynomial `k`-form on `R^n` in the Cartesian coframe `dx_sigma`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KForm {
    n: usize,
    k: usize,
    coeffs: Vec<Poly>,
}

impl KForm {
    pub fn zero(n: usize, k: usize) -> Self {
        let m = sigmas(n, k).len();
        KForm { n, k, coeffs: vec![Poly::zero(n); m] }
    }

    pub fn from_coeffs(n: usize, k: usize, coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() != sigmas(n, k).len() || coeffs.iter().any(|p| p.nvars() != n) {
            return Err(Error::FormMismatch(format!("coefficient list does not fit a {k}-form on R^{n}")));
        }
        Ok(KForm { n, k, coeffs })
    }

    pub fn scalar(p: Poly) -> Self {
        KForm { n: p.nvars(), k: 0, coeffs: vec![p] }
    }

    /// `p dx_sigma`.
    pub fn basic(n: usize, sigma: &[usize], p: Poly) -> Self {
        let mut f = KForm::zero(n, sigma.len());
        let i = sigma_index(n, sigma).expect("increasing index set");
        f.coeffs[i] = p;
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn coeff_mut(&mut self, i: usize) -> &mut Poly {
        &mut self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.is_zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|p| p.degree()).max()
    }

    fn check_same(&self, o: &KForm) -> Result<()> {
        if self.n != o.n || self.k != o.k {
            return Err(Error::FormMismatch(format!(
                "{}-form on R^{} against {}-form on R^{}",
                self.k, self.n, o.k, o.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &KForm) -> Result<KForm> {
        self.check_same(o)?;
        Ok(KForm { n: self.n, k: self.k, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() })
    }

    pub fn sub(&self, o: &KForm) -> Result<KForm> {
        self.check_same(o)?;
        Ok(KForm { n: self.n, k: self.k, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() })
    }

    pub fn add_scaled(&mut self, o: &KForm, s: &Rational) {
        assert!(self.n == o.n && self.k == o.k, "form shape mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            a.add_scaled(b, s);
        }
    }

    pub fn scale(&self, s: &Rational) -> KForm {
        KForm { n: self.n, k: self.k, coeffs: self.coeffs.iter().map(|p| p.scale(s)).collect() }
    }

    pub fn mul_poly(&self, p: &Poly) -> KForm {
        KForm { n: self.n, k: self.k, coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect() }
    }

    pub fn wedge(&self, o: &KForm) -> Result<KForm> {
        if self.n != o.n {
            return Err(Error::FormMismatch(format!("wedge of forms on R^{} and R^{}", self.n, o.n)));
        }
        if self.k + o.k > self.n {
            return Err(Error::DegreeOverflow(format!("{} + {} exceeds {}", self.k, o.k, self.n)));
        }
        let mut out = KForm::zero(self.n, self.k + o.k);
        let sa = sigmas(self.n, self.k);
        let sb = sigmas(self.n, o.k);
        for (i, a) in sa.iter().enumerate() {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for (j, b) in sb.iter().enumerate() {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                if let Some((s, m)) = merge_sign(a, b) {
                    let idx = sigma_index(self.n, &m).unwrap();
                    let prod = self.coeffs[i].mul(&o.coeffs[j]);
                    out.coeffs[idx].add_scaled(&prod, &Rational::from_int(s));
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative; the zero `(n+1)`-form space is represented as `k = n + 1`
    /// with no components.
    pub fn d(&self) -> KForm {
        let mut out = KForm::zero(self.n, self.k + 1);
        if self.k == self.n {
            return out;
        }
        for (i, s) in sigmas(self.n, self.k).iter().enumerate() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            for v in 0..self.n {
                if let Some((sg, m)) = merge_sign(&[v], s) {
                    let idx = sigma_index(self.n, &m).unwrap();
                    out.coeffs[idx].add_scaled(&c.deriv(v), &Rational::from_int(sg));
                }
            }
        }
        out
    }

    /// Contraction with the vector field `x - base`.
    pub fn koszul(&self, base: &[Rational]) -> Result<KForm> {
        if base.len() != self.n {
            return Err(Error::FormMismatch("base point dimension".into()));
        }
        if self.k == 0 {
            return Err(Error::DegreeOverflow("Koszul operator applied to a 0-form".into()));
        }
        let mut out = KForm::zero(self.n, self.k - 1);
        let xs: Vec<Poly> = (0..self.n)
            .map(|i| Poly::var(self.n, i).sub(&Poly::constant(self.n, base[i].clone())))
            .collect();
        for (i, s) in sigmas(self.n, self.k).iter().enumerate() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            for (j, &v) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != v).collect();
                let idx = sigma_index(self.n, &rest).unwrap();
                let sg = if j % 2 == 0 { 1 } else { -1 };
                out.coeffs[idx].add_scaled(&c.mul(&xs[v]), &Rational::from_int(sg));
            }
        }
        Ok(out)
    }

    /// Pullback through an affine map from `R^m`; on a sub-simplex this is the trace.
    pub fn pullback(&self, map: &mut AffineMap) -> KForm {
        assert_eq!(map.target_dim(), self.n, "map target dimension");
        let m = map.source_dim();
        let mut out = KForm::zero(m, self.k);
        if self.k > m {
            return out;
        }
        let taus = sigmas(m, self.k);
        for (i, s) in sigmas(self.n, self.k).iter().enumerate() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let pc = map.pullback(c);
            for (t, tau) in taus.iter().enumerate() {
                let minor = if self.k == 0 {
                    Rational::one()
                } else {
                    let rows: Vec<Vec<Rational>> =
                        s.iter().map(|&r| tau.iter().map(|&cc| map.jac[r][cc].clone()).collect()).collect();
                    det_bareiss(&RatMatrix::from_rows(rows))
                };
                if !minor.is_zero() {
                    out.coeffs[t].add_scaled(&pc, &minor);
                }
            }
        }
        out
    }

    /// Component values at a point.
    pub fn eval(&self, x: &[Rational]) -> Vec<Rational> {
        self.coeffs.iter().map(|p| p.eval(x)).collect()
    }

    pub fn deriv_all(&self, i: usize) -> KForm {
        KForm { n: self.n, k: self.k, coeffs: self.coeffs.iter().map(|p| p.deriv(i)).collect() }
    }
}

/// Wedge product `d lambda_{i_1} ^ ... ^ d lambda_{i_k}` of constant one-forms.
pub fn wedge_of_covectors(n: usize, covectors: &[Vec<Rational>]) -> KForm {
    let mut acc = KForm::scalar(Poly::one(n));
    for g in covectors {
        let one = KForm::from_coeffs(n, 1, g.iter().map(|c| Poly::constant(n, c.clone())).collect()).unwrap();
        acc = acc.wedge(&one).expect("degree within range");
    }
    acc
}

/// Piecewise polynomial form on the children of a split.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiecewiseKForm {
    pub pieces: Vec<KForm>,
}

impl PiecewiseKForm {
    pub fn new(pieces: Vec<KForm>) -> Self {
        assert!(!pieces.is_empty());
        let (n, k) = (pieces[0].n, pieces[0].k);
        assert!(pieces.iter().all(|p| p.n == n && p.k == k), "pieces must share shape");
        PiecewiseKForm { pieces }
    }

    pub fn zero(n: usize, k: usize, count: usize) -> Self {
        PiecewiseKForm { pieces: vec![KForm::zero(n, k); count] }
    }

    /// The same form on every piece.
    pub fn uniform(f: &KForm, count: usize) -> Self {
        PiecewiseKForm { pieces: vec![f.clone(); count] }
    }

    pub fn n(&self) -> usize {
        self.pieces[0].n
    }

    pub fn k(&self) -> usize {
        self.pieces[0].k
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.is_zero())
    }

    pub fn d(&self) -> PiecewiseKForm {
        PiecewiseKForm { pieces: self.pieces.iter().map(|p| p.d()).collect() }
    }

    pub fn add(&self, o: &PiecewiseKForm) -> Result<PiecewiseKForm> {
        if self.len() != o.len() {
            return Err(Error::FormMismatch("piece counts differ".into()));
        }
        Ok(PiecewiseKForm { pieces: self.pieces.iter().zip(&o.pieces).map(|(a, b)| a.add(b)).collect::<Result<_>>()? })
    }

    pub fn sub(&self, o: &PiecewiseKForm) -> Result<PiecewiseKForm> {
        if self.len() != o.len() {
            return Err(Error::FormMismatch("piece counts differ".into()));
        }
        Ok(PiecewiseKForm { pieces: self.pieces.iter().zip(&o.pieces).map(|(a, b)| a.sub(b)).collect::<Result<_>>()? })
    }

    pub fn scale(&self, s: &Rational) -> PiecewiseKForm {
        PiecewiseKForm { pieces: self.pieces.iter().map(|p| p.scale(s)).collect() }
    }

    pub fn add_scaled(&mut self, o: &PiecewiseKForm, s: &Rational) {
        for (a, b) in self.pieces.iter_mut().zip(&o.pieces) {
            a.add_scaled(b, s);
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.pieces.iter().filter_map(|p| p.degree()).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn koszul_of_area_form_in_plane() {
        let w = KForm::basic(2, &[0, 1], Poly::one(2));
        let k = w.koszul(&[q(0), q(0)]).unwrap();
        assert_eq!(k.coeff(0), &Poly::var(2, 1).neg());
        assert_eq!(k.coeff(1), &Poly::var(2, 0));
    }

    #[test]
    fn d_of_one_form_is_curl() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let w = KForm::from_coeffs(3, 1, vec![y.neg(), x.clone(), Poly::zero(3)]).unwrap();
        let dw = w.d();
        assert_eq!(dw.coeff(0), &Poly::constant(3, q(2)));
        assert!(dw.coeff(1).is_zero() && dw.coeff(2).is_zero());
    }

    #[test]
    fn wedge_errors() {
        let a = KForm::zero(3, 2);
        let b = KForm::zero(3, 2);
        assert!(matches!(a.wedge(&b), Err(Error::DegreeOverflow(_))));
        let c = KForm::zero(2, 1);
        assert!(matches!(a.wedge(&c), Err(Error::FormMismatch(_))));
    }

    #[test]
    fn sigma_rank_matches_enumeration() {
        for n in 0..=4 {
            for k in 0..=n {
                for (i, s) in sigmas(n, k).iter().enumerate() {
                    assert_eq!(sigma_index(n, s), Some(i));
                }
            }
        }
    }

    #[test]
    fn merge_signs() {
        assert_eq!(merge_sign(&[1], &[0]), Some((-1, vec![0, 1])));
        assert_eq!(merge_sign(&[0, 2], &[1]), Some((-1, vec![0, 1, 2])));
        assert_eq!(merge_sign(&[0], &[0]), None);
    }
}
