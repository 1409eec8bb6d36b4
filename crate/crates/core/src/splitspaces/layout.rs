use crate::polyforms::{sigmas, KForm, MonomialBasis, PiecewiseKForm, Poly};
use crate::ratlinalg::Rational;

/// Coordinates of piecewise forms: child, then coframe index, then monomial.
#[derive(Clone, Debug)]
pub struct RawLayout {
    pub n: usize,
    pub k: usize,
    pub r: i64,
    pub children: usize,
    pub ncomp: usize,
    pub mons: MonomialBasis,
}

impl RawLayout {
    pub fn new(n: usize, k: usize, r: i64) -> Self {
        let mons = if r < 0 { MonomialBasis::empty(n) } else { MonomialBasis::new(n, r as usize) };
        let ncomp = if k <= n { sigmas(n, k).len() } else { 0 };
        RawLayout { n, k, r, children: n + 1, ncomp, mons }
    }

    pub fn block(&self) -> usize {
        self.ncomp * self.mons.len()
    }

    pub fn len(&self) -> usize {
        self.children * self.block()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, child: usize, comp: usize, mon: usize) -> usize {
        child * self.block() + comp * self.mons.len() + mon
    }

    /// The single-child form of a column within a block.
    pub fn column_form(&self, col: usize) -> KForm {
        let comp = col / self.mons.len();
        let mon = col % self.mons.len();
        let sig = &sigmas(self.n, self.k)[comp];
        KForm::basic(self.n, sig, Poly::monomial(self.n, self.mons.exps[mon], Rational::one()))
    }

    pub fn child_form(&self, v: &[Rational], child: usize) -> KForm {
        let b = self.block();
        let m = self.mons.len();
        let coeffs = (0..self.ncomp)
            .map(|c| Poly::from_coefficients(&self.mons, &v[child * b + c * m..child * b + (c + 1) * m]))
            .collect();
        KForm::from_coeffs(self.n, self.k, coeffs).expect("layout shape")
    }

    pub fn to_form(&self, v: &[Rational]) -> PiecewiseKForm {
        if self.mons.is_empty() {
            return PiecewiseKForm::zero(self.n, self.k, self.children);
        }
        PiecewiseKForm::new((0..self.children).map(|c| self.child_form(v, c)).collect())
    }

    /// `None` if a piece exceeds the layout degree or has the wrong shape.
    pub fn to_vector(&self, w: &PiecewiseKForm) -> Option<Vec<Rational>> {
        if w.len() != self.children || w.n() != self.n || w.k() != self.k {
            return None;
        }
        let mut out = Vec::with_capacity(self.len());
        for p in &w.pieces {
            for c in p.coeffs() {
                if self.mons.is_empty() {
                    if !c.is_zero() {
                        return None;
                    }
                    continue;
                }
                out.extend(c.coefficients(&self.mons)?);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_round_trip() {
        let l = RawLayout::new(3, 1, 2);
        assert_eq!(l.len(), 4 * 3 * 10);
        let v: Vec<Rational> = (0..l.len()).map(|i| Rational::from_int(i as i64 % 7 - 3)).collect();
        assert_eq!(l.to_vector(&l.to_form(&v)).unwrap(), v);
        assert!(RawLayout::new(3, 1, -1).is_empty());
    }
}
