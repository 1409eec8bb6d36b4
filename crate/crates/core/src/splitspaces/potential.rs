use crate::error::{Error, Result};
use crate::polyforms::{integrate, PiecewiseKForm};
use crate::ratlinalg::{solve_exact, LinalgError, RatMatrix, Rational};
use crate::simplicial::AlfeldSplit;

use super::build::build_space;
use super::layout::RawLayout;
use super::sequence::raw_d;
use super::spec::SpaceSpec;

/// Integral of a piecewise top form over the parent simplex.
pub fn total_integral(w: &PiecewiseKForm, split: &AlfeldSplit) -> Rational {
    w.pieces.iter().zip(split.children()).map(|(p, c)| integrate(p.coeff(0), c)).sum()
}

/// A `rho` in the target space with `d rho = w`, from the first solution of the
/// deterministic elimination.
pub fn find_potential(w: &PiecewiseKForm, target: &SpaceSpec, split: &AlfeldSplit) -> Result<PiecewiseKForm> {
    let n = split.dim();
    if w.n() != n || target.n != n || w.len() != split.num_children() || target.k + 1 != w.k() {
        return Err(Error::FormMismatch(format!("a {}-form has no potential in {}", w.k(), target)));
    }
    if !w.d().is_zero() {
        return Err(Error::NotClosed);
    }
    if target.ring && w.k() == n {
        let m = total_integral(w, split);
        if !m.is_zero() {
            return Err(Error::NonzeroMean(m.to_string()));
        }
    }
    let src = RawLayout::new(n, w.k(), target.r - 1);
    let rhs = src.to_vector(w).ok_or_else(|| {
        Error::DegreeOverflow(format!("form degree {:?} exceeds {}", w.degree(), target.r - 1))
    })?;
    let space = build_space(target, split)?;
    let cols: Vec<Vec<Rational>> = space.basis.iter().map(|v| raw_d(&space.layout, &src, v)).collect();
    let m = RatMatrix::from_columns(src.len(), &cols);
    let c = match solve_exact(&m, &rhs) {
        Ok(c) => c,
        Err(LinalgError::Inconsistent) => return Err(Error::PotentialNotFound),
        Err(e) => return Err(e.into()),
    };
    let rho = space.layout.to_form(&space.combine(&c));
    debug_assert_eq!(rho.d(), *w);
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyforms::{KForm, Poly};

    fn piecewise_constants(n: usize, vals: &[i64]) -> PiecewiseKForm {
        PiecewiseKForm::new(vals.iter().map(|&v| KForm::from_coeffs(n, n, vec![Poly::constant(n, Rational::from_int(v))]).unwrap()).collect())
    }

    #[test]
    fn divergence_potential_of_zero_mean_constants() {
        let split = AlfeldSplit::of_reference(3);
        let w = piecewise_constants(3, &[1, 1, 1, -3]);
        let target: SpaceSpec = "M:ring:k2:r1".parse().unwrap();
        let rho = find_potential(&w, &target, &split).unwrap();
        assert_eq!(rho.d(), w);
        assert!(build_space(&target, &split).unwrap().contains(&rho));
    }

    #[test]
    fn rejects_bad_inputs() {
        let split = AlfeldSplit::of_reference(3);
        let target: SpaceSpec = "M:ring:k2:r1".parse().unwrap();
        let w = piecewise_constants(3, &[6, 6, 6, 6]);
        assert!(matches!(find_potential(&w, &target, &split), Err(Error::NonzeroMean(_))));
        let zero = piecewise_constants(3, &[0, 0, 0, 0]);
        assert!(find_potential(&zero, &target, &split).unwrap().is_zero());
        let x = KForm::from_coeffs(3, 1, vec![Poly::var(3, 1), Poly::zero(3), Poly::zero(3)]).unwrap();
        let nc = PiecewiseKForm::uniform(&x, 4);
        assert!(matches!(find_potential(&nc, &"M:k0:r2".parse().unwrap(), &split), Err(Error::NotClosed)));
    }
}
