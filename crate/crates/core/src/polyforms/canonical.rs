use crate::error::{Error, Result};
use crate::ratlinalg::{inverse, RatMatrix, Rational};
use crate::simplicial::{combinations, Simplex};

use super::calculus::integrate_top;
use super::form::KForm;
use super::poly::AffineMap;
use super::spaces::{build_pr_lambda_k, build_pr_minus};

/// `w |-> int_f tr_f w ^ eta` with `eta` a form on the reference simplex of `f`.
#[derive(Clone, Debug)]
pub struct FaceMoment {
    /// Increasing vertex indices of the parent simplex.
    pub face: Vec<usize>,
    pub eta: KForm,
}

impl FaceMoment {
    pub fn eval(&self, t: &Simplex, w: &KForm) -> Result<Rational> {
        let mut map = AffineMap::from_vertices(&t.sub_points(&self.face));
        let tw = w.pullback(&mut map);
        integrate_top(&tw.wedge(&self.eta)?)
    }
}

/// Moment functionals determining `P_r Lambda^k(T)`.
///
/// For `r >= 1` each face `f` of dimension `s >= k` carries the moments against
/// `P^-_{r+k-s} Lambda^{s-k}(f)`; for `r = 0` the functionals are the integrals
/// over the `k`-faces through the first vertex.
pub fn canonical_functionals(t: &Simplex, r: i64, k: usize) -> Vec<FaceMoment> {
    let n = t.dim();
    let mut out = Vec::new();
    if r < 0 || k > n {
        return out;
    }
    if r == 0 {
        for rest in combinations(n, k) {
            let mut face = vec![0];
            face.extend(rest.iter().map(|i| i + 1));
            out.push(FaceMoment { face, eta: KForm::scalar(super::poly::Poly::one(k)) });
        }
        return out;
    }
    for s in k..=n {
        let origin = vec![Rational::zero(); s];
        let etas = build_pr_minus(s, r + k as i64 - s as i64, s - k, &origin);
        if etas.is_empty() {
            continue;
        }
        for face in combinations(n + 1, s + 1) {
            for eta in &etas {
                out.push(FaceMoment { face: face.clone(), eta: eta.clone() });
            }
        }
    }
    out
}

/// Rows: canonical functionals; columns: the monomial basis of `P_r Lambda^k`.
pub fn canonical_dof_matrix(t: &Simplex, r: i64, k: usize) -> Result<RatMatrix> {
    let fs = canonical_functionals(t, r, k);
    let basis = build_pr_lambda_k(t.dim(), r, k);
    let mut m = RatMatrix::zeros(fs.len(), basis.len());
    for (i, f) in fs.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            m[(i, j)] = f.eval(t, b)?;
        }
    }
    Ok(m)
}

/// The element of `P_r Lambda^k(T)` sharing all canonical moments with `w`.
pub fn canonical_projection(t: &Simplex, r: i64, k: usize, w: &KForm) -> Result<KForm> {
    if w.k() != k || w.n() != t.dim() {
        return Err(Error::FormMismatch("form does not match the target space".into()));
    }
    let m = canonical_dof_matrix(t, r, k)?;
    let inv = inverse(&m)?;
    let fs = canonical_functionals(t, r, k);
    let vals: Vec<Rational> = fs.iter().map(|f| f.eval(t, w)).collect::<Result<_>>()?;
    let c = inv.mul_vec(&vals);
    let basis = build_pr_lambda_k(t.dim(), r, k);
    let mut out = KForm::zero(t.dim(), k);
    for (b, ci) in basis.iter().zip(&c) {
        out.add_scaled(b, ci);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::rank_exact;

    #[test]
    fn lowest_order_edge_elements() {
        let t = Simplex::reference(3);
        let m = canonical_dof_matrix(&t, 1, 1).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (12, 12));
        assert_eq!(rank_exact(&m), 12);
    }

    #[test]
    fn constant_forms_by_faces_through_first_vertex() {
        let t = Simplex::reference(3);
        for k in 0..=3 {
            let m = canonical_dof_matrix(&t, 0, k).unwrap();
            assert_eq!(m.nrows(), m.ncols());
            assert_eq!(rank_exact(&m), m.nrows());
        }
    }
}
