use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyforms::PiecewiseKForm;
use crate::ratlinalg::{rank_exact, solve_many, RatMatrix, Rational};
use crate::report::{Check, Status};
use crate::simplicial::AlfeldSplit;
use crate::splitspaces::{build_space, SpaceBasis};

use super::sets::{build_dofset, DofGroup, DofSet, DofSpace};

/// Functionals applied to a basis: rows are functionals, columns basis elements.
pub fn dof_matrix(dofs: &DofSet, basis: &SpaceBasis) -> Result<RatMatrix> {
    if basis.spec != dofs.target {
        return Err(Error::FormMismatch(format!("{} functionals on a basis of {}", dofs.target, basis.spec)));
    }
    let rows = dofs.raw_rows(&basis.layout);
    let mut m = RatMatrix::zeros(rows.len(), basis.dim());
    for (i, row) in rows.iter().enumerate() {
        let nz: Vec<(usize, &Rational)> = row.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        for (j, b) in basis.basis.iter().enumerate() {
            let mut s = Rational::zero();
            for (c, v) in &nz {
                if !b[*c].is_zero() {
                    s += &(*v * &b[*c]);
                }
            }
            m[(i, j)] = s;
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct UnisolvenceReport {
    pub space: DofSpace,
    pub r: i64,
    pub target: String,
    pub dim: usize,
    pub functionals: usize,
    pub expected_functionals: i64,
    pub matrix_rank: usize,
    pub unisolvent: bool,
    pub count_by_kind: std::collections::BTreeMap<&'static str, usize>,
    pub groups: Vec<DofGroup>,
    pub status: Status,
}

impl UnisolvenceReport {
    pub fn checks(&self) -> Vec<Check> {
        let p = format!("dofs/{}:r{}", self.space, self.r);
        let mut out = vec![
            Check::eq(format!("{p}/count"), self.dim as i64, self.functionals as i64),
            Check::eq(format!("{p}/count-formula"), self.expected_functionals, self.functionals as i64),
            Check::new(format!("{p}/unisolvent"), self.dim, self.matrix_rank, self.unisolvent),
        ];
        for g in self.groups.iter().filter(|g| g.disputed && g.count > 0) {
            out.push(
                Check::eq(format!("{p}/disputed/{}", g.label), g.expected, g.count as i64)
                    .with_note("block listed as omitted for this degree; kept because the total only matches the dimension with it"),
            );
        }
        out
    }
}

/// Square and full rank.
pub fn check_unisolvence(dofs: &DofSet, basis: &SpaceBasis) -> Result<UnisolvenceReport> {
    let m = dof_matrix(dofs, basis)?;
    let rank = rank_exact(&m);
    let unisolvent = m.nrows() == m.ncols() && rank == basis.dim();
    let count_ok = dofs.expected_total() == dofs.len() as i64;
    Ok(UnisolvenceReport {
        space: dofs.space,
        r: dofs.r,
        target: dofs.target.to_string(),
        dim: basis.dim(),
        functionals: dofs.len(),
        expected_functionals: dofs.expected_total(),
        matrix_rank: rank,
        unisolvent,
        count_by_kind: dofs.count_by_kind(),
        groups: dofs.groups.clone(),
        status: Status::of(unisolvent && count_ok),
    })
}

/// Builds the set and the target space and checks unisolvence.
pub fn unisolvence(space: DofSpace, r: i64, split: &AlfeldSplit) -> Result<UnisolvenceReport> {
    let dofs = build_dofset(space, r, split)?;
    let basis = build_space(&dofs.target, split)?;
    check_unisolvence(&dofs, &basis)
}

/// The projection induced by a unisolvent set.
#[derive(Debug)]
pub struct Projector {
    pub dofs: DofSet,
    pub basis: Arc<SpaceBasis>,
    pub matrix: RatMatrix,
}

impl Projector {
    pub fn new(space: DofSpace, r: i64, split: &AlfeldSplit) -> Result<Self> {
        let dofs = build_dofset(space, r, split)?;
        let basis = build_space(&dofs.target, split)?;
        let matrix = dof_matrix(&dofs, &basis)?;
        if matrix.nrows() != matrix.ncols() || rank_exact(&matrix) != basis.dim() {
            return Err(Error::Precondition(format!("{space} functionals are not unisolvent at r = {r}")));
        }
        Ok(Projector { dofs, basis, matrix })
    }

    /// Coordinates in the basis of the unique members sharing all functional values with the inputs.
    pub fn coefficients(&self, ps: &[PiecewiseKForm]) -> Result<Vec<Vec<Rational>>> {
        let mut rhs = Vec::with_capacity(ps.len());
        for p in ps {
            if p.n() != 3 || p.k() != self.dofs.target.k || p.len() != 4 {
                return Err(Error::FormMismatch(format!("cannot project a {}-form onto {}", p.k(), self.dofs.target)));
            }
            rhs.push(self.dofs.eval_all(p));
        }
        if rhs.is_empty() {
            return Ok(Vec::new());
        }
        Ok(solve_many(&self.matrix, &rhs)?)
    }

    /// Projects several inputs with one elimination.
    pub fn project_many(&self, ps: &[PiecewiseKForm]) -> Result<Vec<PiecewiseKForm>> {
        Ok(self.coefficients(ps)?.iter().map(|c| self.basis.layout.to_form(&self.basis.combine(c))).collect())
    }

    pub fn project(&self, p: &PiecewiseKForm) -> Result<PiecewiseKForm> {
        Ok(self.project_many(std::slice::from_ref(p))?.pop().expect("one input"))
    }

    pub fn project_form(&self, p: &crate::polyforms::KForm) -> Result<PiecewiseKForm> {
        self.project(&PiecewiseKForm::uniform(p, 4))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dofs3d::commute::random_form;
    use crate::dofs3d::face::{face_child, parent_points};
    use crate::dofs3d::functional::DofFunctional;
    use crate::polyforms::{form_to_proxy, grad, AffineMap, Exp, KForm, Poly, Proxy};
    use crate::ratlinalg::{nullspace_basis, RatMatrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn split() -> AlfeldSplit {
        AlfeldSplit::of_reference(3)
    }

    fn x2y() -> KForm {
        KForm::scalar(Poly::monomial(3, Exp::from_slice(&[2, 1, 0]), Rational::one()))
    }

    #[test]
    fn small_sets_are_unisolvent() {
        for (space, dim) in [(DofSpace::Md0, 68), (DofSpace::Md3, 15), (DofSpace::Vd3, 40)] {
            let rep = unisolvence(space, 5, &split()).unwrap();
            assert_eq!((rep.dim, rep.functionals, rep.matrix_rank), (dim, dim, dim));
            assert!(rep.status.is_pass());
        }
    }

    #[test]
    fn reproduces_members() {
        let p = Projector::new(DofSpace::Md0, 5, &split()).unwrap();
        let q = x2y();
        assert_eq!(p.project_form(&q).unwrap(), PiecewiseKForm::uniform(&q, 4));
        for j in [0, 17, 67] {
            let b = p.basis.element(j);
            assert_eq!(p.project(&b).unwrap(), b);
        }
    }

    #[test]
    fn matches_functionals_and_is_idempotent() {
        let p = Projector::new(DofSpace::Md0, 5, &split()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let w = PiecewiseKForm::uniform(&random_form(&mut rng, 0, 7), 4);
        let pw = p.project(&w).unwrap();
        assert!(p.basis.contains(&pw));
        assert_eq!(p.dofs.eval_all(&pw), p.dofs.eval_all(&w));
        assert_eq!(p.project(&pw).unwrap(), pw);
    }

    fn scaled(t: &Proxy, s: &Rational) -> Proxy {
        match t {
            Proxy::Scalar(q) => Proxy::Scalar(q.scale(s)),
            Proxy::Vector(v) => Proxy::Vector(v.clone().map(|q| q.scale(s))),
        }
    }

    #[test]
    fn rescaled_functionals_give_the_same_projection() {
        let s = split();
        let p = Projector::new(DofSpace::Md1, 5, &s).unwrap();
        let mut dofs = p.dofs.clone();
        for (i, f) in dofs.functionals.iter_mut().enumerate() {
            let c = Rational::new(i as i64 % 5 + 2, 7);
            match f {
                DofFunctional::EdgeMoment { test, .. } | DofFunctional::FaceMoment { test, .. } => *test = scaled(test, &c),
                DofFunctional::CellMoment { test, duals, .. } => {
                    *test = test.iter().map(|t| scaled(t, &c)).collect();
                    *duals = Default::default();
                }
                DofFunctional::PointDeriv { .. } => {}
            }
        }
        let matrix = dof_matrix(&dofs, &p.basis).unwrap();
        let q = Projector { dofs, basis: p.basis.clone(), matrix };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let w = PiecewiseKForm::uniform(&random_form(&mut rng, 1, 6), 4);
        assert_eq!(p.project(&w).unwrap(), q.project(&w).unwrap());
    }

    #[test]
    fn vanishing_face_functionals_kill_trace_and_gradient() {
        let s = split();
        let face = [0, 1, 2];
        let dofs = build_dofset(DofSpace::Md0, 5, &s).unwrap();
        let basis = build_space(&dofs.target, &s).unwrap();
        let m = dof_matrix(&dofs, &basis).unwrap();
        let rows: Vec<Vec<Rational>> = dofs
            .functionals
            .iter()
            .enumerate()
            .filter(|(_, f)| f.support().iter().all(|v| face.contains(v)))
            .map(|(i, _)| m.row(i).to_vec())
            .collect();
        let kernel = nullspace_basis(&RatMatrix::from_rows(rows));
        assert!(kernel.ncols() > 0);
        let mut map = AffineMap::from_vertices(&parent_points(&s, &face));
        for c in kernel.columns() {
            let w = basis.layout.to_form(&basis.combine(&c));
            let Proxy::Scalar(phi) = form_to_proxy(&w.pieces[face_child(&face)]).unwrap() else { unreachable!() };
            assert!(map.pullback(&phi).is_zero());
            assert!(grad(&phi).iter().all(|g| map.pullback(g).is_zero()));
        }
    }

    #[test]
    fn wrong_input_degree_is_an_error() {
        let p = Projector::new(DofSpace::Vd3, 5, &split()).unwrap();
        assert!(p.project_form(&x2y()).is_err());
    }
}
