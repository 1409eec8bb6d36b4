use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dofs3d::{random_form, Diagram, DiagramProjectors};
use crate::error::Result;
use crate::polyforms::{KForm, PiecewiseKForm};
use crate::ratlinalg::Rational;
use crate::report::{Check, Status};
use crate::simplicial::MacroMesh;

use super::assembly::GlobalSpace;

/// Cell-by-cell projections of one diagram on a mesh, with the global spaces
/// they are expected to land in.
pub struct GlobalProjectors {
    pub diagram: Diagram,
    pub r: i64,
    pub cells: Vec<DiagramProjectors>,
    pub spaces: Vec<GlobalSpace>,
}

impl GlobalProjectors {
    pub fn new(diagram: Diagram, mesh: &MacroMesh, r: i64) -> Result<Self> {
        let cells = (0..mesh.num_cells()).map(|c| DiagramProjectors::new(diagram, r, &mesh.split(c))).collect::<Result<Vec<_>>>()?;
        let spaces = diagram.spaces().iter().map(|&s| GlobalSpace::build(s, r, mesh)).collect::<Result<Vec<_>>>()?;
        Ok(GlobalProjectors { diagram, r, cells, spaces })
    }

    /// Global coordinates of `pi_k p` for a polynomial form given on all of `R^3`.
    pub fn project(&self, k: usize, p: &KForm) -> Result<Vec<Rational>> {
        let mut per_cell = Vec::with_capacity(self.cells.len());
        for cell in &self.cells {
            per_cell.extend(cell.slots[k].coefficients(&[PiecewiseKForm::uniform(p, 4)])?);
        }
        Ok(self.spaces[k].stack(&per_cell))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalProjectCase {
    pub case: usize,
    pub operator: &'static str,
    /// `pi_k p` satisfies the constraints of the global space.
    pub member: bool,
    /// `pi_{k+1} dp` satisfies the constraints of the next global space.
    pub member_next: bool,
    /// Nonzero terms of `d pi_k p - pi_{k+1} dp`, summed over cells.
    pub defect_terms: usize,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalProjectReport {
    pub diagram: Diagram,
    pub mesh: String,
    pub r: i64,
    pub seed: Option<u64>,
    pub cases: Vec<GlobalProjectCase>,
    pub status: Status,
}

impl GlobalProjectReport {
    pub fn checks(&self) -> Vec<Check> {
        let p = format!("global-project/{}:{}:r{}", self.diagram, self.mesh, self.r);
        let mut out = Vec::new();
        for c in &self.cases {
            let q = format!("{p}/case{}/{}", c.case, c.operator);
            out.push(Check::new(format!("{q}/commute"), 0, c.defect_terms, c.defect_terms == 0));
            out.push(Check::new(format!("{q}/member"), true, c.member, c.member));
            out.push(Check::new(format!("{q}/member-next"), true, c.member_next, c.member_next));
        }
        out
    }
}

const OPS: [&str; 3] = ["grad", "curl", "div"];

/// Projects each input cell by cell and checks global membership and commutation.
pub fn global_project(proj: &GlobalProjectors, mesh_name: &str, cases: &[[KForm; 3]], seed: Option<u64>) -> Result<GlobalProjectReport> {
    let mut out = Vec::new();
    for (i, case) in cases.iter().enumerate() {
        for (k, p) in case.iter().enumerate() {
            let x = proj.project(k, p)?;
            let y = proj.project(k + 1, &p.d())?;
            let w = PiecewiseKForm::uniform(p, 4);
            let mut defect_terms = 0;
            for cell in &proj.cells {
                defect_terms += cell.defects(std::slice::from_ref(&w))?[0];
            }
            let member = proj.spaces[k].contains(&x);
            let member_next = proj.spaces[k + 1].contains(&y);
            out.push(GlobalProjectCase {
                case: i,
                operator: OPS[k],
                member,
                member_next,
                defect_terms,
                status: Status::of(member && member_next && defect_terms == 0),
            });
        }
    }
    let status = Status::of(out.iter().all(|c| c.status.is_pass()));
    Ok(GlobalProjectReport { diagram: proj.diagram, mesh: mesh_name.to_string(), r: proj.r, seed, cases: out, status })
}

/// Seeded random inputs of the given degree, one triple per case.
pub fn random_cases(seed: u64, cases: usize, degree: usize) -> Vec<[KForm; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases).map(|_| [random_form(&mut rng, 0, degree), random_form(&mut rng, 1, degree), random_form(&mut rng, 2, degree)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyforms::{Exp, Poly};

    #[test]
    fn reproduces_a_member_on_two_cells() {
        let mesh = MacroMesh::builtin("two-tets").unwrap();
        let proj = GlobalProjectors::new(Diagram::Two, &mesh, 5).unwrap();
        let p = KForm::scalar(Poly::monomial(3, Exp::from_slice(&[2, 1, 0]), Rational::one()));
        let x = proj.project(0, &p).unwrap();
        let forms = proj.spaces[0].forms(&x);
        assert!(forms.iter().all(|f| *f == PiecewiseKForm::uniform(&p, 4)));
        let zero = [p.clone(), KForm::zero(3, 1), KForm::zero(3, 2)];
        let rep = global_project(&proj, "two-tets", &[zero], None).unwrap();
        assert!(rep.status.is_pass());
    }
}
