use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyforms::{monomials, sigmas, KForm, PiecewiseKForm, Poly};
use crate::ratlinalg::Rational;
use crate::report::{Check, Status};
use crate::simplicial::AlfeldSplit;

use super::projection::Projector;
use super::sets::DofSpace;

/// The three local commuting diagrams, named by their second and third slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagram {
    /// `Md0, Md1, Md2, Md3`
    Two,
    /// `Md0, Md1, M2, Vd3`
    One,
    /// `Md0, Mc1, Vc2, Vd3`
    Three,
}

impl Diagram {
    pub const ALL: [Diagram; 3] = [Diagram::Two, Diagram::One, Diagram::Three];

    pub fn spaces(self) -> [DofSpace; 4] {
        match self {
            Diagram::Two => [DofSpace::Md0, DofSpace::Md1, DofSpace::Md2, DofSpace::Md3],
            Diagram::One => [DofSpace::Md0, DofSpace::Md1, DofSpace::M2, DofSpace::Vd3],
            Diagram::Three => [DofSpace::Md0, DofSpace::Mc1, DofSpace::Vc2, DofSpace::Vd3],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Diagram::Two => "two",
            Diagram::One => "one",
            Diagram::Three => "three",
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Diagram::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidSpec(format!("unknown diagram '{s}' (expected one, two or three)")))
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// The four projections of a diagram.
#[derive(Debug)]
pub struct DiagramProjectors {
    pub diagram: Diagram,
    pub r: i64,
    pub slots: [Projector; 4],
}

impl DiagramProjectors {
    pub fn new(diagram: Diagram, r: i64, split: &AlfeldSplit) -> Result<Self> {
        let [a, b, c, d] = diagram.spaces();
        let slots = [Projector::new(a, r, split)?, Projector::new(b, r, split)?, Projector::new(c, r, split)?, Projector::new(d, r, split)?];
        Ok(DiagramProjectors { diagram, r, slots })
    }

    /// Number of nonzero coefficients of `d Pi_k w - Pi_{k+1} d w` for each `k`-form `w`.
    pub fn defects(&self, ws: &[PiecewiseKForm]) -> Result<Vec<usize>> {
        let Some(k) = ws.first().map(|w| w.k()) else { return Ok(Vec::new()) };
        if k > 2 || ws.iter().any(|w| w.k() != k) {
            return Err(Error::FormMismatch("inputs must share a degree below three".into()));
        }
        let lhs = self.slots[k].project_many(ws)?;
        let dws: Vec<PiecewiseKForm> = ws.iter().map(|w| w.d()).collect();
        let rhs = self.slots[k + 1].project_many(&dws)?;
        lhs.iter()
            .zip(&rhs)
            .map(|(a, b)| Ok(a.d().sub(b)?.pieces.iter().flat_map(|p| p.coeffs()).map(|c| c.num_terms()).sum()))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub case: usize,
    pub operator: &'static str,
    pub input_degree: usize,
    pub defect_terms: usize,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommuteReport {
    pub diagram: Diagram,
    pub r: i64,
    pub seed: u64,
    pub identities: Vec<IdentityResult>,
    pub status: Status,
}

impl CommuteReport {
    pub fn checks(&self) -> Vec<Check> {
        self.identities
            .iter()
            .map(|i| {
                Check::new(
                    format!("commute/{}:r{}/case{}/{}", self.diagram, self.r, i.case, i.operator),
                    0,
                    i.defect_terms,
                    i.status.is_pass(),
                )
            })
            .collect()
    }
}

/// Dense random `k`-form on `R^3` with integer coefficients in `[-5, 5]`.
pub fn random_form<R: Rng>(rng: &mut R, k: usize, degree: usize) -> KForm {
    let coeffs = sigmas(3, k)
        .iter()
        .map(|_| {
            let mut p = Poly::zero(3);
            for e in monomials(3, degree) {
                p.add_term(e, &Rational::from_int(rng.gen_range(-5..=5)));
            }
            p
        })
        .collect();
    KForm::from_coeffs(3, k, coeffs).expect("shape")
}

const OPS: [&str; 3] = ["grad", "curl", "div"];

/// Checks the three identities on given inputs: a scalar, a 1-form and a 2-form per case.
pub fn check_commute_on(proj: &DiagramProjectors, cases: &[[KForm; 3]], seed: u64) -> Result<CommuteReport> {
    let mut identities = Vec::new();
    for k in 0..3 {
        let ws: Vec<PiecewiseKForm> = cases.iter().map(|c| PiecewiseKForm::uniform(&c[k], 4)).collect();
        if let Some(i) = ws.iter().position(|w| w.k() != k) {
            return Err(Error::FormMismatch(format!("input {k} of case {i} is a {}-form", ws[i].k())));
        }
        for (i, defect) in proj.defects(&ws)?.into_iter().enumerate() {
            identities.push(IdentityResult {
                case: i,
                operator: OPS[k],
                input_degree: cases[i][k].degree().unwrap_or(0),
                defect_terms: defect,
                status: Status::of(defect == 0),
            });
        }
    }
    identities.sort_by_key(|i| i.case);
    let status = Status::of(identities.iter().all(|i| i.status.is_pass()));
    Ok(CommuteReport { diagram: proj.diagram, r: proj.r, seed, identities, status })
}

/// Seeded random inputs of degree `r + 2`, `cases` of each kind.
pub fn check_commute(diagram: Diagram, r: i64, seed: u64, cases: usize, split: &AlfeldSplit) -> Result<CommuteReport> {
    let proj = DiagramProjectors::new(diagram, r, split)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let deg = (r + 2) as usize;
    let inputs: Vec<[KForm; 3]> =
        (0..cases).map(|_| [random_form(&mut rng, 0, deg), random_form(&mut rng, 1, deg), random_form(&mut rng, 2, deg)]).collect();
    check_commute_on(&proj, &inputs, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyforms::Exp;

    fn mono(e: [u8; 3]) -> Poly {
        Poly::monomial(3, Exp::from_slice(&e), Rational::one())
    }

    #[test]
    fn members_commute_trivially() {
        let split = AlfeldSplit::of_reference(3);
        let proj = DiagramProjectors::new(Diagram::Two, 5, &split).unwrap();
        let p = KForm::scalar(mono([2, 1, 0]));
        let w = PiecewiseKForm::uniform(&p, 4);
        assert_eq!(proj.slots[0].project(&w).unwrap(), w);
        assert_eq!(proj.slots[1].project(&w.d()).unwrap(), w.d());
        assert_eq!(proj.defects(&[w]).unwrap(), vec![0]);
    }

    #[test]
    fn high_degree_curl_commutes() {
        let split = AlfeldSplit::of_reference(3);
        let proj = DiagramProjectors::new(Diagram::One, 5, &split).unwrap();
        let q = KForm::from_coeffs(3, 1, vec![mono([0, 7, 0]), Poly::zero(3), Poly::zero(3)]).unwrap();
        assert_eq!(proj.defects(&[PiecewiseKForm::uniform(&q, 4)]).unwrap(), vec![0]);
    }

    #[test]
    fn seeded_inputs_are_reproducible() {
        use rand::SeedableRng;
        let a = random_form(&mut ChaCha8Rng::seed_from_u64(3), 2, 4);
        let b = random_form(&mut ChaCha8Rng::seed_from_u64(3), 2, 4);
        assert_eq!(a, b);
        assert_eq!(a.degree(), Some(4));
    }

    #[test]
    fn diagram_three_on_two_cases() {
        let split = AlfeldSplit::of_reference(3);
        let rep = check_commute(Diagram::Three, 5, 7, 2, &split).unwrap();
        assert_eq!(rep.identities.len(), 6);
        assert!(rep.status.is_pass());
        assert_eq!(rep.checks()[0].name, "commute/three:r5/case0/grad");
    }

    #[test]
    fn diagram_names() {
        assert_eq!("TWO".parse::<Diagram>().unwrap(), Diagram::Two);
        assert!("four".parse::<Diagram>().is_err());
    }
}
