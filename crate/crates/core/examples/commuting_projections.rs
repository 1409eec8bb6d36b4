//! Commuting projections of the three local diagrams on random inputs.

use alfeld::dofs3d::{check_commute, Diagram};
use alfeld::simplicial::AlfeldSplit;

fn main() {
    let split = AlfeldSplit::of_reference(3);
    for d in Diagram::ALL {
        let rep = check_commute(d, 5, 1, 2, &split).unwrap();
        let worst = rep.identities.iter().map(|i| i.defect_terms).max().unwrap_or(0);
        println!("diagram {d}: {} identities, largest defect {worst} terms, {}", rep.identities.len(), rep.status);
    }
}
