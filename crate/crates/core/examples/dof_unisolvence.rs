//! Degrees of freedom of the eight smooth spaces and their unisolvence.

use alfeld::dofs3d::{build_dofset, check_unisolvence, DofSpace};
use alfeld::simplicial::AlfeldSplit;
use alfeld::splitspaces::build_space;

fn main() {
    let split = AlfeldSplit::of_reference(3);
    let r = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    for space in DofSpace::ALL {
        let set = build_dofset(space, r, &split).unwrap();
        let basis = build_space(&set.target, &split).unwrap();
        let rep = check_unisolvence(&set, &basis).unwrap();
        println!("{space:<4} r={r}: {} functionals, dim {}, rank {}, {}", rep.functionals, rep.dim, rep.matrix_rank, rep.status);
        for g in set.disputed() {
            println!("      disputed block kept: {} ({})", g.label, g.count);
        }
    }
}
