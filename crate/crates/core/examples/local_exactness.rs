//! Exactness of the local sequences by rank-nullity.

use alfeld::simplicial::AlfeldSplit;
use alfeld::splitspaces::{check_exact, SequenceSpec};

fn main() {
    let split = AlfeldSplit::of_reference(3);
    for which in 1..=3 {
        let rep = check_exact(&SequenceSpec::smooth3d(which, 5, false).unwrap(), &split).unwrap();
        let dims: Vec<usize> = rep.slots.iter().map(|s| s.dim).collect();
        println!("{}: dims {dims:?}, alternating sum {}, {}", rep.sequence, rep.alternating_sum, rep.status);
    }
    let split2 = AlfeldSplit::of_reference(2);
    for j in 0..=2 {
        let rep = check_exact(&SequenceSpec::family(2, j, 3, true).unwrap(), &split2).unwrap();
        println!("{}: {}", rep.sequence, rep.status);
    }
}
