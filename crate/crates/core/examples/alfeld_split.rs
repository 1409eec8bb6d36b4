//! The Alfeld split of a tetrahedron and the built-in macro meshes.

use alfeld::polyforms::Poly;
use alfeld::simplicial::{AlfeldSplit, MacroMesh};
use alfeld::Rational;

fn main() {
    let split = AlfeldSplit::of_reference(3);
    println!("split point {:?}", split.split_point().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    for s in 0..=3 {
        println!("  {s}-simplices: {}", split.count(s));
    }
    println!("  interior faces: {}, boundary faces: {}", split.internal_faces().len(), split.boundary_faces().len());

    let hat: Vec<Poly> = split.hat_function();
    let z = split.split_point().clone();
    println!("hat function at the split point: {}", hat[0].eval(&z));
    assert_eq!(hat[0].eval(&z), Rational::one());

    for name in MacroMesh::builtin_names() {
        let m = MacroMesh::builtin(name).expect("builtin");
        let (v, e, f, t) = m.counts();
        println!("{name}: V={v} E={e} F={f} T={t}, V-E+F-T = {}", m.euler_characteristic());
    }
}
