//! Cell-by-cell projections into the global spaces.

use alfeld::dofs3d::Diagram;
use alfeld::globalfe::{global_project, random_cases, GlobalProjectors};
use alfeld::simplicial::MacroMesh;

fn main() {
    let mesh = MacroMesh::builtin("two-tets").unwrap();
    let proj = GlobalProjectors::new(Diagram::Two, &mesh, 5).unwrap();
    let rep = global_project(&proj, "two-tets", &random_cases(3, 1, 7), Some(3)).unwrap();
    for c in &rep.cases {
        println!("{}: member {}, next member {}, defect {} terms", c.operator, c.member, c.member_next, c.defect_terms);
    }
    println!("{}", rep.status);
}
