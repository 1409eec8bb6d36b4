use alfeld::dofs3d::{Diagram, DofSpace};
use alfeld::globalfe::{check_global_exact, global_project, random_cases, GlobalProjectors, GlobalSpace, RankMode};
use alfeld::ratlinalg::seeded_primes;
use alfeld::simplicial::MacroMesh;

#[test]
fn single_tet_reproduces_local_dimensions() {
    let mesh = MacroMesh::builtin("single-tet").unwrap();
    let dims: Vec<usize> = DofSpace::ALL.iter().map(|&s| GlobalSpace::build(s, 5, &mesh).unwrap().dim(&RankMode::Exact)).collect();
    assert_eq!(dims, vec![68, 132, 80, 15, 192, 105, 165, 40]);
}

#[test]
fn two_tets_dimensions() {
    let mesh = MacroMesh::builtin("two-tets").unwrap();
    let want = [(1, [97, 196, 124, 24]), (2, [97, 196, 180, 80]), (3, [97, 330, 314, 80])];
    for (seq, dims) in want {
        let rep = check_global_exact(seq, "two-tets", &mesh, 5, &RankMode::Exact).unwrap();
        assert!(rep.status.is_pass());
        assert_eq!(rep.slots.iter().map(|s| s.dim).collect::<Vec<_>>(), dims);
    }
}

#[test]
fn cube6_hermite_sequence_with_modular_ranks() {
    let mesh = MacroMesh::builtin("cube6").unwrap();
    let rep = check_global_exact(3, "cube6", &mesh, 5, &RankMode::Modular(seeded_primes(2, 4))).unwrap();
    assert!(rep.status.is_pass(), "{:?}", rep.checks().into_iter().filter(|c| !c.status.is_pass()).collect::<Vec<_>>());
    assert_eq!(rep.slots.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![196, 855, 900, 240]);
    assert!(rep.slots.iter().all(|s| s.primes_agree));
}

#[test]
fn exact_ranks_are_refused_on_large_meshes() {
    let mesh = MacroMesh::builtin("cube6").unwrap();
    assert!(check_global_exact(1, "cube6", &mesh, 5, &RankMode::Exact).is_err());
}

#[test]
fn random_degree_seven_projection_on_two_tets() {
    let mesh = MacroMesh::builtin("two-tets").unwrap();
    let proj = GlobalProjectors::new(Diagram::Two, &mesh, 5).unwrap();
    let rep = global_project(&proj, "two-tets", &random_cases(11, 1, 7), Some(11)).unwrap();
    assert!(rep.status.is_pass(), "{:?}", rep.cases);
}

#[test]
fn random_degree_six_projection_on_cube6() {
    let mesh = MacroMesh::builtin("cube6").unwrap();
    let proj = GlobalProjectors::new(Diagram::Three, &mesh, 5).unwrap();
    let rep = global_project(&proj, "cube6", &random_cases(12, 1, 6), Some(12)).unwrap();
    assert!(rep.status.is_pass(), "{:?}", rep.cases);
}
