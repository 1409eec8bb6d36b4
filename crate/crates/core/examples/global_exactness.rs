//! Global smooth sequences on macro meshes.

use alfeld::globalfe::{check_global_exact, RankMode};
use alfeld::ratlinalg::seeded_primes;
use alfeld::simplicial::MacroMesh;

fn main() {
    let meshes: Vec<String> = std::env::args().skip(1).collect();
    let meshes = if meshes.is_empty() { vec!["single-tet".to_string(), "two-tets".to_string()] } else { meshes };
    for name in &meshes {
        let mesh = MacroMesh::load(name).unwrap();
        let mode = if mesh.num_cells() <= 2 { RankMode::Exact } else { RankMode::Modular(seeded_primes(2, 1)) };
        for seq in 1..=3 {
            let rep = check_global_exact(seq, name, &mesh, 5, &mode).unwrap();
            let dims: Vec<usize> = rep.slots.iter().map(|s| s.dim).collect();
            println!("{name} seq{seq} ({}): dims {dims:?}, sum {}, {}", rep.rank_mode, rep.alternating_sum, rep.status);
        }
    }
}
