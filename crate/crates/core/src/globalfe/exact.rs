use serde::Serialize;

use crate::dofs3d::{Diagram, DofSpace};
use crate::error::{Error, Result};
use crate::report::{Check, Status};
use crate::simplicial::MacroMesh;

use super::assembly::{compose, conformity, GlobalSpace, RankMode};

/// Spaces of global sequence 1 (all `Md`), 2 (`M2`, `Vd3` at the end) or 3 (`Mc1`, `Vc2`).
pub fn sequence_spaces(seq: u8) -> Result<[DofSpace; 4]> {
    Ok(sequence_diagram(seq)?.spaces())
}

/// The local diagram whose projections assemble the global ones.
pub fn sequence_diagram(seq: u8) -> Result<Diagram> {
    match seq {
        1 => Ok(Diagram::Two),
        2 => Ok(Diagram::One),
        3 => Ok(Diagram::Three),
        _ => Err(Error::InvalidSpec(format!("no global sequence {seq} (expected 1, 2 or 3)"))),
    }
}

/// Closed-form global dimensions of the second sequence in terms of mesh counts.
pub fn counted_dim(space: DofSpace, r: i64, counts: (usize, usize, usize, usize)) -> Option<i64> {
    let (v, e, f, t) = (counts.0 as i64, counts.1 as i64, counts.2 as i64, counts.3 as i64);
    match space {
        DofSpace::Md0 => Some(
            10 * v
                + ((r - 5) + 2 * (r - 4)) * e
                + ((r - 5) * (r - 4) / 2 + (r - 3) * (r - 2) / 2) * f
                + 2 * (r - 4) * (r - 3) * (r - 2) / 3 * t,
        ),
        DofSpace::Md1 => Some(
            12 * v
                + (3 * (r - 4) + 3 * (r - 3)) * e
                + ((r - 2) * (r - 3) / 2 + (r - 3) * (r - 5) + (r - 3) * (r - 4)) * f
                + (r - 3) * (2 * r - 5) * (r - 4) * t,
        ),
        DofSpace::M2 => Some(
            3 * v
                + 3 * (r - 3) * e
                + 3 * (r - 3) * (r - 4) / 2 * f
                + 3 * (1 + 4 * (r - 3) + 3 * (r - 3) * (r - 4) + 2 * (r - 5) * (r - 4) * (r - 3) / 3) * t,
        ),
        DofSpace::Vd3 => Some(2 * r * (r - 1) * (r - 2) / 3 * t),
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalSlot {
    pub space: DofSpace,
    pub unknowns: usize,
    pub constraint_rank: usize,
    pub dim: usize,
    /// Closed-form count where one is known.
    pub counted_dim: Option<i64>,
    pub rank_in: usize,
    pub rank_out: usize,
    pub kernel: usize,
    /// `d` of the space lands in the next space.
    pub inclusion: bool,
    /// Dimension without the within-cell vertex conditions, when they are imposed.
    pub dim_without_local_vertex_conditions: Option<usize>,
    pub primes_agree: bool,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlobalExactReport {
    pub sequence: u8,
    pub mesh: String,
    pub r: i64,
    /// `(V, E, F, T)` of the macro mesh.
    pub counts: (usize, usize, usize, usize),
    pub euler: i64,
    pub rank_mode: &'static str,
    pub primes: Vec<u64>,
    pub slots: Vec<GlobalSlot>,
    pub alternating_sum: i64,
    pub status: Status,
}

impl GlobalExactReport {
    fn prefix(&self) -> String {
        format!("global/{}:seq{}:r{}", self.mesh, self.sequence, self.r)
    }

    pub fn checks(&self) -> Vec<Check> {
        let p = self.prefix();
        let mut out = vec![
            Check::eq(format!("{p}/euler-mesh"), 0, self.euler - 1),
            Check::eq(format!("{p}/alternating-sum"), 1, self.alternating_sum),
        ];
        for s in &self.slots {
            let q = format!("{p}/{}", s.space);
            out.push(Check::new(format!("{q}/exact"), s.rank_in, s.kernel, s.rank_in == s.kernel));
            out.push(Check::new(format!("{q}/inclusion"), true, s.inclusion, s.inclusion));
            if let Some(c) = s.counted_dim {
                out.push(Check::eq(format!("{q}/counted-dim"), c, s.dim as i64));
            }
            if self.rank_mode == "modular" {
                out.push(Check::new(format!("{q}/primes-agree"), true, s.primes_agree, s.primes_agree));
            }
            if let Some(d) = s.dim_without_local_vertex_conditions {
                out.push(
                    Check::eq(format!("{q}/local-vertex-conditions-redundant"), d, s.dim)
                        .with_note("jets of the pieces of one cell already agree at its vertices and barycenter"),
                );
            }
        }
        out
    }
}

/// Verifies exactness of a global sequence with ranks of stacked sparse systems.
///
/// With `C_k` the constraints of slot `k` and `D_k` the block diagonal local
/// derivative, `dim V_k = n_k - rank C_k`, `rank d|V_k = rank [C_k; D_k] -
/// rank C_k`, and `d V_k` lies in `V_{k+1}` iff `C_{k+1} D_k` adds nothing to
/// the row space of `C_k`.
pub fn check_global_exact(seq: u8, mesh_name: &str, mesh: &MacroMesh, r: i64, mode: &RankMode) -> Result<GlobalExactReport> {
    if mode == &RankMode::Exact && mesh.num_cells() > 2 {
        return Err(Error::Precondition(format!("exact ranks are limited to two macro cells, mesh has {}", mesh.num_cells())));
    }
    let spaces = sequence_spaces(seq)?;
    let globals = spaces.iter().map(|&s| GlobalSpace::build(s, r, mesh)).collect::<Result<Vec<_>>>()?;
    let counts = mesh.counts();
    let mut slots = Vec::new();
    let mut rank_in = 1;
    for (k, g) in globals.iter().enumerate() {
        let n = g.unknowns();
        let rows = g.rows();
        let c = mode.rank(n, &rows);
        let dim = n - c.rank;
        let mut agree = c.agree();
        let (rank_out, inclusion) = match globals.get(k + 1) {
            Some(next) => {
                let d = g.d_rows(next)?;
                let cd = mode.rank(n, &[rows.clone(), d.clone()].concat());
                let image = compose(&next.rows(), &d);
                let ci = mode.rank(n, &[rows.clone(), image].concat());
                agree &= cd.agree() && ci.agree();
                (cd.rank - c.rank, ci.rank == c.rank)
            }
            None => (0, true),
        };
        let dim_without = conformity(g.space).1.map(|_| {
            let w = mode.rank(n, &g.coupling_rows());
            agree &= w.agree();
            n - w.rank
        });
        let kernel = dim - rank_out;
        slots.push(GlobalSlot {
            space: g.space,
            unknowns: n,
            constraint_rank: c.rank,
            dim,
            counted_dim: if seq == 2 { counted_dim(g.space, r, counts) } else { None },
            rank_in,
            rank_out,
            kernel,
            inclusion,
            dim_without_local_vertex_conditions: dim_without,
            primes_agree: agree,
            status: Status::of(kernel == rank_in && inclusion && agree),
        });
        rank_in = rank_out;
    }
    let alternating_sum = slots.iter().enumerate().map(|(k, s)| if k % 2 == 0 { s.dim as i64 } else { -(s.dim as i64) }).sum();
    let primes = match mode {
        RankMode::Modular(p) => p.clone(),
        RankMode::Exact => Vec::new(),
    };
    let mut report = GlobalExactReport {
        sequence: seq,
        mesh: mesh_name.to_string(),
        r,
        counts,
        euler: mesh.euler_characteristic(),
        rank_mode: mode.name(),
        primes,
        slots,
        alternating_sum,
        status: Status::Pass,
    };
    report.status = Status::of(report.checks().iter().all(|c| c.status.is_pass()));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counted_dims_on_one_cell() {
        let one = (4, 6, 4, 1);
        assert_eq!(counted_dim(DofSpace::Md0, 5, one), Some(68));
        assert_eq!(counted_dim(DofSpace::Md1, 5, one), Some(132));
        assert_eq!(counted_dim(DofSpace::M2, 5, one), Some(105));
        assert_eq!(counted_dim(DofSpace::Vd3, 5, one), Some(40));
        assert_eq!(counted_dim(DofSpace::Md0, 6, one), Some(114));
    }

    #[test]
    fn single_tet_second_sequence() {
        let mesh = MacroMesh::builtin("single-tet").unwrap();
        let rep = check_global_exact(2, "single-tet", &mesh, 5, &RankMode::Exact).unwrap();
        let dims: Vec<usize> = rep.slots.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![68, 132, 105, 40]);
        assert_eq!(rep.alternating_sum, 1);
        assert!(rep.status.is_pass(), "{:?}", rep.checks().iter().filter(|c| !c.status.is_pass()).collect::<Vec<_>>());
    }

    #[test]
    fn unknown_sequence() {
        assert!(sequence_spaces(4).is_err());
    }
}
