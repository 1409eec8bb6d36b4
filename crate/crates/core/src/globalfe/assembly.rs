use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dofs3d::DofSpace;
use crate::error::{Error, Result};
use crate::polyforms::{form_to_proxy, monomials, AffineMap, MonomialBasis, PiecewiseKForm, Poly, Proxy};
use crate::polyforms::proxy::poly_dot;
use crate::ratlinalg::{echelon_of, modular::reduce_rows, Fp, RatMatrix, Rational, SparseRow, Q};
use crate::simplicial::simplex::{cofactor_normal, sub};
use crate::simplicial::{AlfeldSplit, MacroMesh, Point};
use crate::splitspaces::{build_space, d_matrix, SpaceBasis};

/// Quantity required to be single-valued across an interior face.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trace {
    /// All proxy components.
    Value,
    /// All components of grad, curl or div.
    D,
    /// Normal component of a vector proxy.
    Normal,
}

/// Interface conditions and vertex smoothness order of each global space.
pub fn conformity(space: DofSpace) -> (&'static [Trace], Option<usize>) {
    match space {
        DofSpace::Md0 => (&[Trace::Value, Trace::D], Some(2)),
        DofSpace::Md1 => (&[Trace::Value, Trace::D], Some(1)),
        DofSpace::Md2 => (&[Trace::Value, Trace::D], None),
        DofSpace::Md3 => (&[Trace::Value], None),
        DofSpace::Mc1 => (&[Trace::Value], Some(1)),
        DofSpace::M2 => (&[Trace::Value], None),
        DofSpace::Vc2 => (&[Trace::Normal], Some(0)),
        DofSpace::Vd3 => (&[], None),
    }
}

/// How ranks of global matrices are computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankMode {
    Exact,
    /// Rank modulo each prime; the maximum is reported.
    Modular(Vec<u64>),
}

/// A rank with the per-prime values it was taken from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank {
    pub rank: usize,
    pub per_prime: Vec<usize>,
}

impl Rank {
    pub fn agree(&self) -> bool {
        self.per_prime.windows(2).all(|w| w[0] == w[1])
    }
}

impl RankMode {
    pub fn name(&self) -> &'static str {
        match self {
            RankMode::Exact => "exact",
            RankMode::Modular(_) => "modular",
        }
    }

    pub fn rank(&self, ncols: usize, rows: &[SparseRow<Rational>]) -> Rank {
        match self {
            RankMode::Exact => {
                let r = echelon_of(Q, ncols, rows).rank();
                Rank { rank: r, per_prime: Vec::new() }
            }
            RankMode::Modular(primes) => {
                let per_prime: Vec<usize> = primes
                    .iter()
                    .map(|&p| {
                        let f = Fp::new(p);
                        reduce_rows(&f, rows).map_or(0, |rs| echelon_of(f, ncols, &rs).rank())
                    })
                    .collect();
                Rank { rank: per_prime.iter().copied().max().unwrap_or(0), per_prime }
            }
        }
    }
}

/// Global space on the Alfeld refinement of a macro mesh, with the local
/// basis coordinates of every macro cell as unknowns.
#[derive(Clone, Debug)]
pub struct GlobalSpace {
    pub space: DofSpace,
    pub r: i64,
    pub splits: Vec<AlfeldSplit>,
    pub locals: Vec<Arc<SpaceBasis>>,
    pub offsets: Vec<usize>,
    /// Continuity across interior macro faces.
    pub interface_rows: Vec<SparseRow<Rational>>,
    /// Agreement of jets at macro vertices between pieces of different cells.
    pub vertex_rows: Vec<SparseRow<Rational>>,
    /// Agreement of jets between pieces of one cell, at its vertices and barycenter.
    pub local_vertex_rows: Vec<SparseRow<Rational>>,
}

fn components(p: Proxy) -> Vec<Poly> {
    match p {
        Proxy::Scalar(s) => vec![s],
        Proxy::Vector(v) => v.to_vec(),
    }
}

fn sparse(acc: BTreeMap<usize, Rational>) -> SparseRow<Rational> {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `rows x unknowns` block `(row, col, value)` per local basis element.
struct Block {
    offset: usize,
    /// One column per local basis element.
    columns: Vec<Vec<Rational>>,
}

fn difference_rows(a: &Block, b: &Block) -> Vec<SparseRow<Rational>> {
    let nrows = a.columns.first().or(b.columns.first()).map_or(0, Vec::len);
    let mut out = Vec::new();
    for i in 0..nrows {
        let mut acc = BTreeMap::new();
        for (j, col) in a.columns.iter().enumerate() {
            if !col[i].is_zero() {
                *acc.entry(a.offset + j).or_insert_with(Rational::zero) += &col[i];
            }
        }
        for (j, col) in b.columns.iter().enumerate() {
            if !col[i].is_zero() {
                *acc.entry(b.offset + j).or_insert_with(Rational::zero) -= &col[i];
            }
        }
        let row = sparse(acc);
        if !row.is_empty() {
            out.push(row);
        }
    }
    out
}

impl GlobalSpace {
    pub fn build(space: DofSpace, r: i64, mesh: &MacroMesh) -> Result<Self> {
        if r < 5 {
            return Err(Error::Precondition(format!("global spaces need r >= 5, got {r}")));
        }
        let spec = space.target(r)?;
        let splits: Vec<AlfeldSplit> = (0..mesh.num_cells()).map(|c| mesh.split(c)).collect();
        let locals = splits.iter().map(|s| build_space(&spec, s)).collect::<Result<Vec<_>>>()?;
        let mut offsets = vec![0];
        for b in &locals {
            offsets.push(offsets.last().unwrap() + b.dim());
        }
        let elements: Vec<Vec<PiecewiseKForm>> = locals.iter().map(|b| b.elements()).collect();
        let (traces, order) = conformity(space);

        let mut interface_rows = Vec::new();
        if !traces.is_empty() {
            for face in mesh.faces().iter().filter(|f| f.cells.len() == 2) {
                let pts: Vec<Point> = face.verts.iter().map(|&v| mesh.vertices()[v].clone()).collect();
                let normal = cofactor_normal(&[sub(&pts[1], &pts[0]), sub(&pts[2], &pts[0])]);
                let mut map = AffineMap::from_vertices(&pts);
                let mono = MonomialBasis::new(2, spec.r.max(0) as usize);
                let block = |cell: usize, child: usize, map: &mut AffineMap| -> Block {
                    let columns = elements[cell]
                        .iter()
                        .map(|w| {
                            let piece = &w.pieces[child];
                            let mut col = Vec::new();
                            for t in traces {
                                let polys = match t {
                                    Trace::Value => components(form_to_proxy(piece).expect("3d form")),
                                    Trace::D => components(form_to_proxy(&piece.d()).expect("3d form")),
                                    Trace::Normal => match form_to_proxy(piece).expect("3d form") {
                                        Proxy::Vector(v) => vec![poly_dot(&v, &normal)],
                                        Proxy::Scalar(_) => unreachable!("normal trace of a scalar"),
                                    },
                                };
                                for p in polys {
                                    col.extend(map.pullback(&p).coefficients(&mono).expect("trace degree"));
                                }
                            }
                            col
                        })
                        .collect();
                    Block { offset: offsets[cell], columns }
                };
                let (c0, l0) = face.cells[0];
                let (c1, l1) = face.cells[1];
                let a = block(c0, l0, &mut map);
                let b = block(c1, l1, &mut map);
                interface_rows.extend(difference_rows(&a, &b));
            }
        }

        let mut vertex_rows = Vec::new();
        let mut local_vertex_rows = Vec::new();
        if let Some(m) = order {
            let alphas = monomials(3, m);
            let jets = |cell: usize, child: usize, x: &Point| -> Block {
                let columns = elements[cell]
                    .iter()
                    .map(|w| {
                        let comps = components(form_to_proxy(&w.pieces[child]).expect("3d form"));
                        alphas.iter().flat_map(|a| comps.iter().map(move |p| p.deriv_multi(a).eval(x))).collect()
                    })
                    .collect();
                Block { offset: offsets[cell], columns }
            };
            let mut stars: Vec<(Point, Vec<(usize, usize)>)> = Vec::new();
            for v in 0..mesh.vertices().len() {
                let pieces: Vec<(usize, usize)> = mesh
                    .cells()
                    .iter()
                    .enumerate()
                    .filter_map(|(c, ids)| ids.iter().position(|&g| g == v).map(|i| (c, i)))
                    .flat_map(|(c, i)| (0..4).filter(move |&j| j != i).map(move |j| (c, j)))
                    .collect();
                if !pieces.is_empty() {
                    stars.push((mesh.vertices()[v].clone(), pieces));
                }
            }
            for (c, s) in splits.iter().enumerate() {
                stars.push((s.parent().barycenter(), (0..4).map(|j| (c, j)).collect()));
            }
            for (x, pieces) in &stars {
                let (c0, j0) = pieces[0];
                let mut first_of_cell = vec![(c0, j0)];
                for &(c, j) in &pieces[1..] {
                    match first_of_cell.iter().find(|p| p.0 == c) {
                        Some(&(_, jr)) => local_vertex_rows.extend(difference_rows(&jets(c, j, x), &jets(c, jr, x))),
                        None => {
                            vertex_rows.extend(difference_rows(&jets(c, j, x), &jets(c0, j0, x)));
                            first_of_cell.push((c, j));
                        }
                    }
                }
            }
        }
        Ok(GlobalSpace { space, r, splits, locals, offsets, interface_rows, vertex_rows, local_vertex_rows })
    }

    pub fn unknowns(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn rows(&self) -> Vec<SparseRow<Rational>> {
        self.interface_rows.iter().chain(&self.vertex_rows).chain(&self.local_vertex_rows).cloned().collect()
    }

    /// Constraints without the within-cell vertex conditions.
    pub fn coupling_rows(&self) -> Vec<SparseRow<Rational>> {
        self.interface_rows.iter().chain(&self.vertex_rows).cloned().collect()
    }

    /// `unknowns - rank` of all constraints.
    pub fn dim(&self, mode: &RankMode) -> usize {
        self.unknowns() - mode.rank(self.unknowns(), &self.rows()).rank
    }

    /// Whether stacked local coordinates satisfy every constraint exactly.
    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.unknowns() && self.rows().iter().all(|row| row.iter().map(|(j, a)| a * &x[*j]).sum::<Rational>().is_zero())
    }

    /// Stacks per-cell local coordinates.
    pub fn stack(&self, per_cell: &[Vec<Rational>]) -> Vec<Rational> {
        per_cell.concat()
    }

    /// Per-cell piecewise forms of a global coordinate vector.
    pub fn forms(&self, x: &[Rational]) -> Vec<PiecewiseKForm> {
        self.locals
            .iter()
            .enumerate()
            .map(|(c, b)| b.layout.to_form(&b.combine(&x[self.offsets[c]..self.offsets[c + 1]])))
            .collect()
    }

    /// Exact basis as global coordinate vectors; meant for small meshes.
    pub fn basis_exact(&self) -> Vec<Vec<Rational>> {
        echelon_of(Q, self.unknowns(), &self.rows()).into_rref().nullspace()
    }

    /// Block diagonal matrix of `d` into `next`, in local basis coordinates, as sparse rows.
    pub fn d_rows(&self, next: &GlobalSpace) -> Result<Vec<SparseRow<Rational>>> {
        if next.locals.len() != self.locals.len() {
            return Err(Error::InvalidSpec("global spaces on different meshes".into()));
        }
        let mut rows = Vec::with_capacity(next.unknowns());
        for (c, (a, b)) in self.locals.iter().zip(&next.locals).enumerate() {
            let m: RatMatrix = d_matrix(a, b)?;
            for i in 0..m.nrows() {
                rows.push(
                    m.row(i)
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(j, v)| (self.offsets[c] + j, v.clone()))
                        .collect(),
                );
            }
        }
        Ok(rows)
    }
}

/// `row * M` for sparse rows, `M` given by its sparse rows.
pub fn compose(rows: &[SparseRow<Rational>], m: &[SparseRow<Rational>]) -> Vec<SparseRow<Rational>> {
    rows.iter()
        .map(|row| {
            let mut acc = BTreeMap::new();
            for (i, a) in row {
                for (j, b) in &m[*i] {
                    *acc.entry(*j).or_insert_with(Rational::zero) += &(a * b);
                }
            }
            sparse(acc)
        })
        .filter(|r| !r.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_tet_matches_local_dimensions() {
        let mesh = MacroMesh::builtin("single-tet").unwrap();
        for (space, dim) in [(DofSpace::Md0, 68), (DofSpace::Md3, 15), (DofSpace::Vd3, 40)] {
            let g = GlobalSpace::build(space, 5, &mesh).unwrap();
            assert!(g.interface_rows.is_empty());
            assert_eq!(g.dim(&RankMode::Exact), dim);
        }
    }

    #[test]
    fn discontinuous_space_is_a_direct_sum() {
        let mesh = MacroMesh::builtin("two-tets").unwrap();
        let g = GlobalSpace::build(DofSpace::Vd3, 5, &mesh).unwrap();
        assert!(g.rows().is_empty());
        assert_eq!(g.dim(&RankMode::Exact), 80);
    }

    #[test]
    fn modular_and_exact_ranks_agree() {
        let mesh = MacroMesh::builtin("two-tets").unwrap();
        let g = GlobalSpace::build(DofSpace::Md3, 5, &mesh).unwrap();
        let exact = g.dim(&RankMode::Exact);
        let rank = RankMode::Modular(crate::ratlinalg::seeded_primes(2, 1)).rank(g.unknowns(), &g.rows());
        assert!(rank.agree());
        assert_eq!(g.unknowns() - rank.rank, exact);
    }

    #[test]
    fn basis_vectors_satisfy_constraints() {
        let mesh = MacroMesh::builtin("two-tets").unwrap();
        let g = GlobalSpace::build(DofSpace::Md3, 5, &mesh).unwrap();
        let basis = g.basis_exact();
        assert_eq!(basis.len(), g.dim(&RankMode::Exact));
        assert!(basis.iter().all(|x| g.contains(x)));
    }
}
