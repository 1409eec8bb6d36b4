use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::ratlinalg::Rational;

use super::simplex::{dot, facet_normal, point, sub, Point, Simplex};
use super::split::{combinations, AlfeldSplit};

/// Conforming simplicial macro mesh in `R^3`.
#[derive(Clone, Debug)]
pub struct MacroMesh {
    vertices: Vec<Point>,
    cells: Vec<Vec<usize>>,
}

/// Facet of the macro mesh with the cells containing it.
#[derive(Clone, Debug)]
pub struct MeshFace {
    /// Increasing global vertex ids.
    pub verts: Vec<usize>,
    /// `(cell, local index of the vertex opposite the face)`.
    pub cells: Vec<(usize, usize)>,
}

impl MacroMesh {
    pub fn new(vertices: Vec<Point>, cells: Vec<Vec<usize>>) -> Result<Self> {
        let m = MacroMesh { vertices, cells };
        m.validate()?;
        Ok(m)
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "single-tet" => Self::new(
                vec![point(&[0, 0, 0]), point(&[1, 0, 0]), point(&[0, 1, 0]), point(&[0, 0, 1])],
                vec![vec![0, 1, 2, 3]],
            ),
            "two-tets" => Self::new(
                vec![
                    point(&[0, 0, 0]),
                    point(&[1, 0, 0]),
                    point(&[0, 1, 0]),
                    point(&[0, 0, 1]),
                    point(&[1, 1, 1]),
                ],
                vec![vec![0, 1, 2, 3], vec![1, 2, 3, 4]],
            ),
            "cube6" => {
                let mut vs = Vec::new();
                for i in 0..8i64 {
                    vs.push(point(&[i & 1, (i >> 1) & 1, (i >> 2) & 1]));
                }
                let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
                let cells = perms
                    .iter()
                    .map(|p| {
                        let mut ids = vec![0usize];
                        let mut cur = 0usize;
                        for &axis in p {
                            cur |= 1 << axis;
                            ids.push(cur);
                        }
                        ids
                    })
                    .collect();
                Self::new(vs, cells)
            }
            other => Err(Error::Mesh(format!("unknown built-in mesh `{other}`"))),
        }
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &["single-tet", "two-tets", "cube6"]
    }

    /// Built-in name or path to a mesh file.
    pub fn load(spec: &str) -> Result<Self> {
        if Self::builtin_names().contains(&spec) {
            return Self::builtin(spec);
        }
        Self::parse(&std::fs::read_to_string(Path::new(spec))?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let last = text.lines().count();
        let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let mut pos = 0usize;
        let mut next = |what: &str| -> Result<(usize, &str)> {
            let r = lines.get(pos).copied().ok_or_else(|| perr(last, &format!("missing {what}")));
            pos += 1;
            r
        };
        let header = |(ln, l): (usize, &str), key: &str| -> Result<usize> {
            let mut it = l.split_whitespace();
            if it.next() != Some(key) {
                return Err(perr(ln, &format!("expected `{key} <count>`")));
            }
            let v = it.next().and_then(|x| x.parse().ok());
            match (v, it.next()) {
                (Some(v), None) => Ok(v),
                _ => Err(perr(ln, &format!("expected a single count after `{key}`"))),
            }
        };
        let dl = next("`dim` line")?;
        if header(dl, "dim")? != 3 {
            return Err(perr(dl.0, "only dim 3 meshes are supported"));
        }
        let nv = header(next("`vertices` line")?, "vertices")?;
        let mut vertices = Vec::with_capacity(nv);
        for _ in 0..nv {
            let (ln, l) = next("vertex line")?;
            let coords: std::result::Result<Vec<Rational>, _> = l.split_whitespace().map(|t| t.parse()).collect();
            let coords = coords.map_err(|e| perr(ln, &e.to_string()))?;
            if coords.len() != 3 {
                return Err(perr(ln, "a vertex needs three coordinates"));
            }
            vertices.push(coords);
        }
        let nt = header(next("`tets` line")?, "tets")?;
        let mut cells = Vec::with_capacity(nt);
        for _ in 0..nt {
            let (ln, l) = next("tet line")?;
            let ids: std::result::Result<Vec<usize>, _> = l.split_whitespace().map(|t| t.parse()).collect();
            let ids = ids.map_err(|_| perr(ln, "tet indices must be non-negative integers"))?;
            if ids.len() != 4 {
                return Err(perr(ln, "a tet needs four vertex indices"));
            }
            if ids.iter().any(|&i| i >= nv) {
                return Err(perr(ln, "vertex index out of range"));
            }
            cells.push(ids);
        }
        if let Ok((ln, _)) = next("") {
            return Err(perr(ln, "trailing content after the tets block"));
        }
        Self::new(vertices, cells)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("dim 3\nvertices {}\n", self.vertices.len());
        for v in &self.vertices {
            let c: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            s.push_str(&c.join(" "));
            s.push('\n');
        }
        s.push_str(&format!("tets {}\n", self.cells.len()));
        for c in &self.cells {
            let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            s.push_str(&c.join(" "));
            s.push('\n');
        }
        s
    }

    fn validate(&self) -> Result<()> {
        for (ci, c) in self.cells.iter().enumerate() {
            if c.len() != 4 || c.iter().any(|&i| i >= self.vertices.len()) {
                return Err(Error::Mesh(format!("cell {ci} has invalid vertex indices")));
            }
            let mut s = c.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != 4 {
                return Err(Error::Mesh(format!("cell {ci} repeats a vertex")));
            }
            self.cell_simplex(ci).map_err(|_| Error::Mesh(format!("cell {ci} is degenerate")))?;
        }
        for f in self.faces() {
            match f.cells.len() {
                1 => {}
                2 => {
                    let pts: Vec<Point> = f.verts.iter().map(|&v| self.vertices[v].clone()).collect();
                    let (c0, l0) = f.cells[0];
                    let (c1, l1) = f.cells[1];
                    let o0 = &self.vertices[self.cells[c0][l0]];
                    let o1 = &self.vertices[self.cells[c1][l1]];
                    let nrm = facet_normal(&pts, o0);
                    let s0 = dot(&nrm, &sub(o0, &pts[0])).signum();
                    let s1 = dot(&nrm, &sub(o1, &pts[0])).signum();
                    if s0 == s1 {
                        return Err(Error::Mesh(format!(
                            "inconsistent face orientation: cells {c0} and {c1} overlap across face {:?}",
                            f.verts
                        )));
                    }
                }
                k => {
                    return Err(Error::Mesh(format!("face {:?} is shared by {k} cells", f.verts)));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_simplex(&self, c: usize) -> Result<Simplex> {
        Simplex::new(self.cells[c].iter().map(|&v| self.vertices[v].clone()).collect())
    }

    pub fn split(&self, c: usize) -> AlfeldSplit {
        AlfeldSplit::new(self.cell_simplex(c).expect("validated cell"))
    }

    pub fn faces(&self) -> Vec<MeshFace> {
        let mut map: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, c) in self.cells.iter().enumerate() {
            for l in 0..4 {
                let mut f: Vec<usize> = (0..4).filter(|&j| j != l).map(|j| c[j]).collect();
                f.sort_unstable();
                map.entry(f).or_default().push((ci, l));
            }
        }
        map.into_iter().map(|(verts, cells)| MeshFace { verts, cells }).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut set = std::collections::BTreeSet::new();
        for c in &self.cells {
            for p in combinations(4, 2) {
                let (a, b) = (c[p[0]], c[p[1]]);
                set.insert((a.min(b), a.max(b)));
            }
        }
        set.into_iter().collect()
    }

    pub fn num_vertices(&self) -> usize {
        let mut used: Vec<usize> = self.cells.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    /// `(V, E, F, T)`.
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (self.num_vertices(), self.edges().len(), self.faces().len(), self.cells.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f, t) = self.counts();
        v as i64 - e as i64 + f as i64 - t as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_counts() {
        assert_eq!(MacroMesh::builtin("single-tet").unwrap().counts(), (4, 6, 4, 1));
        assert_eq!(MacroMesh::builtin("two-tets").unwrap().counts(), (5, 9, 7, 2));
        assert_eq!(MacroMesh::builtin("cube6").unwrap().counts(), (8, 19, 18, 6));
        for name in MacroMesh::builtin_names() {
            assert_eq!(MacroMesh::builtin(name).unwrap().euler_characteristic(), 1);
        }
    }

    #[test]
    fn text_round_trip() {
        let m = MacroMesh::builtin("two-tets").unwrap();
        let back = MacroMesh::parse(&m.to_text()).unwrap();
        assert_eq!(back.cells(), m.cells());
        assert_eq!(back.vertices(), m.vertices());
    }

    #[test]
    fn parse_errors() {
        let bad = "dim 3\nvertices 4\n0 0 0\n1 0 0\n0 1 0\n0 0 1\ntets 1\n0 1 2 9\n";
        assert!(matches!(MacroMesh::parse(bad), Err(Error::Parse { line: 8, .. })));
        let flat = "dim 3\nvertices 4\n0 0 0\n1 0 0\n0 1 0\n1 1 0\ntets 1\n0 1 2 3\n";
        assert!(matches!(MacroMesh::parse(flat), Err(Error::Mesh(_))));
        let overlap = "dim 3 # two copies\nvertices 5\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1/10 1/10 1/10\ntets 2\n0 1 2 3\n1 2 3 4\n";
        assert!(matches!(MacroMesh::parse(overlap), Err(Error::Mesh(m)) if m.contains("orientation")));
    }
}
