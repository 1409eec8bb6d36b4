use crate::error::Result;
use crate::polyforms::poly::{AffineMap, Poly};

use super::simplex::{Point, Simplex};

/// Sub-simplex of a split, as increasing vertex ids of the split.
///
/// Ids `0..=n` are the parent vertices and `n + 1` is the split point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubSimplex {
    pub ids: Vec<usize>,
}

impl SubSimplex {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        SubSimplex { ids }
    }

    pub fn dim(&self) -> usize {
        self.ids.len() - 1
    }

    pub fn contains(&self, id: usize) -> bool {
        self.ids.binary_search(&id).is_ok()
    }
}

/// Barycentric refinement of a simplex into `n + 1` children.
#[derive(Clone, Debug)]
pub struct AlfeldSplit {
    parent: Simplex,
    z: Point,
    children: Vec<Simplex>,
    child_ids: Vec<Vec<usize>>,
}

impl AlfeldSplit {
    pub fn new(parent: Simplex) -> Self {
        let n = parent.dim();
        let z = parent.barycenter();
        let mut children = Vec::with_capacity(n + 1);
        let mut child_ids = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut ids = vec![n + 1];
            ids.extend((0..=n).filter(|&j| j != i));
            let pts: Vec<Point> = ids
                .iter()
                .map(|&id| if id == n + 1 { z.clone() } else { parent.vertex(id).clone() })
                .collect();
            children.push(Simplex::new(pts).expect("children of a non-degenerate simplex"));
            child_ids.push(ids);
        }
        AlfeldSplit { parent, z, children, child_ids }
    }

    pub fn of_reference(n: usize) -> Self {
        Self::new(Simplex::reference(n))
    }

    pub fn from_vertices(vertices: Vec<Point>) -> Result<Self> {
        Ok(Self::new(Simplex::new(vertices)?))
    }

    pub fn dim(&self) -> usize {
        self.parent.dim()
    }

    pub fn parent(&self) -> &Simplex {
        &self.parent
    }

    pub fn split_point(&self) -> &Point {
        &self.z
    }

    pub fn children(&self) -> &[Simplex] {
        &self.children
    }

    pub fn num_children(&self) -> usize {
        self.children.len()
    }

    /// Vertex ids of child `i` in its vertex order `[z, x_0, .., x_n]` without `x_i`.
    pub fn child_ids(&self, i: usize) -> &[usize] {
        &self.child_ids[i]
    }

    pub fn z_id(&self) -> usize {
        self.dim() + 1
    }

    pub fn point(&self, id: usize) -> &Point {
        if id == self.z_id() {
            &self.z
        } else {
            self.parent.vertex(id)
        }
    }

    pub fn points(&self, s: &SubSimplex) -> Vec<Point> {
        s.ids.iter().map(|&i| self.point(i).clone()).collect()
    }

    /// All sub-simplices of dimension `s`, in lexicographic order of ids.
    pub fn subsimplices(&self, s: usize) -> Vec<SubSimplex> {
        let n = self.dim();
        combinations(n + 2, s + 1)
            .into_iter()
            .filter(|c| (0..=n).any(|i| !c.contains(&i)))
            .map(|ids| SubSimplex { ids })
            .collect()
    }

    pub fn count(&self, s: usize) -> usize {
        self.subsimplices(s).len()
    }

    /// Children having `s` as a sub-simplex.
    pub fn children_containing(&self, s: &SubSimplex) -> Vec<usize> {
        (0..=self.dim()).filter(|i| !s.contains(*i)).collect()
    }

    /// Faces through the split point, with the two children sharing each.
    pub fn internal_faces(&self) -> Vec<(SubSimplex, usize, usize)> {
        let n = self.dim();
        self.subsimplices(n - 1)
            .into_iter()
            .filter(|f| f.contains(n + 1))
            .map(|f| {
                let c = self.children_containing(&f);
                debug_assert_eq!(c.len(), 2);
                (f, c[0], c[1])
            })
            .collect()
    }

    /// Facets of the parent: facet opposite vertex `i` belongs to child `i`.
    pub fn boundary_faces(&self) -> Vec<(SubSimplex, usize)> {
        let n = self.dim();
        (0..=n).map(|i| (SubSimplex::new((0..=n).filter(|&j| j != i).collect()), i)).collect()
    }

    /// Vertices of the split: parent vertices then the split point.
    pub fn vertex_subsimplices(&self) -> Vec<SubSimplex> {
        (0..=self.z_id()).map(|i| SubSimplex { ids: vec![i] }).collect()
    }

    /// Parametrization of a sub-simplex from its reference simplex.
    pub fn param_map(&self, s: &SubSimplex) -> AffineMap {
        AffineMap::from_vertices(&self.points(s))
    }

    /// Continuous piecewise linear function: one at the split point, zero on the boundary.
    pub fn hat_function(&self) -> Vec<Poly> {
        self.children.iter().map(|c| c.barycentric_coords()[0].to_poly()).collect()
    }
}

/// Increasing `k`-subsets of `0..n`, lexicographically.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyforms::poly::binomial;
    use crate::ratlinalg::Rational;

    #[test]
    fn subsimplex_counts() {
        for n in 2..=4 {
            let s = AlfeldSplit::of_reference(n);
            for d in 0..n {
                assert_eq!(s.count(d) as i64, binomial(n as i64 + 2, d as i64 + 1));
            }
            assert_eq!(s.count(n), n + 1);
        }
    }

    #[test]
    fn children_volumes_sum_to_parent() {
        let s = AlfeldSplit::of_reference(3);
        let total: Rational = s.children().iter().map(|c| c.volume()).sum();
        assert_eq!(total, s.parent().volume());
    }

    #[test]
    fn hat_function_values() {
        let s = AlfeldSplit::of_reference(3);
        let mu = s.hat_function();
        let z = s.split_point().clone();
        for (i, m) in mu.iter().enumerate() {
            assert_eq!(m.eval(&z), Rational::one());
            for &id in &s.child_ids(i)[1..] {
                assert_eq!(m.eval(s.point(id)), Rational::zero());
            }
        }
        let mid: Vec<Rational> =
            z.iter().zip(s.point(0)).map(|(a, b)| &(a + b) / &Rational::from_int(2)).collect();
        assert_eq!(mu[1].eval(&mid), Rational::new(1, 2));
    }

    #[test]
    fn internal_faces_contain_split_point() {
        let s = AlfeldSplit::of_reference(3);
        let f = s.internal_faces();
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|(x, _, _)| x.contains(4)));
    }
}
