use std::collections::BTreeMap;

use crate::polyforms::poly::monomials_of_degree;
use crate::polyforms::{integrate, AffineMap, Exp, KForm, MonomialBasis};
use crate::ratlinalg::{Rational, SparseRow};
use crate::simplicial::{AlfeldSplit, Point, Simplex, SubSimplex};

use super::layout::RawLayout;
use super::spec::{Family, SpaceSpec};

/// Linear maps from a single-child form to a coefficient vector.
#[derive(Clone, Debug)]
pub enum LocalOp {
    /// Every coefficient restricted to the plane of the face.
    Restrict(Vec<Point>),
    /// Pullback of the form to the face.
    Trace(Vec<Point>),
    /// Coefficients of `d w` restricted to the face.
    DRestrict(Vec<Point>),
    /// Derivatives of order `lo..=hi` of every coefficient at a point.
    Jet { point: Point, lo: usize, hi: usize },
    /// Integral of the coefficients over the child.
    Mean,
}

fn restrict_coeffs(w: &KForm, map: &mut AffineMap, basis: &MonomialBasis, out: &mut Vec<Rational>) {
    for c in w.coeffs() {
        let p = map.pullback(c);
        out.extend(p.coefficients(basis).expect("restriction keeps the degree"));
    }
}

/// Sparse columns of a local operator over one child block.
pub struct OpColumns {
    pub out_len: usize,
    pub cols: Vec<Vec<(usize, Rational)>>,
}

impl OpColumns {
    pub fn build(layout: &RawLayout, op: &LocalOp, child: &Simplex) -> OpColumns {
        let block = layout.block();
        let r = layout.r.max(0) as usize;
        let mut map = match op {
            LocalOp::Restrict(p) | LocalOp::Trace(p) | LocalOp::DRestrict(p) => Some(AffineMap::from_vertices(p)),
            _ => None,
        };
        let face_dim = map.as_ref().map_or(0, |m| m.source_dim());
        let face_basis = MonomialBasis::new(face_dim, r);
        let face_basis_d = if r >= 1 { MonomialBasis::new(face_dim, r - 1) } else { MonomialBasis::empty(face_dim) };
        let jets: Vec<Exp> = match op {
            LocalOp::Jet { lo, hi, .. } => (*lo..=*hi).flat_map(|d| monomials_of_degree(layout.n, d)).collect(),
            _ => Vec::new(),
        };
        let mut cols = Vec::with_capacity(block);
        let mut out_len = 0;
        for col in 0..block {
            let w = layout.column_form(col);
            let mut v = Vec::new();
            match op {
                LocalOp::Restrict(_) => restrict_coeffs(&w, map.as_mut().unwrap(), &face_basis, &mut v),
                LocalOp::Trace(_) => {
                    let t = w.pullback(map.as_mut().unwrap());
                    for c in t.coeffs() {
                        v.extend(c.coefficients(&face_basis).expect("trace keeps the degree"));
                    }
                }
                LocalOp::DRestrict(_) => restrict_coeffs(&w.d(), map.as_mut().unwrap(), &face_basis_d, &mut v),
                LocalOp::Jet { point, .. } => {
                    for c in w.coeffs() {
                        for a in &jets {
                            v.push(c.deriv_multi(a).eval(point));
                        }
                    }
                }
                LocalOp::Mean => {
                    for c in w.coeffs() {
                        v.push(integrate(c, child));
                    }
                }
            }
            out_len = v.len();
            cols.push(v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
        }
        OpColumns { out_len, cols }
    }

    /// Output rows as sparse rows over the block, one per output entry.
    fn rows(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut rows = vec![Vec::new(); self.out_len];
        for (c, col) in self.cols.iter().enumerate() {
            for (o, x) in col {
                rows[*o].push((c, x.clone()));
            }
        }
        rows
    }
}

/// Accumulates constraint rows over the raw coordinates of a split.
pub struct ConstraintBuilder<'a> {
    pub layout: &'a RawLayout,
    pub split: &'a AlfeldSplit,
    pub rows: Vec<SparseRow<Rational>>,
}

fn finish(row: BTreeMap<usize, Rational>) -> Option<SparseRow<Rational>> {
    let r: SparseRow<Rational> = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    (!r.is_empty()).then_some(r)
}

impl<'a> ConstraintBuilder<'a> {
    pub fn new(layout: &'a RawLayout, split: &'a AlfeldSplit) -> Self {
        ConstraintBuilder { layout, split, rows: Vec::new() }
    }

    fn columns(&self, op: &LocalOp, child: usize) -> OpColumns {
        OpColumns::build(self.layout, op, &self.split.children()[child])
    }

    /// `op(w_a) = op(w_b)`.
    pub fn jump(&mut self, op: &LocalOp, a: usize, b: usize) {
        let rows = self.columns(op, a).rows();
        let ba = self.layout.index(a, 0, 0);
        let bb = self.layout.index(b, 0, 0);
        for r in rows {
            let mut m = BTreeMap::new();
            for (c, x) in r {
                *m.entry(ba + c).or_insert_with(Rational::zero) += &x;
                *m.entry(bb + c).or_insert_with(Rational::zero) -= &x;
            }
            self.rows.extend(finish(m));
        }
    }

    /// `op(w_c) = 0`.
    pub fn vanish(&mut self, op: &LocalOp, c: usize) {
        let base = self.layout.index(c, 0, 0);
        for r in self.columns(op, c).rows() {
            let m = r.into_iter().map(|(j, x)| (base + j, x)).collect();
            self.rows.extend(finish(m));
        }
    }

    /// `sum_c op(w_c) = 0`.
    pub fn vanish_sum(&mut self, op: &LocalOp) {
        let per: Vec<_> = (0..self.layout.children).map(|c| self.columns(op, c).rows()).collect();
        for o in 0..per[0].len() {
            let mut m = BTreeMap::new();
            for (c, rows) in per.iter().enumerate() {
                let base = self.layout.index(c, 0, 0);
                for (j, x) in &rows[o] {
                    *m.entry(base + j).or_insert_with(Rational::zero) += x;
                }
            }
            self.rows.extend(finish(m));
        }
    }

    /// Derivatives of order `lo..=hi` agree at every vertex of the split.
    pub fn vertex_jets(&mut self, lo: usize, hi: usize) {
        let n = self.split.dim();
        for v in 0..=n + 1 {
            let s = SubSimplex::new(vec![v]);
            let cs = self.split.children_containing(&s);
            let op = LocalOp::Jet { point: self.split.point(v).clone(), lo, hi };
            for &c in &cs[1..] {
                self.jump(&op, cs[0], c);
            }
        }
    }

    pub fn add_spec(&mut self, spec: &SpaceSpec) {
        if self.layout.is_empty() {
            return;
        }
        let n = spec.n;
        let fam = spec.normalized_family();
        let split = self.split;
        for (f, a, b) in split.internal_faces() {
            let pts = split.points(&f);
            match fam {
                Family::V => {}
                Family::Vd | Family::Vc => self.jump(&LocalOp::Trace(pts), a, b),
                Family::M | Family::Mc => self.jump(&LocalOp::Restrict(pts), a, b),
                Family::Md => {
                    self.jump(&LocalOp::Restrict(pts.clone()), a, b);
                    self.jump(&LocalOp::DRestrict(pts), a, b);
                }
            }
        }
        match fam {
            Family::Mc => self.vertex_jets(1, 1),
            Family::Vc => self.vertex_jets(0, 0),
            _ => {}
        }
        if !spec.ring {
            return;
        }
        if spec.k < n {
            for (f, c) in split.boundary_faces() {
                let pts = split.points(&f);
                match fam {
                    Family::V | Family::Vd | Family::Vc => self.vanish(&LocalOp::Trace(pts), c),
                    Family::M | Family::Mc => self.vanish(&LocalOp::Restrict(pts), c),
                    Family::Md => {
                        self.vanish(&LocalOp::Restrict(pts.clone()), c);
                        self.vanish(&LocalOp::DRestrict(pts), c);
                    }
                }
            }
        } else {
            if fam == Family::M {
                for (f, c) in split.boundary_faces() {
                    self.vanish(&LocalOp::Restrict(split.points(&f)), c);
                }
            }
            self.vanish_sum(&LocalOp::Mean);
        }
    }
}

/// Constraint rows cutting the space out of the raw piecewise coordinates.
pub fn constraint_rows(spec: &SpaceSpec, layout: &RawLayout, split: &AlfeldSplit) -> Vec<SparseRow<Rational>> {
    let mut b = ConstraintBuilder::new(layout, split);
    b.add_spec(spec);
    b.rows
}
