use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyforms::{form_to_proxy, monomials, Proxy};
use crate::ratlinalg::{independent_columns, RatMatrix, Rational};
use crate::simplicial::AlfeldSplit;
use crate::splitspaces::{build_space, raw_d, Family, RawLayout, SpaceSpec};

use super::face::{
    child_containing, edge_normals, edges, face_child, face_normal, faces, faces_of_edge, scalar_tests, tangent_tests, vector_tests,
    FaceRT,
};
use super::functional::{DofFunctional, DualCache, Integrand, MapCache, Proj};

/// The eight local spaces carrying degrees of freedom, indexed by the
/// sequence degree `r` (the scalar space has degree `r`, slot `k` has `r - k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DofSpace {
    Md0,
    Md1,
    Md2,
    Md3,
    Mc1,
    M2,
    Vc2,
    Vd3,
}

impl DofSpace {
    pub const ALL: [DofSpace; 8] =
        [DofSpace::Md0, DofSpace::Md1, DofSpace::Md2, DofSpace::Md3, DofSpace::Mc1, DofSpace::M2, DofSpace::Vc2, DofSpace::Vd3];

    pub fn name(self) -> &'static str {
        match self {
            DofSpace::Md0 => "Md0",
            DofSpace::Md1 => "Md1",
            DofSpace::Md2 => "Md2",
            DofSpace::Md3 => "Md3",
            DofSpace::Mc1 => "Mc1",
            DofSpace::M2 => "M2",
            DofSpace::Vc2 => "Vc2",
            DofSpace::Vd3 => "Vd3",
        }
    }

    pub fn k(self) -> usize {
        match self {
            DofSpace::Md0 => 0,
            DofSpace::Md1 | DofSpace::Mc1 => 1,
            DofSpace::Md2 | DofSpace::M2 | DofSpace::Vc2 => 2,
            DofSpace::Md3 | DofSpace::Vd3 => 3,
        }
    }

    pub fn family(self) -> Family {
        match self {
            DofSpace::Md0 | DofSpace::Md1 | DofSpace::Md2 | DofSpace::Md3 => Family::Md,
            DofSpace::Mc1 => Family::Mc,
            DofSpace::M2 => Family::M,
            DofSpace::Vc2 => Family::Vc,
            DofSpace::Vd3 => Family::Vd,
        }
    }

    pub fn target(self, r: i64) -> Result<SpaceSpec> {
        SpaceSpec::plain(self.family(), self.k(), r - self.k() as i64, 3)
    }

    pub fn min_r(self) -> i64 {
        match self {
            DofSpace::Mc1 | DofSpace::Vc2 => 3,
            _ => 5,
        }
    }
}

impl fmt::Display for DofSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DofSpace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DofSpace::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidSpec(format!("unknown DOF space '{s}' (expected one of Md0 Md1 Md2 Md3 Mc1 M2 Vc2 Vd3)")))
    }
}

impl Serialize for DofSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A labelled block of consecutive functionals.
#[derive(Clone, Debug, Serialize)]
pub struct DofGroup {
    pub label: String,
    pub kind: &'static str,
    pub count: usize,
    /// Count from the closed-form list.
    pub expected: i64,
    /// The block is in dispute for this degree (kept, and flagged).
    pub disputed: bool,
}

#[derive(Clone, Debug)]
pub struct DofSet {
    pub space: DofSpace,
    pub r: i64,
    pub target: SpaceSpec,
    pub split: AlfeldSplit,
    pub functionals: Vec<DofFunctional>,
    pub groups: Vec<DofGroup>,
}

impl DofSet {
    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    pub fn eval_all(&self, w: &crate::polyforms::PiecewiseKForm) -> Vec<Rational> {
        let mut maps = MapCache::default();
        self.functionals.iter().map(|f| f.eval(w, &self.split, &mut maps)).collect()
    }

    /// Functionals as rows over the raw coordinates of a layout.
    pub fn raw_rows(&self, layout: &RawLayout) -> Vec<Vec<Rational>> {
        let block = layout.block();
        let mut rows = vec![vec![Rational::zero(); layout.len()]; self.len()];
        let mut maps = MapCache::default();
        for j in 0..block {
            let w = layout.column_form(j);
            maps.new_input();
            for child in 0..layout.children {
                for (f, row) in self.functionals.iter().zip(rows.iter_mut()) {
                    if f.child().is_none_or(|c| c == child) {
                        row[child * block + j] = f.eval_piece(&w, child, &self.split, &mut maps);
                    }
                }
            }
        }
        rows
    }

    pub fn count_by_kind(&self) -> std::collections::BTreeMap<&'static str, usize> {
        let mut m = std::collections::BTreeMap::new();
        for f in &self.functionals {
            *m.entry(f.kind()).or_insert(0) += 1;
        }
        m
    }

    /// Sum of the closed-form counts.
    pub fn expected_total(&self) -> i64 {
        self.groups.iter().map(|g| g.expected).sum()
    }

    pub fn disputed(&self) -> Vec<&DofGroup> {
        self.groups.iter().filter(|g| g.disputed && g.count > 0).collect()
    }
}

fn p(n: i64) -> i64 {
    n.max(0)
}

fn tri(s: i64) -> i64 {
    if s < 0 {
        0
    } else {
        (s + 1) * (s + 2) / 2
    }
}

/// Closed-form block counts `(label, count)` of each list.
pub fn block_counts(space: DofSpace, r: i64) -> Vec<(&'static str, i64)> {
    let ring_md0 = p(2 * (r - 4) * (r - 3) * (r - 2) / 3);
    let curl_md1 = p((r - 4) * (r - 3) * (4 * r - 11) / 3);
    let ring_md3 = p((2 * r - 7) * (r * r - 7 * r + 15) / 3 - 1);
    let ring_vd3 = p(2 * (r - 2) * (r - 1) * r / 3 - 1);
    let curl_mc1 = p((r - 3) * (4 * r * r + 3 * r + 14) / 3);
    match space {
        DofSpace::Md0 => vec![
            ("vertex D^a, |a|<=2", 40),
            ("edge value P_{r-6}", 6 * p(r - 5)),
            ("edge normal derivatives P_{r-5}", 12 * p(r - 4)),
            ("face value P_{r-6}", 4 * tri(r - 6)),
            ("face normal derivative P_{r-4}", 4 * tri(r - 4)),
            ("cell grad.grad ring Md0", ring_md0),
        ],
        DofSpace::Md1 => vec![
            ("vertex D^a, |a|<=1", 48),
            ("edge value [P_{r-5}]^3", 18 * p(r - 4)),
            ("edge curl [P_{r-4}]^3", 18 * p(r - 3)),
            ("face normal component P_{r-4}", 4 * tri(r - 4)),
            ("face tangential D_{r-5}", 4 * p((r - 3) * (r - 5))),
            ("face curl x n, tangential P_{r-5}", 4 * p((r - 3) * (r - 4))),
            ("cell grad ring Md0", ring_md0),
            ("cell curl ring Md1", curl_md1),
        ],
        DofSpace::Md2 => vec![
            ("vertex value and div", 16),
            ("edge value [P_{r-4}]^3", 18 * p(r - 3)),
            ("edge div P_{r-5}", 6 * p(r - 4)),
            ("face value [P_{r-5}]^3", 12 * tri(r - 5)),
            ("face div P_{r-6}", 4 * tri(r - 6)),
            ("cell curl ring Md1", curl_md1),
            ("cell div ring Md3", ring_md3),
        ],
        DofSpace::Md3 => vec![
            ("vertex value", 4),
            ("edge value P_{r-5}", 6 * p(r - 4)),
            ("face value P_{r-6}", 4 * tri(r - 6)),
            ("cell mean", 1),
            ("cell ring Md3", ring_md3),
        ],
        DofSpace::Mc1 => vec![
            ("vertex D^a, |a|<=1", 48),
            ("edge value [P_{r-5}]^3", 18 * p(r - 4)),
            ("edge face-normal curl P_{r-4}", 12 * p(r - 3)),
            ("face normal component P_{r-4}", 4 * tri(r - 4)),
            ("face tangential D_{r-5}", 4 * p((r - 3) * (r - 5))),
            ("cell grad ring Md0", ring_md0),
            ("cell curl ring Mc1", curl_mc1),
        ],
        DofSpace::M2 => vec![
            ("vertex value", 12),
            ("edge value [P_{r-4}]^3", 18 * p(r - 3)),
            ("face value [P_{r-5}]^3", 12 * tri(r - 5)),
            ("cell curl ring Md1", curl_md1),
            ("cell div ring Vd3", ring_vd3),
        ],
        DofSpace::Vc2 => vec![
            ("vertex value", 12),
            ("edge face-normal component P_{r-4}", 12 * p(r - 3)),
            ("face normal component P_{r-5}", 4 * tri(r - 5)),
            ("cell curl ring Mc1", curl_mc1),
            ("cell div ring Vd3", ring_vd3),
        ],
        DofSpace::Vd3 => vec![("cell mean", 1), ("cell ring Vd3", ring_vd3)],
    }
}

/// Per-child proxies of a piecewise form.
fn proxies(w: &crate::polyforms::PiecewiseKForm) -> Vec<Proxy> {
    w.pieces.iter().map(|p| form_to_proxy(p).expect("three-dimensional form")).collect()
}

/// Basis of a ring space as cell test functions.
fn ring_tests(spec: &str, split: &AlfeldSplit) -> Result<Vec<Vec<Proxy>>> {
    let b = build_space(&spec.parse()?, split)?;
    Ok(b.elements().iter().map(proxies).collect())
}

/// Independent images `d` of a ring space basis, in basis order.
fn image_tests(spec: &str, split: &AlfeldSplit) -> Result<Vec<Vec<Proxy>>> {
    let s: SpaceSpec = spec.parse()?;
    let b = build_space(&s, split)?;
    let dst = RawLayout::new(3, s.k + 1, s.r - 1);
    let imgs: Vec<Vec<Rational>> = b.basis.iter().map(|v| raw_d(&b.layout, &dst, v)).collect();
    if imgs.is_empty() {
        return Ok(Vec::new());
    }
    let keep = independent_columns(&RatMatrix::from_columns(dst.len(), &imgs));
    Ok(keep.iter().map(|&j| proxies(&dst.to_form(&imgs[j]))).collect())
}

struct Builder<'a> {
    split: &'a AlfeldSplit,
    r: i64,
    space: DofSpace,
    expected: Vec<(&'static str, i64)>,
    out: Vec<DofFunctional>,
    groups: Vec<DofGroup>,
}

impl Builder<'_> {
    fn group(&mut self, fs: Vec<DofFunctional>) {
        let i = self.groups.len();
        let (label, expected) = self.expected[i];
        let kind = fs.first().map(|f| f.kind()).unwrap_or(match label.split(' ').next() {
            Some("vertex") => "vertex",
            Some("edge") => "edge",
            Some("face") => "face",
            _ => "cell",
        });
        let disputed = self.space == DofSpace::Md0 && self.r == 6 && label.contains("value P_{r-6}");
        self.groups.push(DofGroup { label: label.into(), kind, count: fs.len(), expected, disputed });
        self.out.extend(fs);
    }

    fn vertex_jets(&self, order: usize, comps: usize, d: bool) -> Vec<DofFunctional> {
        let mut fs = Vec::new();
        for v in 0..4 {
            for alpha in monomials(3, order) {
                for comp in 0..comps {
                    fs.push(DofFunctional::PointDeriv { vertex: v, child: child_containing(&[v]), d, alpha, comp });
                }
            }
        }
        fs
    }

    fn edge(&self, integrand: Integrand, tests: &[crate::polyforms::Proxy]) -> Vec<DofFunctional> {
        edges()
            .into_iter()
            .flat_map(|e| {
                let integrand = integrand.clone();
                tests.iter().map(move |t| DofFunctional::EdgeMoment { edge: e, child: child_containing(&e), integrand: integrand.clone(), test: t.clone() })
            })
            .collect()
    }

    fn edge_normal_derivs(&self, s: i64) -> Vec<DofFunctional> {
        let tests = scalar_tests(1, s);
        let mut fs = Vec::new();
        for e in edges() {
            for n in edge_normals(self.split, &e) {
                for t in &tests {
                    fs.push(DofFunctional::EdgeMoment { edge: e, child: child_containing(&e), integrand: Integrand::new(true, Proj::Dot(n.clone())), test: t.clone() });
                }
            }
        }
        fs
    }

    /// `(f(w) . n_F)` on each edge of each face through it, read in the face's child.
    fn edge_face_normal(&self, d: bool, s: i64) -> Vec<DofFunctional> {
        let tests = scalar_tests(1, s);
        let mut fs = Vec::new();
        for e in edges() {
            for f in faces_of_edge(&e) {
                let n = face_normal(self.split, &f);
                for t in &tests {
                    fs.push(DofFunctional::EdgeMoment { edge: e, child: face_child(&f), integrand: Integrand::new(d, Proj::Dot(n.clone())), test: t.clone() });
                }
            }
        }
        fs
    }

    fn face(&self, make: impl Fn(&[crate::ratlinalg::Rational]) -> Integrand, tests: impl Fn([usize; 3]) -> Vec<Proxy>) -> Vec<DofFunctional> {
        let mut fs = Vec::new();
        for f in faces() {
            let n = face_normal(self.split, &f);
            for t in tests(f) {
                fs.push(DofFunctional::FaceMoment { face: f, child: face_child(&f), integrand: make(&n), test: t });
            }
        }
        fs
    }

    fn cell(&self, integrand: Integrand, tests: Vec<Vec<Proxy>>) -> Vec<DofFunctional> {
        tests.into_iter().map(|t| DofFunctional::CellMoment { integrand: integrand.clone(), test: t, duals: DualCache::default() }).collect()
    }
}

fn constant_test() -> Vec<Proxy> {
    vec![Proxy::Scalar(crate::polyforms::Poly::one(3)); 4]
}

/// The degrees of freedom of a space at sequence degree `r`.
pub fn build_dofset(space: DofSpace, r: i64, split: &AlfeldSplit) -> Result<DofSet> {
    if split.dim() != 3 {
        return Err(Error::Precondition("degrees of freedom are defined in three dimensions".into()));
    }
    if r < space.min_r() {
        return Err(Error::Precondition(format!("{space} degrees of freedom need r >= {}, got {r}", space.min_r())));
    }
    let target = space.target(r)?;
    let mut b = Builder { split, r, space, expected: block_counts(space, r), out: Vec::new(), groups: Vec::new() };
    let face_scalar = |s: i64| move |_f: [usize; 3]| scalar_tests(2, s);
    let face_vector = |s: i64| move |_f: [usize; 3]| vector_tests(2, s);
    let rt = |s: i64| move |f: [usize; 3]| FaceRT::new(split, f, s).basis;
    let value = |_: &[Rational]| Integrand::VALUE;
    let normal = |d: bool| move |n: &[Rational]| Integrand::new(d, Proj::Dot(n.to_vec()));
    match space {
        DofSpace::Md0 => {
            let fs = b.vertex_jets(2, 1, false);
            b.group(fs);
            let fs = b.edge(Integrand::VALUE, &scalar_tests(1, r - 6));
            b.group(fs);
            let fs = b.edge_normal_derivs(r - 5);
            b.group(fs);
            let fs = b.face(value, face_scalar(r - 6));
            b.group(fs);
            let fs = b.face(normal(true), face_scalar(r - 4));
            b.group(fs);
            let t = image_tests(&format!("Md:ring:k0:r{r}"), split)?;
            let fs = b.cell(Integrand::D, t);
            b.group(fs);
        }
        DofSpace::Md1 | DofSpace::Mc1 => {
            let fs = b.vertex_jets(1, 3, false);
            b.group(fs);
            let fs = b.edge(Integrand::VALUE, &vector_tests(1, r - 5));
            b.group(fs);
            if space == DofSpace::Md1 {
                let fs = b.edge(Integrand::D, &vector_tests(1, r - 4));
                b.group(fs);
            } else {
                let fs = b.edge_face_normal(true, r - 4);
                b.group(fs);
            }
            let fs = b.face(normal(false), face_scalar(r - 4));
            b.group(fs);
            let fs = b.face(|n| Integrand::new(false, Proj::Tangential(n.to_vec())), rt(r - 5));
            b.group(fs);
            if space == DofSpace::Md1 {
                let fs = b.face(|n| Integrand::new(true, Proj::Cross(n.to_vec())), |f| tangent_tests(split, f, r - 5));
                b.group(fs);
            }
            let fs = b.cell(Integrand::VALUE, image_tests(&format!("Md:ring:k0:r{r}"), split)?);
            b.group(fs);
            let curl_src = if space == DofSpace::Md1 { format!("Md:ring:k1:r{}", r - 1) } else { format!("Mc:ring:k1:r{}", r - 1) };
            let fs = b.cell(Integrand::D, image_tests(&curl_src, split)?);
            b.group(fs);
        }
        DofSpace::Md2 => {
            let mut fs = Vec::new();
            for v in 0..4 {
                let child = child_containing(&[v]);
                let alpha = crate::polyforms::Exp::zero();
                for comp in 0..3 {
                    fs.push(DofFunctional::PointDeriv { vertex: v, child, d: false, alpha, comp });
                }
                fs.push(DofFunctional::PointDeriv { vertex: v, child, d: true, alpha, comp: 0 });
            }
            b.group(fs);
            let fs = b.edge(Integrand::VALUE, &vector_tests(1, r - 4));
            b.group(fs);
            let fs = b.edge(Integrand::D, &scalar_tests(1, r - 5));
            b.group(fs);
            let fs = b.face(value, face_vector(r - 5));
            b.group(fs);
            let fs = b.face(|_| Integrand::D, face_scalar(r - 6));
            b.group(fs);
            let fs = b.cell(Integrand::VALUE, image_tests(&format!("Md:ring:k1:r{}", r - 1), split)?);
            b.group(fs);
            let fs = b.cell(Integrand::D, ring_tests(&format!("Md:ring:k3:r{}", r - 3), split)?);
            b.group(fs);
        }
        DofSpace::Md3 => {
            let fs = b.vertex_jets(0, 1, false);
            b.group(fs);
            let fs = b.edge(Integrand::VALUE, &scalar_tests(1, r - 5));
            b.group(fs);
            let fs = b.face(value, face_scalar(r - 6));
            b.group(fs);
            let fs = b.cell(Integrand::VALUE, vec![constant_test()]);
            b.group(fs);
            let fs = b.cell(Integrand::VALUE, ring_tests(&format!("Md:ring:k3:r{}", r - 3), split)?);
            b.group(fs);
        }
        DofSpace::M2 | DofSpace::Vc2 => {
            let fs = b.vertex_jets(0, 3, false);
            b.group(fs);
            if space == DofSpace::M2 {
                let fs = b.edge(Integrand::VALUE, &vector_tests(1, r - 4));
                b.group(fs);
                let fs = b.face(value, face_vector(r - 5));
                b.group(fs);
                let fs = b.cell(Integrand::VALUE, image_tests(&format!("Md:ring:k1:r{}", r - 1), split)?);
                b.group(fs);
            } else {
                let fs = b.edge_face_normal(false, r - 4);
                b.group(fs);
                let fs = b.face(normal(false), face_scalar(r - 5));
                b.group(fs);
                let fs = b.cell(Integrand::VALUE, image_tests(&format!("Mc:ring:k1:r{}", r - 1), split)?);
                b.group(fs);
            }
            let fs = b.cell(Integrand::D, ring_tests(&format!("Vd:ring:k3:r{}", r - 3), split)?);
            b.group(fs);
        }
        DofSpace::Vd3 => {
            let fs = b.cell(Integrand::VALUE, vec![constant_test()]);
            b.group(fs);
            let fs = b.cell(Integrand::VALUE, ring_tests(&format!("Vd:ring:k3:r{}", r - 3), split)?);
            b.group(fs);
        }
    }
    Ok(DofSet { space, r, target, split: split.clone(), functionals: b.out, groups: b.groups })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitspaces::dimension_formula;

    fn counts(space: DofSpace, r: i64) -> Vec<i64> {
        block_counts(space, r).into_iter().map(|(_, c)| c).collect()
    }

    #[test]
    fn block_counts_at_five() {
        assert_eq!(counts(DofSpace::Md0, 5), vec![40, 0, 12, 0, 12, 4]);
        assert_eq!(counts(DofSpace::Md1, 5), vec![48, 18, 36, 12, 0, 8, 4, 6]);
        assert_eq!(counts(DofSpace::Md3, 5), vec![4, 6, 0, 1, 4]);
        assert_eq!(counts(DofSpace::M2, 5), vec![12, 36, 12, 6, 39]);
        assert_eq!(counts(DofSpace::Vc2, 5), vec![12, 24, 4, 86, 39]);
    }

    #[test]
    fn totals_match_dimensions() {
        for r in 5..=7 {
            for space in DofSpace::ALL {
                let total: i64 = counts(space, r).iter().sum();
                assert_eq!(total, dimension_formula(&space.target(r).unwrap()).unwrap(), "{space} r={r}");
            }
        }
    }

    #[test]
    fn built_sets_follow_the_lists() {
        let split = AlfeldSplit::of_reference(3);
        for space in DofSpace::ALL {
            let set = build_dofset(space, 5, &split).unwrap();
            let got: Vec<i64> = set.groups.iter().map(|g| g.count as i64).collect();
            assert_eq!(got, counts(space, 5), "{space}");
            assert!(set.disputed().is_empty());
        }
    }

    #[test]
    fn degree_six_flags_the_omitted_blocks() {
        let split = AlfeldSplit::of_reference(3);
        let set = build_dofset(DofSpace::Md0, 6, &split).unwrap();
        assert_eq!(set.len(), 114);
        assert_eq!(set.disputed().len(), 2);
    }

    #[test]
    fn low_degree_is_rejected() {
        let split = AlfeldSplit::of_reference(3);
        assert!(build_dofset(DofSpace::Md0, 4, &split).is_err());
        assert!(build_dofset(DofSpace::Vc2, 3, &split).is_ok());
        assert!(build_dofset(DofSpace::Vc2, 2, &split).is_err());
    }

    #[test]
    fn names_parse() {
        for s in DofSpace::ALL {
            assert_eq!(s.name().to_lowercase().parse::<DofSpace>().unwrap(), s);
        }
        assert!("Md4".parse::<DofSpace>().is_err());
    }
}
