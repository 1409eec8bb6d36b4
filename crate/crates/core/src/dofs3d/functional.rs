use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::polyforms::proxy::{poly_cross_const, poly_dot};
use crate::polyforms::{form_to_proxy, integrate, integrate_reference, AffineMap, Exp, KForm, PiecewiseKForm, Poly, Proxy};
use crate::ratlinalg::Rational;
use crate::simplicial::{AlfeldSplit, Point};

use super::face::{parent_points, tangential};

/// What is applied to the input before testing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proj {
    Id,
    /// `v . n`
    Dot(Point),
    /// `v x n`
    Cross(Point),
    /// `n x v x n`
    Tangential(Point),
}

/// Optional exterior derivative (grad, curl or div) followed by a projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integrand {
    pub d: bool,
    pub proj: Proj,
}

impl Integrand {
    pub const VALUE: Integrand = Integrand { d: false, proj: Proj::Id };
    pub const D: Integrand = Integrand { d: true, proj: Proj::Id };

    pub fn new(d: bool, proj: Proj) -> Self {
        Integrand { d, proj }
    }

    pub fn field(&self, w: &KForm) -> Proxy {
        let f = if self.d { w.d() } else { w.clone() };
        self.project(form_to_proxy(&f).expect("three-dimensional form"))
    }

    /// Applies the projection to an already differentiated proxy.
    pub fn project(&self, p: Proxy) -> Proxy {
        match (&self.proj, p) {
            (Proj::Id, p) => p,
            (Proj::Dot(n), Proxy::Vector(v)) => Proxy::Scalar(poly_dot(&v, n)),
            (Proj::Cross(n), Proxy::Vector(v)) => Proxy::Vector(poly_cross_const(&v, n)),
            (Proj::Tangential(n), Proxy::Vector(v)) => Proxy::Vector(tangential(&v, n)),
            (proj, _) => panic!("{proj:?} needs a vector field"),
        }
    }

    pub fn name(&self) -> String {
        let base = if self.d { "d" } else { "value" };
        match self.proj {
            Proj::Id => base.into(),
            Proj::Dot(_) => format!("{base}.n"),
            Proj::Cross(_) => format!("{base}xn"),
            Proj::Tangential(_) => format!("nx{base}xn"),
        }
    }
}

fn pair(a: &Proxy, b: &Proxy) -> Poly {
    match (a, b) {
        (Proxy::Scalar(x), Proxy::Scalar(y)) => x.mul(y),
        (Proxy::Vector(x), Proxy::Vector(y)) => x.iter().zip(y).fold(Poly::zero(x[0].nvars()), |acc, (p, q)| acc.add(&p.mul(q))),
        _ => panic!("test function does not match the integrand"),
    }
}

fn pull(map: &mut AffineMap, p: &Proxy) -> Proxy {
    match p {
        Proxy::Scalar(s) => Proxy::Scalar(map.pullback(s)),
        Proxy::Vector(v) => Proxy::Vector([map.pullback(&v[0]), map.pullback(&v[1]), map.pullback(&v[2])]),
    }
}

/// Parametrizations of edges and faces keyed by parent vertex ids, monomial
/// moments over the children, and the proxies of the current input.
#[derive(Default)]
pub struct MapCache {
    maps: HashMap<Vec<usize>, AffineMap>,
    moments: HashMap<(usize, Exp), Rational>,
    fields: HashMap<(usize, bool), Proxy>,
    pulled: HashMap<(usize, bool, Vec<usize>), Proxy>,
}

impl MapCache {
    /// Forgets the proxies of the previous input; call before evaluating a new form.
    pub fn new_input(&mut self) {
        self.fields.clear();
        self.pulled.clear();
    }

    fn field(&mut self, w: &KForm, child: usize, d: bool) -> Proxy {
        self.fields
            .entry((child, d))
            .or_insert_with(|| form_to_proxy(&if d { w.d() } else { w.clone() }).expect("three-dimensional form"))
            .clone()
    }

    /// Unprojected proxy of `w` or `dw` pulled back to an edge or face.
    fn pulled(&mut self, split: &AlfeldSplit, w: &KForm, child: usize, d: bool, ids: &[usize]) -> Proxy {
        let key = (child, d, ids.to_vec());
        if let Some(p) = self.pulled.get(&key) {
            return p.clone();
        }
        let f = self.field(w, child, d);
        let p = pull(self.get(split, ids), &f);
        self.pulled.insert(key, p.clone());
        p
    }

    fn get(&mut self, split: &AlfeldSplit, ids: &[usize]) -> &mut AffineMap {
        self.maps.entry(ids.to_vec()).or_insert_with(|| AffineMap::from_vertices(&parent_points(split, ids)))
    }

    /// `int_{T_child} x^e dx`.
    pub fn moment(&mut self, split: &AlfeldSplit, child: usize, e: Exp) -> Rational {
        self.moments
            .entry((child, e))
            .or_insert_with(|| integrate(&Poly::monomial(3, e, Rational::one()), &split.children()[child]))
            .clone()
    }

    /// `int_{T_child} p dx`.
    pub fn integrate_child(&mut self, split: &AlfeldSplit, child: usize, p: &Poly) -> Rational {
        let mut s = Rational::zero();
        for (e, c) in p.terms() {
            s += &(c * &self.moment(split, child, *e));
        }
        s
    }
}

/// Moments of a cell test function against single monomials, keyed by
/// child, component and exponent, filled on demand and shared by clones.
#[derive(Clone, Default)]
pub struct DualCache(Arc<Mutex<HashMap<(usize, usize, Exp), Rational>>>);

impl fmt::Debug for DualCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DualCache({})", self.0.lock().map(|m| m.len()).unwrap_or(0))
    }
}

fn components(p: &Proxy) -> Vec<&Poly> {
    match p {
        Proxy::Scalar(s) => vec![s],
        Proxy::Vector(v) => v.iter().collect(),
    }
}

/// A linear functional on piecewise forms over the split.
///
/// Edge and face moments are taken against the parametrization measure
/// (`dt`, `ds dt`), so they differ from the arc and area measures by a
/// positive constant per edge or face.
#[derive(Clone, Debug)]
pub enum DofFunctional {
    /// `D^alpha` of one proxy component of `w` or `dw`, read in `child`.
    PointDeriv { vertex: usize, child: usize, d: bool, alpha: Exp, comp: usize },
    EdgeMoment { edge: [usize; 2], child: usize, integrand: Integrand, test: Proxy },
    FaceMoment { face: [usize; 3], child: usize, integrand: Integrand, test: Proxy },
    /// Test function given piecewise, one proxy per child.
    CellMoment { integrand: Integrand, test: Vec<Proxy>, duals: DualCache },
}

impl DofFunctional {
    pub fn kind(&self) -> &'static str {
        match self {
            DofFunctional::PointDeriv { .. } => "vertex",
            DofFunctional::EdgeMoment { .. } => "edge",
            DofFunctional::FaceMoment { .. } => "face",
            DofFunctional::CellMoment { .. } => "cell",
        }
    }

    /// The only child read, or `None` for cell moments.
    pub fn child(&self) -> Option<usize> {
        match self {
            DofFunctional::PointDeriv { child, .. }
            | DofFunctional::EdgeMoment { child, .. }
            | DofFunctional::FaceMoment { child, .. } => Some(*child),
            DofFunctional::CellMoment { .. } => None,
        }
    }

    /// Parent vertices of the sub-simplex the functional is attached to.
    pub fn support(&self) -> Vec<usize> {
        match self {
            DofFunctional::PointDeriv { vertex, .. } => vec![*vertex],
            DofFunctional::EdgeMoment { edge, .. } => edge.to_vec(),
            DofFunctional::FaceMoment { face, .. } => face.to_vec(),
            DofFunctional::CellMoment { .. } => vec![0, 1, 2, 3],
        }
    }

    /// Contribution of the piece living on `child`.
    ///
    /// `maps` caches proxies of `w`, so `MapCache::new_input` must be called
    /// whenever the input changes.
    pub fn eval_piece(&self, w: &KForm, child: usize, split: &AlfeldSplit, maps: &mut MapCache) -> Rational {
        if self.child().is_some_and(|c| c != child) {
            return Rational::zero();
        }
        match self {
            DofFunctional::PointDeriv { vertex, d, alpha, comp, .. } => {
                let p = match maps.field(w, child, *d) {
                    Proxy::Scalar(s) => s,
                    Proxy::Vector(v) => v[*comp].clone(),
                };
                p.deriv_multi(alpha).eval(split.parent().vertex(*vertex))
            }
            DofFunctional::EdgeMoment { edge, integrand, test, .. } => {
                let f = integrand.project(maps.pulled(split, w, child, integrand.d, edge));
                integrate_reference(&pair(&f, test))
            }
            DofFunctional::FaceMoment { face, integrand, test, .. } => {
                let f = integrand.project(maps.pulled(split, w, child, integrand.d, face));
                integrate_reference(&pair(&f, test))
            }
            DofFunctional::CellMoment { integrand, test, duals } => {
                let f = integrand.project(maps.field(w, child, integrand.d));
                let tests = components(&test[child]);
                let mut cache = duals.0.lock().expect("dual cache");
                let mut s = Rational::zero();
                for (comp, fc) in components(&f).into_iter().enumerate() {
                    for (e, c) in fc.terms() {
                        let dual = match cache.get(&(child, comp, *e)) {
                            Some(v) => v.clone(),
                            None => {
                                let mut v = Rational::zero();
                                for (e2, t) in tests[comp].terms() {
                                    v += &(t * &maps.moment(split, child, e.add(e2)));
                                }
                                cache.insert((child, comp, *e), v.clone());
                                v
                            }
                        };
                        s += &(c * &dual);
                    }
                }
                s
            }
        }
    }

    /// Value on a piecewise form; see `eval_piece` for the cache contract.
    pub fn eval(&self, w: &PiecewiseKForm, split: &AlfeldSplit, maps: &mut MapCache) -> Rational {
        match self.child() {
            Some(c) => self.eval_piece(&w.pieces[c], c, split, maps),
            None => w.pieces.iter().enumerate().map(|(c, p)| self.eval_piece(p, c, split, maps)).sum(),
        }
    }
}
