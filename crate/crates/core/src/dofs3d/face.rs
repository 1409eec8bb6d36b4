use crate::polyforms::poly::monomials_of_degree;
use crate::polyforms::proxy::{cross, poly_cross_const, poly_dot};
use crate::polyforms::{curl, grad, integrate_reference, monomials, AffineMap, Poly, Proxy};
use crate::ratlinalg::Rational;
use crate::simplicial::{combinations, AlfeldSplit, Point};

/// Boundary edges of the parent tetrahedron as sorted vertex pairs.
pub fn edges() -> Vec<[usize; 2]> {
    combinations(4, 2).into_iter().map(|c| [c[0], c[1]]).collect()
}

/// Boundary faces as sorted vertex triples.
pub fn faces() -> Vec<[usize; 3]> {
    combinations(4, 3).into_iter().map(|c| [c[0], c[1], c[2]]).collect()
}

/// The child owning a boundary face: the one without the opposite vertex.
pub fn face_child(f: &[usize; 3]) -> usize {
    (0..4).find(|i| !f.contains(i)).expect("a face misses one vertex")
}

/// Lowest child containing all the given parent vertices.
pub fn child_containing(vs: &[usize]) -> usize {
    (0..4).find(|i| !vs.contains(i)).expect("at most three vertices")
}

pub fn faces_of_edge(e: &[usize; 2]) -> Vec<[usize; 3]> {
    faces().into_iter().filter(|f| f.contains(&e[0]) && f.contains(&e[1])).collect()
}

pub fn parent_points(split: &AlfeldSplit, ids: &[usize]) -> Vec<Point> {
    ids.iter().map(|&i| split.parent().vertex(i).clone()).collect()
}

/// `(b - a) x (c - a)`; its length is twice the face area.
pub fn face_normal(split: &AlfeldSplit, f: &[usize; 3]) -> Point {
    let p = parent_points(split, f);
    let u: Vec<Rational> = p[1].iter().zip(&p[0]).map(|(x, y)| x - y).collect();
    let v: Vec<Rational> = p[2].iter().zip(&p[0]).map(|(x, y)| x - y).collect();
    cross(&u, &v)
}

/// Two rational normals spanning the normal plane of an edge: the normals of
/// the two faces through it.
pub fn edge_normals(split: &AlfeldSplit, e: &[usize; 2]) -> Vec<Point> {
    faces_of_edge(e).iter().map(|f| face_normal(split, f)).collect()
}

/// Scalar polynomials of degree at most `s` in `m` parameters.
pub fn scalar_tests(m: usize, s: i64) -> Vec<Proxy> {
    if s < 0 {
        return Vec::new();
    }
    monomials(m, s as usize).into_iter().map(|e| Proxy::Scalar(Poly::monomial(m, e, Rational::one()))).collect()
}

/// `[P_s]^3` in `m` parameters, component-major.
pub fn vector_tests(m: usize, s: i64) -> Vec<Proxy> {
    let mut out = Vec::new();
    for c in 0..3 {
        for t in scalar_tests(m, s) {
            let Proxy::Scalar(p) = t else { unreachable!() };
            let mut v = [Poly::zero(m), Poly::zero(m), Poly::zero(m)];
            v[c] = p;
            out.push(Proxy::Vector(v));
        }
    }
    out
}

/// Tangential fields `[P_s(F)]^2` along the edge vectors `b - a`, `c - a` of a face.
pub fn tangent_tests(split: &AlfeldSplit, face: [usize; 3], s: i64) -> Vec<Proxy> {
    let p = parent_points(split, &face);
    let mut out = Vec::new();
    for q in &p[1..] {
        let t: Vec<Rational> = q.iter().zip(&p[0]).map(|(x, y)| x - y).collect();
        for m in scalar_tests(2, s) {
            let Proxy::Scalar(m) = m else { unreachable!() };
            out.push(Proxy::Vector(std::array::from_fn(|i| m.scale(&t[i]))));
        }
    }
    out
}

/// Local Raviart-Thomas space `D_s(F) = [P_{s-1}]^2 + x P~_{s-1}` on a face,
/// written as tangential fields in face parameters.
#[derive(Clone, Debug)]
pub struct FaceRT {
    pub face: [usize; 3],
    pub degree: i64,
    pub basis: Vec<Proxy>,
}

impl FaceRT {
    pub fn new(split: &AlfeldSplit, face: [usize; 3], s: i64) -> Self {
        let p = parent_points(split, &face);
        let e1: Vec<Rational> = p[1].iter().zip(&p[0]).map(|(x, y)| x - y).collect();
        let e2: Vec<Rational> = p[2].iter().zip(&p[0]).map(|(x, y)| x - y).collect();
        let lift = |u: &Poly, v: &Poly| -> Proxy {
            Proxy::Vector(std::array::from_fn(|i| u.scale(&e1[i]).add(&v.scale(&e2[i]))))
        };
        let mut basis = Vec::new();
        if s >= 1 {
            let z = Poly::zero(2);
            for c in 0..2 {
                for e in monomials(2, (s - 1) as usize) {
                    let m = Poly::monomial(2, e, Rational::one());
                    basis.push(if c == 0 { lift(&m, &z) } else { lift(&z, &m) });
                }
            }
            for e in monomials_of_degree(2, (s - 1) as usize) {
                let m = Poly::monomial(2, e, Rational::one());
                basis.push(lift(&m.mul(&Poly::var(2, 0)), &m.mul(&Poly::var(2, 1))));
            }
        }
        FaceRT { face, degree: s, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `n x grad phi x n`.
pub fn grad_f(phi: &Poly, n: &[Rational]) -> [Poly; 3] {
    tangential(&grad(phi), n)
}

/// `grad phi x n`.
pub fn rot_f(phi: &Poly, n: &[Rational]) -> [Poly; 3] {
    poly_cross_const(&grad(phi), n)
}

/// `n . curl psi`.
pub fn curl_f(psi: &[Poly; 3], n: &[Rational]) -> Poly {
    poly_dot(&curl(psi), n)
}

/// `n . curl (n x psi)`.
pub fn div_f(psi: &[Poly; 3], n: &[Rational]) -> Poly {
    let nx = poly_cross_const(psi, n).map(|p| p.neg());
    poly_dot(&curl(&nx), n)
}

/// `n x v x n`.
pub fn tangential(v: &[Poly; 3], n: &[Rational]) -> [Poly; 3] {
    poly_cross_const(&poly_cross_const(v, n), n).map(|p| p.neg())
}

/// Both sides of `int_F (curl_F w) q - int_F (rot_F q) . w = int_dF (w . t) q`
/// on the triangle `abc`, with `n = (b - a) x (c - a)` and the boundary run
/// `a -> b -> c -> a`.
///
/// The face measure contributes `|n|` on the left and the unit normal
/// contributes `1 / |n|`, so both sides are rational.
pub fn stokes_sides(face: &[Point; 3], w: &[Poly; 3], q: &Poly) -> (Rational, Rational) {
    let u: Vec<Rational> = face[1].iter().zip(&face[0]).map(|(x, y)| x - y).collect();
    let v: Vec<Rational> = face[2].iter().zip(&face[0]).map(|(x, y)| x - y).collect();
    let n = cross(&u, &v);
    let rq = rot_f(q, &n);
    let dot = rq.iter().zip(w).fold(Poly::zero(3), |acc, (a, b)| acc.add(&a.mul(b)));
    let lhs_poly = curl_f(w, &n).mul(q).sub(&dot);
    let mut fmap = AffineMap::from_vertices(face);
    let lhs = integrate_reference(&fmap.pullback(&lhs_poly));
    let mut rhs = Rational::zero();
    for i in 0..3 {
        let (a, b) = (&face[i], &face[(i + 1) % 3]);
        let t: Vec<Rational> = b.iter().zip(a).map(|(x, y)| x - y).collect();
        let mut emap = AffineMap::from_vertices(&[a.clone(), b.clone()]);
        rhs += integrate_reference(&emap.pullback(&poly_dot(w, &t).mul(q)));
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology() {
        assert_eq!(edges().len(), 6);
        assert_eq!(faces(), vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        assert_eq!(face_child(&[0, 1, 3]), 2);
        assert_eq!(child_containing(&[0]), 1);
        assert_eq!(child_containing(&[1, 2]), 0);
        assert_eq!(faces_of_edge(&[1, 2]), vec![[0, 1, 2], [1, 2, 3]]);
    }

    #[test]
    fn rt_dimension() {
        let split = AlfeldSplit::of_reference(3);
        for s in 0..5 {
            assert_eq!(FaceRT::new(&split, [0, 1, 2], s).dim() as i64, s * (s + 2));
        }
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn random_poly(rng: &mut impl rand::Rng, deg: usize) -> Poly {
        let mut p = Poly::zero(3);
        for e in monomials(3, deg) {
            p.add_term(e, &q(rng.gen_range(-4..=4)));
        }
        p
    }

    #[test]
    fn surface_operator_identities() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = vec![q(1), q(-2), q(3)];
        for _ in 0..5 {
            let phi = random_poly(&mut rng, 4);
            assert!(curl_f(&grad_f(&phi, &n), &n).is_zero());
            assert!(poly_dot(&rot_f(&phi, &n), &n).is_zero());
        }
        let c = tangential(&[Poly::constant(3, q(2)), Poly::constant(3, q(5)), Poly::constant(3, q(-1))], &n);
        assert!(div_f(&c, &n).is_zero());
    }

    #[test]
    fn stokes_on_a_slanted_face() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let face = [vec![q(1), q(0), q(0)], vec![q(0), q(2), q(0)], vec![Rational::new(1, 2), q(1), q(3)]];
        for _ in 0..5 {
            let w = [random_poly(&mut rng, 3), random_poly(&mut rng, 3), random_poly(&mut rng, 3)];
            let p = random_poly(&mut rng, 2);
            let (lhs, rhs) = stokes_sides(&face, &w, &p);
            assert_eq!(lhs, rhs);
        }
    }
}
