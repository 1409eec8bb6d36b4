use crate::error::{Error, Result};
use crate::polyforms::poly::{AffineMap, Poly};
use crate::ratlinalg::{det_bareiss, inverse, RatMatrix, Rational};

pub type Point = Vec<Rational>;

pub fn point(xs: &[i64]) -> Point {
    xs.iter().map(|&x| Rational::from_int(x)).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn scale(a: &[Rational], s: &Rational) -> Point {
    a.iter().map(|x| x * s).collect()
}

pub fn axpy(a: &[Rational], s: &Rational, b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + &(s * y)).collect()
}

/// `c + sum_i g_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFunctional {
    pub grad: Vec<Rational>,
    pub constant: Rational,
}

impl AffineFunctional {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        &self.constant + &dot(&self.grad, x)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::affine(&self.grad, &self.constant)
    }
}

/// Non-degenerate `n`-simplex in `R^n` with ordered vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    vertices: Vec<Point>,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len().checked_sub(1).ok_or_else(|| Error::Geometry("empty vertex list".into()))?;
        if n == 0 || vertices.iter().any(|v| v.len() != n) {
            return Err(Error::Geometry(format!(
                "a simplex in R^n needs n+1 points with n coordinates; got {} points",
                vertices.len()
            )));
        }
        let s = Simplex { vertices };
        if s.det().is_zero() {
            return Err(Error::Geometry("degenerate simplex".into()));
        }
        Ok(s)
    }

    /// Reference simplex: origin and the unit coordinate vectors.
    pub fn reference(n: usize) -> Self {
        let mut vs = vec![vec![Rational::zero(); n]];
        for i in 0..n {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            vs.push(v);
        }
        Simplex { vertices: vs }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    /// Columns `x_i - x_0`, `i = 1..n`.
    pub fn edge_matrix(&self) -> RatMatrix {
        let n = self.dim();
        let mut m = RatMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                m[(i, j)] = &self.vertices[j + 1][i] - &self.vertices[0][i];
            }
        }
        m
    }

    pub fn det(&self) -> Rational {
        det_bareiss(&self.edge_matrix())
    }

    pub fn orientation(&self) -> i32 {
        self.det().signum()
    }

    pub fn volume(&self) -> Rational {
        let f = crate::polyforms::poly::factorial(self.dim()) as i64;
        &self.det().abs() / &Rational::from_int(f)
    }

    pub fn barycenter(&self) -> Point {
        let n = self.dim();
        let w = Rational::new(1, (n + 1) as i64);
        let mut z = vec![Rational::zero(); n];
        for v in &self.vertices {
            for i in 0..n {
                z[i] += &(&v[i] * &w);
            }
        }
        z
    }

    /// `lambda_0, ..., lambda_n` as affine functions.
    pub fn barycentric_coords(&self) -> Vec<AffineFunctional> {
        let n = self.dim();
        let inv = inverse(&self.edge_matrix()).expect("non-degenerate simplex");
        let x0 = &self.vertices[0];
        let mut out = Vec::with_capacity(n + 1);
        let mut rest = Vec::new();
        for i in 0..n {
            let grad: Vec<Rational> = inv.row(i).to_vec();
            let constant = -&dot(&grad, x0);
            rest.push(AffineFunctional { grad, constant });
        }
        let mut g0 = vec![Rational::zero(); n];
        let mut c0 = Rational::one();
        for f in &rest {
            for i in 0..n {
                g0[i] -= &f.grad[i];
            }
            c0 -= &f.constant;
        }
        out.push(AffineFunctional { grad: g0, constant: c0 });
        out.extend(rest);
        out
    }

    pub fn barycentric_of(&self, x: &[Rational]) -> Vec<Rational> {
        self.barycentric_coords().iter().map(|l| l.eval(x)).collect()
    }

    /// Map from the reference simplex, vertex order preserved.
    pub fn reference_map(&self) -> AffineMap {
        AffineMap::from_vertices(&self.vertices)
    }

    /// Points of the sub-simplex with the given local vertex indices.
    pub fn sub_points(&self, ids: &[usize]) -> Vec<Point> {
        ids.iter().map(|&i| self.vertices[i].clone()).collect()
    }
}

/// Generalized cross product: a vector orthogonal to the `n-1` given vectors in `R^n`.
pub fn cofactor_normal(vectors: &[Point]) -> Point {
    let n = vectors.len() + 1;
    (0..n)
        .map(|i| {
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let rows: Vec<Vec<Rational>> =
                vectors.iter().map(|v| cols.iter().map(|&c| v[c].clone()).collect()).collect();
            let d = if rows.is_empty() { Rational::one() } else { det_bareiss(&RatMatrix::from_rows(rows)) };
            if (i + n - 1).is_multiple_of(2) {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Rational normal of the facet through `points`, pointing away from `inside`.
pub fn facet_normal(points: &[Point], inside: &[Rational]) -> Point {
    let a = &points[0];
    let vs: Vec<Point> = points[1..].iter().map(|p| sub(p, a)).collect();
    let nrm = cofactor_normal(&vs);
    if dot(&nrm, &sub(inside, a)).is_negative() {
        nrm
    } else {
        nrm.iter().map(|x| -x).collect()
    }
}

/// Tangent `b - a` and `n-1` rational vectors spanning its orthogonal complement.
///
/// The normals are projections of coordinate axes, scaled to avoid fractions;
/// axes whose projections add nothing new are skipped.
pub fn edge_frame(a: &[Rational], b: &[Rational]) -> (Point, Vec<Point>) {
    let t = sub(b, a);
    let n = t.len();
    let tt = dot(&t, &t);
    let mut normals: Vec<Point> = Vec::new();
    for j in 0..n {
        let cand: Point = (0..n)
            .map(|i| {
                let e = if i == j { tt.clone() } else { Rational::zero() };
                &e - &(&t[j] * &t[i])
            })
            .collect();
        let mut trial = normals.clone();
        trial.push(cand.clone());
        if crate::ratlinalg::rank_exact(&RatMatrix::from_rows(trial)) == normals.len() + 1 {
            normals.push(cand);
        }
        if normals.len() + 1 == n {
            break;
        }
    }
    (t, normals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_tet_volume_and_barycenter() {
        let t = Simplex::reference(3);
        assert_eq!(t.volume(), Rational::new(1, 6));
        assert_eq!(t.barycenter(), vec![Rational::new(1, 4); 3]);
        assert_eq!(t.orientation(), 1);
    }

    #[test]
    fn degenerate_rejected() {
        let r = Simplex::new(vec![point(&[0, 0]), point(&[1, 1]), point(&[2, 2])]);
        assert!(r.is_err());
    }

    #[test]
    fn barycentric_partition_of_unity() {
        let t = Simplex::new(vec![point(&[1, 0, 0]), point(&[0, 2, 0]), point(&[0, 0, 3]), point(&[1, 1, 1])]).unwrap();
        let l = t.barycentric_coords();
        for (i, v) in t.vertices().iter().enumerate() {
            for (j, f) in l.iter().enumerate() {
                assert_eq!(f.eval(v), if i == j { Rational::one() } else { Rational::zero() });
            }
        }
    }

    #[test]
    fn outward_normal_of_slanted_face() {
        let t = Simplex::reference(3);
        let f = t.sub_points(&[1, 2, 3]);
        let nrm = facet_normal(&f, t.vertex(0));
        assert!(nrm[0].signum() > 0 && nrm[0] == nrm[1] && nrm[1] == nrm[2]);
    }

    #[test]
    fn edge_frame_of_axis() {
        let (t, ns) = edge_frame(&point(&[0, 0, 0]), &point(&[1, 0, 0]));
        assert_eq!(t, point(&[1, 0, 0]));
        assert_eq!(ns, vec![point(&[0, 1, 0]), point(&[0, 0, 1])]);
    }
}
