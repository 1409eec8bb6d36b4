//! Exact linear algebra over the rationals, with modular rank estimates.

pub mod bareiss;
pub mod dixon;
pub mod echelon;
pub mod field;
pub mod matrix;
pub mod modular;
pub mod rational;

pub use bareiss::{det_bareiss, rank_bareiss};
pub use echelon::{echelon_of, Echelon, Rref, SparseRow};
pub use field::{Field, Fp, Q};
pub use matrix::RatMatrix;
pub use modular::{rank_modular, seeded_primes};
pub use rational::Rational;

/// Fixed prime used for full-rank certificates.
const CERT_PRIME: u64 = 2_305_843_009_213_693_951;
const LIFT_PRIME: u64 = 4_611_686_018_427_387_847;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix")]
    Singular,
}

/// Exact rank.
///
/// A modular rank equal to `min(rows, cols)` already certifies full rank over
/// the rationals; otherwise fraction-free elimination decides.
pub fn rank_exact(m: &RatMatrix) -> usize {
    let full = m.nrows().min(m.ncols());
    if full == 0 {
        return 0;
    }
    let rows = modular::integer_rows(m);
    if modular::rank_mod_p(&rows, m.ncols(), CERT_PRIME) == full {
        return full;
    }
    rank_bareiss(m)
}

/// Reduced row echelon form of the matrix.
pub fn rref(m: &RatMatrix) -> Rref<Q> {
    echelon_of(Q, m.ncols(), &m.sparse_rows()).into_rref()
}

/// Canonical kernel basis as the columns of a `cols x nullity` matrix.
///
/// Free columns of the reduced echelon form are taken in increasing order and
/// set to one in turn, so `[[1, 1]]` yields the single column `(-1, 1)`.
pub fn nullspace_basis(m: &RatMatrix) -> RatMatrix {
    nullspace_of_rows(m.ncols(), &m.sparse_rows())
}

pub fn nullspace_of_rows(ncols: usize, rows: &[SparseRow<Rational>]) -> RatMatrix {
    let r = echelon_of(Q, ncols, rows).into_rref();
    RatMatrix::from_columns(ncols, &r.nullspace())
}

/// One solution of `m x = b` (free variables zero), or `Inconsistent`.
pub fn solve_exact(m: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    Ok(solve_many(m, &[b.to_vec()])?.pop().expect("one right-hand side"))
}

/// `solve_exact` for several right-hand sides.
///
/// Square nonsingular systems are solved by p-adic lifting, everything else
/// by one shared elimination.
pub fn solve_many(m: &RatMatrix, bs: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, LinalgError> {
    if let Some(b) = bs.iter().find(|b| b.len() != m.nrows()) {
        return Err(LinalgError::Dimension(format!(
            "right-hand side has {} entries for {} rows",
            b.len(),
            m.nrows()
        )));
    }
    if let Some(xs) = dixon::solve_lifting(m, bs, &[CERT_PRIME, LIFT_PRIME]) {
        return Ok(xs);
    }
    let n = m.ncols();
    let mut rows = m.sparse_rows();
    for (i, r) in rows.iter_mut().enumerate() {
        for (j, b) in bs.iter().enumerate() {
            if !b[i].is_zero() {
                r.push((n + j, b[i].clone()));
            }
        }
    }
    let red = echelon_of(Q, n + bs.len(), &rows).into_rref();
    if red.pivots.iter().any(|&p| p >= n) {
        return Err(LinalgError::Inconsistent);
    }
    let mut xs = vec![vec![Rational::zero(); n]; bs.len()];
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        for (j, v) in row.iter().rev() {
            if *j < n {
                break;
            }
            xs[j - n][p] = v.clone();
        }
    }
    Ok(xs)
}

/// Inverse of a square matrix.
pub fn inverse(m: &RatMatrix) -> Result<RatMatrix, LinalgError> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(LinalgError::Dimension("inverse of a non-square matrix".into()));
    }
    let mut rows = m.sparse_rows();
    for (i, r) in rows.iter_mut().enumerate() {
        r.push((n + i, Rational::one()));
    }
    let red = echelon_of(Q, 2 * n, &rows).into_rref();
    if red.rank() < n || red.pivots[n - 1] != n - 1 {
        return Err(LinalgError::Singular);
    }
    let mut inv = RatMatrix::zeros(n, n);
    for (i, row) in red.rows.iter().enumerate() {
        for (j, v) in row {
            if *j >= n {
                inv[(i, j - n)] = v.clone();
            }
        }
    }
    Ok(inv)
}

/// Indices of a maximal independent subset of the columns, chosen greedily.
pub fn independent_columns(m: &RatMatrix) -> Vec<usize> {
    let mut e = Echelon::new(Q, m.nrows());
    let mut keep = Vec::new();
    for j in 0..m.ncols() {
        if e.insert_dense(m.column(j)).is_some() {
            keep.push(j);
        }
    }
    keep
}

/// Canonical basis of the span of the given vectors.
///
/// The normalization matches `nullspace_basis`: coordinates of the space are
/// read off at the lexicographically last coordinate set, with an identity
/// block there.
pub fn canonical_span_basis(dim: usize, vectors: &[Vec<Rational>]) -> RatMatrix {
    let rev: Vec<SparseRow<Rational>> = vectors
        .iter()
        .map(|v| {
            let mut r: SparseRow<Rational> = v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (dim - 1 - j, x.clone()))
                .collect();
            r.sort_by_key(|e| e.0);
            r
        })
        .collect();
    let red = echelon_of(Q, dim, &rev).into_rref();
    let mut cols: Vec<(usize, Vec<Rational>)> = red
        .rows
        .iter()
        .zip(&red.pivots)
        .map(|(row, &p)| {
            let mut v = vec![Rational::zero(); dim];
            for (j, x) in row {
                v[dim - 1 - j] = x.clone();
            }
            (dim - 1 - p, v)
        })
        .collect();
    cols.sort_by_key(|c| c.0);
    let cols: Vec<Vec<Rational>> = cols.into_iter().map(|c| c.1).collect();
    RatMatrix::from_columns(dim, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn nullspace_of_row_of_ones() {
        let m = RatMatrix::from_i64(&[vec![1, 1]]);
        let n = nullspace_basis(&m);
        assert_eq!(n.ncols(), 1);
        assert_eq!(n.column(0), vec![q(-1), q(1)]);
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank_exact(&RatMatrix::identity(4)), 4);
        assert_eq!(rank_exact(&RatMatrix::zeros(3, 5)), 0);
        assert_eq!(rank_bareiss(&RatMatrix::identity(4)), 4);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = RatMatrix::from_i64(&[vec![1, 1], vec![2, 2]]);
        assert_eq!(solve_exact(&m, &[q(1), q(3)]), Err(LinalgError::Inconsistent));
        let x = solve_exact(&m, &[q(1), q(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(1), q(2)]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_i64(&[vec![2, 1], vec![7, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert_eq!(det_bareiss(&m), q(1));
    }

    #[test]
    fn canonical_span_matches_nullspace() {
        let m = RatMatrix::from_i64(&[vec![1, 2, 0, -1, 3], vec![0, 1, 1, 1, -2]]);
        let n = nullspace_basis(&m);
        let shuffled: Vec<Vec<Rational>> = {
            let c = n.columns();
            vec![
                c.iter().fold(vec![q(0); 5], |a, v| a.iter().zip(v).map(|(x, y)| x + y).collect()),
                c[1].clone(),
                c[2].iter().map(|x| x * &q(3)).collect(),
            ]
        };
        assert_eq!(canonical_span_basis(5, &shuffled), n);
    }
}
