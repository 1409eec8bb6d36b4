use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::RatMatrix;
use super::modular::integer_rows;

/// Rank by one-step fraction-free elimination on the row-scaled integer matrix.
///
/// Every intermediate entry is a minor of the input, so all divisions are exact.
pub fn rank_bareiss(m: &RatMatrix) -> usize {
    let mut a = integer_rows(m);
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut prev = BigInt::from(1);
    let mut k = 0;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(piv) = (k..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(k, piv);
        let pivot_row = a[k].clone();
        let pk = pivot_row[c].clone();
        for row in a.iter_mut().skip(k + 1) {
            let f = row[c].clone();
            for j in (c + 1)..cols {
                let v = &pk * &row[j] - &f * &pivot_row[j];
                row[j] = if v.is_zero() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = pk;
        k += 1;
    }
    k
}

/// Determinant of a square matrix by fraction-free elimination.
pub fn det_bareiss(m: &RatMatrix) -> crate::ratlinalg::Rational {
    use crate::ratlinalg::Rational;
    assert_eq!(m.nrows(), m.ncols(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = Rational::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = m.row(i);
        let l = Rational::from_bigint(crate::ratlinalg::rational::lcm_denominators(row));
        scale = &scale * &l;
        a.push(row.iter().map(|x| (x * &l).numer()).collect());
    }
    let mut sign = 1i64;
    let mut prev = BigInt::from(1);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if piv != c {
            a.swap(c, piv);
            sign = -sign;
        }
        let pivot_row = a[c].clone();
        let pk = pivot_row[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            let f = row[c].clone();
            for j in (c + 1)..n {
                row[j] = (&pk * &row[j] - &f * &pivot_row[j]) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pk;
    }
    let d = Rational::from_bigint(a[n - 1][n - 1].clone() * sign);
    &d / &scale
}
