//! p-adic lifting for square nonsingular systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Fp};
use super::matrix::RatMatrix;
use super::modular::integer_rows;
use super::rational::{lcm_denominators, Rational};

/// Inverse modulo `p` of a square integer matrix, if it exists.
fn inverse_mod(f: &Fp, a: &[Vec<BigInt>]) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<u64> = r.iter().map(|x| f.from_bigint(x)).collect();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| m[i][c] != 0)?;
        m.swap(c, piv);
        let inv = f.inv(&m[c][c]);
        for v in m[c].iter_mut() {
            *v = f.mulmod(*v, inv);
        }
        let pivot_row = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || row[c] == 0 {
                continue;
            }
            let t = row[c];
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if *pv != 0 {
                    *v = f.sub(v, &f.mulmod(t, *pv));
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `u = a / b mod m` with `|a|, b <= sqrt(m / 2)`.
fn reconstruct(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::from_big_ratio(r1, t1))
}

fn bits(x: &BigInt) -> f64 {
    x.bits() as f64
}

/// Solves `m x = b` for each right-hand side, or `None` when `m` is not
/// square or is singular modulo every prime tried.
///
/// Residues are lifted until rational reconstruction succeeds and the
/// candidate satisfies the system exactly, or until the Hadamard bound makes
/// reconstruction certain.
pub fn solve_lifting(m: &RatMatrix, bs: &[Vec<Rational>], primes: &[u64]) -> Option<Vec<Vec<Rational>>> {
    let n = m.nrows();
    if n != m.ncols() || n == 0 {
        return None;
    }
    let scales: Vec<Rational> = (0..n).map(|i| Rational::from_bigint(lcm_denominators(m.row(i)))).collect();
    let a = integer_rows(m);
    let (f, ainv) = primes.iter().find_map(|&p| {
        let f = Fp::new(p);
        inverse_mod(&f, &a).map(|inv| (f, inv))
    })?;
    let p = BigInt::from(f.p);
    let pbits = (f.p as f64).log2();
    let row_bits: Vec<f64> = a.iter().map(|r| r.iter().map(bits).fold(0.0, f64::max)).collect();
    let spread = 0.5 * ((n + 1) as f64).log2();
    bs.iter()
        .map(|b| {
            let scaled: Vec<Rational> = b.iter().zip(&scales).map(|(x, s)| x * s).collect();
            let den = lcm_denominators(&scaled);
            let rhs: Vec<BigInt> = scaled.iter().map(|x| (x * &Rational::from_bigint(den.clone())).numer()).collect();
            let hadamard: f64 = row_bits.iter().zip(&rhs).map(|(rb, x)| rb.max(bits(x)) + spread).sum::<f64>() + 1.0;
            let cap = ((2.0 * hadamard + 2.0) / pbits).ceil() as usize + 1;
            let mut res = rhs.clone();
            let mut acc = vec![BigInt::zero(); n];
            let mut modulus = BigInt::one();
            let mut next_try = 2;
            for k in 1..=cap {
                let rmod: Vec<u64> = res.iter().map(|x| f.from_bigint(x)).collect();
                let c: Vec<u64> = ainv
                    .iter()
                    .map(|row| row.iter().zip(&rmod).fold(0, |s, (x, y)| f.add(&s, &f.mulmod(*x, *y))))
                    .collect();
                let cb: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
                for (ai, ri) in a.iter().zip(res.iter_mut()) {
                    let mut s = BigInt::zero();
                    for (x, y) in ai.iter().zip(&cb) {
                        if !x.is_zero() && !y.is_zero() {
                            s += x * y;
                        }
                    }
                    *ri = (&*ri - s) / &p;
                }
                for (x, y) in acc.iter_mut().zip(&cb) {
                    *x += y * &modulus;
                }
                modulus *= &p;
                if k == next_try || k == cap {
                    next_try *= 2;
                    let bound = (&modulus / 2u32).sqrt();
                    let cand: Option<Vec<Rational>> = acc.iter().map(|u| reconstruct(u, &modulus, &bound)).collect();
                    if let Some(y) = cand {
                        if verify(&a, &y, &rhs) {
                            let d = Rational::from_bigint(den.clone());
                            return Some(y.iter().map(|v| v / &d).collect());
                        }
                    }
                }
            }
            None
        })
        .collect()
}

fn verify(a: &[Vec<BigInt>], y: &[Rational], rhs: &[BigInt]) -> bool {
    let den = lcm_denominators(y);
    let d = Rational::from_bigint(den.clone());
    let yi: Vec<BigInt> = y.iter().map(|v| (v * &d).numer()).collect();
    a.iter().zip(rhs).all(|(row, b)| {
        let s: BigInt = row.iter().zip(&yi).map(|(x, v)| x * v).sum();
        s == b * &den
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_small_fractions() {
        let f = Fp::new(1_000_003);
        let u = BigInt::from(f.mulmod(f.p - 3, f.inv(&7)));
        let m = BigInt::from(f.p);
        let q = reconstruct(&u, &m, &(&m / 2u32).sqrt()).unwrap();
        assert_eq!(q, Rational::new(-3, 7));
    }

    #[test]
    fn agrees_with_elimination() {
        let m = RatMatrix::from_rows(vec![
            vec![Rational::new(1, 2), Rational::from_int(3), Rational::zero()],
            vec![Rational::from_int(-1), Rational::new(2, 3), Rational::from_int(5)],
            vec![Rational::from_int(4), Rational::zero(), Rational::new(-7, 5)],
        ]);
        let b = vec![Rational::new(1, 3), Rational::from_int(-2), Rational::new(9, 4)];
        let x = solve_lifting(&m, std::slice::from_ref(&b), &[1_000_003]).unwrap().pop().unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn singular_is_rejected() {
        let m = RatMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert!(solve_lifting(&m, &[vec![Rational::one(), Rational::one()]], &[1_000_003]).is_none());
    }
}
