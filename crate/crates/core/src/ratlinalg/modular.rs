use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::echelon::{Echelon, SparseRow};
use super::field::{Field, Fp};
use super::matrix::RatMatrix;
use super::rational::{lcm_denominators, Rational};

pub const PRIME_FLOOR: u64 = 1 << 50;

fn mr_witness(n: u64, a: u64, d: u64, s: u32) -> bool {
    let f = Fp { p: n };
    let mut x = f.pow(a, d);
    if x == 1 || x == n - 1 {
        return false;
    }
    for _ in 1..s {
        x = f.mulmod(x, x);
        if x == n - 1 {
            return false;
        }
    }
    true
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    !SMALL.iter().any(|&a| mr_witness(n, a, d, s))
}

/// Random prime in `[2^50, 2^62)`.
pub fn random_prime<R: Rng>(rng: &mut R) -> u64 {
    loop {
        let x = rng.gen_range(PRIME_FLOOR..(1u64 << 62)) | 1;
        if is_prime_u64(x) {
            return x;
        }
    }
}

/// `count` distinct primes drawn from a generator seeded with `seed`.
pub fn seeded_primes(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_prime(&mut rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Rows scaled by the least common multiple of their denominators.
pub fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.nrows())
        .map(|i| {
            let row = m.row(i);
            let l = Rational::from_bigint(lcm_denominators(row));
            row.iter().map(|x| (x * &l).numer()).collect()
        })
        .collect()
}

/// Rank of an integer matrix modulo `p`.
pub fn rank_mod_p(rows: &[Vec<BigInt>], ncols: usize, p: u64) -> usize {
    let f = Fp::new(p);
    let mut e = Echelon::new(f, ncols);
    for r in rows {
        let dense: Vec<u64> = r.iter().map(|x| f.from_bigint(x)).collect();
        e.insert_dense(dense);
        if e.rank() == ncols {
            break;
        }
    }
    e.rank()
}

/// Largest rank observed modulo `prime_count` random primes of at least 50 bits.
///
/// Denominators are cleared row by row before reduction. The result never
/// exceeds the rank over the rationals.
pub fn rank_modular(m: &RatMatrix, prime_count: usize, seed: u64) -> usize {
    let rows = integer_rows(m);
    seeded_primes(prime_count.max(1), seed)
        .into_iter()
        .map(|p| rank_mod_p(&rows, m.ncols(), p))
        .max()
        .unwrap_or(0)
}

/// Reduces sparse rational rows modulo `p`; `None` if some denominator vanishes.
pub fn reduce_rows(f: &Fp, rows: &[SparseRow<Rational>]) -> Option<Vec<SparseRow<u64>>> {
    rows.iter()
        .map(|r| {
            let mut out = Vec::with_capacity(r.len());
            for (j, v) in r {
                let x = f.from_rational(v)?;
                if x != 0 {
                    out.push((*j, x));
                }
            }
            Some(out)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64(561));
    }

    #[test]
    fn primes_are_large_and_reproducible() {
        let a = seeded_primes(3, 9);
        assert_eq!(a, seeded_primes(3, 9));
        assert!(a.iter().all(|&p| p >= PRIME_FLOOR && is_prime_u64(p)));
    }
}
