use std::fmt::Debug;

use super::rational::Rational;

/// Arithmetic of a field whose elements may need context (e.g. a modulus).
pub trait Field: Clone {
    type E: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;

    /// Image of a rational number; `None` when the denominator is not invertible.
    fn from_rational(&self, q: &Rational) -> Option<Self::E>;

    /// `a - b * c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E {
        self.sub(a, &self.mul(b, c))
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct Q;

impl Field for Q {
    type E = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        a.recip()
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
}

/// Integers modulo a prime below 2^63.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1u64 << 63));
        Fp { p }
    }

    #[inline]
    pub fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, a);
            }
            a = self.mulmod(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn from_bigint(&self, n: &num_bigint::BigInt) -> u64 {
        use num_traits::{Signed, ToPrimitive};
        let m = num_bigint::BigInt::from(self.p);
        let r = ((n % &m) + &m) % &m;
        debug_assert!(!r.is_negative());
        r.to_u64().expect("residue fits")
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        let p = self.p as i128;
        (((n as i128 % p) + p) % p) as u64
    }
}

impl Field for Fp {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero mod p");
        self.pow(*a, self.p - 2)
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let (n, d) = match q.to_small() {
            Some((n, d)) => (self.from_i64(n), self.from_i64(d)),
            None => (self.from_bigint(&q.numer()), self.from_bigint(&q.denom())),
        };
        if d == 0 {
            None
        } else {
            Some(self.mulmod(n, self.inv(&d)))
        }
    }
}
