#![allow(dead_code)]

use alfeld::polyforms::{monomials, sigmas, KForm, Poly};
use alfeld::Rational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Poly {
    let mut p = Poly::zero(n);
    for e in monomials(n, r) {
        if rng.gen_bool(0.5) {
            p.add_term(e, &Rational::from_int(rng.gen_range(-3..=3)));
        }
    }
    p
}

pub fn random_form(rng: &mut ChaCha8Rng, n: usize, k: usize, r: usize) -> KForm {
    let coeffs = sigmas(n, k).iter().map(|_| random_poly(rng, n, r)).collect();
    KForm::from_coeffs(n, k, coeffs).unwrap()
}

pub fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> alfeld::simplicial::Simplex {
    loop {
        let vs = (0..=n).map(|_| (0..n).map(|_| Rational::from_int(rng.gen_range(-3..=3))).collect()).collect();
        if let Ok(t) = alfeld::simplicial::Simplex::new(vs) {
            return t;
        }
    }
}
