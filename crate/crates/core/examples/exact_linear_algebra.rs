//! Exact ranks, nullspaces and solves over the rationals.

use alfeld::ratlinalg::{nullspace_basis, rank_exact, rank_modular, solve_exact};
use alfeld::{RatMatrix, Rational};

fn main() {
    // Hilbert matrix: dense, ill conditioned in floating point, trivial here.
    let n = 6;
    let h = RatMatrix::from_rows((0..n).map(|i| (0..n).map(|j| Rational::new(1, (i + j + 1) as i64)).collect()).collect());
    println!("rank H6 = {} (modular {})", rank_exact(&h), rank_modular(&h, 2, 7));

    let b: Vec<Rational> = (0..n).map(|i| Rational::from_int(i as i64 + 1)).collect();
    let x = solve_exact(&h, &b).expect("nonsingular");
    println!("H6 x = (1..6): x0 = {}, x5 = {}", x[0], x[5]);
    assert_eq!(h.mul_vec(&x), b);

    let m = RatMatrix::from_i64(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![1, 0, -1, 0]]);
    let ker = nullspace_basis(&m);
    println!("nullspace of a rank {} 3x4 matrix has {} vectors", rank_exact(&m), ker.ncols());
    for v in ker.columns() {
        assert!(m.mul_vec(&v).iter().all(|c| c.is_zero()));
    }
}
