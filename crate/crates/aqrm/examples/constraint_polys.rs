//! Constraint polynomials: recurrence vs determinant, the divisibility quotient, the Laguerre limit.

use aqrm::poly::{a_poly, constraint_poly, constraint_poly_det, laguerre_check, rat, verify_divisibility};

fn main() {
    let eps = rat(0, 1);
    println!("P_2^(6,0)     = {}", constraint_poly(6, &eps, 2));

    let eps = rat(1, 4);
    for n in 1..=4 {
        let same = constraint_poly(n, &eps, n) == constraint_poly_det(n, &eps);
        println!("N={n}: recurrence == determinant: {same}");
    }

    for (n, ell) in [(1, 1), (1, 2), (2, 3)] {
        let (q, _) = verify_divisibility(n, ell).expect("exact division");
        println!("A_{n}^{ell} = {q}   (matches closed form: {})", q == a_poly(n, ell));
    }

    println!("Laguerre limit at y = 0 holds for k <= 6, eps = 3/10: {}", (0..=6).all(|k| laguerre_check(k, &rat(3, 10))));
}
