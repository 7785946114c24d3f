//! Exact constraint polynomials and the identities they satisfy.
//!
//! Everything here is computed over `Q[x, y]` with arbitrary-precision
//! rationals, so every identity is checked with zero tolerance.

mod bivar;
pub mod matrices;
mod rational;

pub use bivar::BivarPoly;
pub use rational::{
    binomial, factorial, from_f64, int, parse_rational, rat, to_f64, format_rational,
    ParseRationalError, Rational,
};

use num_traits::{One, Zero};

use crate::roots::{continuant, TridiagMatrix, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("divisibility fails for N = {n}, l = {ell}")]
    NotDivisible { n: u32, ell: u32 },
    #[error("k = {k} exceeds N = {n}")]
    IndexOutOfRange { n: u32, k: u32 },
}

/// The per-step constants of the constraint recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceConstants {
    pub n: u32,
    pub eps: Rational,
    pub k: u32,
}

impl RecurrenceConstants {
    pub fn new(n: u32, eps: Rational, k: u32) -> Self {
        Self { n, eps, k }
    }

    /// `c_k = k(k + 2 eps)`.
    pub fn c(&self) -> Rational {
        c_eps(&self.eps, self.k as i64)
    }

    /// `lambda_k = k(k-1)(N-k+1)`.
    pub fn lambda(&self) -> Rational {
        let (n, k) = (self.n as i64, self.k as i64);
        int(k * (k - 1) * (n - k + 1))
    }
}

pub(crate) fn c_eps(eps: &Rational, k: i64) -> Rational {
    int(k) * (int(k) + eps * int(2))
}

/// `P_0, ..., P_kmax` for fixed `(N, eps)`.
pub fn constraint_sequence(n: u32, eps: &Rational, k_max: u32) -> Vec<BivarPoly> {
    let x = BivarPoly::x();
    let y = BivarPoly::y();
    let mut out = vec![BivarPoly::one()];
    if k_max == 0 {
        return out;
    }
    for k in 1..=k_max {
        let rc = RecurrenceConstants::new(n, eps.clone(), k);
        let lin = &(&x.scale(&int(k as i64)) + &y) - &BivarPoly::constant(rc.c());
        let mut next = &lin * &out[k as usize - 1];
        if k >= 2 {
            let tail = &x.scale(&rc.lambda()) * &out[k as usize - 2];
            next = &next - &tail;
        }
        out.push(next);
    }
    out
}

/// `P_k^(N,eps)(x, y)`.
pub fn constraint_poly(n: u32, eps: &Rational, k: u32) -> BivarPoly {
    constraint_sequence(n, eps, k).pop().unwrap()
}

/// `P_N^(N,eps)` as the determinant of `I y + D x + C`, expanded as a continuant.
pub fn constraint_poly_det(n: u32, eps: &Rational) -> BivarPoly {
    if n == 0 {
        return BivarPoly::one();
    }
    let m = constraint_matrix(n, eps);
    continuant(&m)
}

/// The tridiagonal matrix `I y + D x + C` with polynomial entries.
pub fn constraint_matrix(n: u32, eps: &Rational) -> TridiagMatrix<BivarPoly> {
    let ni = n as i64;
    let diag = (1..=ni)
        .map(|i| {
            let shift = int(i) * (int(2 * (ni - i) + 1) + eps * int(2));
            &(&BivarPoly::x().scale(&int(i)) + &BivarPoly::y()) - &BivarPoly::constant(shift)
        })
        .collect();
    let upper = (1..ni).map(|_| BivarPoly::one()).collect();
    let lower = (1..ni)
        .map(|i| BivarPoly::constant(int(i * (i + 1)) * c_eps(eps, ni - i)))
        .collect();
    TridiagMatrix::new(diag, upper, lower).expect("consistent lengths")
}

/// Products `b_i c_i = i(i+1) c_{N-i}` of the symmetric continuant form.
pub fn symmetric_products(n: u32, eps: &Rational) -> Vec<Rational> {
    let ni = n as i64;
    (1..ni).map(|i| int(i * (i + 1)) * c_eps(eps, ni - i)).collect()
}

/// `A_N^l(x, y)`, the quotient of the divisibility theorem.
pub fn a_poly(n: u32, ell: u32) -> BivarPoly {
    if ell == 0 {
        return BivarPoly::one();
    }
    continuant(&a_poly_matrix_sym(n, ell))
}

/// `I y + M_l^(N)(x)` with polynomial entries.
fn a_poly_matrix_sym(n: u32, ell: u32) -> TridiagMatrix<BivarPoly> {
    let (ni, l) = (n as i64, ell as i64);
    let half = rat(l, 2);
    let diag = (1..=l)
        .map(|i| {
            let s = int(ni + i);
            let lin = &BivarPoly::x() + &BivarPoly::constant(int(2 * i - 1 - l));
            &lin.scale(&s) + &BivarPoly::y()
        })
        .collect();
    let upper = (1..l).map(|i| BivarPoly::constant(int(ni + i))).collect();
    let lower = (1..l)
        .map(|i| BivarPoly::constant(int(ni + i + 1) * c_eps(&half, -i)))
        .collect();
    TridiagMatrix::new(diag, upper, lower).expect("consistent lengths")
}

/// The matrix `M_l^(N)(x)` with `A_N^l(x, y) = det(I y + M)`.
pub fn a_poly_matrix(n: u32, ell: u32, x: &Rational) -> TridiagMatrix<Rational> {
    let (ni, l) = (n as i64, ell as i64);
    let half = rat(l, 2);
    let diag = (1..=l)
        .map(|i| int(ni + i) * (x - int(l) + int(2 * i - 1)))
        .collect();
    let upper = (1..l).map(|i| int(ni + i)).collect();
    let lower = (1..l).map(|i| int(ni + i + 1) * c_eps(&half, -i)).collect();
    TridiagMatrix::new(diag, upper, lower).expect("consistent lengths")
}

/// The matrix `M_k(x)` with `P_k^(k,-l/2)(x, y) = det(I y + M_k(x))`.
pub fn negative_half_matrix(k: u32, ell: u32, x: &Rational) -> TridiagMatrix<Rational> {
    let (ki, l) = (k as i64, ell as i64);
    let eps = rat(-l, 2);
    let diag = (1..=ki).map(|i| x + int(l - 1 - 2 * (ki - i))).collect();
    let upper = (1..ki).map(int).collect();
    let lower = (1..ki).map(|i| int(i + 1) * c_eps(&eps, ki - i)).collect();
    TridiagMatrix::new(diag, upper, lower).expect("consistent lengths")
}

/// Exact division `P_{N+l}^(N+l,-l/2) / P_N^(N,l/2)`.
///
/// Returns the quotient together with the exactness flag; a nonzero remainder is an error.
pub fn verify_divisibility(n: u32, ell: u32) -> Result<(BivarPoly, bool), PolyError> {
    let big = constraint_poly(n + ell, &rat(-(ell as i64), 2), n + ell);
    let small = constraint_poly(n, &rat(ell as i64, 2), n);
    let (q, r) = big
        .div_rem_x(&small)
        .ok_or(PolyError::NotDivisible { n, ell })?;
    if !r.is_zero() {
        return Err(PolyError::NotDivisible { n, ell });
    }
    Ok((q, true))
}

/// `Q_k^(N,eps)`, the reversed-order companion of `P_k`.
pub fn q_poly(n: u32, eps: &Rational, k: u32) -> Result<BivarPoly, PolyError> {
    if k > n {
        return Err(PolyError::IndexOutOfRange { n, k });
    }
    let ni = n as i64;
    let x = BivarPoly::x();
    let y = BivarPoly::y();
    let (mut prev, mut cur) = (BivarPoly::zero(), BivarPoly::one());
    for k in 1..=k as i64 {
        let shift = int(k) * (int(2 * (ni + 1 - k) - 1) + eps * int(2));
        let lin = &(&x.scale(&int(k)) + &y) - &BivarPoly::constant(shift);
        let prod = int(k * (k - 1) * (ni + 1 - k)) * (int(ni + 1 - k) + eps * int(2));
        let next = &(&lin * &cur) - &prev.scale(&prod);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Generalized Laguerre polynomial `L_k^(alpha)(x)` from its three-term recurrence.
pub fn laguerre(k: u32, alpha: &Rational) -> UniPoly {
    let x = UniPoly::new(vec![Rational::zero(), Rational::one()]);
    let mut prev = UniPoly::constant(Rational::one());
    if k == 0 {
        return prev;
    }
    let mut cur = UniPoly::constant(Rational::one() + alpha).minus(&x);
    for m in 1..k as i64 {
        let a = UniPoly::constant(int(2 * m + 1) + alpha).minus(&x);
        let next = a
            .times(&cur)
            .minus(&prev.scale(&(int(m) + alpha)))
            .scale(&rat(1, m + 1));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Checks `P_k^(k,eps)(x, 0) / k! = (-1)^k k! L_k^(2 eps)(x)` in `Q[x]`.
pub fn laguerre_check(k: u32, eps: &Rational) -> bool {
    let fk = Rational::from_integer(factorial(k));
    let lhs = constraint_poly(k, eps, k)
        .at_y(&Rational::zero())
        .scale(&fk.recip());
    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
    let rhs = laguerre(k, &(eps * int(2))).scale(&(sign * fk));
    lhs == rhs
}

/// `P~_k = P_k / (k! (k+1)!)` for `k = 0..=k_max`.
pub fn normalized_sequence(n: u32, eps: &Rational, k_max: u32) -> Vec<BivarPoly> {
    constraint_sequence(n, eps, k_max)
        .into_iter()
        .enumerate()
        .map(|(k, p)| {
            let k = k as u32;
            let norm = Rational::from_integer(factorial(k) * factorial(k + 1));
            p.scale(&norm.recip())
        })
        .collect()
}

/// Checks `P~_k^(N+l,-l/2) = sum_i C(l, k-i) P~_i^(N,l/2)` for every `k <= k_max`.
pub fn generating_identity_check(n: u32, ell: u32, k_max: u32) -> bool {
    let lhs = normalized_sequence(n + ell, &rat(-(ell as i64), 2), k_max);
    let rhs_terms = normalized_sequence(n, &rat(ell as i64, 2), k_max);
    (0..=k_max).all(|k| {
        let rhs = (0..=k).fold(BivarPoly::zero(), |acc, i| {
            let b = Rational::from_integer(binomial(ell, k - i));
            &acc + &rhs_terms[i as usize].scale(&b)
        });
        lhs[k as usize] == rhs
    })
}

/// Checks that `z(t) = sum_k P~_k t^k` solves
/// `t(1+t) z'' + (2 - (x-3-2 eps) t - x t^2) z' - (x+y-1-2 eps - (N-1) x t) z = 0`
/// through order `t^(k_max - 1)`, so the coefficient recurrence holds for `2 <= k <= k_max`.
pub fn ode_coefficient_check(n: u32, eps: &Rational, k_max: u32) -> bool {
    let k_max = k_max.max(2);
    let c = normalized_sequence(n, eps, k_max);
    let x = BivarPoly::x();
    let y = BivarPoly::y();
    let two_eps = eps * int(2);
    let b1 = &x - &BivarPoly::constant(int(3) + &two_eps);
    let b0 = &(&x + &y) - &BivarPoly::constant(int(1) + &two_eps);
    let get = |k: i64| -> BivarPoly {
        if k < 0 {
            BivarPoly::zero()
        } else {
            c[k as usize].clone()
        }
    };
    (0..k_max as i64).all(|k| {
        // coefficient of t^k after applying the operator
        let second = get(k + 1).scale(&int((k + 1) * k)) + get(k).scale(&int(k * (k - 1)));
        let first = get(k + 1).scale(&int(2 * (k + 1)))
            - &b1 * &get(k).scale(&int(k))
            - &x * &get(k - 1).scale(&int(k - 1));
        let zeroth = -(&b0 * &get(k)) + &x * &get(k - 1).scale(&int(n as i64 - 1));
        (second + first + zeroth).is_zero()
    })
}

/// `a_i^(N)(y)` with `P_N^(N,eps) = sum_i a_i(y) x^i`.
pub fn coefficient_slices(n: u32, eps: &Rational) -> Vec<UniPoly> {
    constraint_poly(n, eps, n).x_slices()
}

/// `prod_{i=1..N} (y - i(i + 2 eps))`, the value of `P_N^(N,eps)` on `x = 0`.
pub fn x_zero_product(n: u32, eps: &Rational) -> UniPoly {
    (1..=n as i64).fold(UniPoly::constant(Rational::one()), |acc, i| {
        acc.times(&UniPoly::new(vec![-c_eps(eps, i), Rational::one()]))
    })
}

/// Float evaluation of `P_N^(N,eps)(x, y)` straight from the recurrence; works for real `eps`.
pub fn constraint_value(n: u32, eps: f64, x: f64, y: f64) -> f64 {
    let nf = n as f64;
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 1..=n {
        let kf = k as f64;
        let next = (kf * x + y - kf * (kf + 2.0 * eps)) * cur - kf * (kf - 1.0) * (nf - kf + 1.0) * x * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `1 / (N! (N+1)!)`.
pub fn c_norm(n: u32) -> f64 {
    let n = n as i32;
    let mut acc = 1.0;
    for k in 1..=n {
        acc /= k as f64;
    }
    for k in 1..=n + 1 {
        acc /= k as f64;
    }
    acc
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_constraint_polys() {
        let e = rat(1, 3);
        assert_eq!(constraint_poly(4, &e, 0), BivarPoly::one());
        let p1 = constraint_poly(4, &e, 1);
        assert_eq!(p1.to_string(), "x + y - 5/3");
        let p = constraint_poly(6, &int(0), 2);
        assert_eq!(p.to_string(), "2*x^2 + 3*x*y + y^2 - 16*x - 5*y + 4");
    }

    #[test]
    fn explicit_p2_general() {
        let (n, e) = (5i64, rat(3, 7));
        let p = constraint_poly(n as u32, &e, 2);
        let two_e = &e * int(2);
        let expected = BivarPoly::from_terms([
            ((2, 0), int(2)),
            ((1, 1), int(3)),
            ((0, 2), int(1)),
            ((1, 0), -int(2) * (int(n) + int(2) * (int(1) + &two_e))),
            ((0, 1), -(int(5) + int(6) * &e)),
            ((0, 0), int(4) * (int(1) + int(3) * &e + int(2) * &e * &e)),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn determinant_matches_recurrence() {
        for n in 1..=6 {
            for e in [int(0), rat(1, 2), rat(-1, 4)] {
                assert_eq!(constraint_poly_det(n, &e), constraint_poly(n, &e, n), "N={n}");
            }
        }
    }

    #[test]
    fn a_poly_small_cases() {
        let x = BivarPoly::x();
        let y = BivarPoly::y();
        for n in 0..5i64 {
            assert_eq!(a_poly(n as u32, 1), &x.scale(&int(n + 1)) + &y);
            let a2 = &(&(&x * &x).scale(&int((n + 1) * (n + 2))) + &(&x * &y).scale(&int(2 * n + 3)))
                + &(&y * &(&y + &BivarPoly::one()));
            assert_eq!(a_poly(n as u32, 2), a2);
            let s: i64 = [(1, 2), (1, 3), (2, 3)].iter().map(|(i, j)| (n + i) * (n + j)).sum();
            let two_y = &y + &BivarPoly::constant(int(2));
            let a3 = &(&(&(&x * &(&x * &x)).scale(&int((n + 1) * (n + 2) * (n + 3)))
                + &(&(&x * &x) * &y).scale(&int(s)))
                + &(&(&x * &y) * &(&y.scale(&int(3)) + &BivarPoly::constant(int(4)))).scale(&int(n + 2)))
                + &(&y * &(&two_y * &two_y));
            assert_eq!(a_poly(n as u32, 3), a3);
        }
    }

    #[test]
    fn a_poly_at_zero_n_is_negative_half_constraint() {
        for ell in 1..=5 {
            assert_eq!(a_poly(0, ell), constraint_poly(ell, &rat(-(ell as i64), 2), ell));
        }
    }

    #[test]
    fn divisibility_examples() {
        let (q, exact) = verify_divisibility(5, 3).unwrap();
        assert!(exact);
        assert_eq!(q, a_poly(5, 3));
        let (q, _) = verify_divisibility(0, 2).unwrap();
        assert_eq!(q, constraint_poly(2, &int(-1), 2));
        let (q, _) = verify_divisibility(1, 0).unwrap();
        assert_eq!(q, BivarPoly::one());
    }

    #[test]
    fn q_poly_closes_on_p() {
        let e = rat(1, 2);
        assert_eq!(q_poly(4, &e, 0).unwrap(), BivarPoly::one());
        assert_eq!(q_poly(4, &e, 1).unwrap().to_string(), "x + y - 8");
        assert_eq!(q_poly(4, &e, 4).unwrap(), constraint_poly(4, &e, 4));
        assert!(q_poly(2, &e, 3).is_err());
    }

    #[test]
    fn laguerre_examples() {
        assert!(laguerre_check(0, &rat(1, 3)));
        assert!(laguerre_check(1, &rat(1, 3)));
        assert!(laguerre_check(7, &rat(3, 4)));
        let l2 = laguerre(2, &int(0));
        assert_eq!(l2.coeffs(), &[int(1), int(-2), rat(1, 2)]);
    }

    #[test]
    fn generating_identity_examples() {
        let lhs = normalized_sequence(5, &rat(-3, 2), 1);
        assert_eq!(lhs[0], BivarPoly::one());
        assert_eq!(lhs[1].to_string(), "1/2*x + 1/2*y + 1");
        assert!(generating_identity_check(3, 2, 10));
    }

    #[test]
    fn ode_examples() {
        assert!(ode_coefficient_check(4, &rat(-1, 2), 12));
        assert!(ode_coefficient_check(0, &int(0), 8));
        assert!(ode_coefficient_check(3, &rat(2, 5), 2));
    }

    #[test]
    fn slices_have_expected_shape() {
        let s = coefficient_slices(1, &rat(1, 4));
        assert_eq!(s[0].coeffs(), &[rat(-3, 2), int(1)]);
        assert_eq!(s[1].coeffs(), &[int(1)]);
        let s = coefficient_slices(5, &rat(1, 3));
        assert_eq!(s[5].coeffs(), &[int(120)]);
        assert_eq!(s[0], x_zero_product(5, &rat(1, 3)));
        for (i, a) in s.iter().enumerate() {
            assert_eq!(a.degree(), Some(5 - i));
        }
    }

    #[test]
    fn float_evaluator_agrees() {
        let e = rat(1, 4);
        let p = constraint_poly(5, &e, 5);
        let v = constraint_value(5, 0.25, 1.7, 0.9);
        assert!((v - p.eval_f64(1.7, 0.9)).abs() < 1e-10 * v.abs().max(1.0));
    }
}
