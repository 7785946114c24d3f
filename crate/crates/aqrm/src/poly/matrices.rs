//! Dense rational matrices behind the determinant forms of `P_N`.

use num_traits::{One, Zero};

use super::{c_eps, int, Rational};
use crate::poly::rational::{binomial, factorial};

/// Row-major dense square matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    dim: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Rational::zero(); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.dim + j] = v;
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        let n = self.dim;
        let mut out = RatMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    fn tridiag(n: usize, diag: impl Fn(i64) -> Rational, upper: impl Fn(i64) -> Rational, lower: impl Fn(i64) -> Rational) -> Self {
        let mut m = Self::zeros(n);
        for i in 1..=n {
            m.set(i - 1, i - 1, diag(i as i64));
            if i < n {
                m.set(i - 1, i, upper(i as i64));
                m.set(i, i - 1, lower(i as i64));
            }
        }
        m
    }
}

/// `A_N`: the `x`-part of the recurrence matrix; diagonal `i`, subdiagonal `(i+1) i (N-i)`.
pub fn recurrence_x_part(n: u32) -> RatMatrix {
    let ni = n as i64;
    RatMatrix::tridiag(n as usize, int, |_| Rational::zero(), |i| int((i + 1) * i * (ni - i)))
}

/// `U_N`: the constant part of the recurrence matrix; diagonal `-c_i`, superdiagonal 1.
pub fn recurrence_constant_part(n: u32, eps: &Rational) -> RatMatrix {
    RatMatrix::tridiag(n as usize, |i| -c_eps(eps, i), |_| Rational::one(), |_| Rational::zero())
}

/// `D_N = diag(1, ..., N)`.
pub fn diagonal_part(n: u32) -> RatMatrix {
    RatMatrix::tridiag(n as usize, int, |_| Rational::zero(), |_| Rational::zero())
}

/// `C_N`: diagonal `-i(2(N-i)+1+2 eps)`, superdiagonal 1, subdiagonal `i(i+1) c_{N-i}`.
pub fn constant_part(n: u32, eps: &Rational) -> RatMatrix {
    let ni = n as i64;
    RatMatrix::tridiag(
        n as usize,
        |i| -(int(i) * (int(2 * (ni - i) + 1) + eps * int(2))),
        |_| Rational::one(),
        |i| int(i * (i + 1)) * c_eps(eps, ni - i),
    )
}

/// The lower-triangular eigenvector matrix `E` with `A_N E = E D_N` and `U_N E = E C_N`.
pub fn eigen_matrix(n: u32) -> RatMatrix {
    let mut m = RatMatrix::zeros(n as usize);
    for i in 1..=n {
        for j in 1..=i {
            let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
            let num = binomial(i, j) * factorial(i - 1) * factorial(n - j);
            let den = factorial(j - 1) * factorial(n - i);
            m.set((i - 1) as usize, (j - 1) as usize, int(sign) * Rational::new(num, den));
        }
    }
    m
}
