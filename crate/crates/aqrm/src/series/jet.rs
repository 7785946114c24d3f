//! Scalars the K-recurrence can run over: plain floats, or truncated Laurent
//! series in `t = x - x0` that carry a simple pole through the recurrence.

use std::ops::{Add, Mul, Sub};

pub(crate) trait Jet: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    /// True when a vanishing denominator should become `1/t` instead of an error.
    const EXPANDS: bool;
    fn cst(c: f64) -> Self;
    fn scale(self, c: f64) -> Self;
    /// `1 / (d + t)`.
    fn inv_shift(d: f64) -> Self;
    /// The expansion variable `t` itself (zero for plain floats).
    fn var() -> Self;
    fn norm(&self) -> f64;
}

impl Jet for f64 {
    const EXPANDS: bool = false;
    fn cst(c: f64) -> Self {
        c
    }
    fn scale(self, c: f64) -> Self {
        self * c
    }
    fn inv_shift(d: f64) -> Self {
        1.0 / d
    }
    fn var() -> Self {
        0.0
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
}

const LO: i32 = -2;
const HI: i32 = 2;
const LEN: usize = (HI - LO + 1) as usize;

/// Laurent polynomial with orders `-2..=2`; products drop orders outside that window.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Laurent {
    c: [f64; LEN],
}

impl Laurent {
    pub fn coeff(&self, order: i32) -> f64 {
        if (LO..=HI).contains(&order) {
            self.c[(order - LO) as usize]
        } else {
            0.0
        }
    }

    fn with(order: i32, v: f64) -> Self {
        let mut out = Self::default();
        out.c[(order - LO) as usize] = v;
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        self
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(mut self, rhs: Laurent) -> Laurent {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
        self
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        let mut out = Laurent::default();
        for i in 0..LEN {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..LEN {
                let k = i as i32 + j as i32 + 2 * LO;
                if (LO..=HI).contains(&k) {
                    out.c[(k - LO) as usize] += self.c[i] * rhs.c[j];
                }
            }
        }
        out
    }
}

impl Jet for Laurent {
    const EXPANDS: bool = true;
    fn cst(c: f64) -> Self {
        Self::with(0, c)
    }
    fn scale(mut self, c: f64) -> Self {
        for a in &mut self.c {
            *a *= c;
        }
        self
    }
    fn inv_shift(d: f64) -> Self {
        if d == 0.0 {
            return Self::with(-1, 1.0);
        }
        let mut out = Self::default();
        let mut p = 1.0 / d;
        for k in 0..=HI {
            out.c[(k - LO) as usize] = p;
            p *= -1.0 / d;
        }
        out
    }
    fn var() -> Self {
        Self::with(1, 1.0)
    }
    fn norm(&self) -> f64 {
        self.c.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}
