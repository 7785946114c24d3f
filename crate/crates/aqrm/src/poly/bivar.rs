use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::rational::{format_rational, to_f64, Rational};
use crate::roots::UniPoly;

/// Sparse polynomial in `x` and `y` over the rationals.
///
/// Keys are `(deg_x, deg_y)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivarPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending `(deg_x, deg_y)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        // Horner in x over coefficients that are themselves evaluated in y
        self.x_slices()
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * x + a.eval(y))
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.x_slices()
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * x + a.eval_f64(y))
    }

    /// Coefficients `a_i(y)` with `p = sum_i a_i(y) x^i`.
    pub fn x_slices(&self) -> Vec<UniPoly> {
        let Some(dx) = self.degree_x() else {
            return Vec::new();
        };
        let mut dense: Vec<Vec<Rational>> = vec![Vec::new(); dx as usize + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut dense[i as usize];
            if row.len() <= j as usize {
                row.resize(j as usize + 1, Rational::zero());
            }
            row[j as usize] = c.clone();
        }
        dense.into_iter().map(UniPoly::new).collect()
    }

    /// `p(x, y0)` as a polynomial in `x`.
    pub fn at_y(&self, y0: &Rational) -> UniPoly {
        UniPoly::new(self.x_slices().iter().map(|a| a.eval(y0)).collect())
    }

    /// `p(x0, y)` as a polynomial in `y`.
    pub fn at_x(&self, x0: &Rational) -> UniPoly {
        let slices = self.x_slices();
        let mut acc = UniPoly::zero();
        for a in slices.iter().rev() {
            acc = acc.scale(x0).plus(a);
        }
        acc
    }

    /// Division in `(Q[y])[x]`: returns `(q, r)` with `self = q * d + r` and `deg_x r < deg_x d`.
    ///
    /// The leading `x`-coefficient of `d` must be a nonzero constant.
    pub fn div_rem_x(&self, d: &BivarPoly) -> Option<(BivarPoly, BivarPoly)> {
        let dx = d.degree_x()?;
        let lead = d.x_slices().pop()?;
        if lead.degree() != Some(0) {
            return None;
        }
        let lead = lead.coeff(0);
        let mut rem = self.clone();
        let mut quot = BivarPoly::zero();
        while let Some(rx) = rem.degree_x() {
            if rx < dx {
                break;
            }
            let shift = rx - dx;
            let top = BivarPoly::from_terms(
                rem.terms
                    .iter()
                    .filter(|(&(i, _), _)| i == rx)
                    .map(|(&(_, j), c)| ((shift, j), c / &lead)),
            );
            rem = &rem - &(&top * d);
            quot = &quot + &top;
        }
        Some((quot, rem))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| json!([i, j, format!("{}/{}", c.numer(), c.denom())]))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let mut p = Self::zero();
        for t in v.get("terms")?.as_array()? {
            let t = t.as_array()?;
            let i = t.first()?.as_u64()? as u32;
            let j = t.get(1)?.as_u64()? as u32;
            let c = super::rational::parse_rational(t.get(2)?.as_str()?).ok()?;
            p.add_term(i, j, c);
        }
        Some(p)
    }

    /// Largest absolute value of the terms at `(x, y)`; a scale for relative zero tests.
    pub fn magnitude_at(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| (to_f64(c) * x.powi(i as i32) * y.powi(j as i32)).abs())
            .fold(0.0, f64::max)
    }
}

impl Zero for BivarPoly {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BivarPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl From<Rational> for BivarPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl<'a> Mul<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl fmt::Display for BivarPoly {
    /// Graded order, highest total degree first, `x` before `y`: `2*x^2 + 3*x*y + y^2 - 16*x - 5*y + 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (n, k) in keys.iter().enumerate() {
            let c = &self.terms[k];
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let var = match *k {
                (0, 0) => String::new(),
                (i, 0) => pow_str("x", i),
                (0, j) => pow_str("y", j),
                (i, j) => format!("{}*{}", pow_str("x", i), pow_str("y", j)),
            };
            if var.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}*{var}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

fn pow_str(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}
