//! Real roots: exact Sturm isolation over the rationals, continuants, and
//! bisection eigenvalues of symmetric tridiagonal matrices.

mod unipoly;

pub use unipoly::UniPoly;

use std::cmp::Ordering;
use std::ops::{Mul, Sub};

use num_traits::{One, Signed, Zero};

use crate::poly::{int, rat, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootsError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("tridiagonal shape mismatch: {diag} diagonal entries, {upper} upper, {lower} lower")]
    Shape { diag: usize, upper: usize, lower: usize },
    #[error("off-diagonal product b_{index} c_{index} = {product} is negative; matrix is not symmetrizable")]
    NotSymmetrizable { index: usize, product: f64 },
    #[error("interval ({lo}, {hi}] does not isolate a single root")]
    NotIsolating { lo: String, hi: String },
}

/// Tridiagonal matrix over any ring: `diag` has `n` entries, `upper` and `lower` have `n - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagMatrix<T> {
    diag: Vec<T>,
    upper: Vec<T>,
    lower: Vec<T>,
}

impl<T> TridiagMatrix<T> {
    pub fn new(diag: Vec<T>, upper: Vec<T>, lower: Vec<T>) -> Result<Self, RootsError> {
        let n = diag.len();
        if upper.len() + 1 != n.max(1) || lower.len() != upper.len() {
            return Err(RootsError::Shape { diag: n, upper: upper.len(), lower: lower.len() });
        }
        Ok(Self { diag, upper, lower })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> TridiagMatrix<U> {
        TridiagMatrix {
            diag: self.diag.iter().map(&f).collect(),
            upper: self.upper.iter().map(&f).collect(),
            lower: self.lower.iter().map(&f).collect(),
        }
    }
}

/// `det` of a tridiagonal matrix: `J_n = a_n J_{n-1} - b_{n-1} c_{n-1} J_{n-2}`.
pub fn continuant<T>(m: &TridiagMatrix<T>) -> T
where
    T: Clone + Zero + One + Sub<Output = T> + Mul<Output = T>,
{
    let prods: Vec<T> = m
        .upper
        .iter()
        .zip(&m.lower)
        .map(|(b, c)| b.clone() * c.clone())
        .collect();
    continuant_products(&m.diag, &prods)
}

/// Continuant from the diagonal and the off-diagonal products `b_i c_i` alone.
pub fn continuant_products<T>(diag: &[T], prods: &[T]) -> T
where
    T: Clone + Zero + One + Sub<Output = T> + Mul<Output = T>,
{
    let (mut prev, mut cur) = (T::zero(), T::one());
    for (k, a) in diag.iter().enumerate() {
        let tail = if k == 0 { T::zero() } else { prods[k - 1].clone() * prev };
        let next = a.clone() * cur.clone() - tail;
        prev = cur;
        cur = next;
    }
    cur
}

/// `det(lambda I - m)` over the rationals.
pub fn characteristic_poly(m: &TridiagMatrix<Rational>) -> UniPoly {
    let lam = UniPoly::new(vec![Rational::zero(), Rational::one()]);
    let shifted = TridiagMatrix {
        diag: m.diag.iter().map(|d| lam.minus(&UniPoly::constant(d.clone()))).collect(),
        upper: m.upper.iter().map(|b| UniPoly::constant(-b)).collect(),
        lower: m.lower.iter().map(|c| UniPoly::constant(-c)).collect(),
    };
    continuant(&shifted)
}

/// Half-open interval `(lo, hi]` holding exactly one distinct real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity_hint: u32,
}

impl RootInterval {
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Sturm chain of a square-free polynomial, normalized to primitive integer rows.
#[derive(Debug, Clone)]
pub struct SturmChain {
    rows: Vec<UniPoly>,
}

fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        let p0 = p.square_free_part();
        let mut rows = vec![p0.clone()];
        let mut prev = p0.clone();
        let mut cur = p0.derivative().primitive();
        while !cur.is_zero() {
            rows.push(cur.clone());
            let (_, r) = prev.div_rem(&cur);
            let next = r.scale(&int(-1)).primitive();
            prev = cur;
            cur = next;
        }
        Self { rows }
    }

    pub fn square_free(&self) -> &UniPoly {
        &self.rows[0]
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        count_changes(self.rows.iter().map(|r| sign(&r.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        count_changes(self.rows.iter().map(|r| {
            let s = sign(r.leading().expect("nonzero row"));
            let odd = r.degree().unwrap_or(0) % 2 == 1;
            if positive || !odd {
                s
            } else {
                -s
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`; `None` stands for the matching infinity.
    pub fn count(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> usize {
        let vl = lo.map_or_else(|| self.variations_at_infinity(false), |a| self.variations_at(a));
        let vh = hi.map_or_else(|| self.variations_at_infinity(true), |b| self.variations_at(b));
        vl.saturating_sub(vh)
    }
}

/// Strict bound on the moduli of all roots.
pub fn cauchy_bound(p: &UniPoly) -> Rational {
    let lead = p.leading().expect("nonzero").abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + int(1)
}

/// Disjoint isolating intervals for every distinct real root, in increasing order.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<RootInterval>, RootsError> {
    if p.is_zero() {
        return Err(RootsError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(p);
    let bound = cauchy_bound(chain.square_free());
    let mut out = Vec::new();
    bisect_isolate(&chain, -bound.clone(), bound, &mut out);
    let factors = p.square_free_decomposition();
    for iv in &mut out {
        for (k, f) in factors.iter().enumerate() {
            if f.degree().unwrap_or(0) > 0 && SturmChain::new(f).count(Some(&iv.lo), Some(&iv.hi)) == 1 {
                iv.multiplicity_hint = k as u32 + 1;
                break;
            }
        }
    }
    Ok(out)
}

fn bisect_isolate(chain: &SturmChain, lo: Rational, hi: Rational, out: &mut Vec<RootInterval>) {
    let n = chain.count(Some(&lo), Some(&hi));
    match n {
        0 => {}
        1 => out.push(RootInterval { lo, hi, multiplicity_hint: 1 }),
        _ => {
            let mid = (&lo + &hi) / int(2);
            bisect_isolate(chain, lo, mid.clone(), out);
            bisect_isolate(chain, mid, hi, out);
        }
    }
}

/// Shrinks an isolating interval to width `<= tol` and returns its midpoint,
/// or the root itself when a bisection point lands on it.
pub fn refine_root(p: &UniPoly, iv: &RootInterval, tol: &Rational) -> Result<Rational, RootsError> {
    let chain = SturmChain::new(p);
    refine_with_chain(&chain, iv, tol)
}

fn refine_with_chain(chain: &SturmChain, iv: &RootInterval, tol: &Rational) -> Result<Rational, RootsError> {
    let sf = chain.square_free();
    if chain.count(Some(&iv.lo), Some(&iv.hi)) != 1 {
        return Err(RootsError::NotIsolating { lo: iv.lo.to_string(), hi: iv.hi.to_string() });
    }
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    loop {
        if sf.eval(&hi).is_zero() {
            return Ok(hi);
        }
        if !sf.eval(&lo).is_zero() {
            break;
        }
        // lo is the neighbouring root; step by counts until it is left behind
        if &hi - &lo <= *tol {
            return Ok((lo + hi) / int(2));
        }
        let mid = (&lo + &hi) / int(2);
        if chain.count(Some(&lo), Some(&mid)) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let s_hi = sign(&sf.eval(&hi));
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / int(2);
        let s = sign(&sf.eval(&mid));
        if s == 0 {
            return Ok(mid);
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo + hi) / int(2))
}

/// All distinct real roots refined to `tol`, with multiplicities.
pub fn real_roots(p: &UniPoly, tol: &Rational) -> Result<Vec<(Rational, u32)>, RootsError> {
    let ivs = isolate_real_roots(p)?;
    let chain = SturmChain::new(p);
    ivs.iter()
        .map(|iv| Ok((refine_with_chain(&chain, iv, tol)?, iv.multiplicity_hint)))
        .collect()
}

/// Real roots as floats, each refined to about `1e-15` relative accuracy.
pub fn real_roots_f64(p: &UniPoly) -> Result<Vec<(f64, u32)>, RootsError> {
    let ivs = isolate_real_roots(p)?;
    let chain = SturmChain::new(p);
    ivs.iter()
        .map(|iv| {
            let scale = iv.lo.abs().max(iv.hi.abs()).max(int(1));
            let tol = scale * rat(1, 1 << 52);
            Ok((to_f64(&refine_with_chain(&chain, iv, &tol)?), iv.multiplicity_hint))
        })
        .collect()
}

/// Number of distinct roots in the open interval `(lo, hi)`; `None` is the matching infinity.
pub fn count_roots_open(p: &UniPoly, lo: Option<&Rational>, hi: Option<&Rational>) -> Result<usize, RootsError> {
    if p.is_zero() {
        return Err(RootsError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let chain = SturmChain::new(p);
    let mut n = chain.count(lo, hi);
    if let Some(h) = hi {
        if p.eval(h).is_zero() {
            n -= 1;
        }
    }
    Ok(n)
}

/// Lowest-to-highest eigenvalues of the symmetric tridiagonal matrix with
/// diagonal `diag` and off-diagonal `off`, by Sturm-count bisection to `tol`.
pub fn sym_tridiag_eigenvalues(diag: &[f64], off: &[f64], tol: f64) -> Vec<f64> {
    let n = diag.len();
    if n == 0 {
        return Vec::new();
    }
    let off2: Vec<f64> = off.iter().map(|e| e * e).collect();
    let (mut glo, mut ghi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let r = off.get(i).map_or(0.0, |e| e.abs()) + if i > 0 { off[i - 1].abs() } else { 0.0 };
        glo = glo.min(diag[i] - r);
        ghi = ghi.max(diag[i] + r);
    }
    let span = (ghi - glo).max(1.0);
    glo -= 1e-12 * span;
    ghi += 1e-12 * span;
    let tol = tol.max(4.0 * f64::EPSILON * glo.abs().max(ghi.abs()));
    (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (glo, ghi);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if count_below(diag, &off2, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Number of eigenvalues strictly below `x` from the signs of the `LDL^T` pivots.
pub fn count_below(diag: &[f64], off2: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let e2 = if i == 0 { 0.0 } else { off2[i - 1] };
        q = diag[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Symmetrizes a real tridiagonal matrix via `b' = c' = sqrt(b c)` and returns its eigenvalues.
pub fn tridiag_eigenvalues(m: &TridiagMatrix<f64>, tol: f64) -> Result<Vec<f64>, RootsError> {
    let off = m
        .upper
        .iter()
        .zip(&m.lower)
        .enumerate()
        .map(|(i, (b, c))| {
            let p = b * c;
            if p < 0.0 {
                Err(RootsError::NotSymmetrizable { index: i + 1, product: p })
            } else {
                Ok(p.sqrt())
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(sym_tridiag_eigenvalues(&m.diag, &off, tol))
}

/// Real eigenvalues of a rational tridiagonal matrix, exactly isolated from its
/// characteristic polynomial; works without symmetrizability.
pub fn tridiag_real_eigenvalues_exact(m: &TridiagMatrix<Rational>) -> Result<Vec<RootInterval>, RootsError> {
    isolate_real_roots(&characteristic_poly(m))
}

/// Compares two refined roots, treating overlapping tolerance windows as equal.
pub fn cmp_within(a: f64, b: f64, tol: f64) -> Ordering {
    if (a - b).abs() <= tol {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{constraint_poly, int, rat};

    #[test]
    fn continuant_small() {
        let m = TridiagMatrix::new(vec![int(3)], vec![], vec![]).unwrap();
        assert_eq!(continuant(&m), int(3));
        let m = TridiagMatrix::new(vec![int(2), int(5)], vec![int(3)], vec![int(7)]).unwrap();
        assert_eq!(continuant(&m), int(10 - 21));
        let f = m.map(to_f64);
        assert_eq!(continuant(&f), -11.0);
    }

    #[test]
    fn continuant_matches_constraint_value() {
        let eps = int(0);
        let m = crate::poly::constraint_matrix(3, &eps);
        let at = m.map(|p| p.eval(&int(1), &int(1)));
        assert_eq!(continuant(&at), constraint_poly(3, &eps, 3).eval(&int(1), &int(1)));
    }

    #[test]
    fn isolates_simple_quadratic() {
        let p = UniPoly::from_i64(&[-1, 0, 1]);
        let ivs = isolate_real_roots(&p).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(ivs[0].lo < int(-1) && int(-1) <= ivs[0].hi);
        assert!(ivs[1].lo < int(1) && int(1) <= ivs[1].hi);
        assert!(isolate_real_roots(&UniPoly::zero()).is_err());
    }

    #[test]
    fn refines_to_tolerance() {
        let p = UniPoly::new(vec![rat(-1, 2), int(1)]);
        let iv = RootInterval { lo: int(0), hi: int(1), multiplicity_hint: 1 };
        let tol = rat(1, 1 << 20);
        let r = refine_root(&p, &iv, &tol).unwrap();
        assert!((r - rat(1, 2)).abs() <= tol);
    }

    #[test]
    fn multiplicities_recovered() {
        let p = UniPoly::from_i64(&[-1, 1]).times(&UniPoly::from_i64(&[2, 1]).times(&UniPoly::from_i64(&[2, 1])));
        let ivs = isolate_real_roots(&p).unwrap();
        assert_eq!(ivs.iter().map(|i| i.multiplicity_hint).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn open_count_excludes_endpoints() {
        let p = UniPoly::from_i64(&[0, -1, 1]); // x(x-1)
        assert_eq!(count_roots_open(&p, Some(&int(0)), None).unwrap(), 1);
        assert_eq!(count_roots_open(&p, Some(&int(0)), Some(&int(1))).unwrap(), 0);
        assert_eq!(count_roots_open(&p, None, None).unwrap(), 2);
    }

    #[test]
    fn symmetric_bisection_small() {
        let ev = sym_tridiag_eigenvalues(&[0.0, 0.0], &[1.0], 1e-13);
        assert!((ev[0] + 1.0).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn negative_product_is_rejected() {
        let m = TridiagMatrix::new(vec![0.0, 0.0], vec![1.0], vec![-1.0]).unwrap();
        assert!(matches!(tridiag_eigenvalues(&m, 1e-12), Err(RootsError::NotSymmetrizable { index: 1, .. })));
    }

    #[test]
    fn shape_checked() {
        assert!(TridiagMatrix::new(vec![1.0, 2.0], vec![], vec![]).is_err());
    }
}
