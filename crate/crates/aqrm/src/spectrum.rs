//! Eigenvalues of the model: Juddian points from exact constraint polynomials,
//! non-Juddian exceptional points from T-function zeros, regular eigenvalues from
//! zeros of the regularized G-function, and g-sweeps of the lowest levels.

use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;

use crate::poly::{constraint_poly, int, Rational};
use crate::roots::{count_roots_open, real_roots_f64, RootsError};
use crate::series::{g_laurent, regularized_g, t_function, Branch, ModelParams, SeriesConfig, SeriesError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenKind {
    Regular,
    Juddian,
    NonJuddianExceptional,
}

impl EigenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EigenKind::Regular => "regular",
            EigenKind::Juddian => "juddian",
            EigenKind::NonJuddianExceptional => "non_juddian",
        }
    }
}

/// One eigenvalue `lambda = x - g^2`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EigenvalueRecord {
    pub x: f64,
    pub lambda: f64,
    pub kind: EigenKind,
    pub multiplicity: u32,
    /// `N` for exceptional records, `lambda = N +- eps - g^2`.
    pub level_n: Option<u32>,
    pub branch: Option<Branch>,
}

/// Scan and refinement controls for zero finding.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ScanConfig {
    pub scan_step: f64,
    pub refine_tol: f64,
    pub series: SeriesConfig,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self { scan_step: 1e-2, refine_tol: 1e-10, series: SeriesConfig::default() }
    }
}

/// A zero of the regularized G-function closer than this to `n +- eps` is that exceptional point.
const SNAP: f64 = 1e-7;
/// Zeros this close to a degenerate Juddian point are its own numerical shadow.
const DEGENERATE_SHADOW: f64 = 1e-4;
/// Relative size of `P_N` (against its term scale) below which a point counts as Juddian.
const JUDDIAN_REL_TOL: f64 = 1e-9;

/// All `g > 0` with `P_N^(N,eps)((2g)^2, delta^2) = 0`, with the multiplicity of the eigenvalue there.
pub fn juddian_roots(n: u32, eps: &Rational, delta: &Rational) -> Result<Vec<(f64, u32)>, SpectrumError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let p = constraint_poly(n, eps, n).at_y(&(delta * delta));
    let mult = if (eps * int(2)).is_integer() { 2 } else { 1 };
    Ok(real_roots_f64(&p)?
        .into_iter()
        .filter(|(x, _)| *x > 0.0)
        .map(|(x, _)| (x.sqrt() / 2.0, mult))
        .collect())
}

/// Number of distinct positive roots in `x` of `P_N^(N,eps)(x, y)`.
pub fn count_positive_roots(n: u32, eps: &Rational, y: &Rational) -> usize {
    let p = constraint_poly(n, eps, n).at_y(y);
    count_roots_open(&p, Some(&Rational::zero()), None).unwrap_or(0)
}

/// `P_N^(N,eps)(x, y)` by the float recurrence, together with the size of the terms that produced it.
fn constraint_with_scale(n: u32, eps: f64, x: f64, y: f64) -> (f64, f64) {
    let nf = n as f64;
    let (mut prev, mut cur) = (0.0, 1.0);
    let (mut sprev, mut scur) = (0.0f64, 1.0f64);
    for k in 1..=n {
        let kf = k as f64;
        let a = kf * x + y - kf * (kf + 2.0 * eps);
        let b = kf * (kf - 1.0) * (nf - kf + 1.0) * x;
        let next = a * cur - b * prev;
        let snext = (kf * x.abs() + y.abs() + (kf * (kf + 2.0 * eps)).abs()) * scur + b.abs() * sprev;
        prev = cur;
        cur = next;
        sprev = scur;
        scur = snext;
    }
    (cur, scur)
}

fn is_juddian(n: u32, eps: f64, p: &ModelParams) -> bool {
    if n == 0 {
        return false;
    }
    let (v, s) = constraint_with_scale(n, eps, 4.0 * p.g * p.g, p.delta * p.delta);
    v.abs() <= JUDDIAN_REL_TOL * s
}

fn bisect(f: &(impl Fn(f64) -> Result<f64, SpectrumError> + Sync), mut lo: f64, mut hi: f64, tol: f64) -> Result<f64, SpectrumError> {
    let mut flo = f(lo)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Sign-change scan on `[lo, hi]` plus bisection. Each valley of `|f|` without a sign
/// change is searched for its extremum, which exposes pairs of zeros closer than `step`.
fn scan_zeros(
    f: &(impl Fn(f64) -> Result<f64, SpectrumError> + Sync),
    lo: f64,
    hi: f64,
    step: f64,
    tol: f64,
) -> Result<Vec<f64>, SpectrumError> {
    let count = ((hi - lo) / step).ceil().max(1.0) as usize;
    let xs: Vec<f64> = (0..=count).map(|i| lo + (hi - lo) * i as f64 / count as f64).collect();
    let vals: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect::<Result<_, _>>()?;
    let found: Vec<Vec<f64>> = (0..xs.len())
        .into_par_iter()
        .map(|i| cell_zeros(f, &xs, &vals, i, tol))
        .collect::<Result<_, _>>()?;
    let mut zeros: Vec<f64> = found.into_iter().flatten().collect();
    zeros.sort_by(f64::total_cmp);
    zeros.dedup_by(|a, b| (*a - *b).abs() < 10.0 * tol);
    Ok(zeros)
}

fn cell_zeros(
    f: &(impl Fn(f64) -> Result<f64, SpectrumError> + Sync),
    xs: &[f64],
    vals: &[f64],
    i: usize,
    tol: f64,
) -> Result<Vec<f64>, SpectrumError> {
    let mut out = Vec::new();
    if vals[i] == 0.0 {
        out.push(xs[i]);
        return Ok(out);
    }
    if i + 1 < xs.len() && vals[i + 1] != 0.0 && (vals[i] < 0.0) != (vals[i + 1] < 0.0) {
        out.push(bisect(f, xs[i], xs[i + 1], tol)?);
    }
    let valley = i > 0
        && i + 1 < xs.len()
        && (vals[i - 1] < 0.0) == (vals[i] < 0.0)
        && (vals[i + 1] < 0.0) == (vals[i] < 0.0)
        && vals[i].abs() < vals[i - 1].abs()
        && vals[i].abs() < vals[i + 1].abs();
    if valley {
        let s = vals[i].signum();
        let (xmin, fmin) = golden_min(|x| f(x).map(|v| s * v), xs[i - 1], xs[i + 1], tol)?;
        if fmin < 0.0 {
            out.push(bisect(f, xs[i - 1], xmin, tol)?);
            out.push(bisect(f, xmin, xs[i + 1], tol)?);
        } else if fmin == 0.0 {
            out.push(xmin);
        }
    }
    Ok(out)
}

/// Golden-section search for the minimum of `h` on `[a, b]`; stops early once `h` goes negative.
fn golden_min(h: impl Fn(f64) -> Result<f64, SpectrumError>, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64), SpectrumError> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (h(c)?, h(d)?);
    while b - a > tol {
        if fc <= 0.0 {
            return Ok((c, fc));
        }
        if fd <= 0.0 {
            return Ok((d, fd));
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = h(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = h(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

/// Where `x` sits relative to the exceptional points `n +- eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointClass {
    Regular,
    Exceptional { level: u32, branch: Branch, juddian: bool, degenerate: bool },
}

/// Classifies `x` against the nearest exceptional point within `snap`.
pub fn classify(x: f64, p: &ModelParams, snap: f64) -> PointClass {
    exceptional_points(p, x - snap, x + snap)
        .into_iter()
        .find(|e| (e.x - x).abs() <= snap)
        .map(|e| PointClass::Exceptional { level: e.level, branch: e.branch, juddian: e.juddian, degenerate: e.degenerate })
        .unwrap_or(PointClass::Regular)
}

#[derive(Debug, Clone, Copy)]
struct ExceptionalPoint {
    x: f64,
    level: u32,
    branch: Branch,
    juddian: bool,
    /// `2 eps` is an integer, so both K-series are singular here (or `x < |eps|`).
    degenerate: bool,
}

fn half_integer(e: f64) -> Option<u32> {
    let l = (2.0 * e).round();
    ((2.0 * e - l).abs() < 1e-12).then_some(l as u32)
}

/// Exceptional points in `[lo, hi]`, labelled with the signed bias of `p`.
fn exceptional_points(p: &ModelParams, lo: f64, hi: f64) -> Vec<ExceptionalPoint> {
    let e = p.eps.abs();
    let ell = half_integer(e);
    // the branch naming follows the caller's sign of eps
    let (up, down) = if p.eps >= 0.0 { (Branch::Plus, Branch::Minus) } else { (Branch::Minus, Branch::Plus) };
    let mut out = Vec::new();
    let mut n = 0u32;
    while n as f64 - e <= hi {
        let xp = n as f64 + e;
        if xp >= lo && xp <= hi {
            out.push(ExceptionalPoint { x: xp, level: n, branch: up, juddian: is_juddian(n, e, p), degenerate: ell.is_some() });
        }
        let xm = n as f64 - e;
        let below_shift = ell.map_or(true, |l| n < l);
        if e > 0.0 && below_shift && xm >= lo && xm <= hi {
            out.push(ExceptionalPoint { x: xm, level: n, branch: down, juddian: is_juddian(n, -e, p), degenerate: false });
        }
        n += 1;
    }
    out.sort_by(|a, b| a.x.total_cmp(&b.x));
    out
}

/// Zeros of `A + B t + C t^2` hidden inside one scan cell around a double pole of `G`.
fn double_pole_seeds(xe: f64, p: &ModelParams, cfg: &ScanConfig) -> Result<Vec<f64>, SpectrumError> {
    let q = p.with_eps(p.eps.abs());
    let lj = g_laurent(xe, &q, &cfg.series)?;
    let (a, b, c) = (lj.m2, lj.m1, lj.c0);
    let mut ts = Vec::new();
    if c == 0.0 {
        if b != 0.0 {
            ts.push(-a / b);
        }
    } else {
        let disc = b * b - 4.0 * a * c;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            let qv = -0.5 * (b + b.signum() * sq);
            if qv != 0.0 {
                ts.push(qv / c);
                ts.push(a / qv);
            } else {
                ts.push(0.0);
            }
        }
    }
    Ok(ts.into_iter().filter(|t| t.abs() < cfg.scan_step).map(|t| xe + t).collect())
}

fn record(x: f64, p: &ModelParams, kind: EigenKind, multiplicity: u32, level: Option<u32>, branch: Option<Branch>) -> EigenvalueRecord {
    EigenvalueRecord { x, lambda: x - p.g * p.g, kind, multiplicity, level_n: level, branch }
}

/// Lower bound for `x = lambda + g^2` over the whole spectrum.
pub fn x_floor(p: &ModelParams) -> f64 {
    -(p.delta * p.delta + p.eps * p.eps).sqrt() - 0.25
}

/// The regularized G-function as a closure for the scanners.
fn regularized_g_fn<'a>(p: &'a ModelParams, cfg: &'a ScanConfig) -> impl Fn(f64) -> Result<f64, SpectrumError> + Sync + 'a {
    move |x| Ok(regularized_g(x, p, &cfg.series)?)
}

/// Zeros of the regularized G-function in `[x_lo, x_hi]` that are not exceptional points.
pub fn regular_spectrum(p: &ModelParams, x_lo: f64, x_hi: f64, cfg: &ScanConfig) -> Result<Vec<EigenvalueRecord>, SpectrumError> {
    Ok(full_spectrum_in(p, x_lo, x_hi, cfg)?
        .into_iter()
        .filter(|r| r.kind == EigenKind::Regular)
        .collect())
}

/// Every eigenvalue with `x = lambda + g^2 <= x_max`, sorted, with classification.
pub fn full_spectrum(p: &ModelParams, x_max: f64, cfg: &ScanConfig) -> Result<Vec<EigenvalueRecord>, SpectrumError> {
    full_spectrum_in(p, x_floor(p), x_max, cfg)
}

fn full_spectrum_in(p: &ModelParams, x_lo: f64, x_hi: f64, cfg: &ScanConfig) -> Result<Vec<EigenvalueRecord>, SpectrumError> {
    if p.g == 0.0 {
        return Ok(decoupled_spectrum(p, x_hi).into_iter().filter(|r| r.x >= x_lo).collect());
    }
    let f = regularized_g_fn(p, cfg);
    let mut zeros = scan_zeros(&f, x_lo, x_hi, cfg.scan_step, cfg.refine_tol)?;
    let points = exceptional_points(p, x_lo, x_hi);
    for e in points.iter().filter(|e| e.degenerate && !e.juddian) {
        for seed in double_pole_seeds(e.x, p, cfg)? {
            if !zeros.iter().any(|z| (z - seed).abs() < SNAP) {
                zeros.push(polish(&f, seed, cfg)?);
            }
        }
    }
    zeros.sort_by(f64::total_cmp);
    let mut out = Vec::new();
    for e in points.iter().filter(|e| e.degenerate && e.juddian) {
        out.push(record(e.x, p, EigenKind::Juddian, 2, Some(e.level), Some(e.branch)));
    }
    for z in zeros {
        if out.iter().any(|r| r.multiplicity == 2 && (r.x - z).abs() < DEGENERATE_SHADOW) {
            continue;
        }
        if out.iter().any(|r| (r.x - z).abs() < SNAP) {
            continue;
        }
        let rec = match points.iter().find(|e| (e.x - z).abs() <= SNAP) {
            Some(e) if e.juddian => record(e.x, p, EigenKind::Juddian, 1, Some(e.level), Some(e.branch)),
            Some(e) => record(e.x, p, EigenKind::NonJuddianExceptional, 1, Some(e.level), Some(e.branch)),
            None => record(z, p, EigenKind::Regular, 1, None, None),
        };
        out.push(rec);
    }
    out.sort_by(|a, b| a.x.total_cmp(&b.x));
    Ok(out)
}

/// Bisection around a seed when a sign change is visible, otherwise the seed itself.
fn polish(f: &(impl Fn(f64) -> Result<f64, SpectrumError> + Sync), seed: f64, cfg: &ScanConfig) -> Result<f64, SpectrumError> {
    let mut h = cfg.refine_tol.max(1e-12) * 8.0;
    while h < cfg.scan_step {
        let (a, b) = (f(seed - h)?, f(seed + h)?);
        if (a < 0.0) != (b < 0.0) {
            return bisect(f, seed - h, seed + h, cfg.refine_tol);
        }
        h *= 4.0;
    }
    Ok(seed)
}

/// `g = 0`: levels `n +- sqrt(delta^2 + eps^2)`.
fn decoupled_spectrum(p: &ModelParams, x_max: f64) -> Vec<EigenvalueRecord> {
    let s = (p.delta * p.delta + p.eps * p.eps).sqrt();
    let mut vals: Vec<f64> = (0..)
        .map(|n| n as f64 - s)
        .take_while(|v| *v <= x_max)
        .chain((0..).map(|n| n as f64 + s).take_while(|v| *v <= x_max))
        .collect();
    vals.sort_by(f64::total_cmp);
    let mut out: Vec<EigenvalueRecord> = Vec::new();
    for v in vals {
        match out.last_mut() {
            Some(last) if (last.x - v).abs() < 1e-12 => last.multiplicity += 1,
            _ => out.push(record(v, p, EigenKind::Regular, 1, None, None)),
        }
    }
    out
}

/// The lowest eigenvalues, counted with multiplicity, growing the window until `count` are found.
pub fn lowest_levels(p: &ModelParams, count: usize, cfg: &ScanConfig) -> Result<Vec<EigenvalueRecord>, SpectrumError> {
    let mut x_max = x_floor(p) + count as f64 / 2.0 + 2.0;
    loop {
        let recs = full_spectrum(p, x_max, cfg)?;
        let total: u32 = recs.iter().map(|r| r.multiplicity).sum();
        if total as usize >= count + 1 {
            let mut acc = 0;
            return Ok(recs
                .into_iter()
                .take_while(|r| {
                    let keep = acc < count;
                    acc += r.multiplicity as usize;
                    keep
                })
                .collect());
        }
        x_max += 2.0;
    }
}

/// Eigenvalues as a flat ascending list, repeating degenerate ones.
pub fn expand_multiplicity(recs: &[EigenvalueRecord]) -> Vec<f64> {
    recs.iter().flat_map(|r| std::iter::repeat(r.lambda).take(r.multiplicity as usize)).collect()
}

/// Zeros in `g` of `T_{+-eps}^(N)(g, delta)` on `[g_lo, g_hi]`, excluding Juddian points.
pub fn non_juddian_roots(
    n: u32,
    delta: f64,
    eps: f64,
    branch: Branch,
    g_lo: f64,
    g_hi: f64,
    cfg: &ScanConfig,
) -> Result<Vec<f64>, SpectrumError> {
    let base = ModelParams::new(g_lo.max(f64::MIN_POSITIVE), delta, eps)?;
    let f = |g: f64| -> Result<f64, SpectrumError> { Ok(t_function(n, &base.with_g(g), branch, &cfg.series)?) };
    let zeros = scan_zeros(&f, g_lo, g_hi, cfg.scan_step, cfg.refine_tol)?;
    let signed = branch.sign() * eps;
    Ok(zeros.into_iter().filter(|&g| !is_juddian(n, signed, &base.with_g(g))).collect())
}

/// Grid and resolution for a g-sweep.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SweepConfig {
    pub g_grid: Vec<f64>,
    pub x_max: f64,
    pub scan_step: f64,
    pub refine_tol: f64,
}

impl SweepConfig {
    pub fn new(g_grid: Vec<f64>, x_max: f64) -> Result<Self, SpectrumError> {
        let cfg = Self { g_grid, x_max, scan_step: 1e-2, refine_tol: 1e-10 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SpectrumError> {
        if self.g_grid.iter().any(|g| !(*g >= 0.0)) {
            return Err(SpectrumError::InvalidGrid("g values must be nonnegative".into()));
        }
        if self.g_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SpectrumError::InvalidGrid("g grid must be strictly increasing".into()));
        }
        if !(self.scan_step > 0.0 && self.refine_tol > 0.0) {
            return Err(SpectrumError::InvalidGrid("scan_step and refine_tol must be positive".into()));
        }
        Ok(())
    }
}

/// One output row: the `index`-th level (0-based, counting multiplicity) at coupling `g`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SweepRow {
    pub g: f64,
    pub index: usize,
    #[serde(flatten)]
    pub record: EigenvalueRecord,
}

/// The lowest `n_levels` eigenvalues at every `g` of the grid, in grid order.
pub fn spectral_sweep(delta: f64, eps: f64, sweep: &SweepConfig, n_levels: usize) -> Result<Vec<SweepRow>, SpectrumError> {
    sweep.validate()?;
    let cfg = ScanConfig { scan_step: sweep.scan_step, refine_tol: sweep.refine_tol, ..Default::default() };
    let per_g: Vec<Vec<SweepRow>> = sweep
        .g_grid
        .par_iter()
        .map(|&g| {
            let p = ModelParams { g, delta, eps };
            let recs = lowest_levels(&p, n_levels, &cfg)?;
            let mut index = 0;
            Ok(recs
                .into_iter()
                .map(|record| {
                    let row = SweepRow { g, index, record };
                    index += record.multiplicity as usize;
                    row
                })
                .collect())
        })
        .collect::<Result<_, SpectrumError>>()?;
    Ok(per_g.into_iter().flatten().collect())
}

pub const CSV_HEADER: &str = "g,index,lambda,x,kind,multiplicity,level_N,branch";

/// Round-trip float formatting with 17 significant digits.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn branch_label(b: Option<Branch>) -> &'static str {
    match b {
        Some(Branch::Plus) => "plus_eps",
        Some(Branch::Minus) => "minus_eps",
        None => "",
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let rec = &r.record;
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            format_f64(r.g),
            r.index,
            format_f64(rec.lambda),
            format_f64(rec.x),
            rec.kind.as_str(),
            rec.multiplicity,
            rec.level_n.map(|n| n.to_string()).unwrap_or_default(),
            branch_label(rec.branch)
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn juddian_anchor_half_eps() {
        let r = juddian_roots(1, &rat(1, 2), &int(1)).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].0 - 0.5).abs() < 1e-14);
        assert_eq!(r[0].1, 2);
        assert!(juddian_roots(0, &rat(1, 3), &int(2)).unwrap().is_empty());
    }

    #[test]
    fn root_counts_small() {
        assert_eq!(count_positive_roots(1, &int(0), &rat(1, 2)), 1);
        assert_eq!(count_positive_roots(3, &rat(1, 2), &int(12)), 0);
    }

    #[test]
    fn juddian_point_in_full_spectrum() {
        let p = ModelParams::new(0.5, 1.0, 0.5).unwrap();
        let recs = full_spectrum(&p, 3.0, &ScanConfig::default()).unwrap();
        let j = recs.iter().find(|r| (r.x - 1.5).abs() < 1e-12).expect("x = 1.5 present");
        assert_eq!(j.kind, EigenKind::Juddian);
        assert_eq!(j.multiplicity, 2);
    }

    #[test]
    fn decoupled_levels() {
        let p = ModelParams { g: 0.0, delta: 0.6, eps: 0.8 };
        let recs = decoupled_spectrum(&p, 2.5);
        let got: Vec<(f64, u32)> = recs.iter().map(|r| (r.x, r.multiplicity)).collect();
        assert_eq!(got, vec![(-1.0, 1), (0.0, 1), (1.0, 2), (2.0, 2)]);
    }

    #[test]
    fn csv_shape() {
        let sweep = SweepConfig::new(vec![0.3, 0.6], 4.0).unwrap();
        let rows = spectral_sweep(1.0, 0.2, &sweep, 3).unwrap();
        let csv = sweep_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.count(), 6);
        assert!(SweepConfig::new(vec![0.5, 0.5], 1.0).is_err());
    }
}
