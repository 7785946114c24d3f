//! Series-defined functions of the model: K-coefficients, the G-function and its
//! gamma-regularized form, Frobenius solutions at the exceptional points, the
//! T-function, and the Laurent data of G at its poles.

mod frobenius;
mod gamma;
mod jet;
mod poles;

pub use frobenius::{frobenius_solution, t_function, t_parts, FrobeniusKind, FrobeniusSolution, TParts};
pub use gamma::reciprocal_gamma;
pub use jet::Laurent;
pub use poles::{
    b_function, b_function_dual, divisibility_b_residual, double_pole_coefficients, g_laurent,
    pole_structure, q_coefficients, q_functions, residue_simple, DoublePole, GLaurent, PoleKind,
    QFunctions,
};

use jet::Jet;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeriesError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("f_n has a pole at n = {n}")]
    PoleEncountered { n: usize },
    #[error("series did not converge within {terms} terms")]
    NonConvergent { terms: usize },
    #[error("wrong pole order: {0}")]
    WrongPoleOrder(String),
}

/// Coupling `g`, level splitting `delta`, bias `eps`; the boson frequency is 1.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ModelParams {
    pub g: f64,
    pub delta: f64,
    pub eps: f64,
}

impl ModelParams {
    pub fn new(g: f64, delta: f64, eps: f64) -> Result<Self, SeriesError> {
        if !(g > 0.0 && g.is_finite()) {
            return Err(SeriesError::InvalidParams(format!("g must be positive, got {g}")));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(SeriesError::InvalidParams(format!("delta must be positive, got {delta}")));
        }
        if !eps.is_finite() {
            return Err(SeriesError::InvalidParams(format!("eps must be finite, got {eps}")));
        }
        Ok(Self { g, delta, eps })
    }

    pub fn with_eps(self, eps: f64) -> Self {
        Self { eps, ..self }
    }

    pub fn with_g(self, g: f64) -> Self {
        Self { g, ..self }
    }
}

/// Truncation policy: stop once `consecutive_small` terms in a row are below `tol` relative to the sum.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SeriesConfig {
    pub tol: f64,
    pub max_terms: usize,
    pub consecutive_small: usize,
    pub pole_guard: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self { tol: 1e-14, max_terms: 2000, consecutive_small: 8, pole_guard: 1e-8 }
    }
}

impl SeriesConfig {
    pub fn with_max_terms(self, max_terms: usize) -> Self {
        Self { max_terms: max_terms.max(32), ..self }
    }
}

/// Which of the pair `K^+`, `K^-` (or `T_eps`, `T_-eps`) is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

/// Coefficients and partial sums of one K-series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesState {
    pub coeffs: Vec<f64>,
    pub sum_r: f64,
    pub sum_rbar: f64,
    pub truncation_order: usize,
    pub converged: bool,
}

pub(crate) struct KSums<S> {
    /// `K_n g^n`; the scaled form keeps small couplings from overflowing.
    pub scaled: Vec<S>,
    pub r: S,
    pub rbar: S,
    pub converged: bool,
}

/// Runs `n K_n = f_{n-1} K_{n-1} - K_{n-2}` at `x = x0 (+ t)` with `f` shifted by `shift = +-eps`.
pub(crate) fn k_series<S: Jet>(
    x0: f64,
    p: &ModelParams,
    shift: f64,
    cfg: &SeriesConfig,
) -> Result<KSums<S>, SeriesError> {
    let g = p.g;
    let d2 = p.delta * p.delta;
    let x = S::cst(x0) + S::var();
    let recip = |m: usize| -> Result<S, SeriesError> {
        let d = x0 - m as f64 + shift;
        if d.abs() < cfg.pole_guard {
            if S::EXPANDS {
                Ok(S::inv_shift(0.0))
            } else {
                Err(SeriesError::PoleEncountered { n: m })
            }
        } else {
            Ok(S::inv_shift(d))
        }
    };
    let mut scaled: Vec<S> = vec![S::cst(1.0)];
    let mut r0 = recip(0)?;
    let mut r = S::cst(1.0);
    let mut rbar = r0;
    let mut streak = 0;
    let min_terms = (x0 + shift.abs()).max(0.0) as usize + 4;
    let mut prev = S::cst(0.0);
    for n in 1..cfg.max_terms {
        // g f_{n-1} = 2 g^2 + (n - 1 - x + shift + delta^2 / (x - n + 1 + shift)) / 2
        let gf = S::cst(2.0 * g * g + 0.5 * ((n - 1) as f64 + shift)) - x.scale(0.5) + r0.scale(0.5 * d2);
        let cur = *scaled.last().unwrap();
        let next = (gf * cur - prev.scale(g * g)).scale(1.0 / n as f64);
        let rn = recip(n)?;
        let term_bar = next * rn;
        r = r + next;
        rbar = rbar + term_bar;
        prev = cur;
        scaled.push(next);
        r0 = rn;
        let small = |term: &S, sum: &S| term.norm() <= cfg.tol * sum.norm().max(f64::MIN_POSITIVE);
        if n >= min_terms && small(&next, &r) && small(&term_bar, &rbar) {
            streak += 1;
            if streak >= cfg.consecutive_small {
                return Ok(KSums { scaled, r, rbar, converged: true });
            }
        } else {
            streak = 0;
        }
    }
    Err(SeriesError::NonConvergent { terms: cfg.max_terms })
}

/// `K_n^+-(x)` and the partial sums `R^+-(x) = sum K_n g^n`, `Rbar^+-(x) = sum K_n g^n / (x - n +- eps)`.
pub fn k_coefficients(x: f64, p: &ModelParams, branch: Branch, cfg: &SeriesConfig) -> Result<SeriesState, SeriesError> {
    let s = k_series::<f64>(x, p, branch.sign() * p.eps, cfg)?;
    let mut gpow = 1.0;
    let coeffs = s
        .scaled
        .iter()
        .map(|k| {
            let v = k / gpow;
            gpow *= p.g;
            v
        })
        .collect::<Vec<_>>();
    Ok(SeriesState {
        truncation_order: coeffs.len() - 1,
        coeffs,
        sum_r: s.r,
        sum_rbar: s.rbar,
        converged: s.converged,
    })
}

/// `K_0^+-(x), ..., K_n^+-(x)` alone. These stay finite at `x = n +- eps`,
/// where the full series hits its pole one step later.
pub fn k_prefix(x: f64, p: &ModelParams, branch: Branch, n: usize) -> Result<Vec<f64>, SeriesError> {
    let shift = branch.sign() * p.eps;
    let (g, d2) = (p.g, p.delta * p.delta);
    let mut k = vec![1.0];
    let mut prev = 0.0;
    for m in 1..=n {
        let d = x - (m - 1) as f64 + shift;
        if d.abs() < f64::EPSILON * x.abs().max(1.0) {
            return Err(SeriesError::PoleEncountered { n: m - 1 });
        }
        // f_{m-1} = 2g + (m - 1 - x + shift + delta^2 / d) / (2g)
        let f = 2.0 * g + ((m - 1) as f64 - x + shift + d2 / d) / (2.0 * g);
        let next = (f * k[m - 1] - prev) / m as f64;
        prev = k[m - 1];
        k.push(next);
    }
    Ok(k)
}

/// `G_eps(x; g, delta) = delta^2 Rbar^+ Rbar^- - R^+ R^-`.
pub fn g_function(x: f64, p: &ModelParams, cfg: &SeriesConfig) -> Result<f64, SeriesError> {
    let plus = k_series::<f64>(x, p, p.eps, cfg)?;
    let minus = k_series::<f64>(x, p, -p.eps, cfg)?;
    Ok(p.delta * p.delta * plus.rbar * minus.rbar - plus.r * minus.r)
}

/// The two parity factors at `eps = 0`: `G_+- = sum K_n (1 -+ delta/(x-n)) g^n`, with `G_+ G_- = -G_0`.
pub fn g_parity_factors(x: f64, p: &ModelParams, cfg: &SeriesConfig) -> Result<(f64, f64), SeriesError> {
    let s = k_series::<f64>(x, &p.with_eps(0.0), 0.0, cfg)?;
    Ok((s.r - p.delta * s.rbar, s.r + p.delta * s.rbar))
}

/// `G_eps(x) / (Gamma(eps - x) Gamma(-eps - x))`, finite at every `x`.
///
/// Within `pole_guard` of a pole of `G` the value comes from the closed-form
/// residue or double-pole coefficient.
pub fn regularized_g(x: f64, p: &ModelParams, cfg: &SeriesConfig) -> Result<f64, SeriesError> {
    let e = p.eps.abs();
    let q = p.with_eps(e);
    match pole_structure(x, e, cfg.pole_guard) {
        PoleKind::Regular => {
            let gv = g_function(x, &q, cfg)?;
            Ok(gv * reciprocal_gamma(e - x) * reciprocal_gamma(-e - x))
        }
        PoleKind::Simple { n, branch: Branch::Minus } => {
            // x = n + e: only K^- is singular
            let res = residue_simple(n, &q, Branch::Plus, cfg)?;
            Ok(res * sign_factorial(n) * reciprocal_gamma(-2.0 * e - n as f64))
        }
        PoleKind::Simple { n, branch: Branch::Plus } => {
            // x = n - e: only K^+ is singular
            let res = residue_simple(n, &q, Branch::Minus, cfg)?;
            Ok(res * sign_factorial(n) * reciprocal_gamma(2.0 * e - n as f64))
        }
        PoleKind::Double { n, ell } => {
            let dp = double_pole_coefficients(n, ell, &q, cfg)?;
            let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
            Ok(dp.a * sign * factorial_f64(n) * factorial_f64(n + ell))
        }
    }
}

/// `(-1)^(n+1) n!`, the slope of `1/Gamma(-n - t)` at `t = 0`.
fn sign_factorial(n: u32) -> f64 {
    let s = if n % 2 == 0 { -1.0 } else { 1.0 };
    s * factorial_f64(n)
}

pub(crate) fn factorial_f64(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
