//! Largest-exponent Frobenius solutions at an exceptional point and the T-function
//! built from their values at the ordinary point `y = 1/2`.

use super::{Branch, ModelParams, SeriesConfig, SeriesError};

/// Distance below which `N + 2 eps` counts as a nonnegative integer.
const INTEGRALITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FrobeniusKind {
    Phi1Plus,
    Phi1Minus,
    Phi2Plus,
    Phi2Minus,
}

/// Coefficients `c_n` of `phi(y) = sum c_n y^n` together with `phi(1/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSolution {
    pub kind: FrobeniusKind,
    pub n: u32,
    pub coeffs: Vec<f64>,
    pub value_at_half: f64,
}

/// The four values entering `T = Rbar^(N,+) Rbar^(N,-) - R^(N,+) R^(N,-)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TParts {
    pub r_minus: f64,
    pub rbar_minus: f64,
    pub r_plus: f64,
    pub rbar_plus: f64,
}

impl TParts {
    pub fn value(&self) -> f64 {
        self.rbar_plus * self.rbar_minus - self.r_plus * self.r_minus
    }
}

/// `u_n = Kbar_n 2^-n` from `(n+1) Kbar_{n+1} = a_n Kbar_n - 4 g^2 Kbar_{n-1}`,
/// started at `u_start = 2^-start` with everything below it zero.
fn scaled_terms(
    start: usize,
    g: f64,
    a: impl Fn(usize) -> f64,
    cfg: &SeriesConfig,
) -> Result<Vec<f64>, SeriesError> {
    let mut u = vec![0.0; start];
    u.push(0.5f64.powi(start as i32));
    let mut sum = u[start];
    let mut streak = 0;
    let g2 = g * g;
    for n in start..cfg.max_terms {
        let prev = if n > start { u[n - 1] } else { 0.0 };
        let next = (a(n) * u[n] * 0.5 - g2 * prev) / (n + 1) as f64;
        u.push(next);
        sum += next;
        if next.abs() <= cfg.tol * sum.abs().max(f64::MIN_POSITIVE) {
            streak += 1;
            if streak >= cfg.consecutive_small {
                return Ok(u);
            }
        } else {
            streak = 0;
        }
    }
    Err(SeriesError::NonConvergent { terms: cfg.max_terms })
}

fn near_nonneg_integer(v: f64) -> Option<usize> {
    let r = v.round();
    (r >= 0.0 && (v - r).abs() < INTEGRALITY_TOL).then_some(r as usize)
}

/// The Frobenius solution `kind` at level `n` with signed bias `p.eps`.
///
/// `Phi1*` expand around the exponent `N + 1` of the `K^-` side; `Phi2*` are the
/// companion pair with bias `-eps`, shifted when `N + 2 eps` is a nonnegative integer.
pub fn frobenius_solution(
    kind: FrobeniusKind,
    n: u32,
    p: &ModelParams,
    cfg: &SeriesConfig,
) -> Result<FrobeniusSolution, SeriesError> {
    let big_n = n as usize;
    let nf = n as f64;
    let g = p.g;
    let d = p.delta;
    let e = p.eps;
    let four_g2 = 4.0 * g * g;
    // coefficients are returned unscaled, so undo the 2^-n of the scaled terms
    let unscale = |u: &[f64]| -> Vec<f64> { u.iter().enumerate().map(|(k, v)| v * 2f64.powi(k as i32)).collect() };
    let (coeffs, value) = match kind {
        FrobeniusKind::Phi1Minus | FrobeniusKind::Phi1Plus => {
            let u = scaled_terms(
                big_n + 1,
                g,
                |k| k as f64 - nf + four_g2 - 2.0 * e + d * d / (nf - k as f64),
                cfg,
            )?;
            if kind == FrobeniusKind::Phi1Minus {
                let c = unscale(&u);
                (c, u.iter().sum())
            } else {
                let mut c = vec![0.0; u.len()];
                c[big_n] = (nf + 1.0) / d;
                let mut value = c[big_n] * 0.5f64.powi(n as i32);
                for k in big_n + 1..u.len() {
                    let w = -d / (k as f64 - nf);
                    c[k] = w * u[k] * 2f64.powi(k as i32);
                    value += w * u[k];
                }
                (c, value)
            }
        }
        FrobeniusKind::Phi2Minus | FrobeniusKind::Phi2Plus => {
            let m = nf + 2.0 * e;
            match near_nonneg_integer(m) {
                None => {
                    let u = scaled_terms(0, g, |k| k as f64 - nf + four_g2 + d * d / (m - k as f64), cfg)?;
                    if kind == FrobeniusKind::Phi2Minus {
                        (unscale(&u), u.iter().sum())
                    } else {
                        let w = |k: usize| d / (m - k as f64);
                        let c = u.iter().enumerate().map(|(k, v)| w(k) * v * 2f64.powi(k as i32)).collect();
                        (c, u.iter().enumerate().map(|(k, v)| w(k) * v).sum())
                    }
                }
                Some(mi) => {
                    let mf = mi as f64;
                    let u = scaled_terms(mi + 1, g, |k| k as f64 - nf + four_g2 + d * d / (mf - k as f64), cfg)?;
                    if kind == FrobeniusKind::Phi2Minus {
                        (unscale(&u), u.iter().sum())
                    } else {
                        let mut c = vec![0.0; u.len()];
                        c[mi] = (mf + 1.0) / d;
                        let mut value = c[mi] * 0.5f64.powi(mi as i32);
                        for k in mi + 1..u.len() {
                            let w = -d / (k as f64 - mf);
                            c[k] = w * u[k] * 2f64.powi(k as i32);
                            value += w * u[k];
                        }
                        (c, value)
                    }
                }
            }
        }
    };
    Ok(FrobeniusSolution { kind, n, coeffs, value_at_half: value })
}

/// The four Frobenius values for `T_eps^(N)` (`Plus`) or `T_{-eps}^(N)` (`Minus`).
pub fn t_parts(n: u32, p: &ModelParams, branch: Branch, cfg: &SeriesConfig) -> Result<TParts, SeriesError> {
    let q = p.with_eps(branch.sign() * p.eps);
    let val = |kind| frobenius_solution(kind, n, &q, cfg).map(|s| s.value_at_half);
    Ok(TParts {
        r_minus: val(FrobeniusKind::Phi1Minus)?,
        rbar_minus: val(FrobeniusKind::Phi1Plus)?,
        r_plus: val(FrobeniusKind::Phi2Minus)?,
        rbar_plus: val(FrobeniusKind::Phi2Plus)?,
    })
}

/// `T_eps^(N)(g, delta)` for `Plus`, `T~_eps^(N) = T_{-eps}^(N)` for `Minus`.
pub fn t_function(n: u32, p: &ModelParams, branch: Branch, cfg: &SeriesConfig) -> Result<f64, SeriesError> {
    t_parts(n, p, branch, cfg).map(|t| t.value())
}
