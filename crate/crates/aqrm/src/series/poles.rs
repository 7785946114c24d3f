//! Poles of the G-function: where they sit, their residues, the double-pole
//! coefficients at half-integer bias, and the regularized Q- and B-functions.

use super::frobenius::t_parts;
use super::jet::{Jet, Laurent};
use super::{k_series, t_function, Branch, ModelParams, SeriesConfig, SeriesError, SeriesState};
use crate::poly::{c_norm, constraint_value};

/// What `G_eps` looks like at a point, for `eps >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleKind {
    Regular,
    /// Only the `branch` K-series is singular, at `x = n + eps` (`Minus`) or `x = n - eps` (`Plus`).
    Simple { n: u32, branch: Branch },
    /// Both series are singular: `eps = ell/2`, `x = n + ell/2`.
    Double { n: u32, ell: u32 },
}

fn near_index(v: f64, guard: f64) -> Option<u32> {
    let r = v.round();
    (r >= 0.0 && (v - r).abs() < guard).then_some(r as u32)
}

/// Classifies `x` for bias `eps` (its sign is ignored).
pub fn pole_structure(x: f64, eps: f64, guard: f64) -> PoleKind {
    let e = eps.abs();
    let minus = near_index(x - e, guard);
    let plus = near_index(x + e, guard);
    match (minus, plus) {
        (Some(n), Some(m)) => PoleKind::Double { n, ell: m - n },
        (Some(n), None) => PoleKind::Simple { n, branch: Branch::Minus },
        (None, Some(m)) => PoleKind::Simple { n: m, branch: Branch::Plus },
        (None, None) => PoleKind::Regular,
    }
}

/// Leading Laurent coefficients of `G_eps` at `x0`: orders `-2`, `-1` and `0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GLaurent {
    pub m2: f64,
    pub m1: f64,
    pub c0: f64,
}

struct LaurentSums {
    plus: (Laurent, Laurent),
    minus: (Laurent, Laurent),
}

fn laurent_sums(x0: f64, p: &ModelParams, cfg: &SeriesConfig) -> Result<LaurentSums, SeriesError> {
    let plus = k_series::<Laurent>(x0, p, p.eps, cfg)?;
    let minus = k_series::<Laurent>(x0, p, -p.eps, cfg)?;
    Ok(LaurentSums { plus: (plus.r, plus.rbar), minus: (minus.r, minus.rbar) })
}

/// Expands `G_eps` around `x0` by running the K-recurrences over Laurent series.
pub fn g_laurent(x0: f64, p: &ModelParams, cfg: &SeriesConfig) -> Result<GLaurent, SeriesError> {
    let s = laurent_sums(x0, p, cfg)?;
    let g = (s.plus.1 * s.minus.1).scale(p.delta * p.delta) - s.plus.0 * s.minus.0;
    Ok(GLaurent { m2: g.coeff(-2), m1: g.coeff(-1), c0: g.coeff(0) })
}

/// `Res_{x = N +- eps} G_eps = C(N) delta^2 P_N^(N,+-eps)((2g)^2, delta^2) T_{+-eps}^(N)`.
///
/// Fails with `WrongPoleOrder` when the other K-series is singular at the same point.
pub fn residue_simple(n: u32, p: &ModelParams, branch: Branch, cfg: &SeriesConfig) -> Result<f64, SeriesError> {
    let e = branch.sign() * p.eps;
    let other = n as f64 + 2.0 * e;
    if other >= -0.5 && (other - other.round()).abs() < cfg.pole_guard {
        return Err(SeriesError::WrongPoleOrder(format!(
            "x = {} is a double pole for eps = {}",
            n as f64 + e,
            p.eps
        )));
    }
    let x = 4.0 * p.g * p.g;
    let y = p.delta * p.delta;
    let poly = constraint_value(n, e, x, y);
    let t = t_function(n, p, branch, cfg)?;
    Ok(c_norm(n) * y * poly * t)
}

/// `A` and `B` in `G = A/(x - x0)^2 + B/(x - x0) + O(1)` at `x0 = N + ell/2`, `eps = ell/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoublePole {
    pub a: f64,
    pub b: f64,
}

/// Residues of the four sums at the double pole, from the Frobenius values.
struct PoleResidues {
    rho_minus: f64,
    rhobar_minus: f64,
    rho_plus: f64,
    rhobar_plus: f64,
}

fn pole_residues(n: u32, ell: u32, p: &ModelParams, cfg: &SeriesConfig) -> Result<(PoleResidues, f64, f64), SeriesError> {
    let half = ell as f64 / 2.0;
    let q = p.with_eps(half);
    let t = t_parts(n, &q, Branch::Plus, cfg)?;
    let x = 4.0 * p.g * p.g;
    let y = p.delta * p.delta;
    let p_low = constraint_value(n, half, x, y);
    let p_high = constraint_value(n + ell, -half, x, y);
    let (cn, cm) = (c_norm(n), c_norm(n + ell));
    let d = p.delta;
    Ok((
        PoleResidues {
            rho_minus: cn * y * p_low * t.r_minus,
            rhobar_minus: cn * d * p_low * t.rbar_minus,
            rho_plus: cm * y * p_high * t.r_plus,
            rhobar_plus: cm * d * p_high * t.rbar_plus,
        },
        p_low,
        t.value(),
    ))
}

/// Closed-form `A` and `B` at the double pole `x = N + ell/2` of `G_{ell/2}`.
pub fn double_pole_coefficients(n: u32, ell: u32, p: &ModelParams, cfg: &SeriesConfig) -> Result<DoublePole, SeriesError> {
    let (rho, _, _) = pole_residues(n, ell, p, cfg)?;
    let qf = q_functions(n, ell, p, cfg)?;
    let d2 = p.delta * p.delta;
    let a = d2 * rho.rhobar_plus * rho.rhobar_minus - rho.rho_plus * rho.rho_minus;
    let b = d2 * (rho.rhobar_plus * qf.qbar_minus + rho.rhobar_minus * qf.qbar_plus)
        - (rho.rho_plus * qf.q_minus + rho.rho_minus * qf.q_plus);
    Ok(DoublePole { a, b })
}

/// Regular parts of `R^-`, `Rbar^-`, `R^+`, `Rbar^+` at `x = N + ell/2` for `eps = ell/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QFunctions {
    pub q_minus: f64,
    pub qbar_minus: f64,
    pub q_plus: f64,
    pub qbar_plus: f64,
}

pub fn q_functions(n: u32, ell: u32, p: &ModelParams, cfg: &SeriesConfig) -> Result<QFunctions, SeriesError> {
    let half = ell as f64 / 2.0;
    let s = laurent_sums(n as f64 + half, &p.with_eps(half), cfg)?;
    Ok(QFunctions {
        q_minus: s.minus.0.coeff(0),
        qbar_minus: s.minus.1.coeff(0),
        q_plus: s.plus.0.coeff(0),
        qbar_plus: s.plus.1.coeff(0),
    })
}

/// Regular parts of the individual terms `K_n g^n` behind `Q^+-`.
pub fn q_coefficients(n: u32, ell: u32, p: &ModelParams, branch: Branch, cfg: &SeriesConfig) -> Result<SeriesState, SeriesError> {
    let half = ell as f64 / 2.0;
    let s = k_series::<Laurent>(n as f64 + half, &p.with_eps(half), branch.sign() * half, cfg)?;
    Ok(SeriesState {
        truncation_order: s.scaled.len() - 1,
        coeffs: s.scaled.iter().map(|k| k.coeff(0)).collect(),
        sum_r: s.r.coeff(0),
        sum_rbar: s.rbar.coeff(0),
        converged: s.converged,
    })
}

/// `B^N_ell = (Rbar^(N,+) delta Qbar^- - R^(N,+) Q^-) / C(N)`.
pub fn b_function(n: u32, ell: u32, p: &ModelParams, cfg: &SeriesConfig) -> Result<f64, SeriesError> {
    let t = t_parts(n, &p.with_eps(ell as f64 / 2.0), Branch::Plus, cfg)?;
    let q = q_functions(n, ell, p, cfg)?;
    Ok((t.rbar_plus * p.delta * q.qbar_minus - t.r_plus * q.q_minus) / c_norm(n))
}

/// `B^{N+ell}_{-ell} = (Rbar^(N,-) delta Qbar^+ - R^(N,-) Q^+) / C(N + ell)`.
pub fn b_function_dual(n: u32, ell: u32, p: &ModelParams, cfg: &SeriesConfig) -> Result<f64, SeriesError> {
    let t = t_parts(n, &p.with_eps(ell as f64 / 2.0), Branch::Plus, cfg)?;
    let q = q_functions(n, ell, p, cfg)?;
    Ok((t.rbar_minus * p.delta * q.qbar_plus - t.r_minus * q.q_plus) / c_norm(n + ell))
}

/// `B^{N+ell}_{-ell} + A_N^ell((2g)^2, delta^2) B^N_ell`; zero exactly when the residue vanishes at a T-zero.
pub fn divisibility_b_residual(n: u32, ell: u32, p: &ModelParams, cfg: &SeriesConfig) -> Result<f64, SeriesError> {
    let x = 4.0 * p.g * p.g;
    let y = p.delta * p.delta;
    let a = crate::poly::a_poly(n, ell).eval_f64(x, y);
    Ok(b_function_dual(n, ell, p, cfg)? + a * b_function(n, ell, p, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn classification() {
        assert_eq!(pole_structure(1.3, 0.3, 1e-8), PoleKind::Simple { n: 1, branch: Branch::Minus });
        assert_eq!(pole_structure(0.7, 0.3, 1e-8), PoleKind::Simple { n: 1, branch: Branch::Plus });
        assert_eq!(pole_structure(1.5, 0.5, 1e-8), PoleKind::Double { n: 1, ell: 1 });
        assert_eq!(pole_structure(-0.5, 1.5, 1e-8), PoleKind::Simple { n: 1, branch: Branch::Plus });
        assert_eq!(pole_structure(0.4, 0.3, 1e-8), PoleKind::Regular);
    }

    #[test]
    fn simple_residue_matches_laurent() {
        let cfg = SeriesConfig::default();
        let p = ModelParams::new(0.7, 1.0, 0.2).unwrap();
        for n in 0..4 {
            let closed = residue_simple(n, &p, Branch::Plus, &cfg).unwrap();
            let jet = g_laurent(n as f64 + 0.2, &p, &cfg).unwrap();
            assert!(jet.m2.abs() < 1e-12);
            assert!(rel(closed, jet.m1) < 1e-9, "N={n}: {closed} vs {}", jet.m1);
            let closed = residue_simple(n, &p, Branch::Minus, &cfg).unwrap();
            let jet = g_laurent(n as f64 - 0.2, &p, &cfg).unwrap();
            assert!(rel(closed, jet.m1) < 1e-9, "N={n}: {closed} vs {}", jet.m1);
        }
    }

    #[test]
    fn double_pole_matches_laurent() {
        let cfg = SeriesConfig::default();
        for (n, ell, g, d) in [(1u32, 1u32, 0.8, 1.0), (0, 2, 0.6, 1.4), (2, 1, 1.1, 0.7), (1, 0, 0.9, 1.2)] {
            let p = ModelParams::new(g, d, ell as f64 / 2.0).unwrap();
            let dp = double_pole_coefficients(n, ell, &p, &cfg).unwrap();
            let jet = g_laurent(n as f64 + ell as f64 / 2.0, &p, &cfg).unwrap();
            assert!(rel(dp.a, jet.m2) < 1e-9, "A {n} {ell}: {} vs {}", dp.a, jet.m2);
            assert!(rel(dp.b, jet.m1) < 1e-8, "B {n} {ell}: {} vs {}", dp.b, jet.m1);
        }
    }

    #[test]
    fn b_coefficient_from_b_functions() {
        let cfg = SeriesConfig::default();
        let (n, ell) = (1u32, 2u32);
        let p = ModelParams::new(0.75, 1.3, 1.0).unwrap();
        let dp = double_pole_coefficients(n, ell, &p, &cfg).unwrap();
        let x = 4.0 * p.g * p.g;
        let y = p.delta * p.delta;
        let pn = constraint_value(n, 1.0, x, y);
        let via_b = c_norm(n) * c_norm(n + ell) * y * pn * divisibility_b_residual(n, ell, &p, &cfg).unwrap();
        assert!(rel(dp.b, via_b) < 1e-8, "{} vs {via_b}", dp.b);
    }

    #[test]
    fn double_pole_reported() {
        let cfg = SeriesConfig::default();
        let p = ModelParams::new(0.7, 1.0, 0.5).unwrap();
        assert!(matches!(residue_simple(1, &p, Branch::Plus, &cfg), Err(SeriesError::WrongPoleOrder(_))));
        assert!(residue_simple(0, &p, Branch::Minus, &cfg).is_ok());
    }
}
