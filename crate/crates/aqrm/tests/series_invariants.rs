use aqrm::oracle::{self, TruncationConfig};
use aqrm::poly::{constraint_poly, from_f64, to_f64, c_norm, constraint_value};
use aqrm::series::{
    b_function, b_function_dual, divisibility_b_residual, double_pole_coefficients, frobenius_solution, g_function,
    g_parity_factors, k_coefficients, k_prefix, q_functions, reciprocal_gamma, regularized_g, residue_simple,
    t_function, t_parts, Branch, FrobeniusKind, ModelParams, SeriesConfig, SeriesError,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn params(g: f64, delta: f64, eps: f64) -> ModelParams {
    ModelParams::new(g, delta, eps).unwrap()
}

/// `(N!)^2 (2g)^N K_N^-(N + eps)` next to the exact constraint polynomial.
fn bridge_gap(n: u32, eps_num: i64, eps_den: i64, g: f64, delta: f64) -> f64 {
    let eps = eps_num as f64 / eps_den as f64;
    let p = params(g, delta, eps);
    let k = k_prefix(n as f64 + eps, &p, Branch::Minus, n as usize).unwrap()[n as usize];
    let nf: f64 = (1..=n).map(|i| i as f64).product();
    let lhs = nf * nf * (2.0 * g).powi(n as i32) * k;
    let exact = constraint_poly(n, &aqrm::poly::rat(eps_num, eps_den), n)
        .eval(&from_f64(4.0 * g * g), &from_f64(delta * delta));
    rel(lhs, to_f64(&exact))
}

#[test]
fn series_polynomial_bridge() {
    assert!(bridge_gap(3, 1, 4, 0.7, 1.1) < 1e-10);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let (num, den) = (rng.gen_range(-3..=8), rng.gen_range(1..=4));
        let g = rng.gen_range(0.05..2.0);
        let d = rng.gen_range(0.05..3.0);
        let gap = bridge_gap(n, num, den, g, d);
        assert!(gap < 1e-9, "N={n} eps={num}/{den} g={g} delta={d}: {gap:e}");
    }
}

#[test]
fn first_k_coefficients() {
    let p = params(0.6, 1.2, 0.35);
    let cfg = SeriesConfig::default();
    let x = 0.77;
    for branch in [Branch::Plus, Branch::Minus] {
        let s = k_coefficients(x, &p, branch, &cfg).unwrap();
        let shift = branch.sign() * p.eps;
        let f0 = 2.0 * p.g + (-x + shift + p.delta * p.delta / (x + shift)) / (2.0 * p.g);
        assert_eq!(s.coeffs[0], 1.0);
        assert!(rel(s.coeffs[1], f0) < 1e-14);
        assert!(s.converged);
        assert!(s.truncation_order <= cfg.max_terms);
        let prefix = k_prefix(x, &p, branch, 10).unwrap();
        for i in 0..=10 {
            assert!(rel(prefix[i], s.coeffs[i]) < 1e-12);
        }
    }
    // K^+-(x; -eps) = K^-+(x; eps)
    let a = k_coefficients(x, &p.with_eps(-p.eps), Branch::Plus, &cfg).unwrap();
    let b = k_coefficients(x, &p, Branch::Minus, &cfg).unwrap();
    assert_eq!(a.coeffs, b.coeffs);
}

#[test]
fn pole_guard_reports_pole() {
    let p = params(0.6, 1.0, 0.3);
    let err = g_function(1.3, &p, &SeriesConfig::default()).unwrap_err();
    assert!(matches!(err, SeriesError::PoleEncountered { .. }));
}

#[test]
fn zero_bias_parity_factors() {
    let cfg = SeriesConfig::default();
    for (x, g, d) in [(0.37, 0.8, 1.0), (2.6, 1.2, 0.4), (-0.4, 0.3, 2.0)] {
        let p = params(g, d, 0.0);
        let (gp, gm) = g_parity_factors(x, &p, &cfg).unwrap();
        let g0 = g_function(x, &p, &cfg).unwrap();
        assert!(rel(gp * gm, -g0) < 1e-10, "x={x}");
    }
}

#[test]
fn g_changes_sign_at_oracle_levels() {
    let p = params(1.0, 1.0, 0.2);
    let cfg = SeriesConfig::default();
    let vals = oracle::spectrum(&p, &TruncationConfig { m: 120, tol: 1e-12 }, 5).unwrap();
    for lambda in vals {
        let x = lambda + 1.0;
        let lo = regularized_g(x - 1e-6, &p, &cfg).unwrap();
        let hi = regularized_g(x + 1e-6, &p, &cfg).unwrap();
        assert!(lo * hi < 0.0, "no sign change at x={x}");
        let lo = g_function(x - 1e-6, &p, &cfg).unwrap();
        let hi = g_function(x + 1e-6, &p, &cfg).unwrap();
        assert!(lo * hi < 0.0, "G keeps its sign at x={x}");
        let slope = (hi - lo) / 2e-6;
        assert!((g_function(x, &p, &cfg).unwrap() / slope).abs() < 1e-8);
    }
}

#[test]
fn regularized_g_is_continuous_at_exceptional_points() {
    let cfg = SeriesConfig::default();
    for (x0, g, d, e) in [(1.3, 0.7, 0.5, 0.3), (0.7, 0.7, 0.5, 0.3), (1.5, 0.9, 1.0, 0.5), (2.0, 0.8, 1.3, 1.0)] {
        let p = params(g, d, e);
        let at = regularized_g(x0, &p, &cfg).unwrap();
        for h in [1e-4, 1e-5, 1e-6] {
            let left = regularized_g(x0 - h, &p, &cfg).unwrap();
            let right = regularized_g(x0 + h, &p, &cfg).unwrap();
            let mid = 0.5 * (left + right);
            assert!((mid - at).abs() <= 1e-6 * at.abs().max(1e-3), "x0={x0} h={h}: {mid} vs {at}");
        }
    }
}

#[test]
fn regularized_g_vanishes_at_juddian_point() {
    let cfg = SeriesConfig::default();
    assert!(regularized_g(1.5, &params(0.5, 1.0, 0.5), &cfg).unwrap().abs() < 1e-12);
    let g = (27.0f64 / 20.0).sqrt() / 2.0;
    assert!(regularized_g(1.3, &params(g, 0.5, 0.3), &cfg).unwrap().abs() < 1e-12);
}

#[test]
fn reciprocal_gamma_values() {
    assert!((reciprocal_gamma(1.0) - 1.0).abs() < 1e-15);
    for z in [0.0, -1.0, -2.0, -7.0] {
        assert_eq!(reciprocal_gamma(z), 0.0);
    }
    assert!(rel(reciprocal_gamma(0.5), 1.0 / std::f64::consts::PI.sqrt()) < 1e-13);
    assert!(rel(reciprocal_gamma(6.0), 1.0 / 120.0) < 1e-13);
}

#[test]
fn frobenius_initial_conditions_and_tail() {
    let cfg = SeriesConfig::default();
    let p = params(0.8, 1.3, 0.35);
    for n in 0..4u32 {
        let s = frobenius_solution(FrobeniusKind::Phi1Minus, n, &p, &cfg).unwrap();
        assert!(s.coeffs[..=n as usize].iter().all(|c| *c == 0.0));
        assert_eq!(s.coeffs[n as usize + 1], 1.0);
        let s = frobenius_solution(FrobeniusKind::Phi1Plus, n, &p, &cfg).unwrap();
        assert!(rel(s.coeffs[n as usize], (n as f64 + 1.0) / p.delta) < 1e-15);
        // terms at y = 1/2 shrink at least geometrically
        let terms: Vec<f64> = s.coeffs.iter().enumerate().map(|(k, c)| (c * 0.5f64.powi(k as i32)).abs()).collect();
        let tail = &terms[terms.len() - 20..];
        for w in tail.windows(2) {
            if w[0] > 1e-300 {
                assert!(w[1] / w[0] <= 0.6, "ratio {}", w[1] / w[0]);
            }
        }
    }
}

#[test]
fn t_function_shift_identity() {
    let cfg = SeriesConfig::default();
    for n in 0..=5u32 {
        for ell in 1..=4u32 {
            let p = params(0.9, 1.3, ell as f64 / 2.0);
            let a = t_function(n + ell, &p, Branch::Minus, &cfg).unwrap();
            let b = t_function(n, &p, Branch::Plus, &cfg).unwrap();
            assert!(rel(a, b) < 1e-8, "N={n} l={ell}: {a} vs {b}");
        }
    }
}

#[test]
fn t_function_zero_bias_factorization() {
    let cfg = SeriesConfig::default();
    for n in 0..4 {
        let t = t_parts(n, &params(0.8, 1.1, 0.0), Branch::Plus, &cfg).unwrap();
        let f = (t.rbar_plus - t.r_plus) * (t.rbar_plus + t.r_plus);
        assert!(rel(t.value(), f) < 1e-10);
    }
}

#[test]
fn truncation_robustness() {
    let loose = SeriesConfig::default();
    let long = loose.with_max_terms(2 * loose.max_terms);
    let p = params(1.7, 2.0, 0.3);
    for x in [-1.2, 0.4, 3.9, 7.1] {
        let a = g_function(x, &p, &loose).unwrap();
        let b = g_function(x, &p, &long).unwrap();
        assert!((a - b).abs() <= loose.tol * a.abs());
    }
    for n in 0..3 {
        let a = t_function(n, &p, Branch::Plus, &loose).unwrap();
        let b = t_function(n, &p, Branch::Plus, &long).unwrap();
        assert!((a - b).abs() <= loose.tol * a.abs());
    }
}

/// Leading coefficients `c_0, c_1` of `f(h) = c_0 + c_1 h + ...` from a polynomial fit on
/// `h, h/2, ..., h/16`: the one-sided Richardson table written as a small linear solve.
fn richardson_fit(f: impl Fn(f64) -> f64, h: f64) -> (f64, f64) {
    const K: usize = 5;
    let hs: Vec<f64> = (0..K).map(|i| h / 2f64.powi(i as i32)).collect();
    let mut a: Vec<Vec<f64>> = hs.iter().map(|&s| (0..K).map(|j| s.powi(j as i32)).collect()).collect();
    let mut b: Vec<f64> = hs.iter().map(|&s| f(s)).collect();
    for col in 0..K {
        let piv = (col..K).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..K {
            let m = a[row][col] / a[col][col];
            for j in col..K {
                a[row][j] -= m * a[col][j];
            }
            b[row] -= m * b[col];
        }
    }
    let mut c = vec![0.0; K];
    for row in (0..K).rev() {
        let s: f64 = (row + 1..K).map(|j| a[row][j] * c[j]).sum();
        c[row] = (b[row] - s) / a[row][row];
    }
    (c[0], c[1])
}

#[test]
fn simple_residues_match_numeric_limits() {
    let cfg = SeriesConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..12 {
        let n = rng.gen_range(0..4u32);
        let eps = rng.gen_range(0.05..0.45);
        let p = params(rng.gen_range(0.2..1.5), rng.gen_range(0.3..2.0), eps);
        for branch in [Branch::Plus, Branch::Minus] {
            if branch == Branch::Minus && n == 0 {
                continue;
            }
            let x0 = n as f64 + branch.sign() * eps;
            let closed = residue_simple(n, &p, branch, &cfg).unwrap();
            let (num, _) = richardson_fit(|h| h * g_function(x0 + h, &p, &cfg).unwrap(), 1e-3);
            assert!(rel(closed, num) < 1e-5, "N={n} {branch:?} {p:?}: {closed} vs {num}");
        }
    }
}

#[test]
fn double_poles_match_numeric_limits() {
    let cfg = SeriesConfig::default();
    for (n, ell, g, d) in [(1u32, 1u32, 0.8, 1.0), (0, 2, 0.6, 1.4), (2, 1, 1.1, 0.7), (1, 2, 0.75, 1.3), (0, 3, 0.5, 0.9)] {
        let p = params(g, d, ell as f64 / 2.0);
        let x0 = n as f64 + ell as f64 / 2.0;
        let dp = double_pole_coefficients(n, ell, &p, &cfg).unwrap();
        let (a, b) = richardson_fit(|h| h * h * g_function(x0 + h, &p, &cfg).unwrap(), 1e-3);
        assert!(rel(dp.a, a) < 1e-5, "A N={n} l={ell}: {} vs {a}", dp.a);
        assert!(rel(dp.b, b) < 1e-5, "B N={n} l={ell}: {} vs {b}", dp.b);
    }
}

#[test]
fn juddian_points_kill_poles() {
    let cfg = SeriesConfig::default();
    let g = (27.0f64 / 20.0).sqrt() / 2.0;
    assert!(residue_simple(1, &params(g, 0.5, 0.3), Branch::Plus, &cfg).unwrap().abs() < 1e-12);

    let dp = double_pole_coefficients(1, 1, &params(0.5, 1.0, 0.5), &cfg).unwrap();
    assert!(dp.a.abs() < 1e-12 && dp.b.abs() < 1e-12, "{dp:?}");

    // at the non-Juddian zero the double pole drops to a simple one
    let dp = double_pole_coefficients(1, 1, &params(1.393031117, 1.0, 0.5), &cfg).unwrap();
    assert!(dp.a.abs() < 1e-7 && dp.b.abs() > 1.0, "{dp:?}");
}

#[test]
fn residue_vanishes_at_shifted_t_zero() {
    // x = N - l/2 with N = 1, l = 3 is a simple pole; it disappears where T_{-3/2}^(1) does
    let cfg = SeriesConfig::default();
    let t = |g: f64| t_function(1, &params(g, 3.0, 1.5), Branch::Minus, &cfg).unwrap();
    let (mut lo, mut hi) = (1.60, 1.66);
    assert!(t(lo) * t(hi) < 0.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if t(mid) * t(lo) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let g = 0.5 * (lo + hi);
    assert!((g - 1.6318).abs() < 1e-3);
    let away = residue_simple(1, &params(1.2, 3.0, 1.5), Branch::Minus, &cfg).unwrap();
    let at = residue_simple(1, &params(g, 3.0, 1.5), Branch::Minus, &cfg).unwrap();
    assert!(at.abs() < 1e-9 * away.abs().max(1.0), "{at} vs {away}");
}

#[test]
fn double_pole_sign_audit() {
    // A is linear in T, so its sign follows T P_N P_{N+l}
    let cfg = SeriesConfig::default();
    for (n, ell) in [(0u32, 1u32), (1, 1), (1, 2), (2, 2)] {
        for gi in 1..=10 {
            for d in [0.5, 1.0, 2.0] {
                let g = 0.15 * gi as f64;
                let half = ell as f64 / 2.0;
                let p = params(g, d, half);
                let dp = double_pole_coefficients(n, ell, &p, &cfg).unwrap();
                let (x, y) = (4.0 * g * g, d * d);
                let t = t_function(n, &p, Branch::Plus, &cfg).unwrap();
                let s = t * constraint_value(n, half, x, y) * constraint_value(n + ell, -half, x, y);
                if s.abs() > 1e-10 && dp.a.abs() > 1e-12 {
                    assert_eq!(dp.a > 0.0, s > 0.0, "N={n} l={ell} g={g} d={d}");
                }
            }
        }
    }
}

#[test]
fn b_coefficient_through_b_functions() {
    let cfg = SeriesConfig::default();
    for (n, ell, g, d) in [(1u32, 2u32, 0.75, 1.3), (0, 1, 0.9, 0.8), (2, 1, 0.5, 1.5)] {
        let p = params(g, d, ell as f64 / 2.0);
        let dp = double_pole_coefficients(n, ell, &p, &cfg).unwrap();
        let (x, y) = (4.0 * g * g, d * d);
        let pn = constraint_value(n, ell as f64 / 2.0, x, y);
        let via = c_norm(n) * c_norm(n + ell) * y * pn * divisibility_b_residual(n, ell, &p, &cfg).unwrap();
        assert!(rel(dp.b, via) < 1e-8, "{} vs {via}", dp.b);
        let b1 = b_function(n, ell, &p, &cfg).unwrap();
        let b2 = b_function_dual(n, ell, &p, &cfg).unwrap();
        assert!(b1.is_finite() && b2.is_finite());
    }
    // continuity of B on a coarse scan
    let mut prev: Option<f64> = None;
    for i in 0..=100 {
        let g = 0.5 + 0.002 * i as f64;
        let b = b_function(1, 2, &params(g, 1.0, 1.0), &cfg).unwrap();
        if let Some(pb) = prev {
            assert!((b - pb).abs() < 0.05 * pb.abs().max(b.abs()).max(1.0), "jump at g={g}");
        }
        prev = Some(b);
    }
}

#[test]
fn q_functions_regular() {
    let cfg = SeriesConfig::default();
    let q = q_functions(1, 1, &params(0.8, 1.0, 0.5), &cfg).unwrap();
    assert!([q.q_minus, q.qbar_minus, q.q_plus, q.qbar_plus].iter().all(|v| v.is_finite()));
    let q = q_functions(2, 0, &params(0.8, 1.0, 0.0), &cfg).unwrap();
    assert!(rel(q.q_minus, q.q_plus) < 1e-14 && rel(q.qbar_minus, q.qbar_plus) < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_g_even_in_eps(x in -1.5f64..8.0, g in 0.05f64..2.5, d in 0.1f64..3.0, e in 0.0f64..2.0) {
        let cfg = SeriesConfig::default();
        let p = params(g, d, e);
        let (a, b) = match (g_function(x, &p, &cfg), g_function(x, &p.with_eps(-e), &cfg)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(()),
        };
        // far from poles the two sides agree to rounding
        let near_pole = (0..12).any(|n| (x - n as f64 - e).abs() < 1e-3 || (x - n as f64 + e).abs() < 1e-3);
        prop_assume!(!near_pole);
        prop_assert!(rel(a, b) < 1e-10, "{} vs {}", a, b);
    }

    #[test]
    fn prop_reciprocal_gamma_recursion(z in -12.0f64..30.0) {
        prop_assume!((z - z.round()).abs() > 1e-6);
        let lhs = reciprocal_gamma(z + 1.0);
        let rhs = reciprocal_gamma(z) / z;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()), "{} vs {}", lhs, rhs);
    }
}
