//! The identity suite behind `aqrm verify`.

use num_traits::Zero;

use crate::poly::{
    a_poly, format_rational, generating_identity_check, int, laguerre_check, ode_coefficient_check, rat,
    verify_divisibility, Rational,
};
use crate::series::{g_function, t_function, Branch, ModelParams, SeriesConfig};
use crate::spectrum::count_positive_roots;

use super::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum VerifyKind {
    All,
    Divisibility,
    Laguerre,
    Generating,
    Ode,
    TIdentity,
    GSymmetry,
    RootCounts,
}

/// Size limits for the exact checks.
#[derive(Debug, Clone, Copy)]
pub struct VerifyLimits {
    pub max_n: u32,
    pub max_ell: u32,
}

#[derive(Debug, Clone)]
struct Outcome {
    check: &'static str,
    case: String,
    passed: bool,
    detail: String,
}

fn sample_eps() -> Vec<Rational> {
    vec![int(0), rat(1, 4), rat(3, 10), rat(1, 2), int(1), rat(3, 2)]
}

fn divisibility(lim: VerifyLimits) -> Vec<Outcome> {
    let mut out = Vec::new();
    for n in 0..=lim.max_n {
        for ell in 1..=lim.max_ell {
            let case = format!("N={n} l={ell}");
            let (passed, detail) = match verify_divisibility(n, ell) {
                Ok((q, _)) => {
                    let same = q == a_poly(n, ell);
                    let integral = q.is_integral();
                    (same && integral, format!("quotient_matches_A={same} integral={integral}"))
                }
                Err(e) => (false, e.to_string()),
            };
            out.push(Outcome { check: "divisibility", case, passed, detail });
        }
    }
    out
}

fn laguerre(lim: VerifyLimits) -> Vec<Outcome> {
    let mut out = Vec::new();
    for k in 0..=lim.max_n {
        for eps in sample_eps() {
            let passed = laguerre_check(k, &eps);
            out.push(Outcome {
                check: "laguerre",
                case: format!("k={k} eps={}", format_rational(&eps)),
                passed,
                detail: String::new(),
            });
        }
    }
    out
}

fn generating(lim: VerifyLimits) -> Vec<Outcome> {
    let mut out = Vec::new();
    for n in 0..=lim.max_n.min(8) {
        for ell in 1..=lim.max_ell {
            let passed = generating_identity_check(n, ell, n + ell);
            out.push(Outcome { check: "generating", case: format!("N={n} l={ell}"), passed, detail: String::new() });
        }
    }
    out
}

fn ode(lim: VerifyLimits) -> Vec<Outcome> {
    let mut out = Vec::new();
    for n in 1..=lim.max_n {
        for eps in sample_eps() {
            let passed = ode_coefficient_check(n, &eps, n + 2);
            out.push(Outcome {
                check: "ode",
                case: format!("N={n} eps={}", format_rational(&eps)),
                passed,
                detail: String::new(),
            });
        }
    }
    out
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn t_identity(lim: VerifyLimits) -> Vec<Outcome> {
    let cfg = SeriesConfig::default();
    let mut out = Vec::new();
    for n in 0..=lim.max_n.min(5) {
        for ell in 1..=lim.max_ell.min(4) {
            for (g, delta) in [(0.9, 1.3), (0.45, 0.7)] {
                let p = ModelParams { g, delta, eps: ell as f64 / 2.0 };
                let case = format!("N={n} l={ell} g={g} delta={delta}");
                let (passed, detail) = match (
                    t_function(n + ell, &p, Branch::Minus, &cfg),
                    t_function(n, &p, Branch::Plus, &cfg),
                ) {
                    (Ok(a), Ok(b)) => {
                        let r = rel_gap(a, b);
                        (r <= 1e-8, format!("rel_gap={r:.3e}"))
                    }
                    (Err(e), _) | (_, Err(e)) => (false, e.to_string()),
                };
                out.push(Outcome { check: "t-identity", case, passed, detail });
            }
        }
    }
    out
}

fn g_symmetry() -> Vec<Outcome> {
    let cfg = SeriesConfig::default();
    let mut out = Vec::new();
    for (x, g, delta, eps) in [(0.37, 0.8, 1.0, 0.45), (2.71, 1.3, 0.5, 0.2), (-0.6, 0.4, 2.0, 1.1), (4.13, 2.0, 1.0, 0.7)] {
        let p = ModelParams { g, delta, eps };
        let case = format!("x={x} g={g} delta={delta} eps={eps}");
        let (passed, detail) = match (g_function(x, &p, &cfg), g_function(x, &p.with_eps(-eps), &cfg)) {
            (Ok(a), Ok(b)) => {
                let r = rel_gap(a, b);
                (r <= 1e-10, format!("rel_gap={r:.3e}"))
            }
            (Err(e), _) | (_, Err(e)) => (false, e.to_string()),
        };
        out.push(Outcome { check: "g-symmetry", case, passed, detail });
    }
    out
}

/// Largest `k <= n` with `k(k + 2 eps) <= y`.
fn threshold_index(n: u32, eps: &Rational, y: &Rational) -> u32 {
    (0..=n).rev().find(|&k| &(int(k as i64) * (int(k as i64) + eps * int(2))) <= y).unwrap_or(0)
}

fn root_counts(lim: VerifyLimits) -> Vec<Outcome> {
    let mut out = Vec::new();
    let offsets = [rat(0, 1), rat(1, 1000), rat(-1, 1000)];
    for n in 1..=lim.max_n.min(10) {
        for eps in [int(0), rat(1, 4), rat(1, 2), int(1), rat(3, 2)] {
            let mut bad = Vec::new();
            let mut tried = 0;
            for k in 0..=n {
                let edge = int(k as i64) * (int(k as i64) + &eps * int(2));
                for off in &offsets {
                    let y = &edge + off;
                    if y < Rational::zero() {
                        continue;
                    }
                    tried += 1;
                    let expect = (n - threshold_index(n, &eps, &y)) as usize;
                    let got = count_positive_roots(n, &eps, &y);
                    if got != expect {
                        bad.push(format!("y={} got {got} want {expect}", format_rational(&y)));
                    }
                }
            }
            out.push(Outcome {
                check: "root-counts",
                case: format!("N={n} eps={}", format_rational(&eps)),
                passed: bad.is_empty(),
                detail: if bad.is_empty() { format!("{tried} values of y") } else { bad.join("; ") },
            });
        }
    }
    out
}

/// Runs the selected checks; the table has one row per case.
pub fn run_checks(kind: VerifyKind, lim: VerifyLimits) -> (Table, bool) {
    let all = kind == VerifyKind::All;
    let mut outcomes = Vec::new();
    if all || kind == VerifyKind::Divisibility {
        outcomes.extend(divisibility(lim));
    }
    if all || kind == VerifyKind::Laguerre {
        outcomes.extend(laguerre(lim));
    }
    if all || kind == VerifyKind::Generating {
        outcomes.extend(generating(lim));
    }
    if all || kind == VerifyKind::Ode {
        outcomes.extend(ode(lim));
    }
    if all || kind == VerifyKind::TIdentity {
        outcomes.extend(t_identity(lim));
    }
    if all || kind == VerifyKind::GSymmetry {
        outcomes.extend(g_symmetry());
    }
    if all || kind == VerifyKind::RootCounts {
        outcomes.extend(root_counts(lim));
    }
    let ok = outcomes.iter().all(|o| o.passed);
    let mut t = Table::new(&["check", "case", "passed", "detail"]);
    for o in outcomes {
        t.push(vec![o.check.into(), o.case, o.passed.to_string(), o.detail]);
    }
    (t, ok)
}
