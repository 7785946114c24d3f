use aqrm::oracle::{certified_spectrum, convergence_study, eigenvalues, spectrum, truncated_hamiltonian, DenseSymMatrix, TruncationConfig};
use aqrm::series::ModelParams;
use proptest::prelude::*;

fn params(g: f64, delta: f64, eps: f64) -> ModelParams {
    ModelParams { g, delta, eps }
}

#[test]
fn small_matrices() {
    let m = DenseSymMatrix::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![0.0, 0.0, 3.0]]);
    assert_eq!(eigenvalues(&m, 3, 1e-14).unwrap(), vec![1.0, 2.0, 3.0]);
    let m = DenseSymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    let v = eigenvalues(&m, 2, 1e-14).unwrap();
    assert!((v[0] + 1.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14);
}

#[test]
fn hamiltonian_is_exactly_symmetric() {
    let h = truncated_hamiltonian(&params(1.3, 0.7, 0.4), &TruncationConfig::default()).unwrap();
    assert_eq!(h.asymmetry(), 0.0);
    assert_eq!(h.dim(), 2 * 81);
    assert!(truncated_hamiltonian(&params(1.0, 1.0, 0.0), &TruncationConfig { m: 4, tol: 1e-12 }).is_err());
}

#[test]
fn decoupled_limit() {
    let v = spectrum(&params(0.0, 0.8, 0.0), &TruncationConfig { m: 20, tol: 1e-12 }, 6).unwrap();
    let want = [-0.8, 0.2, 0.8, 1.2, 1.8, 2.2];
    for (a, b) in v.iter().zip(want) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn displaced_oscillator_limit() {
    // delta = 0: n - g^2 +- eps
    let (g, eps) = (0.9, 0.3);
    let v = spectrum(&params(g, 0.0, eps), &TruncationConfig { m: 120, tol: 1e-12 }, 6).unwrap();
    let want = [-g * g - eps, -g * g + eps, 1.0 - g * g - eps, 1.0 - g * g + eps, 2.0 - g * g - eps, 2.0 - g * g + eps];
    for (a, b) in v.iter().zip(want) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn jacobi_and_householder_agree() {
    let p = params(1.1, 1.4, 0.35);
    let small = spectrum(&p, &TruncationConfig { m: 30, tol: 1e-13 }, 10).unwrap();
    // dim 62 goes through Jacobi; padding to 2(M+1) = 66 forces the tridiagonal route
    let h = truncated_hamiltonian(&p, &TruncationConfig { m: 30, tol: 1e-13 }).unwrap();
    let mut rows: Vec<Vec<f64>> = (0..h.dim()).map(|i| (0..h.dim()).map(|j| h.get(i, j)).collect()).collect();
    for r in &mut rows {
        r.extend([0.0; 4]);
    }
    for k in 0..4 {
        let mut r = vec![0.0; h.dim() + 4];
        r[h.dim() + k] = 1e3;
        rows.push(r);
    }
    let big = eigenvalues(&DenseSymMatrix::from_rows(&rows), 10, 1e-13).unwrap();
    for (a, b) in small.iter().zip(&big) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn juddian_pair_is_degenerate() {
    let v = spectrum(&params(0.5, 1.0, 0.5), &TruncationConfig { m: 80, tol: 1e-12 }, 8).unwrap();
    let i = v.iter().position(|x| (x - 1.25).abs() < 1e-6).unwrap();
    assert!((v[i + 1] - v[i]).abs() < 1e-8);
    assert!((0.5 * (v[i] + v[i + 1]) - 1.25).abs() < 1e-8);
}

#[test]
fn ground_state_is_simple() {
    for (g, d, e) in [(0.3, 1.0, 0.0), (1.0, 1.0, 0.5), (2.5, 0.5, 0.2), (1.8, 3.0, 1.0)] {
        let v = spectrum(&params(g, d, e), &TruncationConfig { m: 120, tol: 1e-12 }, 2).unwrap();
        assert!(v[1] - v[0] > 1e-6, "g={g}: {v:?}");
    }
}

#[test]
fn drift_shrinks_with_truncation() {
    let rows = convergence_study(&params(1.0, 1.0, 0.2), &[20, 30, 40, 60, 120], 8).unwrap();
    let drifts: Vec<f64> = rows[1..].iter().map(|r| r.max_drift()).collect();
    assert!(drifts.windows(2).take(2).all(|w| w[1] <= w[0]), "{drifts:?}");
    let rows = convergence_study(&params(1.0, 1.0, 0.0), &[60, 120], 8).unwrap();
    assert!(rows[1].max_drift() < 1e-8);
    let rows = convergence_study(&params(0.0, 1.0, 0.0), &[10, 20], 6).unwrap();
    assert_eq!(rows[1].max_drift(), 0.0);
}

#[test]
fn certification_raises_truncation() {
    let (m, v) = certified_spectrum(&params(2.5, 3.0, 0.7), &TruncationConfig { m: 40, tol: 1e-10 }, 8).unwrap();
    assert!(m > 40);
    assert_eq!(v.len(), 8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn prop_bias_sign_invariance(g in 0.05f64..2.0, d in 0.1f64..3.0, e in 0.0f64..1.5) {
        let cfg = TruncationConfig { m: 60, tol: 1e-12 };
        let a = spectrum(&params(g, d, e), &cfg, 8).unwrap();
        let b = spectrum(&params(g, d, -e), &cfg, 8).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }
}
