//! Truncated-Fock-space Hamiltonian and a self-contained symmetric eigensolver.
//!
//! Basis: `|n, up>` at index `2n`, `|n, down>` at `2n + 1`, `n = 0..=M`.

use crate::series::ModelParams;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("requested {count} eigenvalues from a {dim}x{dim} matrix")]
    TooMany { count: usize, dim: usize },
    #[error("truncation M = {0} is below the minimum of 8")]
    TruncationTooSmall(usize),
    #[error("no truncation up to M = {m} reached drift {tol:e} (last drift {drift:e})")]
    NotCertified { m: usize, tol: f64, drift: f64 },
}

/// Dense symmetric matrix stored row-major; only `set` writes, and it mirrors.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl DenseSymMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![0.0; dim * dim] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let mut m = Self::zeros(rows.len());
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate().skip(i) {
                m.set(i, j, *v);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.dim + j] = v;
        self.entries[j * self.dim + i] = v;
    }

    /// Largest `|H_ij - H_ji|`; zero by construction.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TruncationConfig {
    /// Largest boson number kept.
    pub m: usize,
    pub tol: f64,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self { m: 80, tol: 1e-12 }
    }
}

/// `a^dag a + delta sigma_z + g sigma_x (a + a^dag) + eps sigma_x` on `n <= M`.
pub fn truncated_hamiltonian(p: &ModelParams, cfg: &TruncationConfig) -> Result<DenseSymMatrix, OracleError> {
    if cfg.m < 8 {
        return Err(OracleError::TruncationTooSmall(cfg.m));
    }
    Ok(hamiltonian_unchecked(p, cfg.m))
}

fn hamiltonian_unchecked(p: &ModelParams, m: usize) -> DenseSymMatrix {
    let mut h = DenseSymMatrix::zeros(2 * (m + 1));
    for n in 0..=m {
        let (up, down) = (2 * n, 2 * n + 1);
        h.set(up, up, n as f64 + p.delta);
        h.set(down, down, n as f64 - p.delta);
        h.set(up, down, p.eps);
        if n < m {
            let c = p.g * ((n + 1) as f64).sqrt();
            h.set(up, 2 * (n + 1) + 1, c);
            h.set(down, 2 * (n + 1), c);
        }
    }
    h
}

const MAX_SWEEPS: usize = 100;
const QL_ITERATIONS: usize = 60;

/// Lowest `count` eigenvalues, ascending.
///
/// Jacobi rotations for `dim <= 64`, otherwise Householder reduction followed by implicit QL.
pub fn eigenvalues(m: &DenseSymMatrix, count: usize, tol: f64) -> Result<Vec<f64>, OracleError> {
    if count > m.dim() {
        return Err(OracleError::TooMany { count, dim: m.dim() });
    }
    let mut vals = if m.dim() <= 64 { jacobi(m, tol)? } else { householder_ql(m)? };
    vals.sort_by(f64::total_cmp);
    vals.truncate(count);
    Ok(vals)
}

fn jacobi(m: &DenseSymMatrix, tol: f64) -> Result<Vec<f64>, OracleError> {
    let n = m.dim();
    let mut a = m.rows();
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let threshold = tol.max(4.0 * f64::EPSILON) * scale;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off.sqrt() <= threshold {
            return Ok((0..n).map(|i| a[i][i]).collect());
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    Err(OracleError::NoConvergence(MAX_SWEEPS))
}

/// Householder reduction to tridiagonal form; returns `(diag, offdiag)` with `offdiag[0] = 0`.
fn tridiagonalize(m: &DenseSymMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = m.dim();
    let mut a = m.rows();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[i][k].abs()).sum();
            if scale == 0.0 {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j][k] * a[i][k];
                    }
                    for k in j + 1..=l {
                        g += a[k][j] * a[i][k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i][j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j][k] -= f * e[k] + g * a[i][k];
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[i][i];
    }
    (d, e)
}

fn householder_ql(m: &DenseSymMatrix) -> Result<Vec<f64>, OracleError> {
    let (mut d, mut e) = tridiagonalize(m);
    let n = d.len();
    e.rotate_left(1);
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut mm = l;
            while mm + 1 < n {
                let dd = d[mm].abs() + d[mm + 1].abs();
                if e[mm].abs() <= f64::EPSILON * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            iter += 1;
            if iter > QL_ITERATIONS {
                return Err(OracleError::NoConvergence(QL_ITERATIONS));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[mm] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..mm).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[mm] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[mm] = 0.0;
        }
    }
    Ok(d)
}

/// Lowest `count` eigenvalues of the truncated Hamiltonian.
pub fn spectrum(p: &ModelParams, cfg: &TruncationConfig, count: usize) -> Result<Vec<f64>, OracleError> {
    eigenvalues(&truncated_hamiltonian(p, cfg)?, count, cfg.tol)
}

/// One truncation level of a convergence study.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ConvergenceRow {
    pub m: usize,
    pub eigenvalues: Vec<f64>,
    /// `|lambda_i(M) - lambda_i(M_prev)|`; empty for the first row.
    pub drift: Vec<f64>,
}

impl ConvergenceRow {
    pub fn max_drift(&self) -> f64 {
        self.drift.iter().copied().fold(0.0, f64::max)
    }
}

/// Eigenvalue drift between consecutive truncations in `m_list` (which must increase).
pub fn convergence_study(p: &ModelParams, m_list: &[usize], count: usize) -> Result<Vec<ConvergenceRow>, OracleError> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(m_list.len());
    for &m in m_list {
        let vals = spectrum(p, &TruncationConfig { m, ..Default::default() }, count)?;
        let drift = match rows.last() {
            Some(prev) => vals.iter().zip(&prev.eigenvalues).map(|(a, b)| (a - b).abs()).collect(),
            None => Vec::new(),
        };
        rows.push(ConvergenceRow { m, eigenvalues: vals, drift });
    }
    Ok(rows)
}

/// Raises `M` from `cfg.m` in steps of 40 until the lowest `count` levels drift less than `cfg.tol`.
pub fn certified_spectrum(p: &ModelParams, cfg: &TruncationConfig, count: usize) -> Result<(usize, Vec<f64>), OracleError> {
    const STEP: usize = 40;
    const CAP: usize = 400;
    let mut m = cfg.m.max(8);
    let mut prev = spectrum(p, &TruncationConfig { m, ..*cfg }, count)?;
    let mut drift = f64::INFINITY;
    while m + STEP <= CAP {
        let next = spectrum(p, &TruncationConfig { m: m + STEP, ..*cfg }, count)?;
        drift = next.iter().zip(&prev).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        m += STEP;
        if drift < cfg.tol {
            return Ok((m, next));
        }
        prev = next;
    }
    Err(OracleError::NotCertified { m, tol: cfg.tol, drift })
}
