//! The `aqrm` command line: every subcommand produces a [`Table`] written as CSV or JSON.

mod table;
mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::oracle::{self, TruncationConfig};
use crate::poly::{
    a_poly, constraint_poly, constraint_poly_det, format_rational, int, parse_rational, q_poly, rat, to_f64,
    verify_divisibility, BivarPoly, Rational,
};
use crate::series::{
    double_pole_coefficients, g_function, g_laurent, regularized_g, residue_simple, t_function, Branch, ModelParams,
    SeriesConfig, SeriesError,
};
use crate::spectrum::{
    branch_label, count_positive_roots, format_f64, full_spectrum, non_juddian_roots, spectral_sweep,
    EigenvalueRecord, ScanConfig, SweepConfig, CSV_HEADER,
};

pub use table::Table;
pub use verify::{run_checks, VerifyKind, VerifyLimits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "aqrm", version, about = "Spectrum of the asymmetric quantum Rabi model")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Coupling: a value, or a range `a:b:step` for `tfunc` and `sweep`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// Bias, `p/q` or decimal.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eps: Option<String>,
    #[arg(long = "N", global = true)]
    pub n: Option<u32>,
    #[arg(long, global = true)]
    pub ell: Option<u32>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// JSON object whose keys (`g`, `delta`, `eps`, `N`, `ell`, `tol`) override the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyKind {
    /// `P_k^(N,eps)` by recurrence.
    Constraint,
    /// `P_N^(N,eps)` as a continuant.
    Det,
    /// The quotient `A_N^l`.
    A,
    /// `Q_k^(N,eps)`.
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print a polynomial in text and canonical JSON form.
    Poly {
        #[arg(long, value_enum, default_value_t = PolyKind::Constraint)]
        kind: PolyKind,
        /// Recurrence index; defaults to `N`.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Divide `P_{N+l}^(N+l,-l/2)` by `P_N^(N,l/2)` and compare with `A_N^l`.
    Divide,
    /// Number of positive roots in `x` of `P_N^(N,eps)(x, y)`.
    CountRoots {
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Tabulate `G` and the regularized G-function over `x`.
    Gfunc {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Tabulate `T^(N)_{+-eps}` over the `--g` range, or list its non-Juddian zeros.
    Tfunc {
        #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
        branch: BranchArg,
        #[arg(long)]
        zeros: bool,
    },
    /// Pole coefficients of `G` at `x = N +- eps` (simple) or `x = N + l/2` (double, with `--ell`).
    Residue {
        #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
        branch: BranchArg,
    },
    /// Classified eigenvalues with `x = lambda + g^2 <= x_max`.
    Spectrum {
        #[arg(long, default_value_t = 8.0)]
        x_max: f64,
    },
    /// Lowest levels over a g-grid.
    Sweep {
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long, default_value_t = 12.0)]
        x_max: f64,
        #[arg(long, default_value_t = 1e-2)]
        scan_step: f64,
    },
    /// Eigenvalues of the truncated Hamiltonian.
    Oracle {
        #[arg(long = "M", default_value_t = 80)]
        m: usize,
        #[arg(long, default_value_t = 8)]
        count: usize,
        /// Raise `M` until the lowest levels stop drifting by more than `--tol`.
        #[arg(long)]
        certify: bool,
    },
    /// Exact and numerical identity checks; exits 1 if any fails.
    Verify {
        #[arg(value_enum, default_value_t = VerifyKind::All)]
        what: VerifyKind,
        #[arg(long = "max-N", default_value_t = 8)]
        max_n: u32,
        #[arg(long, default_value_t = 4)]
        max_ell: u32,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Spectrum(#[from] crate::spectrum::SpectrumError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// What a subcommand hands back: a table, an optional richer JSON form, and whether its checks held.
struct Report {
    table: Table,
    json: Option<Value>,
    passed: bool,
}

impl From<Table> for Report {
    fn from(table: Table) -> Self {
        Report { table, json: None, passed: true }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `a:b:step` (inclusive of `b` up to rounding) or a single value.
pub fn parse_range(s: &str) -> Result<Vec<f64>, CliError> {
    let num = |t: &str| -> Result<Rational, CliError> {
        parse_rational(t).map_err(|e| usage(format!("bad number in `{s}`: {e}")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(vec![to_f64(&num(v)?)]),
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step <= int(0) || b < a {
                return Err(usage(format!("range `{s}` needs step > 0 and a <= b")));
            }
            // exact grid points, each rounded once
            let count = ((&b - &a) / &step).floor().to_integer();
            let count: usize = count.try_into().map_err(|_| usage(format!("range `{s}` is too long")))?;
            Ok((0..=count).map(|i| to_f64(&(&a + &step * int(i as i64)))).collect())
        }
        _ => Err(usage(format!("expected a value or a:b:step, got `{s}`"))),
    }
}

/// Flags after `--config` overrides, with numbers still in text form.
#[derive(Debug, Clone)]
struct Resolved {
    g: Option<String>,
    delta: Option<String>,
    eps: Option<String>,
    n: Option<u32>,
    ell: Option<u32>,
    tol: Option<f64>,
}

impl Resolved {
    fn from_args(c: &CommonArgs) -> Result<Self, CliError> {
        let mut r = Resolved {
            g: c.g.clone(),
            delta: c.delta.clone(),
            eps: c.eps.clone(),
            n: c.n,
            ell: c.ell,
            tol: c.tol,
        };
        if let Some(path) = &c.config {
            let text = std::fs::read_to_string(path)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("config {}: {e}", path.display())))?;
            let obj = v.as_object().ok_or_else(|| usage("config must be a JSON object"))?;
            let text_of = |v: &Value| match v {
                Value::String(s) => Some(s.clone()),
                Value::Number(n) => Some(n.to_string()),
                _ => None,
            };
            for (key, val) in obj {
                let bad = || usage(format!("config key `{key}` has an unusable value"));
                match key.as_str() {
                    "g" => r.g = Some(text_of(val).ok_or_else(bad)?),
                    "delta" => r.delta = Some(text_of(val).ok_or_else(bad)?),
                    "eps" => r.eps = Some(text_of(val).ok_or_else(bad)?),
                    "N" => r.n = Some(val.as_u64().ok_or_else(bad)? as u32),
                    "ell" => r.ell = Some(val.as_u64().ok_or_else(bad)? as u32),
                    "tol" => r.tol = Some(val.as_f64().ok_or_else(bad)?),
                    _ => return Err(usage(format!("unknown config key `{key}`"))),
                }
            }
        }
        Ok(r)
    }

    fn eps_exact(&self) -> Result<Rational, CliError> {
        match &self.eps {
            Some(s) => parse_rational(s).map_err(|e| usage(format!("--eps: {e}"))),
            None => Ok(int(0)),
        }
    }

    fn delta_exact(&self) -> Result<Rational, CliError> {
        let s = self.delta.as_deref().ok_or_else(|| usage("--delta is required"))?;
        parse_rational(s).map_err(|e| usage(format!("--delta: {e}")))
    }

    fn delta(&self) -> Result<f64, CliError> {
        let d = to_f64(&self.delta_exact()?);
        if d > 0.0 {
            Ok(d)
        } else {
            Err(usage("--delta must be positive"))
        }
    }

    fn g_values(&self) -> Result<Vec<f64>, CliError> {
        parse_range(self.g.as_deref().ok_or_else(|| usage("--g is required"))?)
    }

    fn g(&self) -> Result<f64, CliError> {
        match self.g_values()?.as_slice() {
            [g] => Ok(*g),
            _ => Err(usage("--g must be a single value here")),
        }
    }

    fn n(&self) -> Result<u32, CliError> {
        self.n.ok_or_else(|| usage("--N is required"))
    }

    fn params(&self) -> Result<ModelParams, CliError> {
        Ok(ModelParams::new(self.g()?, self.delta()?, to_f64(&self.eps_exact()?))?)
    }
}

fn poly_report(name: String, p: &BivarPoly, n: u32, eps: &Rational, k: u32) -> Report {
    let text = p.to_string();
    let mut t = Table::new(&["kind", "N", "eps", "k", "poly"]);
    t.push(vec![name.clone(), n.to_string(), format_rational(eps), k.to_string(), text.clone()]);
    let json = json!({
        "kind": name,
        "N": n,
        "eps": format_rational(eps),
        "k": k,
        "poly": text,
        "terms": p.to_json()["terms"].clone(),
        "integral": p.is_integral(),
    });
    Report { table: t, json: Some(json), passed: true }
}

fn record_row(g: f64, index: usize, rec: &EigenvalueRecord) -> Vec<String> {
    vec![
        format_f64(g),
        index.to_string(),
        format_f64(rec.lambda),
        format_f64(rec.x),
        rec.kind.as_str().to_string(),
        rec.multiplicity.to_string(),
        rec.level_n.map(|n| n.to_string()).unwrap_or_default(),
        branch_label(rec.branch).to_string(),
    ]
}

fn spectrum_table() -> Table {
    Table::new(&CSV_HEADER.split(',').collect::<Vec<_>>())
}

fn execute(cmd: &Command, r: &Resolved) -> Result<Report, CliError> {
    let series = SeriesConfig::default();
    match cmd {
        Command::Poly { kind, k } => {
            let n = r.n()?;
            let eps = r.eps_exact()?;
            let k = k.unwrap_or(n);
            let (name, p) = match kind {
                PolyKind::Constraint => ("P".to_string(), constraint_poly(n, &eps, k)),
                PolyKind::Det => ("P_det".to_string(), constraint_poly_det(n, &eps)),
                PolyKind::A => {
                    let ell = r.ell.ok_or_else(|| usage("--ell is required for kind a"))?;
                    (format!("A_l{ell}"), a_poly(n, ell))
                }
                PolyKind::Q => ("Q".to_string(), q_poly(n, &eps, k)?),
            };
            Ok(poly_report(name, &p, n, &eps, k))
        }
        Command::Divide => {
            let n = r.n()?;
            let ell = r.ell.ok_or_else(|| usage("--ell is required"))?;
            let (q, exact) = verify_divisibility(n, ell)?;
            let matches = q == a_poly(n, ell);
            let mut t = Table::new(&["N", "ell", "exact", "matches_A", "integral", "quotient"]);
            t.push(vec![
                n.to_string(),
                ell.to_string(),
                exact.to_string(),
                matches.to_string(),
                q.is_integral().to_string(),
                q.to_string(),
            ]);
            Ok(Report { table: t, json: None, passed: exact && matches && q.is_integral() })
        }
        Command::CountRoots { y } => {
            let n = r.n()?;
            let eps = r.eps_exact()?;
            let y = parse_rational(y).map_err(|e| usage(format!("--y: {e}")))?;
            let count = count_positive_roots(n, &eps, &y);
            // the exact count is a theorem only for eps > -1/2
            let predicted = if eps > rat(-1, 2) {
                let k = (0..=n)
                    .rev()
                    .find(|&k| int(k as i64) * (int(k as i64) + &eps * int(2)) <= y)
                    .unwrap_or(0);
                Some((n - k) as usize)
            } else {
                None
            };
            let mut t = Table::new(&["N", "eps", "y", "positive_roots", "predicted"]);
            t.push(vec![
                n.to_string(),
                format_rational(&eps),
                format_rational(&y),
                count.to_string(),
                predicted.map(|p| p.to_string()).unwrap_or_default(),
            ]);
            Ok(Report { table: t, json: None, passed: predicted.map_or(true, |p| p == count) })
        }
        Command::Gfunc { x } => {
            let p = r.params()?;
            let xs = parse_range(x)?;
            let mut t = Table::new(&["x", "G", "calG"]);
            for x in xs {
                let gv = match g_function(x, &p, &series) {
                    Ok(v) => format_f64(v),
                    Err(SeriesError::PoleEncountered { .. }) => String::new(),
                    Err(e) => return Err(e.into()),
                };
                t.push(vec![format_f64(x), gv, format_f64(regularized_g(x, &p, &series)?)]);
            }
            Ok(t.into())
        }
        Command::Tfunc { branch, zeros } => {
            let n = r.n()?;
            let delta = r.delta()?;
            let eps = to_f64(&r.eps_exact()?);
            let gs = r.g_values()?;
            let branch = Branch::from(*branch);
            if *zeros {
                let (lo, hi) = (gs[0], *gs.last().unwrap());
                let step = if gs.len() > 1 { gs[1] - gs[0] } else { 1e-2 };
                let cfg = ScanConfig { scan_step: step, refine_tol: r.tol.unwrap_or(1e-10), series };
                let mut t = Table::new(&["N", "branch", "g"]);
                for g in non_juddian_roots(n, delta, eps, branch, lo.max(1e-6), hi, &cfg)? {
                    t.push(vec![n.to_string(), branch_label(Some(branch)).into(), format_f64(g)]);
                }
                return Ok(t.into());
            }
            let mut t = Table::new(&["g", "T"]);
            for g in gs {
                let p = ModelParams::new(g, delta, eps)?;
                t.push(vec![format_f64(g), format_f64(t_function(n, &p, branch, &series)?)]);
            }
            Ok(t.into())
        }
        Command::Residue { branch } => {
            let n = r.n()?;
            let mut p = r.params()?;
            let mut t = Table::new(&["pole", "N", "ell", "x0", "coefficient", "closed_form", "laurent"]);
            match r.ell {
                Some(ell) => {
                    p = p.with_eps(ell as f64 / 2.0);
                    let x0 = n as f64 + ell as f64 / 2.0;
                    let dp = double_pole_coefficients(n, ell, &p, &series)?;
                    let lau = g_laurent(x0, &p, &series)?;
                    for (name, closed, num) in [("A", dp.a, lau.m2), ("B", dp.b, lau.m1)] {
                        t.push(vec![
                            "double".into(),
                            n.to_string(),
                            ell.to_string(),
                            format_f64(x0),
                            name.into(),
                            format_f64(closed),
                            format_f64(num),
                        ]);
                    }
                }
                None => {
                    let branch = Branch::from(*branch);
                    let x0 = n as f64 + branch.sign() * p.eps;
                    let res = residue_simple(n, &p, branch, &series)?;
                    let lau = g_laurent(x0, &p, &series)?;
                    t.push(vec![
                        "simple".into(),
                        n.to_string(),
                        String::new(),
                        format_f64(x0),
                        "residue".into(),
                        format_f64(res),
                        format_f64(lau.m1),
                    ]);
                }
            }
            Ok(t.into())
        }
        Command::Spectrum { x_max } => {
            let p = r.params()?;
            let cfg = ScanConfig { refine_tol: r.tol.unwrap_or(1e-10), ..Default::default() };
            let mut t = spectrum_table();
            let mut index = 0;
            for rec in full_spectrum(&p, *x_max, &cfg)? {
                t.push(record_row(p.g, index, &rec));
                index += rec.multiplicity as usize;
            }
            Ok(t.into())
        }
        Command::Sweep { levels, x_max, scan_step } => {
            let delta = r.delta()?;
            let eps = to_f64(&r.eps_exact()?);
            let mut sweep = SweepConfig::new(r.g_values()?, *x_max)?;
            sweep.scan_step = *scan_step;
            if let Some(tol) = r.tol {
                sweep.refine_tol = tol;
            }
            let mut t = spectrum_table();
            for row in spectral_sweep(delta, eps, &sweep, *levels)? {
                t.push(record_row(row.g, row.index, &row.record));
            }
            Ok(t.into())
        }
        Command::Oracle { m, count, certify } => {
            let p = r.params()?;
            let cfg = TruncationConfig { m: *m, tol: r.tol.unwrap_or(1e-12) };
            let vals = if *certify {
                oracle::certified_spectrum(&p, &cfg, *count)?.1
            } else {
                oracle::spectrum(&p, &cfg, *count)?
            };
            let mut t = spectrum_table();
            for (i, lambda) in vals.into_iter().enumerate() {
                t.push(vec![
                    format_f64(p.g),
                    i.to_string(),
                    format_f64(lambda),
                    format_f64(lambda + p.g * p.g),
                    "oracle".into(),
                    "1".into(),
                    String::new(),
                    String::new(),
                ]);
            }
            Ok(t.into())
        }
        Command::Verify { what, max_n, max_ell } => {
            let (table, passed) = run_checks(*what, VerifyLimits { max_n: *max_n, max_ell: *max_ell });
            Ok(Report { table, json: None, passed })
        }
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Csv => report.table.to_csv(),
        Format::Json => {
            let v = report.json.clone().unwrap_or_else(|| report.table.to_json());
            let mut s = serde_json::to_string_pretty(&v).unwrap_or_default();
            s.push('\n');
            s
        }
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = Resolved::from_args(&cli.common).and_then(|r| execute(&cli.command, &r));
    let report = match outcome {
        Ok(rep) => rep,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                CliError::Usage(_) | CliError::Series(SeriesError::InvalidParams(_)) => EXIT_USAGE,
                CliError::Spectrum(crate::spectrum::SpectrumError::InvalidGrid(_)) => EXIT_USAGE,
                _ => EXIT_VERIFY_FAILED,
            };
        }
    };
    let text = render(&report, cli.common.format);
    let written = match &cli.common.out {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_VERIFY_FAILED;
    }
    if report.passed {
        EXIT_OK
    } else {
        eprintln!("verification failed");
        EXIT_VERIFY_FAILED
    }
}
