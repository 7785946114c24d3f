//! Lowest eight levels for `0 <= g <= 2.7` at `delta = 1`, written as CSV.
//!
//! `cargo run --release --example spectral_sweep -- 0.5 > curves.csv`

use aqrm::spectrum::{spectral_sweep, sweep_csv, EigenKind, SweepConfig};

fn main() {
    let eps: f64 = std::env::args().nth(1).map(|s| s.parse().expect("eps")).unwrap_or(0.5);
    let grid = (0..=270).map(|i| i as f64 / 100.0).collect();
    let sweep = SweepConfig::new(grid, 12.0).unwrap();
    let rows = spectral_sweep(1.0, eps, &sweep, 8).unwrap();
    let degenerate = rows.iter().filter(|r| r.record.multiplicity == 2).count();
    let juddian = rows.iter().filter(|r| r.record.kind == EigenKind::Juddian).count();
    eprintln!("{} rows, {juddian} juddian, {degenerate} degenerate", rows.len());
    print!("{}", sweep_csv(&rows));
}
