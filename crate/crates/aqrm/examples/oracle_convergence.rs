//! Truncation drift of the oracle eigenvalues as the boson cutoff grows.

use aqrm::oracle::{certified_spectrum, convergence_study, TruncationConfig};
use aqrm::series::ModelParams;

fn main() {
    let p = ModelParams::new(1.0, 1.0, 0.2).unwrap();
    for row in convergence_study(&p, &[20, 40, 60, 120], 8).unwrap() {
        println!("M = {:>3}  lambda_0 = {:.14}  max drift {:.2e}", row.m, row.eigenvalues[0], row.max_drift());
    }
    let strong = ModelParams::new(2.5, 3.0, 0.7).unwrap();
    let (m, vals) = certified_spectrum(&strong, &TruncationConfig::default(), 8).unwrap();
    println!("g = 2.5: certified at M = {m}, lowest {:.10?}", &vals[..3]);
}
