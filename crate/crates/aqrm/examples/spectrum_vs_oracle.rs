//! Classified eigenvalues from the G-function next to the truncated-Hamiltonian oracle.

use aqrm::oracle::{self, TruncationConfig};
use aqrm::series::ModelParams;
use aqrm::spectrum::{expand_multiplicity, lowest_levels, ScanConfig};

fn main() {
    for (g, delta, eps) in [(1.0, 1.0, 0.2), (0.5, 1.0, 0.5), (1.8, 2.0, 1.0)] {
        let p = ModelParams::new(g, delta, eps).unwrap();
        let recs = lowest_levels(&p, 8, &ScanConfig::default()).unwrap();
        let exact = oracle::spectrum(&p, &TruncationConfig { m: 160, tol: 1e-12 }, 8).unwrap();
        println!("g={g} delta={delta} eps={eps}");
        let flat = expand_multiplicity(&recs);
        for (i, (a, b)) in flat.iter().zip(&exact).enumerate() {
            let rec = recs.iter().find(|r| r.lambda == *a).unwrap();
            println!("  {i}: {a:>16.12} {:<12} oracle {b:>16.12}  diff {:.1e}", rec.kind.as_str(), (a - b).abs());
        }
    }
}
