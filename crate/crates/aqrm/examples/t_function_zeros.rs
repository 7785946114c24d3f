//! Non-Juddian exceptional couplings are zeros of the T-function.

use aqrm::series::Branch;
use aqrm::spectrum::{non_juddian_roots, ScanConfig};

fn main() {
    let cfg = ScanConfig::default();
    for (n, delta, eps, branch) in [
        (1, 1.0, 0.5, Branch::Plus),
        (1, 0.5, 0.3, Branch::Plus),
        (1, 3.0, 1.5, Branch::Minus),
    ] {
        let zeros = non_juddian_roots(n, delta, eps, branch, 0.05, 2.5, &cfg).unwrap();
        println!("N={n} delta={delta} eps={eps} {branch:?}: {zeros:.9?}");
    }
}
