//! Couplings where a Juddian (polynomial) eigenvalue `N + eps - g^2` exists.

use aqrm::poly::{format_rational, int, rat, Rational};
use aqrm::spectrum::juddian_roots;

fn show(n: u32, eps: Rational, delta: Rational) {
    let roots = juddian_roots(n, &eps, &delta).expect("root isolation");
    println!("N={n} eps={} delta={}:", format_rational(&eps), format_rational(&delta));
    for (g, mult) in roots {
        println!("    g = {g:.10}  multiplicity {mult}");
    }
}

fn main() {
    show(1, rat(1, 2), int(1));
    show(1, rat(3, 10), rat(1, 2));
    show(2, int(1), rat(3, 2));
    show(2, int(2), rat(3, 2));
    show(4, rat(1, 4), int(1));
}
