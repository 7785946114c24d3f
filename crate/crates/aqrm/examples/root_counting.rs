//! Positive roots of `P_N^(N,eps)(x, y)` in `x` as `y` crosses the thresholds `k(k + 2 eps)`.

use aqrm::poly::{format_rational, int, rat};
use aqrm::spectrum::count_positive_roots;

fn main() {
    let n = 6;
    let eps = rat(2, 5);
    println!("N = {n}, eps = {}", format_rational(&eps));
    for k in 0..=n as i64 {
        let lo = int(k) * (int(k) + &eps * int(2));
        let mid = &lo + rat(1, 2);
        println!(
            "  y = {:>8}: {} roots   y = {:>8}: {} roots",
            format_rational(&lo),
            count_positive_roots(n, &eps, &lo),
            format_rational(&mid),
            count_positive_roots(n, &eps, &mid)
        );
    }
}
