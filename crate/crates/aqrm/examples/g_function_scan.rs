//! `G` has a pole at `x = N + eps` unless the coupling is Juddian; the regularized function is smooth.

use aqrm::series::{g_function, regularized_g, ModelParams, SeriesConfig};

fn main() {
    let cfg = SeriesConfig::default();
    // Juddian coupling for N = 1, eps = 3/10, delta = 1/2: the pole at x = 1.3 is removable
    let g = (27.0f64 / 20.0).sqrt() / 2.0;
    for (label, g) in [("juddian", g), ("generic", 0.7)] {
        let p = ModelParams::new(g, 0.5, 0.3).unwrap();
        println!("{label} g = {g:.6}");
        for x in [1.28, 1.29, 1.299, 1.301, 1.31, 1.32] {
            let gv = g_function(x, &p, &cfg).unwrap();
            let reg = regularized_g(x, &p, &cfg).unwrap();
            println!("    x = {x:<6} G = {gv:>14.6e}  calG = {reg:>14.6e}");
        }
        println!("    calG(1.3) = {:.6e}", regularized_g(1.3, &p, &cfg).unwrap());
    }
}
