//! Closed-form pole coefficients of `G` next to a direct Laurent expansion.

use aqrm::series::{double_pole_coefficients, g_laurent, residue_simple, Branch, ModelParams, SeriesConfig};

fn main() {
    let cfg = SeriesConfig::default();

    let p = ModelParams::new(0.7, 1.0, 0.2).unwrap();
    let res = residue_simple(2, &p, Branch::Plus, &cfg).unwrap();
    let lau = g_laurent(2.2, &p, &cfg).unwrap();
    println!("simple pole x = 2.2:  residue {res:.12e}  laurent {:.12e}", lau.m1);

    for g in [0.5, 1.0, 1.393031117] {
        let p = ModelParams::new(g, 1.0, 0.5).unwrap();
        let dp = double_pole_coefficients(1, 1, &p, &cfg).unwrap();
        let lau = g_laurent(1.5, &p, &cfg).unwrap();
        println!(
            "double pole x = 1.5, g = {g}:  A {:.6e} ({:.6e})  B {:.6e} ({:.6e})",
            dp.a, lau.m2, dp.b, lau.m1
        );
    }
}
