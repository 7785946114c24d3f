use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `1/Gamma(z)`, an entire function: exactly zero at `0, -1, -2, ...`.
pub fn reciprocal_gamma(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    if z < 0.5 {
        let n = z.round();
        if z == n {
            return 0.0;
        }
        // sin(pi z) from the reduced argument keeps full relative accuracy near the zeros
        let r = z - n;
        let s = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 } * (PI * r).sin();
        return s * gamma_positive(1.0 - z) / PI;
    }
    1.0 / gamma_positive(z)
}

/// Lanczos `Gamma(z)` for `z >= 0.5`.
fn gamma_positive(z: f64) -> f64 {
    let w = z - 1.0;
    let mut a = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (w + k as f64);
    }
    let t = w + LANCZOS_G + 0.5;
    // split the power so large arguments do not overflow before the exponential decays
    let half = t.powf(0.5 * (w + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert!((reciprocal_gamma(1.0) - 1.0).abs() < 1e-14);
        for z in [0.0, -1.0, -2.0, -17.0] {
            assert_eq!(reciprocal_gamma(z), 0.0);
        }
        assert!((reciprocal_gamma(0.5) - 1.0 / PI.sqrt()).abs() < 1e-15);
        assert!((reciprocal_gamma(5.0) - 1.0 / 24.0).abs() < 1e-16);
    }
}
