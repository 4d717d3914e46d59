/// Series/asymptotic switch point.
const SWITCH: f64 = 20.0;

/// Exponentially scaled modified Bessel function `e^{-x} I_0(x)` for `x >= 0`.
///
/// Below [`SWITCH`] the power series `sum (x/2)^{2m} / (m!)^2` is summed
/// (all terms positive); above it the Hankel expansion is used.
pub fn bessel_i0_scaled(x: f64) -> f64 {
    let x = x.abs();
    if x < SWITCH {
        series(x)
    } else {
        asymptotic(x)
    }
}

fn series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 1.0;
    loop {
        term *= q / (m * m);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
        m += 1.0;
    }
    sum * (-x).exp()
}

fn asymptotic(x: f64) -> f64 {
    // e^{-x} I_0(x) ~ (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8x)^k)
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k: f64 = 1.0;
    loop {
        let next = term * (2.0 * k - 1.0).powi(2) / (k * 8.0 * x);
        if next >= term || next < 1e-17 * sum {
            break;
        }
        term = next;
        sum += term;
        k += 1.0;
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}
