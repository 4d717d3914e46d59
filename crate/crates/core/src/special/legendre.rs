use super::scaled::ScaledValue;
use crate::error::{Error, Result};

/// `P_k(x)` for `x >= 1`, via the three-term recurrence with the running pair
/// renormalized to a common power of two after every step.
pub fn legendre_scaled(k: usize, x: f64) -> Result<ScaledValue> {
    let mut last = ScaledValue::ONE;
    run_recurrence(k, x, |_, v| last = v)?;
    Ok(last)
}

/// `[P_0(x), ..., P_kmax(x)]` for `x >= 1`.
pub fn legendre_scaled_sequence(kmax: usize, x: f64) -> Result<Vec<ScaledValue>> {
    let mut out = Vec::with_capacity(kmax + 1);
    run_recurrence(kmax, x, |_, v| out.push(v))?;
    Ok(out)
}

fn run_recurrence(kmax: usize, x: f64, mut emit: impl FnMut(usize, ScaledValue)) -> Result<()> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::domain("legendre_scaled", format!("x = {x} must satisfy x >= 1")));
    }
    emit(0, ScaledValue::ONE);
    if kmax == 0 {
        return Ok(());
    }
    // P_{k-1} and P_k share the exponent `shift`
    let mut prev = 1.0f64;
    let mut cur = x;
    let mut shift: i64 = 0;
    emit(1, ScaledValue::from_f64(x));
    for k in 1..kmax {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        // for x >= 1 the sequence is positive and non-decreasing
        let (_, _, e) = ScaledValue::from_f64(next).into_parts();
        let scale = 2f64.powi(-(e as i32));
        prev = cur * scale;
        cur = next * scale;
        shift += e;
        emit(k + 1, ScaledValue::from_parts(1, cur, shift));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn at_one_is_one() {
        for k in [0, 1, 2, 17, 1000, 100_000] {
            let p = legendre_scaled(k, 1.0).unwrap();
            assert!((p.to_f64() - 1.0).abs() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn low_order_closed_forms() {
        // (3x^2 - 1)/2 at 1.5
        let direct = (3.0 * 1.5f64.powi(2) - 1.0) / 2.0;
        assert_eq!(direct, 2.875);
        assert!((legendre_scaled(2, 1.5).unwrap().to_f64() - direct).abs() < 1e-15);
        // P_1 at the model argument for delta = 1
        let delta = 1.0f64;
        let x = (4.0 - delta) / (2.0 * (4.0 - 2.0 * delta).sqrt());
        let p1 = legendre_scaled(1, x).unwrap().to_f64();
        assert!((p1 - 3.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
        // P_5 explicit polynomial
        let x: f64 = 1.3;
        let p5 = (63.0 * x.powi(5) - 70.0 * x.powi(3) + 15.0 * x) / 8.0;
        assert!((legendre_scaled(5, x).unwrap().to_f64() / p5 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn domain() {
        assert!(legendre_scaled(3, 0.99).is_err());
        assert!(legendre_scaled(3, f64::NAN).is_err());
    }

    #[test]
    fn overflows_f64_but_not_scaled() {
        let p = legendre_scaled(5000, 1.9).unwrap();
        assert!(p.to_f64().is_infinite());
        // leading asymptotics (x + sqrt(x^2-1))^k dominates the log
        let x: f64 = 1.9;
        let ln_growth = 5000.0 * (x + (x * x - 1.0).sqrt()).ln();
        assert!((p.ln_abs() / ln_growth - 1.0).abs() < 2e-3);
    }

    #[test]
    fn sequence_matches_single_calls() {
        let seq = legendre_scaled_sequence(300, 1.2).unwrap();
        assert_eq!(seq.len(), 301);
        for k in [0, 1, 2, 57, 300] {
            assert_eq!(seq[k], legendre_scaled(k, 1.2).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn recurrence_residual(x in 1.0f64..2.0, k in 2usize..10_000) {
            let seq = legendre_scaled_sequence(k + 1, x).unwrap();
            let (pm, p0, pp) = (seq[k - 1], seq[k], seq[k + 1]);
            let kf = k as f64;
            let lhs = (pp * (kf + 1.0))
                .add(-(p0 * ((2.0 * kf + 1.0) * x)))
                .add(pm * kf);
            let rel = if lhs.is_zero() { 0.0 } else { (lhs / pp).to_f64().abs() };
            prop_assert!(rel <= 1e-10, "residual {rel} at k={k}, x={x}");
        }
    }
}
