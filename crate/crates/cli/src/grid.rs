//! Parsing of `a:b:step` ranges and comma lists.

use anyhow::{bail, Result};

/// Inclusive arithmetic range `start:stop:step`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        // rounding keeps 0.1 + 2*0.1 printing as 0.3
        (0..=n).map(|i| round12(self.start + i as f64 * self.step)).collect()
    }
}

fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn parse_range(s: &str) -> Result<Range> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        bail!("expected start:stop:step, got {s:?}");
    }
    let num = |p: &str| -> Result<f64> {
        let v: f64 = p.trim().parse().map_err(|_| anyhow::anyhow!("{p:?} is not a number"))?;
        if !v.is_finite() {
            bail!("{p:?} is not finite");
        }
        Ok(v)
    };
    let r = Range {
        start: num(parts[0])?,
        stop: num(parts[1])?,
        step: num(parts[2])?,
    };
    if !(r.step > 0.0) {
        bail!("step must be positive in {s:?}");
    }
    if r.stop < r.start {
        bail!("empty range {s:?}");
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusive_and_clean() {
        let r = parse_range("-1:1.5:0.5").unwrap();
        assert_eq!(r.values(), vec![-1.0, -0.5, 0.0, 0.5, 1.0, 1.5]);
        assert_eq!(parse_range("0:0.3:0.1").unwrap().values(), vec![0.0, 0.1, 0.2, 0.3]);
        assert_eq!(parse_range("2:2:1").unwrap().values(), vec![2.0]);
    }

    #[test]
    fn rejects_bad_ranges() {
        for s in ["1:0:0.1", "0:1:0", "0:1:-1", "0:1", "a:1:0.1", "0:inf:1"] {
            assert!(parse_range(s).is_err(), "{s}");
        }
    }
}
