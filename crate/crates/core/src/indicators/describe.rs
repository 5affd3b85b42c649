use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Summary row: n, range, centre, normal-approximation 95% CI, sample SD
/// and standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveStats {
    pub n: usize,
    pub min: f64,
    pub mean: f64,
    pub median: f64,
    pub max: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub sd: f64,
    pub se: f64,
}

pub const CI95_Z: f64 = 1.96;

/// Sample SD uses `n - 1`; a single value has SD 0 and a collapsed CI.
pub fn describe(values: &[f64]) -> Result<DescriptiveStats> {
    if values.is_empty() {
        return Err(Error::EmptyInput("describe"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len();
    let mean = sorted.iter().sum::<f64>() / n as f64;
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let sd = if n > 1 {
        let ss: f64 = sorted.iter().map(|v| (v - mean).powi(2)).sum();
        (ss / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let se = sd / (n as f64).sqrt();
    Ok(DescriptiveStats {
        n,
        min: sorted[0],
        mean,
        median,
        max: sorted[n - 1],
        ci95_low: mean - CI95_Z * se,
        ci95_high: mean + CI95_Z * se,
        sd,
        se,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_values() {
        let d = describe(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!((d.mean, d.median, d.min, d.max), (2.5, 2.5, 1.0, 4.0));
        // sqrt(5/3), sqrt(5/3)/2
        assert!((d.sd - 1.290_994_448_735_805_6).abs() < 1e-12);
        assert!((d.se - 0.645_497_224_367_902_8).abs() < 1e-12);
        assert!((d.ci95_low - (2.5 - 1.96 * d.se)).abs() < 1e-15);
    }

    #[test]
    fn degenerate_inputs() {
        let d = describe(&[5.0]).unwrap();
        assert_eq!((d.mean, d.median, d.min, d.max, d.sd, d.se), (5.0, 5.0, 5.0, 5.0, 0.0, 0.0));
        assert_eq!((d.ci95_low, d.ci95_high), (5.0, 5.0));
        let d = describe(&[2.0, 2.0, 2.0]).unwrap();
        assert_eq!((d.sd, d.ci95_low, d.ci95_high), (0.0, 2.0, 2.0));
        assert!(matches!(describe(&[]), Err(Error::EmptyInput(_))));
    }
}
