use serde::{Deserialize, Serialize};

use super::rank::average_ranks;
use crate::error::{Error, Result};

/// Two aligned samples, one journal per index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedSample {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl PairedSample {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::InsufficientData(format!(
                "paired sample lengths differ: {} vs {}",
                x.len(),
                y.len()
            )));
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(Error::Malformed("paired sample contains a non-finite value".into()));
        }
        Ok(PairedSample { x, y })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    fn require(&self, min: usize) -> Result<()> {
        if self.len() < min {
            return Err(Error::InsufficientData(format!("need {min} pairs, have {}", self.len())));
        }
        Ok(())
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Population moments `(mean_x, mean_y, var_x, var_y, cov)`.
fn moments(x: &[f64], y: &[f64]) -> (f64, f64, f64, f64, f64) {
    let n = x.len() as f64;
    let (mx, my) = (mean(x), mean(y));
    let (mut vx, mut vy, mut c) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        vx += dx * dx;
        vy += dy * dy;
        c += dx * dy;
    }
    (mx, my, vx / n, vy / n, c / n)
}

pub fn pearson(pair: &PairedSample) -> Result<f64> {
    pair.require(2)?;
    let (_, _, vx, vy, c) = moments(pair.x(), pair.y());
    if vx == 0.0 || vy == 0.0 {
        return Err(Error::Undefined("correlation with zero variance"));
    }
    Ok((c / (vx.sqrt() * vy.sqrt())).clamp(-1.0, 1.0))
}

/// Pearson correlation of tie-averaged ranks.
pub fn spearman(pair: &PairedSample) -> Result<f64> {
    pair.require(2)?;
    let ranked = PairedSample { x: average_ranks(pair.x()), y: average_ranks(pair.y()) };
    pearson(&ranked).map_err(|_| Error::Undefined("spearman with zero rank variance"))
}

/// Lin's concordance correlation coefficient with population moments:
/// `2 cov / (var_x + var_y + (mean_x - mean_y)^2)`.
pub fn lin_ccc(pair: &PairedSample) -> Result<f64> {
    pair.require(2)?;
    let (mx, my, vx, vy, c) = moments(pair.x(), pair.y());
    let denom = vx + vy + (mx - my).powi(2);
    if denom == 0.0 {
        return Err(Error::Undefined("concordance of two identical constants"));
    }
    Ok((2.0 * c / denom).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(x: &[f64], y: &[f64]) -> PairedSample {
        PairedSample::new(x.to_vec(), y.to_vec()).unwrap()
    }

    #[test]
    fn spearman_examples() {
        let x: Vec<f64> = (1..=10).map(f64::from).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        assert!((spearman(&pair(&x, &y)).unwrap() - 1.0).abs() < 1e-15);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((spearman(&pair(&x, &neg)).unwrap() + 1.0).abs() < 1e-15);
        // rank differences (-1, 1, -1, 1, 0): 1 - 6*4/(5*24) = 0.8
        let r = spearman(&pair(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 1.0, 4.0, 3.0, 5.0])).unwrap();
        assert!((r - 0.8).abs() < 1e-12);
        assert!(matches!(spearman(&pair(&[1.0, 2.0], &[3.0, 3.0])), Err(Error::Undefined(_))));
    }

    #[test]
    fn ccc_examples() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert!((lin_ccc(&pair(&x, &x)).unwrap() - 1.0).abs() < 1e-15);
        // var(x) = 1.25 (population), c = 2: 2.5 / (2.5 + 4)
        let shifted: Vec<f64> = x.iter().map(|v| v + 2.0).collect();
        assert!((lin_ccc(&pair(&x, &shifted)).unwrap() - 2.5 / 6.5).abs() < 1e-12);
        let z = [-2.0, -1.0, 1.0, 2.0];
        let mz: Vec<f64> = z.iter().map(|v| -v).collect();
        assert!((lin_ccc(&pair(&z, &mz)).unwrap() + 1.0).abs() < 1e-15);
        assert!(lin_ccc(&pair(&[3.0, 3.0], &[3.0, 3.0])).is_err());
        // constants that disagree are defined: zero agreement
        assert_eq!(lin_ccc(&pair(&[3.0, 3.0], &[4.0, 4.0])).unwrap(), 0.0);
    }

    #[test]
    fn length_mismatch_rejected() {
        assert!(PairedSample::new(vec![1.0], vec![]).is_err());
        assert!(spearman(&pair(&[1.0], &[1.0])).is_err());
    }
}
