use crate::error::{Error, Result};

/// Right-continuous empirical CDF: `F(t)` is the share of values `<= t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn new(values: &[f64]) -> Result<Ecdf> {
        if values.is_empty() {
            return Err(Error::EmptyInput("ecdf"));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Malformed("NaN in ecdf input".into()));
        }
        let mut sorted = values.to_vec();
        sorted.sort_unstable_by(f64::total_cmp);
        Ok(Ecdf { sorted })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let at_or_below = self.sorted.partition_point(|v| *v <= t);
        at_or_below as f64 / self.sorted.len() as f64
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Distinct jump points, ascending.
    pub fn support(&self) -> Vec<f64> {
        let mut s = self.sorted.clone();
        s.dedup();
        s
    }
}

/// `F_b(t) - F_a(t)` at each grid point. The grid must be ascending.
pub fn ecdf_diff(values_b: &[f64], values_a: &[f64], grid: &[f64]) -> Result<Vec<f64>> {
    if grid.windows(2).any(|w| w[0] > w[1]) || grid.iter().any(|g| g.is_nan()) {
        return Err(Error::UnsortedGrid);
    }
    let (fb, fa) = (Ecdf::new(values_b)?, Ecdf::new(values_a)?);
    Ok(grid.iter().map(|&t| fb.eval(t) - fa.eval(t)).collect())
}

/// Sorted union of the jump points of two samples; a natural grid for
/// [`ecdf_diff`].
pub fn pooled_grid(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut g: Vec<f64> = a.iter().chain(b).copied().filter(|v| !v.is_nan()).collect();
    g.sort_unstable_by(f64::total_cmp);
    g.dedup();
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let f = Ecdf::new(&[1.0, 2.0, 2.0, 4.0]).unwrap();
        assert_eq!(f.eval(2.0), 0.75);
        assert_eq!(f.eval(0.5), 0.0);
        assert_eq!(f.eval(4.0), 1.0);
        assert_eq!(f.eval(f64::NEG_INFINITY), 0.0);
        assert_eq!(f.support(), vec![1.0, 2.0, 4.0]);
        assert!(Ecdf::new(&[]).is_err());
    }

    #[test]
    fn diff_examples() {
        let a = [1.0, 3.0, 3.5];
        let grid = pooled_grid(&a, &a);
        assert!(ecdf_diff(&a, &a, &grid).unwrap().iter().all(|d| *d == 0.0));
        let b: Vec<f64> = a.iter().map(|v| v + 1.0).collect();
        let grid = pooled_grid(&a, &b);
        assert!(ecdf_diff(&b, &a, &grid).unwrap().iter().all(|d| *d <= 0.0));
        assert_eq!(ecdf_diff(&[1.0], &[0.0], &[0.5]).unwrap(), vec![-1.0]);
        assert!(matches!(ecdf_diff(&a, &a, &[2.0, 1.0]), Err(Error::UnsortedGrid)));
    }
}
