use crate::error::{Error, Result};

/// 1-based ranks with ties replaced by the mean of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i+1 ..= j share the mean rank
        let rank = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

/// Sizes of tie groups (groups of one included).
pub fn tie_groups(values: &[f64]) -> Vec<usize> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let mut groups = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        groups.push(j - i);
        i = j;
    }
    groups
}

/// Percent rank in `[0, 1]`: `(average rank - 1) / (n - 1)`; a single value
/// maps to 0.
pub fn percent_rank(values: &[f64]) -> Result<Vec<f64>> {
    match values.len() {
        0 => Err(Error::EmptyInput("percent_rank")),
        1 => Ok(vec![0.0]),
        n => {
            let denom = (n - 1) as f64;
            Ok(average_ranks(values).into_iter().map(|r| (r - 1.0) / denom).collect())
        }
    }
}

/// Min-max rescaling to `[0, 1]`. Constant input maps to zeros.
pub fn minmax_normalize(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::EmptyInput("minmax_normalize"));
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    if span == 0.0 {
        return Ok(vec![0.0; values.len()]);
    }
    Ok(values.iter().map(|v| (v - min) / span).collect())
}

/// Median with the midpoint convention for even lengths.
pub fn median(values: &[f64]) -> Result<f64> {
    quantile(values, 0.5)
}

/// Linear-interpolation quantile (type 7), `q` in `[0, 1]`.
pub fn quantile(values: &[f64], q: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput("quantile"));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidConfig(format!("quantile {q} outside [0, 1]")));
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    Ok(sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_zeros_tie() {
        assert_eq!(average_ranks(&[0.0, -0.0, 1.0]), vec![1.5, 1.5, 3.0]);
        assert_eq!(tie_groups(&[-0.0, 0.0]), vec![2]);
    }

    #[test]
    fn percent_rank_examples() {
        assert_eq!(percent_rank(&[10.0, 20.0, 30.0]).unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(percent_rank(&[5.0, 5.0]).unwrap(), vec![0.5, 0.5]);
        assert_eq!(percent_rank(&[30.0, 20.0, 10.0]).unwrap(), vec![1.0, 0.5, 0.0]);
        assert_eq!(percent_rank(&[42.0]).unwrap(), vec![0.0]);
        assert!(percent_rank(&[]).is_err());
    }

    #[test]
    fn minmax_examples() {
        assert_eq!(minmax_normalize(&[2.0, 4.0, 10.0]).unwrap(), vec![0.0, 0.25, 1.0]);
        assert_eq!(minmax_normalize(&[7.0, 7.0, 7.0]).unwrap(), vec![0.0; 3]);
        assert_eq!(minmax_normalize(&[0.0, 100.0]).unwrap(), vec![0.0, 1.0]);
        assert!(minmax_normalize(&[]).is_err());
    }

    #[test]
    fn ranks_and_ties() {
        assert_eq!(average_ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
        assert_eq!(tie_groups(&[3.0, 1.0, 3.0, 2.0]), vec![1, 1, 2]);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]).unwrap(), 2.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]).unwrap(), 2.5);
        assert_eq!(quantile(&[1.0, 2.0, 3.0, 4.0, 5.0], 0.25).unwrap(), 2.0);
    }
}
