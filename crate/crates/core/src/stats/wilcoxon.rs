//! Wilcoxon signed-rank and rank-sum tests, two-sided.
//!
//! Small samples use the exact permutation distribution of the (tie-averaged)
//! rank statistic; ranks are doubled so the distribution lives on integers.
//! Larger samples use the normal approximation with tie-adjusted variance and
//! a 0.5 continuity correction.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::rank::{average_ranks, tie_groups};
use crate::error::{Error, Result};

/// Samples at or below this size get an exact p-value.
pub const EXACT_MAX_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestMethod {
    Exact,
    NormalApprox,
}

impl TestMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TestMethod::Exact => "exact",
            TestMethod::NormalApprox => "normal_approx",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    /// `W+` for the signed-rank test, `U` of the first sample for rank-sum.
    pub statistic: f64,
    pub p_value: f64,
    pub method: TestMethod,
    /// Non-zero differences (signed-rank) or combined size (rank-sum).
    pub n: usize,
}

/// `*` below 0.05, `**` below 0.01, `***` below 0.001, `—` otherwise.
pub fn significance_stars(p: f64) -> &'static str {
    if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else {
        "—"
    }
}

fn two_sided(lower: f64, upper: f64) -> f64 {
    (2.0 * lower.min(upper)).min(1.0)
}

fn normal_two_sided(deviation: f64, variance: f64) -> f64 {
    if variance <= 0.0 {
        return 1.0;
    }
    let z = (deviation.abs() - 0.5).max(0.0) / variance.sqrt();
    let std = Normal::standard();
    (2.0 * std.sf(z)).min(1.0)
}

fn doubled(ranks: &[f64]) -> Vec<usize> {
    ranks.iter().map(|r| (r * 2.0).round() as usize).collect()
}

/// Tail probabilities `P(S <= s)` and `P(S >= s)` from a count table.
fn tails(counts: &[f64], s: usize) -> (f64, f64) {
    let total: f64 = counts.iter().sum();
    let le: f64 = counts[..=s.min(counts.len() - 1)].iter().sum();
    let ge: f64 = counts[s.min(counts.len())..].iter().sum();
    (le / total, ge / total)
}

/// Paired two-sided signed-rank test on differences. Zero differences are
/// dropped; if none remain the result is `p = 1`, statistic 0.
pub fn wilcoxon_signed_rank(diffs: &[f64]) -> Result<TestResult> {
    if diffs.iter().any(|d| !d.is_finite()) {
        return Err(Error::Malformed("non-finite difference".into()));
    }
    let nz: Vec<f64> = diffs.iter().copied().filter(|d| *d != 0.0).collect();
    let n = nz.len();
    if n == 0 {
        return Ok(TestResult { statistic: 0.0, p_value: 1.0, method: TestMethod::Exact, n: 0 });
    }
    let abs: Vec<f64> = nz.iter().map(|d| d.abs()).collect();
    let ranks = average_ranks(&abs);
    let w_plus: f64 = nz.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).map(|(_, r)| r).sum();

    if n <= EXACT_MAX_N {
        let r2 = doubled(&ranks);
        let max: usize = r2.iter().sum();
        // counts[s] = number of sign patterns whose doubled W+ equals s
        let mut counts = vec![0.0f64; max + 1];
        counts[0] = 1.0;
        for &r in &r2 {
            for s in (r..=max).rev() {
                counts[s] += counts[s - r];
            }
        }
        let (le, ge) = tails(&counts, (w_plus * 2.0).round() as usize);
        return Ok(TestResult {
            statistic: w_plus,
            p_value: two_sided(le, ge),
            method: TestMethod::Exact,
            n,
        });
    }

    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    let tie_adj: f64 = tie_groups(&abs).iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / 48.0;
    let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_adj;
    Ok(TestResult {
        statistic: w_plus,
        p_value: normal_two_sided(w_plus - mean, var),
        method: TestMethod::NormalApprox,
        n,
    })
}

/// Two-sided Mann-Whitney rank-sum test. Exact when the combined size is at
/// most [`EXACT_MAX_N`].
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<TestResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput("wilcoxon_rank_sum"));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::Malformed("non-finite sample value".into()));
    }
    let (n1, n2) = (a.len(), b.len());
    let n = n1 + n2;
    let combined: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = average_ranks(&combined);
    let r1: f64 = ranks[..n1].iter().sum();
    let u = r1 - (n1 * (n1 + 1)) as f64 / 2.0;

    if n <= EXACT_MAX_N {
        let r2 = doubled(&ranks);
        let max: usize = r2.iter().sum();
        // table[k][s]: subsets of size k with doubled rank sum s
        let mut table = vec![vec![0.0f64; max + 1]; n1 + 1];
        table[0][0] = 1.0;
        for &r in &r2 {
            for k in (1..=n1).rev() {
                for s in (r..=max).rev() {
                    table[k][s] += table[k - 1][s - r];
                }
            }
        }
        let (le, ge) = tails(&table[n1], (r1 * 2.0).round() as usize);
        return Ok(TestResult { statistic: u, p_value: two_sided(le, ge), method: TestMethod::Exact, n });
    }

    let (f1, f2, nf) = (n1 as f64, n2 as f64, n as f64);
    let ties: f64 = tie_groups(&combined).iter().map(|&t| (t * t * t - t) as f64).sum();
    let var = f1 * f2 / 12.0 * ((nf + 1.0) - ties / (nf * (nf - 1.0)));
    Ok(TestResult {
        statistic: u,
        p_value: normal_two_sided(u - f1 * f2 / 2.0, var),
        method: TestMethod::NormalApprox,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_rank_examples() {
        let r = wilcoxon_signed_rank(&[0.0, 0.0]).unwrap();
        assert_eq!((r.p_value, r.statistic), (1.0, 0.0));
        let r = wilcoxon_signed_rank(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(r.statistic, 15.0);
        assert_eq!(r.method, TestMethod::Exact);
        assert!((r.p_value - 0.0625).abs() < 1e-15);
        let r = wilcoxon_signed_rank(&[-1.0, 1.0]).unwrap();
        assert_eq!(r.p_value, 1.0);
        // smallest attainable p with two non-zero differences
        let r = wilcoxon_signed_rank(&[1.0, 2.0]).unwrap();
        assert_eq!(r.p_value, 0.5);
    }

    #[test]
    fn signed_rank_large_uses_normal() {
        let r = wilcoxon_signed_rank(&[0.7; 13]).unwrap();
        assert_eq!(r.method, TestMethod::NormalApprox);
        assert!(r.p_value < 0.001, "{r:?}");
        assert_eq!(significance_stars(r.p_value), "***");
    }

    #[test]
    fn rank_sum_examples() {
        let r = wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[10.0, 11.0, 12.0]).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!((r.p_value - 0.1).abs() < 1e-15);
        assert_eq!(wilcoxon_rank_sum(&[4.0], &[4.0]).unwrap().p_value, 1.0);
        assert!((wilcoxon_rank_sum(&[1.0, 2.0, 5.0], &[1.0, 2.0, 5.0]).unwrap().p_value - 1.0).abs() < 1e-12);
        assert!(wilcoxon_rank_sum(&[], &[1.0]).is_err());
        let big: Vec<f64> = (0..30).map(f64::from).collect();
        let r = wilcoxon_rank_sum(&big, &big).unwrap();
        assert_eq!(r.method, TestMethod::NormalApprox);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn stars() {
        assert_eq!(significance_stars(0.0005), "***");
        assert_eq!(significance_stars(0.005), "**");
        assert_eq!(significance_stars(0.04), "*");
        assert_eq!(significance_stars(0.05), "—");
    }
}
