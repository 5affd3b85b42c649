use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::analysis::Indicator;
use super::matching::{MatchedEntry, MatchedJournalSet};
use crate::error::Result;
use crate::stats::{median, wilcoxon_signed_rank, TestResult};

pub const DEFAULT_MIN_PUBLISHER_JOURNALS: usize = 5;
/// Significance level for a publisher verdict.
pub const VERDICT_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Increase,
    Decrease,
    Stable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Increase => "Increase",
            Verdict::Decrease => "Decrease",
            Verdict::Stable => "Stable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublisherShift {
    pub publisher: String,
    pub n_y1: usize,
    pub n_y2: usize,
    pub median_y1: Option<f64>,
    pub median_y2: Option<f64>,
    /// `100 (median_y2 - median_y1) / median_y1`; undefined when the first
    /// median is 0 or missing.
    pub delta_pct: Option<f64>,
    /// Paired signed-rank test over journals defined in both years.
    pub test: Option<TestResult>,
    pub verdict: Verdict,
}

/// Year-over-year shift of `indicator` per publisher. Publishers with
/// fewer than `min_journals` journals in both years are omitted.
pub fn publisher_distribution(
    matched: &MatchedJournalSet,
    indicator: Indicator,
    y1: i32,
    y2: i32,
    min_journals: usize,
) -> Result<Vec<PublisherShift>> {
    let mut groups: BTreeMap<&str, Vec<&MatchedEntry>> = BTreeMap::new();
    for e in &matched.entries {
        if let Some(p) = e.publisher.as_deref() {
            groups.entry(p).or_default().push(e);
        }
    }
    let mut out = Vec::new();
    for (publisher, entries) in groups {
        let a: Vec<Option<f64>> = entries.iter().map(|e| matched.value(e, y1, indicator)).collect();
        let b: Vec<Option<f64>> = entries.iter().map(|e| matched.value(e, y2, indicator)).collect();
        let va: Vec<f64> = a.iter().flatten().copied().collect();
        let vb: Vec<f64> = b.iter().flatten().copied().collect();
        if va.len().max(vb.len()) < min_journals {
            continue;
        }
        let median_y1 = median(&va).ok();
        let median_y2 = median(&vb).ok();
        let delta_pct = match (median_y1, median_y2) {
            (Some(m1), Some(m2)) if m1 != 0.0 => Some(100.0 * (m2 - m1) / m1),
            _ => None,
        };
        let diffs: Vec<f64> = a.iter().zip(&b).filter_map(|(x, y)| Some((*y)? - (*x)?)).collect();
        let test = if diffs.is_empty() { None } else { Some(wilcoxon_signed_rank(&diffs)?) };
        let verdict = match test {
            Some(t) if t.p_value < VERDICT_ALPHA => {
                let md = median(&diffs)?;
                let sign = if md != 0.0 { md } else { delta_pct.unwrap_or(0.0) };
                if sign > 0.0 {
                    Verdict::Increase
                } else if sign < 0.0 {
                    Verdict::Decrease
                } else {
                    Verdict::Stable
                }
            }
            _ => Verdict::Stable,
        };
        out.push(PublisherShift {
            publisher: publisher.to_string(),
            n_y1: va.len(),
            n_y2: vb.len(),
            median_y1,
            median_y2,
            delta_pct,
            test,
            verdict,
        });
    }
    Ok(out)
}
