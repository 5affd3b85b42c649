//! Cohort percentiles and the four weight classes of I3.
//!
//! Papers are grouped by (publication year, document type) and ranked by
//! fractional citation count. A paper's percentile is the share of cohort
//! members with a strictly smaller count, so ties take the low percentile
//! and an all-zero cohort sits entirely at 0.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::DocType;
use crate::error::{Error, Result};
use crate::graph::{CitationGraph, PaperIdx};
use crate::window::YearRange;

/// Disjoint percentile bands, best first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PercentileClass {
    Top1,
    Top10,
    Top50,
    Bottom50,
}

impl PercentileClass {
    pub const ALL: [PercentileClass; 4] = [
        PercentileClass::Top1,
        PercentileClass::Top10,
        PercentileClass::Top50,
        PercentileClass::Bottom50,
    ];

    /// Band for a percentile in `[0, 100)`. Bands are closed on the left.
    pub fn from_percentile(p: f64) -> Result<PercentileClass> {
        if !(0.0..100.0).contains(&p) {
            return Err(Error::PercentileOutOfRange(p));
        }
        Ok(if p >= 99.0 {
            PercentileClass::Top1
        } else if p >= 90.0 {
            PercentileClass::Top10
        } else if p >= 50.0 {
            PercentileClass::Top50
        } else {
            PercentileClass::Bottom50
        })
    }

    /// Same band rule evaluated on integers: `below` members strictly under
    /// the paper in a cohort of `n`.
    pub fn from_rank(below: usize, n: usize) -> PercentileClass {
        debug_assert!(below < n);
        let (b, n) = (below as u128 * 100, n as u128);
        if b >= 99 * n {
            PercentileClass::Top1
        } else if b >= 90 * n {
            PercentileClass::Top10
        } else if b >= 50 * n {
            PercentileClass::Top50
        } else {
            PercentileClass::Bottom50
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PercentileClass::Top1 => "top1",
            PercentileClass::Top10 => "top10",
            PercentileClass::Top50 => "top50",
            PercentileClass::Bottom50 => "bottom50",
        }
    }
}

impl fmt::Display for PercentileClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integer weight per band, indexed like [`PercentileClass::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWeights(pub [u64; 4]);

impl Default for ClassWeights {
    fn default() -> Self {
        ClassWeights([100, 10, 2, 0])
    }
}

impl ClassWeights {
    /// Weights must be non-increasing from Top1 to Bottom50.
    pub fn new(weights: [u64; 4]) -> Result<Self> {
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidConfig(format!(
                "class weights must be non-increasing, got {weights:?}"
            )));
        }
        Ok(ClassWeights(weights))
    }

    pub fn weight(&self, class: PercentileClass) -> u64 {
        self.0[class.index()]
    }

    pub fn max(&self) -> u64 {
        self.0[0]
    }
}

impl FromStr for ClassWeights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<u64> = s
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidConfig(format!("weights `{s}`: {e}")))?;
        let arr: [u64; 4] = parts
            .try_into()
            .map_err(|_| Error::InvalidConfig(format!("weights `{s}` must have four entries")))?;
        ClassWeights::new(arr)
    }
}

impl fmt::Display for ClassWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a},{b},{c},{d}")
    }
}

/// Papers sharing a publication year and a document type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cohort {
    pub year: i32,
    pub doc_type: DocType,
    pub members: Vec<PaperIdx>,
}

impl Cohort {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Groups every paper published in `years` with an included document type
/// into its (year, doc_type) cohort. Cohorts come back sorted by key and
/// members ascending.
pub fn build_cohorts(
    graph: &CitationGraph,
    years: &BTreeSet<i32>,
    doc_types: &BTreeSet<DocType>,
) -> Result<Vec<Cohort>> {
    if years.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let mut groups: BTreeMap<(i32, DocType), Vec<PaperIdx>> = BTreeMap::new();
    for idx in 0..graph.paper_count() as PaperIdx {
        let (year, doc_type) = (graph.year(idx), graph.doc_type(idx));
        if years.contains(&year) && doc_types.contains(&doc_type) {
            groups.entry((year, doc_type)).or_default().push(idx);
        }
    }
    Ok(groups
        .into_iter()
        .map(|((year, doc_type), members)| Cohort { year, doc_type, members })
        .collect())
}

/// For each value, how many entries of `values` are strictly smaller.
pub fn strictly_below_counts(values: &[f64]) -> Vec<usize> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    values
        .iter()
        .map(|v| sorted.partition_point(|s| s.total_cmp(v).is_lt()))
        .collect()
}

/// Percentile of `member` within `cohort`; `counts` is aligned with
/// `cohort.members`.
pub fn percentile_of(member: PaperIdx, cohort: &Cohort, counts: &[f64]) -> Result<f64> {
    let pos = cohort
        .members
        .iter()
        .position(|&m| m == member)
        .ok_or_else(|| Error::NotInCohort(member.to_string()))?;
    let own = counts[pos];
    let below = counts.iter().filter(|c| c.total_cmp(&own).is_lt()).count();
    Ok(100.0 * below as f64 / cohort.len() as f64)
}

/// Band and weight for a percentile.
pub fn classify(percentile: f64, weights: &ClassWeights) -> Result<(PercentileClass, u64)> {
    let class = PercentileClass::from_percentile(percentile)?;
    Ok((class, weights.weight(class)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PercentileClassification {
    pub paper: PaperIdx,
    pub fractional_count: f64,
    pub percentile: f64,
    pub class: PercentileClass,
    pub class_weight: u64,
}

/// Classifies a cohort given fractional counts aligned with its members.
pub fn classify_cohort(
    cohort: &Cohort,
    counts: &[f64],
    weights: &ClassWeights,
) -> Vec<PercentileClassification> {
    let n = cohort.len();
    strictly_below_counts(counts)
        .into_iter()
        .zip(cohort.members.iter().zip(counts))
        .map(|(below, (&paper, &fractional_count))| {
            let class = PercentileClass::from_rank(below, n);
            PercentileClassification {
                paper,
                fractional_count,
                percentile: 100.0 * below as f64 / n as f64,
                class,
                class_weight: weights.weight(class),
            }
        })
        .collect()
}

/// Papers per band, indexed like [`PercentileClass::ALL`].
pub fn cohort_class_counts(classified: &[PercentileClassification]) -> [u64; 4] {
    let mut counts = [0u64; 4];
    for c in classified {
        counts[c.class.index()] += 1;
    }
    counts
}

/// Classification of every cohort member for one citation window.
#[derive(Debug, Clone)]
pub struct Classified {
    pub cohorts: Vec<Cohort>,
    /// Per cohort, aligned with `cohorts[i].members`.
    pub classes: Vec<Vec<PercentileClassification>>,
    by_paper: BTreeMap<PaperIdx, (usize, usize)>,
}

impl Classified {
    /// Builds cohorts, computes fractional counts over `cite_window` and
    /// classifies each cohort. Cohorts are processed in parallel; the result
    /// does not depend on scheduling.
    pub fn compute(
        graph: &CitationGraph,
        pub_years: &BTreeSet<i32>,
        doc_types: &BTreeSet<DocType>,
        cite_window: &YearRange,
        weights: &ClassWeights,
    ) -> Result<Classified> {
        let cohorts = build_cohorts(graph, pub_years, doc_types)?;
        let classes: Vec<Vec<PercentileClassification>> = cohorts
            .par_iter()
            .map(|cohort| {
                let counts: Vec<f64> = cohort
                    .members
                    .iter()
                    .map(|&p| graph.fractional_count_at(p, cite_window))
                    .collect();
                classify_cohort(cohort, &counts, weights)
            })
            .collect();
        let mut by_paper = BTreeMap::new();
        for (ci, cls) in classes.iter().enumerate() {
            for (mi, c) in cls.iter().enumerate() {
                by_paper.insert(c.paper, (ci, mi));
            }
        }
        Ok(Classified { cohorts, classes, by_paper })
    }

    pub fn get(&self, paper: PaperIdx) -> Option<&PercentileClassification> {
        self.by_paper.get(&paper).map(|&(c, m)| &self.classes[c][m])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Cohort, &PercentileClassification)> {
        self.cohorts
            .iter()
            .zip(&self.classes)
            .flat_map(|(cohort, cls)| cls.iter().map(move |c| (cohort, c)))
    }

    pub fn len(&self) -> usize {
        self.by_paper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_paper.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cohort(n: usize) -> Cohort {
        Cohort { year: 2021, doc_type: DocType::ResearchArticle, members: (0..n as u32).collect() }
    }

    #[test]
    fn strict_below_percentiles() {
        let c = cohort(4);
        let counts = [0.0, 0.0, 0.0, 5.0];
        assert_eq!(percentile_of(3, &c, &counts).unwrap(), 75.0);
        assert_eq!(percentile_of(0, &c, &counts).unwrap(), 0.0);
        assert!(matches!(percentile_of(9, &c, &counts), Err(Error::NotInCohort(_))));

        let c = cohort(100);
        let counts: Vec<f64> = (1..=100).map(f64::from).collect();
        assert_eq!(percentile_of(99, &c, &counts).unwrap(), 99.0);
    }

    #[test]
    fn band_rule() {
        let w = ClassWeights::default();
        assert_eq!(classify(99.2, &w).unwrap(), (PercentileClass::Top1, 100));
        assert_eq!(classify(90.0, &w).unwrap(), (PercentileClass::Top10, 10));
        assert_eq!(classify(49.999, &w).unwrap(), (PercentileClass::Bottom50, 0));
        assert_eq!(classify(50.0, &w).unwrap(), (PercentileClass::Top50, 2));
        assert!(classify(100.0, &w).is_err());
        assert!(classify(-0.1, &w).is_err());
    }

    #[test]
    fn rank_rule_agrees_with_percentile_rule() {
        for n in 1..=300usize {
            for below in 0..n {
                let p = 100.0 * below as f64 / n as f64;
                assert_eq!(
                    PercentileClass::from_rank(below, n),
                    PercentileClass::from_percentile(p).unwrap(),
                    "below={below} n={n}"
                );
            }
        }
    }

    #[test]
    fn class_counts_distinct_thousand() {
        let c = cohort(1000);
        let counts: Vec<f64> = (0..1000).map(|i| i as f64 * 0.5).collect();
        let cls = classify_cohort(&c, &counts, &ClassWeights::default());
        assert_eq!(cohort_class_counts(&cls), [10, 90, 400, 500]);
    }

    #[test]
    fn degenerate_cohorts() {
        let w = ClassWeights::default();
        let cls = classify_cohort(&cohort(7), &[0.0; 7], &w);
        assert_eq!(cohort_class_counts(&cls), [0, 0, 0, 7]);
        let cls = classify_cohort(&cohort(1), &[3.5], &w);
        assert_eq!(cls[0].percentile, 0.0);
        assert_eq!(cls[0].class, PercentileClass::Bottom50);
    }

    #[test]
    fn weights_parse_and_validate() {
        assert_eq!("100,10,2,1".parse::<ClassWeights>().unwrap().0, [100, 10, 2, 1]);
        assert!("1,2,3,4".parse::<ClassWeights>().is_err());
        assert!("100,10,2".parse::<ClassWeights>().is_err());
        assert_eq!(ClassWeights::default().to_string(), "100,10,2,0");
    }
}
