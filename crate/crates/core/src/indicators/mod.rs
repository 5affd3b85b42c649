//! Journal-level indicators: I3 and I3/N from percentile classes, JIF and
//! CiteScore from integer citation counts, and the h-index family.

mod describe;
mod window;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::DocType;
use crate::error::Result;
use crate::graph::{CitationGraph, JournalIdx, PaperIdx};
use crate::percentile::{ClassWeights, Classified};
use crate::window::YearRange;

pub use describe::{describe, DescriptiveStats, CI95_Z};
pub use window::{I3Offsets, WindowPolicy};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorConfig {
    pub weights: ClassWeights,
    /// Document types ranked for I3.
    pub doc_types: BTreeSet<DocType>,
    pub i3_offsets: I3Offsets,
}

impl Default for IndicatorConfig {
    fn default() -> Self {
        IndicatorConfig {
            weights: ClassWeights::default(),
            doc_types: DocType::i3_default(),
            i3_offsets: I3Offsets::default(),
        }
    }
}

/// One journal in one indicator year. `None` marks an undefined value
/// (zero denominator), which is distinct from zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorRow {
    pub journal_id: String,
    pub year: i32,
    pub n_pubs: u64,
    pub i3: u64,
    pub i3_n: Option<f64>,
    pub jif: Option<f64>,
    pub citescore: Option<f64>,
    pub h_index: u64,
    pub i10_index: u64,
    pub h5_index: u64,
    /// Integer citations to the I3 publications inside the I3 citation window.
    pub citations: Option<u64>,
}

/// A JIF numerator that exists while the denominator is zero: citations to
/// non-citable items only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymmetryFlag {
    pub journal_id: String,
    pub year: i32,
    pub numerator: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IndicatorTable {
    /// Sorted by `(journal_id, year)`.
    pub rows: Vec<IndicatorRow>,
    pub asymmetries: Vec<AsymmetryFlag>,
}

impl IndicatorTable {
    pub fn years(&self) -> BTreeSet<i32> {
        self.rows.iter().map(|r| r.year).collect()
    }

    pub fn merge(&mut self, other: IndicatorTable) {
        self.rows.extend(other.rows);
        self.asymmetries.extend(other.asymmetries);
        self.sort();
    }

    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| (&a.journal_id, a.year).cmp(&(&b.journal_id, b.year)));
        self.asymmetries
            .sort_by(|a, b| (&a.journal_id, a.year).cmp(&(&b.journal_id, b.year)));
    }
}

/// Ratio with an explicit numerator and denominator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioOutcome {
    pub numerator: u64,
    pub denominator: u64,
}

impl RatioOutcome {
    pub fn value(&self) -> Option<f64> {
        (self.denominator > 0).then(|| self.numerator as f64 / self.denominator as f64)
    }

    /// Citations counted while no citable item exists.
    pub fn is_asymmetric(&self) -> bool {
        self.denominator == 0 && self.numerator > 0
    }
}

/// `(N_k, I3)`: the journal's classified papers and their summed class
/// weights.
pub fn compute_i3(graph: &CitationGraph, journal: JournalIdx, classified: &Classified) -> (u64, u64) {
    graph
        .papers_of_journal(journal)
        .iter()
        .filter_map(|&p| classified.get(p))
        .fold((0, 0), |(n, i3), c| (n + 1, i3 + c.class_weight))
}

/// `I3 / N_k`; undefined for an empty window.
pub fn compute_i3n(i3: u64, n_pubs: u64) -> Option<f64> {
    (n_pubs > 0).then(|| i3 as f64 / n_pubs as f64)
}

fn citations_from(graph: &CitationGraph, paper: PaperIdx, cite: &YearRange) -> u64 {
    graph.citation_count_at(paper, cite)
}

/// Citations in `Y` to all items from `Y-1..Y-2` over citable items
/// (research and review articles) from the same years.
pub fn compute_jif(graph: &CitationGraph, journal: JournalIdx, policy: &WindowPolicy) -> RatioOutcome {
    let mut out = RatioOutcome { numerator: 0, denominator: 0 };
    for &p in graph.papers_of_journal(journal) {
        if !policy.jif_items.contains(graph.year(p)) {
            continue;
        }
        out.numerator += citations_from(graph, p, &policy.jif_cite);
        if graph.doc_type(p).is_citable() {
            out.denominator += 1;
        }
    }
    out
}

/// Citations in `Y` to all documents from `Y-1..Y-4` over the count of
/// those documents.
pub fn compute_citescore(
    graph: &CitationGraph,
    journal: JournalIdx,
    policy: &WindowPolicy,
) -> RatioOutcome {
    let mut out = RatioOutcome { numerator: 0, denominator: 0 };
    for &p in graph.papers_of_journal(journal) {
        if policy.citescore_items.contains(graph.year(p)) {
            out.numerator += citations_from(graph, p, &policy.citescore_cite);
            out.denominator += 1;
        }
    }
    out
}

/// Largest `h` with at least `h` values `>= h`.
pub fn h_index(citations: &[u64]) -> u64 {
    let mut sorted = citations.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.iter().enumerate().take_while(|(i, &c)| c > *i as u64).count() as u64
}

/// `(h, i10, h5)` as of year `Y`: papers published up to `Y` and citations
/// from papers published up to `Y`; h5 limits publications to `Y-4..=Y`.
pub fn compute_h_family(graph: &CitationGraph, journal: JournalIdx, policy: &WindowPolicy) -> (u64, u64, u64) {
    let y = policy.indicator_year;
    let upto = YearRange::new(i32::MIN, y).expect("non-empty");
    let mut all = Vec::new();
    let mut recent = Vec::new();
    for &p in graph.papers_of_journal(journal) {
        let year = graph.year(p);
        if year > y {
            continue;
        }
        let c = citations_from(graph, p, &upto);
        all.push(c);
        if policy.h5_items.contains(year) {
            recent.push(c);
        }
    }
    let i10 = all.iter().filter(|&&c| c >= 10).count() as u64;
    (h_index(&all), i10, h_index(&recent))
}

/// Every journal's row for indicator year `year`. Journals are processed in
/// parallel and rows come back in `journal_id` order.
pub fn compute_indicators(graph: &CitationGraph, year: i32, config: &IndicatorConfig) -> Result<IndicatorTable> {
    let policy = WindowPolicy::with_i3_offsets(year, config.i3_offsets)?;
    let pub_years: BTreeSet<i32> = policy.i3_pub.years().collect();
    let classified =
        Classified::compute(graph, &pub_years, &config.doc_types, &policy.i3_cite, &config.weights)?;
    Ok(table_from_classes(graph, &policy, &classified))
}

pub(crate) fn table_from_classes(
    graph: &CitationGraph,
    policy: &WindowPolicy,
    classified: &Classified,
) -> IndicatorTable {
    let per_journal: Vec<(IndicatorRow, Option<AsymmetryFlag>)> = (0..graph.journal_count() as JournalIdx)
        .into_par_iter()
        .map(|j| {
            let (n_pubs, i3) = compute_i3(graph, j, classified);
            let citations = graph
                .papers_of_journal(j)
                .iter()
                .filter(|&&p| classified.get(p).is_some())
                .map(|&p| citations_from(graph, p, &policy.i3_cite))
                .sum();
            let jif = compute_jif(graph, j, policy);
            let cs = compute_citescore(graph, j, policy);
            let (h, i10, h5) = compute_h_family(graph, j, policy);
            let journal_id = graph.journal_id(j).to_string();
            let flag = jif.is_asymmetric().then(|| AsymmetryFlag {
                journal_id: journal_id.clone(),
                year: policy.indicator_year,
                numerator: jif.numerator,
            });
            let row = IndicatorRow {
                journal_id,
                year: policy.indicator_year,
                n_pubs,
                i3,
                i3_n: compute_i3n(i3, n_pubs),
                jif: jif.value(),
                citescore: cs.value(),
                h_index: h,
                i10_index: i10,
                h5_index: h5,
                citations: Some(citations),
            };
            (row, flag)
        })
        .collect();
    let mut table = IndicatorTable::default();
    for (row, flag) in per_journal {
        table.rows.push(row);
        table.asymmetries.extend(flag);
    }
    table.sort();
    table
}

/// Rows for several indicator years, merged and sorted.
pub fn compute_years(graph: &CitationGraph, years: &[i32], config: &IndicatorConfig) -> Result<IndicatorTable> {
    let mut table = IndicatorTable::default();
    for &y in years {
        table.merge(compute_indicators(graph, y, config)?);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_index_sort_and_scan() {
        assert_eq!(h_index(&[10, 8, 5, 4, 3]), 4);
        assert_eq!(h_index(&[]), 0);
        assert_eq!(h_index(&[0, 0]), 0);
        assert_eq!(h_index(&[100]), 1);
        assert_eq!(h_index(&[3, 3, 3]), 3);
    }

    #[test]
    fn ratio_outcomes() {
        let r = RatioOutcome { numerator: 150, denominator: 100 };
        assert_eq!(r.value(), Some(1.5));
        assert!(!r.is_asymmetric());
        let r = RatioOutcome { numerator: 0, denominator: 10 };
        assert_eq!(r.value(), Some(0.0));
        let r = RatioOutcome { numerator: 4, denominator: 0 };
        assert_eq!(r.value(), None);
        assert!(r.is_asymmetric());
        assert_eq!(RatioOutcome { numerator: 400, denominator: 100 }.value(), Some(4.0));
    }

    #[test]
    fn i3n_rules() {
        assert_eq!(compute_i3n(126, 10), Some(12.6));
        assert_eq!(compute_i3n(500, 5), Some(100.0));
        assert_eq!(compute_i3n(0, 7), Some(0.0));
        assert_eq!(compute_i3n(0, 0), None);
    }
}
