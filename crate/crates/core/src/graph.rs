//! Citation edges with per-citing-paper fractional weights.
//!
//! Every edge leaving a citing paper carries weight `1/m`, where `m` is the
//! citing paper's reference count (see [`effective_reference_count`]).
//! Fractional counts are sums of those weights over in-window citers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::corpus::{normalize_doi, Corpus, DocType, PaperRecord};
use crate::error::{Error, Result};
use crate::window::YearRange;

pub(crate) use crate::corpus::reference_key;

/// Dense index of a paper inside a [`CitationGraph`]; papers are numbered in
/// ascending `paper_id` order.
pub type PaperIdx = u32;

/// Dense index of a journal; journals are numbered in ascending
/// `journal_id` order.
pub type JournalIdx = u32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CitationEdge {
    pub citing: PaperIdx,
    pub cited: PaperIdx,
    pub weight: f64,
}

/// `references_seen = edges_resolved + unresolved + self_loops_dropped +
/// duplicates_collapsed`. Supplementary edges count as references of their
/// citing paper.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionStats {
    pub references_seen: u64,
    pub edges_resolved: u64,
    pub unresolved: u64,
    pub self_loops_dropped: u64,
    pub duplicates_collapsed: u64,
}

impl ResolutionStats {
    pub fn reconciles(&self) -> bool {
        self.references_seen
            == self.edges_resolved + self.unresolved + self.self_loops_dropped + self.duplicates_collapsed
    }
}

/// The citing paper's `m`: the declared bibliography size when present and
/// positive, else the number of distinct listed entries, else 1.
pub fn effective_reference_count(paper: &PaperRecord) -> u32 {
    if let Some(n) = paper.declared_reference_count.filter(|n| *n > 0) {
        return n;
    }
    let listed: BTreeSet<String> = paper.references.iter().map(|r| reference_key(r)).collect();
    (listed.len() as u32).max(1)
}

/// Sums `1/m` over the given reference counts. Terms are added smallest
/// first so that citers with equal multisets of `m` yield bit-identical
/// totals.
pub fn fractional_sum(ref_counts: &mut [u32]) -> f64 {
    ref_counts.sort_unstable_by(|a, b| b.cmp(a));
    ref_counts.iter().map(|&m| 1.0 / f64::from(m)).sum()
}

/// Compressed adjacency: `targets[offsets[i]..offsets[i + 1]]`.
#[derive(Debug, Clone, Default)]
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<PaperIdx>,
}

impl Adjacency {
    fn from_lists(lists: &[Vec<PaperIdx>]) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        offsets.push(0);
        for l in lists {
            targets.extend_from_slice(l);
            offsets.push(targets.len());
        }
        Adjacency { offsets, targets }
    }

    fn row(&self, i: PaperIdx) -> &[PaperIdx] {
        let i = i as usize;
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// Resolved citation graph over a sealed corpus. Immutable once built.
#[derive(Debug, Clone)]
pub struct CitationGraph {
    paper_ids: Vec<String>,
    index: HashMap<String, PaperIdx>,
    years: Vec<i32>,
    doc_types: Vec<DocType>,
    journal_of: Vec<Option<JournalIdx>>,
    journal_ids: Vec<String>,
    ref_counts: Vec<u32>,
    cites: Adjacency,
    cited_by: Adjacency,
    papers_of_journal: Vec<Vec<PaperIdx>>,
    stats: ResolutionStats,
}

impl CitationGraph {
    /// Resolves every reference list (and supplementary edge) into edges.
    /// Duplicate targets within one citing paper collapse to one edge and
    /// paper-to-itself loops are dropped.
    pub fn build(corpus: &Corpus) -> CitationGraph {
        let paper_ids: Vec<String> = corpus.papers().map(|p| p.id.clone()).collect();
        let index: HashMap<String, PaperIdx> =
            paper_ids.iter().enumerate().map(|(i, id)| (id.clone(), i as PaperIdx)).collect();
        let journal_ids: Vec<String> = corpus.journals().map(|j| j.id.clone()).collect();
        let journal_index: HashMap<&str, JournalIdx> = journal_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i as JournalIdx))
            .collect();

        // Same precedence as `Corpus::resolve_reference`, straight to indices.
        let by_doi: HashMap<&str, PaperIdx> = corpus
            .papers()
            .enumerate()
            .filter_map(|(i, p)| Some((p.doi.as_deref()?, i as PaperIdx)))
            .collect();
        // Err carries the dedup key of an unresolved entry.
        let lookup = |entry: &str| -> std::result::Result<PaperIdx, String> {
            let entry = entry.trim();
            if let Some(&i) = index.get(entry) {
                return Ok(i);
            }
            match normalize_doi(entry) {
                Some(doi) => by_doi.get(doi.as_str()).copied().ok_or(doi),
                None => Err(entry.to_string()),
            }
        };
        let resolve = |entry: &str| lookup(entry).ok();

        let mut supplements: BTreeMap<PaperIdx, Vec<&str>> = BTreeMap::new();
        let mut stats = ResolutionStats::default();
        for (citing, cited) in corpus.extra_edges() {
            match resolve(citing) {
                Some(i) => supplements.entry(i).or_default().push(cited),
                None => {
                    stats.references_seen += 1;
                    stats.unresolved += 1;
                }
            }
        }

        let n = paper_ids.len();
        let mut years = Vec::with_capacity(n);
        let mut doc_types = Vec::with_capacity(n);
        let mut journal_of = Vec::with_capacity(n);
        let mut ref_counts = Vec::with_capacity(n);
        let mut outgoing: Vec<Vec<PaperIdx>> = Vec::with_capacity(n);
        let mut papers_of_journal = vec![Vec::new(); journal_ids.len()];

        for (i, paper) in corpus.papers().enumerate() {
            let me = i as PaperIdx;
            years.push(paper.year);
            doc_types.push(paper.doc_type);
            let j = paper.journal_id.as_deref().and_then(|j| journal_index.get(j).copied());
            if let Some(j) = j {
                papers_of_journal[j as usize].push(me);
            }
            journal_of.push(j);
            ref_counts.push(effective_reference_count(paper));

            let mut targets = Vec::new();
            let mut unresolved_keys = Vec::new();
            let extra = supplements.get(&me).map(Vec::as_slice).unwrap_or(&[]);
            for entry in paper.references.iter().map(String::as_str).chain(extra.iter().copied()) {
                stats.references_seen += 1;
                match lookup(entry) {
                    Ok(t) if t == me => stats.self_loops_dropped += 1,
                    Ok(t) => targets.push(t),
                    Err(key) => unresolved_keys.push(key),
                }
            }
            let missed = unresolved_keys.len() as u64;
            unresolved_keys.sort_unstable();
            unresolved_keys.dedup();
            stats.unresolved += unresolved_keys.len() as u64;
            stats.duplicates_collapsed += missed - unresolved_keys.len() as u64;
            let listed = targets.len() as u64;
            targets.sort_unstable();
            targets.dedup();
            stats.edges_resolved += targets.len() as u64;
            stats.duplicates_collapsed += listed - targets.len() as u64;
            outgoing.push(targets);
        }

        let mut incoming: Vec<Vec<PaperIdx>> = vec![Vec::new(); n];
        for (citing, targets) in outgoing.iter().enumerate() {
            for &t in targets {
                incoming[t as usize].push(citing as PaperIdx);
            }
        }

        CitationGraph {
            paper_ids,
            index,
            years,
            doc_types,
            journal_of,
            journal_ids,
            ref_counts,
            cites: Adjacency::from_lists(&outgoing),
            cited_by: Adjacency::from_lists(&incoming),
            papers_of_journal,
            stats,
        }
    }

    pub fn stats(&self) -> &ResolutionStats {
        &self.stats
    }

    pub fn paper_count(&self) -> usize {
        self.paper_ids.len()
    }

    pub fn journal_count(&self) -> usize {
        self.journal_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.cites.targets.len()
    }

    pub fn index_of(&self, paper_id: &str) -> Result<PaperIdx> {
        self.index.get(paper_id).copied().ok_or_else(|| Error::UnknownPaper(paper_id.to_string()))
    }

    pub fn paper_id(&self, idx: PaperIdx) -> &str {
        &self.paper_ids[idx as usize]
    }

    pub fn year(&self, idx: PaperIdx) -> i32 {
        self.years[idx as usize]
    }

    pub fn doc_type(&self, idx: PaperIdx) -> DocType {
        self.doc_types[idx as usize]
    }

    pub fn journal_of(&self, idx: PaperIdx) -> Option<JournalIdx> {
        self.journal_of[idx as usize]
    }

    pub fn journal_id(&self, j: JournalIdx) -> &str {
        &self.journal_ids[j as usize]
    }

    pub fn journal_ids(&self) -> &[String] {
        &self.journal_ids
    }

    /// Papers linked to journal `j`, ascending.
    pub fn papers_of_journal(&self, j: JournalIdx) -> &[PaperIdx] {
        &self.papers_of_journal[j as usize]
    }

    /// `m` of a paper in the graph.
    pub fn reference_count(&self, idx: PaperIdx) -> u32 {
        self.ref_counts[idx as usize]
    }

    /// Weight carried by each edge leaving `citing`.
    pub fn weight(&self, citing: PaperIdx) -> f64 {
        1.0 / f64::from(self.ref_counts[citing as usize])
    }

    /// Distinct resolved targets of `citing`, ascending.
    pub fn references_of(&self, citing: PaperIdx) -> &[PaperIdx] {
        self.cites.row(citing)
    }

    /// Citing papers of `cited`, ascending.
    pub fn citers_of(&self, cited: PaperIdx) -> &[PaperIdx] {
        self.cited_by.row(cited)
    }

    pub fn edges(&self) -> impl Iterator<Item = CitationEdge> + '_ {
        (0..self.paper_count() as PaperIdx).flat_map(move |citing| {
            let weight = self.weight(citing);
            self.references_of(citing).iter().map(move |&cited| CitationEdge { citing, cited, weight })
        })
    }

    /// Fractional count of a paper by dense index.
    pub fn fractional_count_at(&self, idx: PaperIdx, window: &YearRange) -> f64 {
        let mut ms: Vec<u32> = self
            .citers_of(idx)
            .iter()
            .filter(|&&c| window.contains(self.years[c as usize]))
            .map(|&c| self.ref_counts[c as usize])
            .collect();
        fractional_sum(&mut ms)
    }

    /// Integer count of a paper by dense index.
    pub fn citation_count_at(&self, idx: PaperIdx, window: &YearRange) -> u64 {
        self.citers_of(idx).iter().filter(|&&c| window.contains(self.years[c as usize])).count() as u64
    }

    /// Sum of `1/m` over citing papers published inside `window`.
    pub fn fractional_citation_count(&self, paper_id: &str, window: &YearRange) -> Result<f64> {
        Ok(self.fractional_count_at(self.index_of(paper_id)?, window))
    }

    /// Number of citing papers published inside `window`.
    pub fn integer_citation_count(&self, paper_id: &str, window: &YearRange) -> Result<u64> {
        Ok(self.citation_count_at(self.index_of(paper_id)?, window))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{CorpusBuilder, CorpusConfig};

    fn corpus(papers: &str, edges: &str) -> Corpus {
        let mut b = CorpusBuilder::new(CorpusConfig::default());
        b.ingest_papers(papers.as_bytes()).unwrap();
        b.ingest_edges(edges.as_bytes()).unwrap();
        b.seal()
    }

    fn paper(id: &str, year: i32, refs: &[&str], count: Option<u32>) -> String {
        serde_json::json!({
            "id": id, "year": year, "doc_type": "research_article",
            "references": refs, "ref_count": count,
        })
        .to_string()
    }

    #[test]
    fn resolves_dedups_and_drops_self_loops() {
        let src = [
            paper("A", 2020, &["B", "C"], None),
            paper("B", 2019, &["C", "C"], None),
            paper("C", 2018, &["C", "ext-1"], None),
            serde_json::json!({"id":"D","doi":"10.9/d","year":2017,"doc_type":"letter"}).to_string(),
            paper("E", 2021, &["10.9/D", "D"], None),
        ]
        .join("\n");
        let g = CitationGraph::build(&corpus(&src, ""));
        let a = g.index_of("A").unwrap();
        assert_eq!(g.references_of(a).len(), 2);
        assert_eq!(g.references_of(g.index_of("B").unwrap()).len(), 1);
        assert_eq!(g.references_of(g.index_of("C").unwrap()).len(), 0);
        // DOI and id entries pointing at the same paper collapse
        assert_eq!(g.references_of(g.index_of("E").unwrap()).len(), 1);
        let s = g.stats();
        assert_eq!(s.references_seen, 8);
        assert_eq!(s.edges_resolved, 4);
        assert_eq!(s.self_loops_dropped, 1);
        assert_eq!(s.unresolved, 1);
        assert_eq!(s.duplicates_collapsed, 2);
        assert!(s.reconciles());
    }

    #[test]
    fn reference_count_rules() {
        let mk = |refs: &[&str], declared: Option<u32>| PaperRecord {
            id: "x".into(),
            doi: None,
            year: 2020,
            doc_type: DocType::ResearchArticle,
            journal_id: None,
            references: refs.iter().map(|s| s.to_string()).collect(),
            declared_reference_count: declared,
        };
        let twelve: Vec<String> = (0..12).map(|i| format!("r{i}")).collect();
        let twelve: Vec<&str> = twelve.iter().map(String::as_str).collect();
        assert_eq!(effective_reference_count(&mk(&twelve, Some(40))), 40);
        assert_eq!(effective_reference_count(&mk(&["B", "C", "D"], None)), 3);
        assert_eq!(effective_reference_count(&mk(&[], None)), 1);
        assert_eq!(effective_reference_count(&mk(&["B"], Some(0))), 1);
    }

    #[test]
    fn fractional_versus_integer() {
        let src = [
            paper("T", 2020, &[], Some(1)),
            paper("c2", 2021, &["T"], Some(2)),
            paper("c4", 2021, &["T"], Some(4)),
            paper("c5", 2022, &["T"], Some(5)),
            paper("late", 2030, &["T"], Some(1)),
        ]
        .join("\n");
        let g = CitationGraph::build(&corpus(&src, ""));
        let w = YearRange::new(2020, 2023).unwrap();
        let frac = g.fractional_citation_count("T", &w).unwrap();
        assert!((frac - 0.95).abs() < 1e-15);
        assert_eq!(g.integer_citation_count("T", &w).unwrap(), 3);
        let empty = YearRange::new(2024, 2025).unwrap();
        assert_eq!(g.fractional_citation_count("T", &empty).unwrap(), 0.0);
        assert!(matches!(g.integer_citation_count("nope", &w), Err(Error::UnknownPaper(_))));
    }

    #[test]
    fn bare_supplementary_edge_has_weight_one() {
        let src = [paper("T", 2020, &[], Some(3)), paper("bare", 2021, &[], None)].join("\n");
        let g = CitationGraph::build(&corpus(&src, r#"{"citing":"bare","cited":"T"}"#));
        let bare = g.index_of("bare").unwrap();
        assert_eq!(g.reference_count(bare), 1);
        assert_eq!(g.weight(bare), 1.0);
        let w = YearRange::new(2021, 2021).unwrap();
        assert_eq!(g.fractional_citation_count("T", &w).unwrap(), 1.0);
    }

    #[test]
    fn fractional_sum_is_order_free() {
        let mut a = vec![3, 7, 11, 2, 3];
        let mut b = vec![11, 3, 2, 3, 7];
        assert_eq!(fractional_sum(&mut a).to_bits(), fractional_sum(&mut b).to_bits());
    }
}
