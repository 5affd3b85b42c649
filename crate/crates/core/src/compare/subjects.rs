use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::analysis::{Indicator, RankQuartiles};
use super::matching::MatchedJournalSet;
use crate::corpus::{Scheme, SubjectAssignment};
use crate::error::{Error, Result};
use crate::stats::{median, significance_stars, wilcoxon_rank_sum, wilcoxon_signed_rank, TestResult};

pub const DEFAULT_CROSSWALK_THRESHOLD: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubjectKey {
    pub scheme: Scheme,
    pub id: String,
}

impl fmt::Display for SubjectKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.scheme, self.id)
    }
}

/// Matched-entry keys per subject.
#[derive(Debug, Clone, Default)]
pub struct SubjectIndex {
    pub journals: BTreeMap<SubjectKey, BTreeSet<String>>,
    pub labels: BTreeMap<SubjectKey, String>,
}

impl SubjectIndex {
    /// Maps assignments made on journals of source `source` onto the
    /// matched entries; assignments on unmatched journals are ignored.
    pub fn build(assignments: &[SubjectAssignment], matched: &MatchedJournalSet, source: usize) -> SubjectIndex {
        let entry_of: BTreeMap<&str, &str> = matched
            .entries
            .iter()
            .filter_map(|e| e.members.get(source).map(|m| (m.as_str(), e.key.as_str())))
            .collect();
        let mut index = SubjectIndex::default();
        for a in assignments {
            let key = SubjectKey { scheme: a.scheme, id: a.subject_id.clone() };
            index.labels.entry(key.clone()).or_insert_with(|| a.subject_label.clone());
            if let Some(e) = entry_of.get(a.journal_id.as_str()) {
                index.journals.entry(key).or_default().insert(e.to_string());
            }
        }
        index
    }

    pub fn schemes(&self) -> BTreeSet<Scheme> {
        self.labels.keys().map(|k| k.scheme).collect()
    }

    pub fn label(&self, key: &SubjectKey) -> &str {
        self.labels.get(key).map(String::as_str).unwrap_or("")
    }

    /// Journals carrying every subject in `subjects`.
    pub fn carrying_all(&self, subjects: &[SubjectKey]) -> BTreeSet<String> {
        let mut it = subjects.iter();
        let Some(first) = it.next() else {
            return BTreeSet::new();
        };
        let mut acc = self.journals.get(first).cloned().unwrap_or_default();
        for s in it {
            let other = self.journals.get(s);
            acc.retain(|j| other.is_some_and(|o| o.contains(j)));
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrosswalkEdge {
    pub subject_a: SubjectKey,
    pub subject_b: SubjectKey,
    pub overlap: usize,
}

/// Cross-scheme subject pairs sharing more than `threshold` journals.
/// `subject_a` is always the one with the smaller scheme.
pub fn subject_crosswalk(index: &SubjectIndex, threshold: usize) -> Vec<CrosswalkEdge> {
    let subjects: Vec<(&SubjectKey, &BTreeSet<String>)> = index.journals.iter().collect();
    let mut edges = Vec::new();
    for (i, (a, ja)) in subjects.iter().enumerate() {
        for (b, jb) in &subjects[i + 1..] {
            if a.scheme == b.scheme {
                continue;
            }
            let overlap = ja.intersection(jb).count();
            if overlap > threshold {
                let (sa, sb) = if a.scheme < b.scheme { (a, b) } else { (b, a) };
                edges.push(CrosswalkEdge { subject_a: (*sa).clone(), subject_b: (*sb).clone(), overlap });
            }
        }
    }
    edges.sort();
    edges
}

/// Subject triples, one per scheme, whose three pairs are all crosswalk
/// edges.
pub fn crosswalk_triangles(edges: &[CrosswalkEdge]) -> Vec<[SubjectKey; 3]> {
    let linked: BTreeSet<(&SubjectKey, &SubjectKey)> =
        edges.iter().flat_map(|e| [(&e.subject_a, &e.subject_b), (&e.subject_b, &e.subject_a)]).collect();
    let mut nodes: BTreeSet<&SubjectKey> = BTreeSet::new();
    for e in edges {
        nodes.insert(&e.subject_a);
        nodes.insert(&e.subject_b);
    }
    let nodes: Vec<&SubjectKey> = nodes.into_iter().collect();
    let mut out = Vec::new();
    for (i, a) in nodes.iter().enumerate() {
        for (k, b) in nodes.iter().enumerate().skip(i + 1) {
            if !linked.contains(&(*a, *b)) {
                continue;
            }
            for c in &nodes[k + 1..] {
                let schemes: BTreeSet<Scheme> = [a.scheme, b.scheme, c.scheme].into();
                if schemes.len() == 3 && linked.contains(&(*a, *c)) && linked.contains(&(*b, *c)) {
                    out.push([(*a).clone(), (*b).clone(), (*c).clone()]);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Up,
    Down,
    Flat,
}

impl Direction {
    pub fn of(x: f64) -> Direction {
        if x > 0.0 {
            Direction::Up
        } else if x < 0.0 {
            Direction::Down
        } else {
            Direction::Flat
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
            Direction::Flat => "flat",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendResult {
    pub subjects: Vec<SubjectKey>,
    pub indicator: Indicator,
    /// Journals with the indicator defined in both years.
    pub n: usize,
    pub median_difference: f64,
    pub direction: Direction,
    pub test: TestResult,
    pub stars: &'static str,
    /// Rank-sum test over all defined values of each year, present when
    /// the paired journals cover less than half of either year.
    pub unpaired: Option<TestResult>,
}

/// Paired signed-rank trend of `indicator` from `y1` to `y2` over the
/// journals carrying every subject in `subjects`.
pub fn subject_trend(
    matched: &MatchedJournalSet,
    index: &SubjectIndex,
    subjects: &[SubjectKey],
    indicator: Indicator,
    y1: i32,
    y2: i32,
) -> Result<TrendResult> {
    let group = index.carrying_all(subjects);
    let entries: Vec<_> = matched.entries.iter().filter(|e| group.contains(&e.key)).collect();
    let a: Vec<Option<f64>> = entries.iter().map(|e| matched.value(e, y1, indicator)).collect();
    let b: Vec<Option<f64>> = entries.iter().map(|e| matched.value(e, y2, indicator)).collect();
    let diffs: Vec<f64> = a.iter().zip(&b).filter_map(|(x, y)| Some((*y)? - (*x)?)).collect();
    if diffs.is_empty() {
        return Err(Error::InsufficientData(format!(
            "no journal carries {} with {indicator} defined in {y1} and {y2}",
            subjects.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("+")
        )));
    }
    let test = wilcoxon_signed_rank(&diffs)?;
    let md = median(&diffs)?;
    let (ya, yb): (Vec<f64>, Vec<f64>) = (a.iter().flatten().copied().collect(), b.iter().flatten().copied().collect());
    let coverage = |defined: usize| diffs.len() * 2 < defined;
    let unpaired = if (coverage(ya.len()) || coverage(yb.len())) && !ya.is_empty() && !yb.is_empty() {
        Some(wilcoxon_rank_sum(&ya, &yb)?)
    } else {
        None
    };
    Ok(TrendResult {
        subjects: subjects.to_vec(),
        indicator,
        n: diffs.len(),
        median_difference: md,
        direction: Direction::of(md),
        stars: significance_stars(test.p_value),
        test,
        unpaired,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubjectQuartileRow {
    pub subject: SubjectKey,
    pub label: String,
    pub n: usize,
    pub counts: [usize; 4],
    pub proportions: [f64; 4],
    /// Passes the size filter.
    pub eligible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubjectProportions {
    pub scheme: Scheme,
    pub rows: Vec<SubjectQuartileRow>,
    /// Eligible subjects by quartile-1 share, at most `top` of them.
    pub top_q1: Vec<SubjectKey>,
    pub top_q4: Vec<SubjectKey>,
}

/// Share of each subject's journals in each rank-difference quartile.
/// Only subjects in the top quarter by journal count (ties included) are
/// eligible for the top lists.
pub fn quartile_subject_proportions(
    quartiles: &RankQuartiles,
    index: &SubjectIndex,
    scheme: Scheme,
    top: usize,
) -> Result<SubjectProportions> {
    if !index.labels.keys().any(|k| k.scheme == scheme) {
        return Err(Error::InsufficientData(format!("no subject assignments for scheme {scheme}")));
    }
    let quartile_of: BTreeMap<&str, u8> =
        quartiles.journals.iter().map(|j| (j.journal.as_str(), j.quartile)).collect();
    let mut rows: Vec<SubjectQuartileRow> = index
        .journals
        .iter()
        .filter(|(k, _)| k.scheme == scheme)
        .filter_map(|(k, js)| {
            let mut counts = [0usize; 4];
            for j in js {
                if let Some(q) = quartile_of.get(j.as_str()) {
                    counts[*q as usize - 1] += 1;
                }
            }
            let n: usize = counts.iter().sum();
            (n > 0).then(|| SubjectQuartileRow {
                subject: k.clone(),
                label: index.label(k).to_string(),
                n,
                counts,
                proportions: counts.map(|c| c as f64 / n as f64),
                eligible: false,
            })
        })
        .collect();
    let mut sizes: Vec<usize> = rows.iter().map(|r| r.n).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    if let Some(&cutoff) = sizes.get(sizes.len().div_ceil(4).saturating_sub(1)) {
        for r in &mut rows {
            r.eligible = r.n >= cutoff;
        }
    }
    let ranked = |q: usize| -> Vec<SubjectKey> {
        let mut el: Vec<&SubjectQuartileRow> = rows.iter().filter(|r| r.eligible).collect();
        el.sort_by(|a, b| {
            b.proportions[q].total_cmp(&a.proportions[q]).then(b.n.cmp(&a.n)).then(a.subject.cmp(&b.subject))
        });
        el.into_iter().take(top).map(|r| r.subject.clone()).collect()
    };
    let (top_q1, top_q4) = (ranked(0), ranked(3));
    Ok(SubjectProportions { scheme, rows, top_q1, top_q4 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(scheme: Scheme, id: &str) -> SubjectKey {
        SubjectKey { scheme, id: id.into() }
    }

    fn index(pairs: &[(SubjectKey, &[&str])]) -> SubjectIndex {
        let mut ix = SubjectIndex::default();
        for (k, js) in pairs {
            ix.labels.insert(k.clone(), k.id.clone());
            ix.journals.insert(k.clone(), js.iter().map(|s| s.to_string()).collect());
        }
        ix
    }

    #[test]
    fn crosswalk_threshold_and_triangle() {
        let a = key(Scheme::Scilit, "econ");
        let b = key(Scheme::ScopusAsjc, "2000");
        let c = key(Scheme::WosCategory, "ECON");
        let d = key(Scheme::WosCategory, "ART");
        let ix = index(&[(a.clone(), &["j1", "j2"]), (b.clone(), &["j1", "j2"]), (c, &["j2", "j1"]), (d, &["j9"])]);
        assert_eq!(subject_crosswalk(&ix, 2).len(), 0);
        let edges = subject_crosswalk(&ix, 1);
        assert_eq!(edges.len(), 3);
        assert!(edges.iter().all(|e| e.overlap == 2 && e.subject_a.scheme < e.subject_b.scheme));
        assert_eq!(crosswalk_triangles(&edges).len(), 1);
        let zero = subject_crosswalk(&index(&[(a, &["j1"]), (b, &["j1"])]), 0);
        assert_eq!(zero[0].overlap, 1);
    }

    #[test]
    fn directions() {
        assert_eq!(Direction::of(0.2), Direction::Up);
        assert_eq!(Direction::of(0.0), Direction::Flat);
    }
}
