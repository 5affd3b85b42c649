use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Issn};
use crate::indicators::{IndicatorRow, IndicatorTable};

/// Identification keys of one journal inside one source.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct JournalKeys {
    pub journal_id: String,
    /// Canonical ISSNs (see [`Issn`]).
    pub issn: Vec<String>,
    pub eissn: Vec<String>,
    pub title: String,
    pub publisher: Option<String>,
}

/// One indicator table plus the keys needed to match its journals.
#[derive(Debug, Clone)]
pub struct SourceTable {
    pub name: String,
    pub keys: BTreeMap<String, JournalKeys>,
    rows: BTreeMap<(String, i32), IndicatorRow>,
}

impl SourceTable {
    /// Keys come from `corpus`; journals of the table missing from the
    /// corpus keep only their id.
    pub fn from_corpus(name: &str, corpus: &Corpus, table: &IndicatorTable) -> SourceTable {
        let mut keys: BTreeMap<String, JournalKeys> = corpus
            .journals()
            .map(|j| {
                let k = JournalKeys {
                    journal_id: j.id.clone(),
                    issn: j.issn.iter().map(|i| i.as_str().to_string()).collect(),
                    eissn: j.eissn.iter().map(|i| i.as_str().to_string()).collect(),
                    title: j.title.clone(),
                    publisher: j.publisher_name.clone().or_else(|| j.publisher_id.clone()),
                };
                (j.id.clone(), k)
            })
            .collect();
        let ids: BTreeSet<&String> = table.rows.iter().map(|r| &r.journal_id).collect();
        keys.retain(|id, _| ids.contains(id));
        SourceTable::with_keys(name, keys.into_values().collect(), table)
    }

    /// Uses the given keys; table journals without keys match by id only.
    pub fn with_keys(name: &str, keys: Vec<JournalKeys>, table: &IndicatorTable) -> SourceTable {
        let mut keys: BTreeMap<String, JournalKeys> =
            keys.into_iter().map(|k| (k.journal_id.clone(), k)).collect();
        let mut rows = BTreeMap::new();
        for r in &table.rows {
            keys.entry(r.journal_id.clone())
                .or_insert_with(|| JournalKeys { journal_id: r.journal_id.clone(), ..Default::default() });
            rows.insert((r.journal_id.clone(), r.year), r.clone());
        }
        SourceTable { name: name.to_string(), keys, rows }
    }

    pub fn row(&self, journal_id: &str, year: i32) -> Option<&IndicatorRow> {
        self.rows.get(&(journal_id.to_string(), year))
    }

    pub fn years(&self) -> BTreeSet<i32> {
        self.rows.keys().map(|(_, y)| *y).collect()
    }
}

/// Which key joined an entry, from strongest to weakest. `Id` is the
/// fallback for sources without bibliographic keys; `Identity` marks a
/// single-source set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchKey {
    Issn,
    Eissn,
    Title,
    Id,
    Identity,
}

impl MatchKey {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchKey::Issn => "issn",
            MatchKey::Eissn => "eissn",
            MatchKey::Title => "title",
            MatchKey::Id => "id",
            MatchKey::Identity => "identity",
        }
    }
}

impl fmt::Display for MatchKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedEntry {
    /// The journal id in the first source.
    pub key: String,
    /// Journal id per source, aligned with the source list.
    pub members: Vec<String>,
    /// Weakest key used to join this entry.
    pub match_key: MatchKey,
    pub publisher: Option<String>,
}

#[derive(Debug, Clone)]
pub struct MatchedJournalSet {
    pub sources: Vec<SourceTable>,
    /// Sorted by `key`.
    pub entries: Vec<MatchedEntry>,
    /// Per source, journals left without a full match.
    pub unmatched: Vec<Vec<String>>,
    /// Key values skipped because they were not one-to-one.
    pub ambiguous: u64,
}

/// Case-folded title with punctuation removed and whitespace collapsed.
pub fn normalize_title(title: &str) -> String {
    let cleaned: String = title
        .to_lowercase()
        .chars()
        .map(|c| if c.is_alphanumeric() { c } else { ' ' })
        .collect();
    cleaned.split_whitespace().collect::<Vec<_>>().join(" ")
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

fn key_values(keys: &JournalKeys, kind: MatchKey) -> Vec<String> {
    match kind {
        MatchKey::Issn => keys.issn.iter().filter_map(|k| Issn::parse(k)).map(|i| i.as_str().to_string()).collect(),
        MatchKey::Eissn => keys.eissn.iter().filter_map(|k| Issn::parse(k)).map(|i| i.as_str().to_string()).collect(),
        MatchKey::Title => {
            let t = normalize_title(&keys.title);
            if t.is_empty() {
                vec![]
            } else {
                vec![t]
            }
        }
        MatchKey::Id => vec![keys.journal_id.clone()],
        MatchKey::Identity => vec![],
    }
}

/// Matches journals across sources by ISSN, then eISSN, then normalized
/// title, then plain id. Matches are one-to-one per source: a key value
/// shared by two journals of one source, or a join that would put two
/// journals of one source together, is skipped and counted in `ambiguous`.
/// Only journals present in every source become entries.
///
/// The result does not depend on the order of the sources apart from which
/// id names an entry.
pub fn match_journals(sources: Vec<SourceTable>) -> MatchedJournalSet {
    let nodes: Vec<(usize, &JournalKeys)> =
        sources.iter().enumerate().flat_map(|(s, t)| t.keys.values().map(move |k| (s, k))).collect();
    let n_sources = sources.len();

    if n_sources == 1 {
        let entries = nodes
            .iter()
            .map(|(_, k)| MatchedEntry {
                key: k.journal_id.clone(),
                members: vec![k.journal_id.clone()],
                match_key: MatchKey::Identity,
                publisher: k.publisher.clone(),
            })
            .collect();
        return MatchedJournalSet { entries, unmatched: vec![vec![]], ambiguous: 0, sources };
    }

    let mut uf = UnionFind { parent: (0..nodes.len()).collect() };
    // per component root: which source slots are taken, and the weakest key
    let mut slots: Vec<Vec<bool>> = nodes
        .iter()
        .map(|(s, _)| (0..n_sources).map(|i| i == *s).collect())
        .collect();
    let mut weakest: Vec<Option<MatchKey>> = vec![None; nodes.len()];
    let mut ambiguous = 0u64;

    for kind in [MatchKey::Issn, MatchKey::Eissn, MatchKey::Title, MatchKey::Id] {
        let mut by_value: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, (_, k)) in nodes.iter().enumerate() {
            for v in key_values(k, kind) {
                by_value.entry(v).or_default().push(i);
            }
        }
        for members in by_value.values() {
            let mut roots: BTreeSet<usize> = members.iter().map(|&m| uf.find(m)).collect();
            if roots.len() < 2 {
                continue;
            }
            let mut per_source = vec![BTreeSet::new(); n_sources];
            for &m in members {
                per_source[nodes[m].0].insert(m);
            }
            if per_source.iter().any(|s| s.len() > 1) {
                ambiguous += 1;
                continue;
            }
            let mut merged = vec![false; n_sources];
            let mut clash = false;
            for &r in &roots {
                for (slot, &taken) in merged.iter_mut().zip(&slots[r]) {
                    clash |= *slot && taken;
                    *slot |= taken;
                }
            }
            if clash {
                ambiguous += 1;
                continue;
            }
            let root = roots.pop_first().expect("two roots");
            for r in roots {
                uf.parent[r] = root;
            }
            slots[root] = merged;
            weakest[root] = Some(kind);
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..nodes.len() {
        let r = uf.find(i);
        groups.entry(r).or_default().push(i);
    }
    let mut entries = Vec::new();
    let mut unmatched = vec![Vec::new(); n_sources];
    for (root, members) in groups {
        if members.len() == n_sources {
            let mut by_source = members.clone();
            by_source.sort_by_key(|&m| nodes[m].0);
            let publisher = by_source.iter().find_map(|&m| nodes[m].1.publisher.clone());
            entries.push(MatchedEntry {
                key: nodes[by_source[0]].1.journal_id.clone(),
                members: by_source.iter().map(|&m| nodes[m].1.journal_id.clone()).collect(),
                match_key: weakest[root].expect("joined"),
                publisher,
            });
        } else {
            for m in members {
                unmatched[nodes[m].0].push(nodes[m].1.journal_id.clone());
            }
        }
    }
    entries.sort_by(|a, b| a.key.cmp(&b.key));
    for u in &mut unmatched {
        u.sort();
    }
    MatchedJournalSet { sources, entries, unmatched, ambiguous }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(id: &str, issn: &[&str], title: &str) -> JournalKeys {
        JournalKeys {
            journal_id: id.into(),
            issn: issn.iter().map(|s| s.to_string()).collect(),
            eissn: vec![],
            title: title.into(),
            publisher: None,
        }
    }

    fn source(name: &str, k: Vec<JournalKeys>) -> SourceTable {
        SourceTable::with_keys(name, k, &IndicatorTable::default())
    }

    #[test]
    fn issn_then_title() {
        let a = source("a", vec![keys("a1", &["0036-8075"], "Science"), keys("a2", &[], "Nature Physics!")]);
        let b = source("b", vec![keys("b1", &["00368075"], "SCIENCE mag"), keys("b2", &["1234-5679"], "nature  physics")]);
        let m = match_journals(vec![a, b]);
        assert_eq!(m.entries.len(), 2);
        assert_eq!(m.entries[0].members, vec!["a1", "b1"]);
        assert_eq!(m.entries[0].match_key, MatchKey::Issn);
        assert_eq!(m.entries[1].match_key, MatchKey::Title);
    }

    #[test]
    fn ambiguous_title_dropped() {
        let a = source("a", vec![keys("a1", &[], "Data")]);
        let b = source("b", vec![keys("b1", &[], "Data"), keys("b2", &[], "data.")]);
        let m = match_journals(vec![a, b]);
        assert!(m.entries.is_empty());
        assert_eq!(m.ambiguous, 1);
        assert_eq!(m.unmatched[1], vec!["b1", "b2"]);
    }

    #[test]
    fn symmetric_in_source_order() {
        let mk = || {
            (
                source("a", vec![keys("a1", &["0036-8075"], "X"), keys("a2", &[], "Y"), keys("a3", &[], "Z")]),
                source("b", vec![keys("b1", &["0036-8075"], "Q"), keys("b2", &[], "y"), keys("b3", &[], "W")]),
            )
        };
        let (a, b) = mk();
        let ab = match_journals(vec![a, b]);
        let (a, b) = mk();
        let ba = match_journals(vec![b, a]);
        let as_sets = |m: &MatchedJournalSet| -> BTreeSet<BTreeSet<String>> {
            m.entries.iter().map(|e| e.members.iter().cloned().collect()).collect()
        };
        assert_eq!(as_sets(&ab), as_sets(&ba));
    }

    #[test]
    fn single_source_is_identity() {
        let m = match_journals(vec![source("a", vec![keys("a1", &[], "X")])]);
        assert_eq!(m.entries[0].match_key, MatchKey::Identity);
    }

    #[test]
    fn titles_normalize() {
        assert_eq!(normalize_title("  The  Lancet: Oncology "), "the lancet oncology");
    }
}
