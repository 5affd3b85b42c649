//! Brute-force reference implementation of I3, I3/N, JIF and CiteScore.
//!
//! Works straight from the wire records and deliberately uses none of the
//! engine's types or helpers: its own record acceptance, reference
//! resolution, `m` rule, quadratic percentile scan and window arithmetic.
//! Journal records are assumed clean (first occurrence of an id wins).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::corpus::schema::{EdgeLine, JournalLine, PaperLine};
use crate::error::{Error, Result};

use super::SynthCorpus;

pub const ORACLE_MAX_PAPERS: usize = 200_000;

const KNOWN_TYPES: [&str; 9] = [
    "research_article",
    "review_article",
    "conference_paper",
    "case_report",
    "clinical_trial",
    "editorial",
    "letter",
    "book_chapter",
    "other",
];

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSettings {
    /// Weights for top 1%, top 10%, top 50% and the rest.
    pub weights: [u64; 4],
    pub ranked_types: Vec<String>,
    /// I3 publication years `Y - a ..= Y - b`.
    pub pub_back: (i32, i32),
    /// I3 citing years `Y - a ..= Y - b`.
    pub cite_back: (i32, i32),
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            weights: [100, 10, 2, 0],
            ranked_types: ["research_article", "review_article", "conference_paper", "case_report", "clinical_trial"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            pub_back: (3, 2),
            cite_back: (3, 0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleIndicators {
    pub n_pubs: u64,
    pub i3: u64,
    pub i3_n: Option<f64>,
    pub jif: Option<f64>,
    pub citescore: Option<f64>,
    pub jif_numerator: u64,
    pub jif_denominator: u64,
}

pub struct Oracle {
    ids: Vec<String>,
    pos: HashMap<String, usize>,
    years: Vec<i32>,
    types: Vec<String>,
    journal: Vec<Option<String>>,
    m: Vec<u32>,
    /// citing paper -> distinct resolved targets
    cites: Vec<Vec<usize>>,
    journals: BTreeSet<String>,
    settings: OracleSettings,
}

fn doi_key(raw: &str) -> Option<String> {
    let lower = raw.trim().to_lowercase();
    let mut rest = lower.as_str();
    for p in ["https://doi.org/", "http://doi.org/", "https://dx.doi.org/", "http://dx.doi.org/", "doi.org/", "doi:"] {
        if let Some(r) = rest.strip_prefix(p) {
            rest = r.trim();
            break;
        }
    }
    if rest.starts_with("10.") && rest.contains('/') {
        Some(rest.to_string())
    } else {
        None
    }
}

fn type_token(raw: &str) -> String {
    let t: String = raw
        .trim()
        .to_lowercase()
        .chars()
        .map(|c| if c == '-' || c == ' ' { '_' } else { c })
        .collect();
    if KNOWN_TYPES.contains(&t.as_str()) {
        t
    } else {
        "other".to_string()
    }
}

impl Oracle {
    pub fn new(
        papers: &[PaperLine],
        journals: &[JournalLine],
        edges: &[EdgeLine],
        settings: OracleSettings,
    ) -> Result<Oracle> {
        if papers.len() > ORACLE_MAX_PAPERS {
            return Err(Error::OracleOversize { papers: papers.len(), limit: ORACLE_MAX_PAPERS });
        }
        let mut kept: BTreeMap<String, (&PaperLine, Vec<String>, usize)> = BTreeMap::new();
        let mut doi_owner: HashMap<String, String> = HashMap::new();
        for p in papers {
            let id = p.id.trim().to_string();
            if id.is_empty() || p.year < 1900 || p.year > 2100 {
                continue;
            }
            let refs: Vec<String> =
                p.references.iter().map(|r| r.trim().to_string()).filter(|r| !r.is_empty()).collect();
            let distinct = refs.iter().map(|r| doi_key(r).unwrap_or_else(|| r.clone())).collect::<BTreeSet<_>>().len();
            if let Some(n) = p.ref_count {
                if n < 0 || (n as usize) < distinct {
                    continue;
                }
            }
            let doi = p.doi.as_deref().and_then(doi_key);
            if kept.contains_key(&id) || doi.as_ref().is_some_and(|d| doi_owner.contains_key(d)) {
                continue;
            }
            if let Some(d) = doi {
                doi_owner.insert(d, id.clone());
            }
            kept.insert(id, (p, refs, distinct));
        }

        let ids: Vec<String> = kept.keys().cloned().collect();
        let pos: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let lookup = |entry: &str| -> Option<usize> {
            let e = entry.trim();
            if let Some(&i) = pos.get(e) {
                return Some(i);
            }
            let owner = doi_owner.get(&doi_key(e)?)?;
            pos.get(owner.as_str()).copied()
        };

        let mut extra: Vec<Vec<String>> = vec![Vec::new(); ids.len()];
        for e in edges {
            let (a, b) = (e.citing.trim(), e.cited.trim());
            if a.is_empty() || b.is_empty() {
                continue;
            }
            if let Some(i) = lookup(a) {
                extra[i].push(b.to_string());
            }
        }

        let journal_ids: BTreeSet<String> =
            journals.iter().map(|j| j.id.trim().to_string()).filter(|j| !j.is_empty()).collect();

        let mut years = Vec::new();
        let mut types = Vec::new();
        let mut journal = Vec::new();
        let mut m = Vec::new();
        let mut cites = Vec::new();
        for (i, (_, (p, refs, distinct))) in kept.iter().enumerate() {
            years.push(p.year as i32);
            types.push(type_token(&p.doc_type));
            journal.push(
                p.journal_id.as_deref().map(str::trim).filter(|j| journal_ids.contains(*j)).map(str::to_string),
            );
            let declared = p.ref_count.unwrap_or(0);
            m.push(if declared > 0 { declared as u32 } else { (*distinct).max(1) as u32 });
            let mut targets = BTreeSet::new();
            for r in refs.iter().chain(&extra[i]) {
                if let Some(t) = lookup(r) {
                    if t != i {
                        targets.insert(t);
                    }
                }
            }
            cites.push(targets.into_iter().collect());
        }

        let pos = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(Oracle { ids, pos, years, types, journal, m, cites, journals: journal_ids, settings })
    }

    pub fn from_synth(corpus: &SynthCorpus, settings: OracleSettings) -> Result<Oracle> {
        Oracle::new(&corpus.papers, &corpus.journals, &corpus.edges, settings)
    }

    pub fn paper_count(&self) -> usize {
        self.ids.len()
    }

    /// `1/m` for each outgoing edge of `paper_id`, as `(cited id, weight)`.
    pub fn edge_weights(&self, paper_id: &str) -> Vec<(String, f64)> {
        let Some(&i) = self.pos.get(paper_id) else {
            return Vec::new();
        };
        self.cites[i].iter().map(|&t| (self.ids[t].clone(), 1.0 / self.m[i] as f64)).collect()
    }

    /// Indicators for every journal in year `year`.
    pub fn year(&self, year: i32) -> BTreeMap<String, OracleIndicators> {
        let s = &self.settings;
        let (pub_lo, pub_hi) = (year - s.pub_back.0, year - s.pub_back.1);
        let (cite_lo, cite_hi) = (year - s.cite_back.0, year - s.cite_back.1);

        // Citer lists, built naively.
        let mut citers: Vec<Vec<usize>> = vec![Vec::new(); self.ids.len()];
        for (a, targets) in self.cites.iter().enumerate() {
            for &t in targets {
                citers[t].push(a);
            }
        }

        let mut cohorts: BTreeMap<(i32, &str), Vec<usize>> = BTreeMap::new();
        for i in 0..self.ids.len() {
            let y = self.years[i];
            if y >= pub_lo && y <= pub_hi && s.ranked_types.iter().any(|t| *t == self.types[i]) {
                cohorts.entry((y, self.types[i].as_str())).or_default().push(i);
            }
        }
        let mut weight_of: HashMap<usize, u64> = HashMap::new();
        for members in cohorts.values() {
            let counts: Vec<f64> = members
                .iter()
                .map(|&p| {
                    let mut ms: Vec<u32> = citers[p]
                        .iter()
                        .filter(|&&c| self.years[c] >= cite_lo && self.years[c] <= cite_hi)
                        .map(|&c| self.m[c])
                        .collect();
                    ms.sort_unstable();
                    ms.reverse();
                    let mut total = 0.0;
                    for v in ms {
                        total += 1.0 / v as f64;
                    }
                    total
                })
                .collect();
            let n = members.len();
            for (k, &p) in members.iter().enumerate() {
                let mut below = 0usize;
                for other in &counts {
                    if *other < counts[k] {
                        below += 1;
                    }
                }
                let pct = 100.0 * below as f64 / n as f64;
                let w = if pct >= 99.0 {
                    s.weights[0]
                } else if pct >= 90.0 {
                    s.weights[1]
                } else if pct >= 50.0 {
                    s.weights[2]
                } else {
                    s.weights[3]
                };
                weight_of.insert(p, w);
            }
        }

        let cited_in = |p: usize, lo: i32, hi: i32| -> u64 {
            citers[p].iter().filter(|&&c| self.years[c] >= lo && self.years[c] <= hi).count() as u64
        };

        let mut by_journal: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for p in 0..self.ids.len() {
            if let Some(j) = self.journal[p].as_deref() {
                by_journal.entry(j).or_default().push(p);
            }
        }
        let mut out = BTreeMap::new();
        for j in &self.journals {
            let mut r = OracleIndicators {
                n_pubs: 0,
                i3: 0,
                i3_n: None,
                jif: None,
                citescore: None,
                jif_numerator: 0,
                jif_denominator: 0,
            };
            let (mut cs_num, mut cs_den) = (0u64, 0u64);
            for &p in by_journal.get(j.as_str()).map(Vec::as_slice).unwrap_or(&[]) {
                if let Some(w) = weight_of.get(&p) {
                    r.n_pubs += 1;
                    r.i3 += w;
                }
                let y = self.years[p];
                if y == year - 1 || y == year - 2 {
                    r.jif_numerator += cited_in(p, year, year);
                    if self.types[p] == "research_article" || self.types[p] == "review_article" {
                        r.jif_denominator += 1;
                    }
                }
                if y >= year - 4 && y < year {
                    cs_num += cited_in(p, year, year);
                    cs_den += 1;
                }
            }
            if r.n_pubs > 0 {
                r.i3_n = Some(r.i3 as f64 / r.n_pubs as f64);
            }
            if r.jif_denominator > 0 {
                r.jif = Some(r.jif_numerator as f64 / r.jif_denominator as f64);
            }
            if cs_den > 0 {
                r.citescore = Some(cs_num as f64 / cs_den as f64);
            }
            out.insert(j.clone(), r);
        }
        out
    }

    /// Indicators of one journal; an unknown or empty journal gives zero
    /// counts and undefined ratios.
    pub fn indicators(&self, journal_id: &str, year: i32) -> OracleIndicators {
        self.year(year).remove(journal_id).unwrap_or(OracleIndicators {
            n_pubs: 0,
            i3: 0,
            i3_n: None,
            jif: None,
            citescore: None,
            jif_numerator: 0,
            jif_denominator: 0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper(id: &str, year: i64, journal: &str, refs: &[&str]) -> PaperLine {
        PaperLine {
            id: id.into(),
            doi: None,
            year,
            doc_type: "research_article".into(),
            journal_id: Some(journal.into()),
            references: refs.iter().map(|s| s.to_string()).collect(),
            ref_count: None,
        }
    }

    fn journal(id: &str) -> JournalLine {
        JournalLine {
            id: id.into(),
            title: id.into(),
            issn: vec![],
            eissn: vec![],
            publisher_id: None,
            publisher_name: None,
        }
    }

    #[test]
    fn empty_and_uncited_journals() {
        let papers = vec![paper("a", 2021, "solo", &[])];
        let o = Oracle::new(&papers, &[journal("solo"), journal("none")], &[], OracleSettings::default()).unwrap();
        let solo = o.indicators("solo", 2024);
        assert_eq!((solo.i3, solo.i3_n), (0, Some(0.0)));
        let none = o.indicators("none", 2024);
        assert_eq!((none.i3, none.i3_n, none.jif, none.citescore), (0, None, None, None));
    }

    #[test]
    fn refuses_oversize() {
        let papers = vec![paper("a", 2021, "j", &[]); ORACLE_MAX_PAPERS + 1];
        assert!(matches!(
            Oracle::new(&papers, &[], &[], OracleSettings::default()),
            Err(Error::OracleOversize { .. })
        ));
    }

    #[test]
    fn top_paper_in_small_cohort() {
        // a is cited twice, b and c never: a sits at 2/3 -> top 50%.
        let papers = vec![
            paper("a", 2021, "j", &[]),
            paper("b", 2021, "j", &[]),
            paper("c", 2021, "k", &[]),
            paper("d", 2023, "k", &["a"]),
            paper("e", 2024, "k", &["a", "x"]),
        ];
        let o = Oracle::new(&papers, &[journal("j"), journal("k")], &[], OracleSettings::default()).unwrap();
        let j = o.indicators("j", 2024);
        assert_eq!((j.n_pubs, j.i3), (2, 2));
        assert_eq!(o.edge_weights("e"), vec![("a".to_string(), 0.5)]);
    }
}
