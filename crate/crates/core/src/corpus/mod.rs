//! Corpus ingestion and the sealed, read-only corpus view.
//!
//! Records arrive as JSONL (papers, journals, supplementary edges) and CSV
//! (subject assignments). A [`CorpusBuilder`] validates, normalizes and
//! deduplicates them; [`CorpusBuilder::seal`] turns it into a [`Corpus`]
//! that downstream stages only read.

mod ingest;
mod issn;
pub mod schema;
mod validate;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use ingest::{IngestReport, MAX_SAMPLE_ERRORS};
pub(crate) use ingest::reference_key;
pub use issn::Issn;
pub use validate::ValidationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocType {
    ResearchArticle,
    ReviewArticle,
    ConferencePaper,
    CaseReport,
    ClinicalTrial,
    Editorial,
    Letter,
    BookChapter,
    Other,
}

impl DocType {
    pub const ALL: [DocType; 9] = [
        DocType::ResearchArticle,
        DocType::ReviewArticle,
        DocType::ConferencePaper,
        DocType::CaseReport,
        DocType::ClinicalTrial,
        DocType::Editorial,
        DocType::Letter,
        DocType::BookChapter,
        DocType::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DocType::ResearchArticle => "research_article",
            DocType::ReviewArticle => "review_article",
            DocType::ConferencePaper => "conference_paper",
            DocType::CaseReport => "case_report",
            DocType::ClinicalTrial => "clinical_trial",
            DocType::Editorial => "editorial",
            DocType::Letter => "letter",
            DocType::BookChapter => "book_chapter",
            DocType::Other => "other",
        }
    }

    pub fn parse(raw: &str) -> Option<DocType> {
        let key = raw.trim().to_ascii_lowercase().replace(['-', ' '], "_");
        DocType::ALL.into_iter().find(|d| d.as_str() == key)
    }

    /// Document types ranked for I3: research and review articles,
    /// conference papers, case reports and clinical trials.
    pub fn i3_default() -> BTreeSet<DocType> {
        [
            DocType::ResearchArticle,
            DocType::ReviewArticle,
            DocType::ConferencePaper,
            DocType::CaseReport,
            DocType::ClinicalTrial,
        ]
        .into_iter()
        .collect()
    }

    /// Counted in a JIF denominator.
    pub fn is_citable(self) -> bool {
        matches!(self, DocType::ResearchArticle | DocType::ReviewArticle)
    }
}

impl fmt::Display for DocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DocType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DocType::parse(s).ok_or_else(|| Error::Malformed(format!("unknown document type `{s}`")))
    }
}

/// Subject classification scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Scilit,
    ScopusAsjc,
    WosCategory,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Scilit, Scheme::ScopusAsjc, Scheme::WosCategory];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Scilit => "scilit",
            Scheme::ScopusAsjc => "scopus_asjc",
            Scheme::WosCategory => "wos_category",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        Scheme::ALL
            .into_iter()
            .find(|x| x.as_str() == key)
            .ok_or_else(|| Error::UnknownScheme(s.to_string()))
    }
}

/// Lowercases a DOI and strips resolver prefixes (`https://doi.org/`,
/// `doi:`). Returns `None` for strings that do not look like a DOI.
pub fn normalize_doi(raw: &str) -> Option<String> {
    let mut s = raw.trim().to_ascii_lowercase();
    for prefix in [
        "https://doi.org/",
        "http://doi.org/",
        "https://dx.doi.org/",
        "http://dx.doi.org/",
        "doi.org/",
        "doi:",
    ] {
        if let Some(rest) = s.strip_prefix(prefix) {
            s = rest.trim().to_string();
            break;
        }
    }
    (s.starts_with("10.") && s.contains('/')).then_some(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperRecord {
    pub id: String,
    pub doi: Option<String>,
    pub year: i32,
    pub doc_type: DocType,
    pub journal_id: Option<String>,
    pub references: Vec<String>,
    pub declared_reference_count: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JournalRecord {
    pub id: String,
    pub title: String,
    pub issn: Vec<Issn>,
    pub eissn: Vec<Issn>,
    pub publisher_id: Option<String>,
    pub publisher_name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubjectAssignment {
    pub scheme: Scheme,
    pub subject_id: String,
    pub journal_id: String,
    pub subject_label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub min_year: i32,
    pub max_year: i32,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { min_year: 1900, max_year: 2100 }
    }
}

/// Mutable corpus under construction. Single writer.
#[derive(Debug, Clone, Default)]
pub struct CorpusBuilder {
    config: CorpusConfig,
    papers: BTreeMap<String, PaperRecord>,
    doi_index: HashMap<String, String>,
    journals: BTreeMap<String, JournalRecord>,
    issn_index: BTreeMap<Issn, String>,
    eissn_index: BTreeMap<Issn, String>,
    subjects: BTreeMap<(Scheme, String, String), String>,
    edges: BTreeSet<(String, String)>,
}

impl CorpusBuilder {
    pub fn new(config: CorpusConfig) -> Self {
        CorpusBuilder { config, ..Default::default() }
    }

    pub fn config(&self) -> &CorpusConfig {
        &self.config
    }

    pub fn seal(self) -> Corpus {
        let subjects = self
            .subjects
            .into_iter()
            .map(|((scheme, subject_id, journal_id), subject_label)| SubjectAssignment {
                scheme,
                subject_id,
                journal_id,
                subject_label,
            })
            .collect();
        Corpus {
            config: self.config,
            papers: self.papers,
            doi_index: self.doi_index,
            journals: self.journals,
            issn_index: self.issn_index,
            eissn_index: self.eissn_index,
            subjects,
            edges: self.edges,
        }
    }
}

/// Sealed, read-only corpus. Safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    config: CorpusConfig,
    papers: BTreeMap<String, PaperRecord>,
    doi_index: HashMap<String, String>,
    journals: BTreeMap<String, JournalRecord>,
    issn_index: BTreeMap<Issn, String>,
    eissn_index: BTreeMap<Issn, String>,
    subjects: Vec<SubjectAssignment>,
    edges: BTreeSet<(String, String)>,
}

impl Corpus {
    pub fn config(&self) -> &CorpusConfig {
        &self.config
    }

    /// Papers in ascending `paper_id` order.
    pub fn papers(&self) -> impl ExactSizeIterator<Item = &PaperRecord> {
        self.papers.values()
    }

    pub fn paper_count(&self) -> usize {
        self.papers.len()
    }

    pub fn paper(&self, id: &str) -> Option<&PaperRecord> {
        self.papers.get(id)
    }

    pub fn paper_by_doi(&self, doi: &str) -> Option<&PaperRecord> {
        let doi = normalize_doi(doi)?;
        self.doi_index.get(&doi).and_then(|id| self.papers.get(id))
    }

    /// Resolves a reference entry: paper id first, then DOI.
    pub fn resolve_reference(&self, entry: &str) -> Option<&PaperRecord> {
        let entry = entry.trim();
        self.papers.get(entry).or_else(|| self.paper_by_doi(entry))
    }

    /// Journals in ascending `journal_id` order.
    pub fn journals(&self) -> impl ExactSizeIterator<Item = &JournalRecord> {
        self.journals.values()
    }

    pub fn journal(&self, id: &str) -> Option<&JournalRecord> {
        self.journals.get(id)
    }

    pub fn journal_by_issn(&self, issn: &Issn) -> Option<&JournalRecord> {
        self.issn_index
            .get(issn)
            .or_else(|| self.eissn_index.get(issn))
            .and_then(|id| self.journals.get(id))
    }

    /// Resolves a subject-table journal key: print ISSN, then eISSN, then
    /// plain journal id.
    pub fn resolve_journal_key(&self, key: &str) -> Option<&JournalRecord> {
        resolve_key(&self.issn_index, &self.eissn_index, &self.journals, key)
    }

    /// Subject assignments, sorted by (scheme, subject_id, journal_id).
    pub fn subjects(&self) -> &[SubjectAssignment] {
        &self.subjects
    }

    /// Supplementary citation edges `(citing, cited)` as ingested.
    pub fn extra_edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }
}

fn resolve_key<'a>(
    issn_index: &BTreeMap<Issn, String>,
    eissn_index: &BTreeMap<Issn, String>,
    journals: &'a BTreeMap<String, JournalRecord>,
    key: &str,
) -> Option<&'a JournalRecord> {
    if let Some(issn) = Issn::parse(key) {
        let hit = issn_index.get(&issn).or_else(|| eissn_index.get(&issn));
        if let Some(id) = hit {
            return journals.get(id);
        }
    }
    journals.get(key.trim())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doi_normalization() {
        assert_eq!(normalize_doi("https://doi.org/10.1000/ABC").as_deref(), Some("10.1000/abc"));
        assert_eq!(normalize_doi("doi:10.1/x").as_deref(), Some("10.1/x"));
        assert_eq!(normalize_doi(" 10.5/Y "), Some("10.5/y".to_string()));
        assert_eq!(normalize_doi("p42"), None);
        assert_eq!(normalize_doi(""), None);
    }

    #[test]
    fn doc_type_tokens() {
        for d in DocType::ALL {
            assert_eq!(DocType::parse(d.as_str()), Some(d));
        }
        assert_eq!(DocType::parse("Research Article"), Some(DocType::ResearchArticle));
        assert_eq!(DocType::parse("poster"), None);
        assert!(DocType::ReviewArticle.is_citable());
        assert!(!DocType::ConferencePaper.is_citable());
        assert_eq!(DocType::i3_default().len(), 5);
    }

    #[test]
    fn scheme_tokens() {
        assert_eq!("scopus_asjc".parse::<Scheme>().unwrap(), Scheme::ScopusAsjc);
        assert!(matches!("mesh".parse::<Scheme>(), Err(Error::UnknownScheme(_))));
    }
}
