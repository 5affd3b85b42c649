//! Line formats for `papers.jsonl`, `journals.jsonl`, `edges.jsonl` and
//! `subjects.csv`. These are the on-disk shapes; validation and
//! normalization happen during ingestion.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperLine {
    pub id: String,
    #[serde(default)]
    pub doi: Option<String>,
    pub year: i64,
    pub doc_type: String,
    #[serde(default)]
    pub journal_id: Option<String>,
    #[serde(default)]
    pub references: Vec<String>,
    #[serde(default)]
    pub ref_count: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JournalLine {
    pub id: String,
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub issn: Vec<String>,
    #[serde(default)]
    pub eissn: Vec<String>,
    #[serde(default)]
    pub publisher_id: Option<String>,
    #[serde(default)]
    pub publisher_name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLine {
    pub citing: String,
    pub cited: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubjectRow {
    pub journal_key: String,
    pub scheme: String,
    pub subject_id: String,
    pub subject_label: String,
}

pub const SUBJECTS_HEADER: [&str; 4] = ["journal_key", "scheme", "subject_id", "subject_label"];
