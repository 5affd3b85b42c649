use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Corpus;

/// Diagnostic counts over a sealed corpus. Nothing is modified.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// Papers whose `journal_id` names no ingested journal.
    pub dangling_journal: u64,
    /// Papers with no listed references and no declared reference count.
    pub empty_reference_papers: u64,
    /// Subject assignments on journals that have no papers.
    pub orphan_subjects: u64,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        *self == ValidationReport::default()
    }
}

pub(super) fn validate(corpus: &Corpus) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut journals_with_papers = BTreeSet::new();
    for p in corpus.papers() {
        if let Some(j) = &p.journal_id {
            if corpus.journal(j).is_some() {
                journals_with_papers.insert(j.as_str());
            } else {
                report.dangling_journal += 1;
            }
        }
        if p.references.is_empty() && p.declared_reference_count.is_none() {
            report.empty_reference_papers += 1;
        }
    }
    report.orphan_subjects = corpus
        .subjects()
        .iter()
        .filter(|s| !journals_with_papers.contains(s.journal_id.as_str()))
        .count() as u64;
    report
}

#[cfg(test)]
mod tests {
    use crate::corpus::{CorpusBuilder, CorpusConfig};

    #[test]
    fn consistent_corpus_is_clean() {
        let mut b = CorpusBuilder::new(CorpusConfig::default());
        b.ingest_journals(r#"{"id":"j","title":"J","issn":["0036-8075"]}"#.as_bytes()).unwrap();
        b.ingest_papers(
            r#"{"id":"a","year":2020,"doc_type":"research_article","journal_id":"j","ref_count":5}
{"id":"b","year":2021,"doc_type":"research_article","journal_id":"j","references":["a"]}"#
                .as_bytes(),
        )
        .unwrap();
        b.ingest_subjects("journal_key,scheme,subject_id,subject_label\nj,scilit,1,Physics\n".as_bytes())
            .unwrap();
        assert!(b.seal().validate().is_clean());
    }

    #[test]
    fn flags_dangling_empty_and_orphans() {
        let mut b = CorpusBuilder::new(CorpusConfig::default());
        b.ingest_journals(
            "{\"id\":\"j\",\"title\":\"J\"}\n{\"id\":\"k\",\"title\":\"K\"}\n".as_bytes(),
        )
        .unwrap();
        b.ingest_papers(
            r#"{"id":"a","year":2020,"doc_type":"research_article","journal_id":"nope","ref_count":2}
{"id":"b","year":2021,"doc_type":"research_article","journal_id":"j","references":[]}"#
                .as_bytes(),
        )
        .unwrap();
        b.ingest_subjects("journal_key,scheme,subject_id,subject_label\nk,wos_category,X,Law\n".as_bytes())
            .unwrap();
        let c = b.seal();
        let r = c.validate();
        assert_eq!(r.dangling_journal, 1);
        assert_eq!(r.empty_reference_papers, 1);
        assert_eq!(r.orphan_subjects, 1);
        // report only: the dangling paper is still there
        assert!(c.paper("a").is_some());
    }
}
