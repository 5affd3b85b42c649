use std::collections::BTreeSet;
use std::io::{BufRead, Read};

use serde::{Deserialize, Serialize};

use super::schema::{EdgeLine, JournalLine, PaperLine, SubjectRow};
use super::{normalize_doi, resolve_key, CorpusBuilder, DocType, Issn, JournalRecord, PaperRecord, Scheme};
use crate::error::{Error, Result};

pub const MAX_SAMPLE_ERRORS: usize = 16;

/// Outcome of one ingest call. `records_read` always equals
/// `records_accepted + duplicates_dropped + conflicts + malformed`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestReport {
    pub records_read: u64,
    pub records_accepted: u64,
    pub duplicates_dropped: u64,
    pub conflicts: u64,
    pub malformed: u64,
    /// Accepted papers whose doc_type string was unknown and mapped to `other`.
    pub unknown_doc_types: u64,
    /// ISSN/eISSN strings dropped for failing validation on accepted records.
    pub dropped_keys: u64,
    pub sample_errors: Vec<(u64, String)>,
}

impl IngestReport {
    pub fn reconciles(&self) -> bool {
        self.records_read
            == self.records_accepted + self.duplicates_dropped + self.conflicts + self.malformed
    }

    fn note(&mut self, line: u64, reason: impl Into<String>) {
        if self.sample_errors.len() < MAX_SAMPLE_ERRORS {
            self.sample_errors.push((line, reason.into()));
        }
    }

    fn malformed(&mut self, line: u64, reason: impl Into<String>) {
        self.malformed += 1;
        self.note(line, reason);
    }

    /// Adds another report's tallies to this one.
    pub fn absorb(&mut self, other: &IngestReport) {
        self.records_read += other.records_read;
        self.records_accepted += other.records_accepted;
        self.duplicates_dropped += other.duplicates_dropped;
        self.conflicts += other.conflicts;
        self.malformed += other.malformed;
        self.unknown_doc_types += other.unknown_doc_types;
        self.dropped_keys += other.dropped_keys;
        for e in &other.sample_errors {
            if self.sample_errors.len() < MAX_SAMPLE_ERRORS {
                self.sample_errors.push(e.clone());
            }
        }
    }
}

/// Iterates non-blank lines with 1-based line numbers. Read errors on the
/// underlying stream are fatal; everything else is per-record.
fn lines<R: BufRead>(source: R) -> impl Iterator<Item = Result<(u64, String)>> {
    source.lines().enumerate().filter_map(|(i, line)| match line {
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some(Ok((i as u64 + 1, l))),
        Err(e) => Some(Err(Error::Stream(e))),
    })
}

fn non_empty(s: Option<String>) -> Option<String> {
    s.map(|v| v.trim().to_string()).filter(|v| !v.is_empty())
}

/// Key a reference entry is deduplicated under: normalized DOI when it
/// looks like one, otherwise the trimmed token.
pub(crate) fn reference_key(entry: &str) -> String {
    normalize_doi(entry).unwrap_or_else(|| entry.trim().to_string())
}

impl CorpusBuilder {
    /// Ingests `papers.jsonl`. Malformed lines are counted and skipped;
    /// duplicate ids or DOIs keep the first record.
    pub fn ingest_papers<R: BufRead>(&mut self, source: R) -> Result<IngestReport> {
        let mut report = IngestReport::default();
        for item in lines(source) {
            let (line_no, line) = item?;
            report.records_read += 1;
            let raw: PaperLine = match serde_json::from_str(&line) {
                Ok(r) => r,
                Err(e) => {
                    report.malformed(line_no, format!("json: {e}"));
                    continue;
                }
            };
            let paper = match self.paper_from_line(raw, &mut report) {
                Ok(p) => p,
                Err(reason) => {
                    report.malformed(line_no, reason);
                    continue;
                }
            };
            let doi_taken = paper.doi.as_ref().is_some_and(|d| self.doi_index.contains_key(d));
            if self.papers.contains_key(&paper.id) || doi_taken {
                report.duplicates_dropped += 1;
                continue;
            }
            if let Some(doi) = &paper.doi {
                self.doi_index.insert(doi.clone(), paper.id.clone());
            }
            self.papers.insert(paper.id.clone(), paper);
            report.records_accepted += 1;
        }
        Ok(report)
    }

    fn paper_from_line(
        &self,
        raw: PaperLine,
        report: &mut IngestReport,
    ) -> std::result::Result<PaperRecord, String> {
        let id = raw.id.trim().to_string();
        if id.is_empty() {
            return Err("empty id".into());
        }
        let (lo, hi) = (i64::from(self.config.min_year), i64::from(self.config.max_year));
        if raw.year < lo || raw.year > hi {
            return Err(format!("year {} outside {lo}..={hi}", raw.year));
        }
        let references: Vec<String> = raw
            .references
            .iter()
            .map(|r| r.trim().to_string())
            .filter(|r| !r.is_empty())
            .collect();
        let declared = match raw.ref_count {
            None => None,
            Some(n) if n < 0 => return Err(format!("negative ref_count {n}")),
            Some(n) => Some(u32::try_from(n).map_err(|_| format!("ref_count {n} too large"))?),
        };
        if let Some(n) = declared {
            let distinct: BTreeSet<String> = references.iter().map(|r| reference_key(r)).collect();
            if (n as usize) < distinct.len() {
                return Err(format!(
                    "ref_count {n} smaller than {} listed references",
                    distinct.len()
                ));
            }
        }
        let doc_type = DocType::parse(&raw.doc_type).unwrap_or_else(|| {
            report.unknown_doc_types += 1;
            DocType::Other
        });
        Ok(PaperRecord {
            id,
            doi: raw.doi.as_deref().and_then(normalize_doi),
            year: raw.year as i32,
            doc_type,
            journal_id: non_empty(raw.journal_id),
            references,
            declared_reference_count: declared,
        })
    }

    /// Ingests `journals.jsonl`. A record claiming an ISSN or eISSN already
    /// owned by another journal is rejected and counted as a conflict.
    pub fn ingest_journals<R: BufRead>(&mut self, source: R) -> Result<IngestReport> {
        let mut report = IngestReport::default();
        for item in lines(source) {
            let (line_no, line) = item?;
            report.records_read += 1;
            let raw: JournalLine = match serde_json::from_str(&line) {
                Ok(r) => r,
                Err(e) => {
                    report.malformed(line_no, format!("json: {e}"));
                    continue;
                }
            };
            let id = raw.id.trim().to_string();
            if id.is_empty() {
                report.malformed(line_no, "empty id");
                continue;
            }
            if self.journals.contains_key(&id) {
                report.duplicates_dropped += 1;
                continue;
            }
            let mut dropped = 0u64;
            let mut parse_all = |keys: &[String]| -> Vec<Issn> {
                let mut out: Vec<Issn> = Vec::new();
                for k in keys {
                    match Issn::parse(k) {
                        Some(i) if !out.contains(&i) => out.push(i),
                        Some(_) => {}
                        None => dropped += 1,
                    }
                }
                out
            };
            let issn = parse_all(&raw.issn);
            let eissn = parse_all(&raw.eissn);
            let title = raw.title.trim().to_string();
            if issn.is_empty() && eissn.is_empty() && title.is_empty() {
                report.malformed(line_no, "no usable issn, eissn or title");
                continue;
            }
            let clash = issn.iter().chain(&eissn).find(|k| {
                let owner = self.issn_index.get(*k).or_else(|| self.eissn_index.get(*k));
                owner.is_some_and(|o| *o != id)
            });
            if let Some(k) = clash {
                report.conflicts += 1;
                report.note(line_no, format!("issn {k} already claimed"));
                continue;
            }
            report.dropped_keys += dropped;
            for k in &issn {
                self.issn_index.insert(k.clone(), id.clone());
            }
            for k in &eissn {
                self.eissn_index.insert(k.clone(), id.clone());
            }
            self.journals.insert(
                id.clone(),
                JournalRecord {
                    id,
                    title,
                    issn,
                    eissn,
                    publisher_id: non_empty(raw.publisher_id),
                    publisher_name: non_empty(raw.publisher_name),
                },
            );
            report.records_accepted += 1;
        }
        Ok(report)
    }

    /// Ingests `subjects.csv` rows for one scheme. The scheme token is
    /// checked before the stream is touched. Rows whose `scheme` column names
    /// a different scheme are counted malformed; an empty column inherits
    /// `scheme`.
    pub fn ingest_subject_assignments<R: Read>(
        &mut self,
        source: R,
        scheme: &str,
    ) -> Result<IngestReport> {
        let scheme: Scheme = scheme.parse()?;
        self.ingest_subject_rows(source, Some(scheme))
    }

    /// Ingests `subjects.csv` taking each row's scheme from its own column.
    pub fn ingest_subjects<R: Read>(&mut self, source: R) -> Result<IngestReport> {
        self.ingest_subject_rows(source, None)
    }

    fn ingest_subject_rows<R: Read>(
        &mut self,
        source: R,
        scheme: Option<Scheme>,
    ) -> Result<IngestReport> {
        let mut report = IngestReport::default();
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
        for record in reader.deserialize::<SubjectRow>() {
            report.records_read += 1;
            let row = match record {
                Ok(r) => r,
                Err(e) => {
                    let line = e.position().map(|p| p.line()).unwrap_or(0);
                    if matches!(e.kind(), csv::ErrorKind::Io(_)) {
                        return Err(e.into());
                    }
                    report.malformed(line, format!("csv: {e}"));
                    continue;
                }
            };
            let line = report.records_read + 1;
            let row_scheme = match (row.scheme.trim(), scheme) {
                ("", Some(s)) => s,
                (token, expected) => match token.parse::<Scheme>() {
                    Ok(s) if expected.is_none_or(|e| e == s) => s,
                    Ok(s) => {
                        report.malformed(line, format!("scheme {s} does not match requested scheme"));
                        continue;
                    }
                    Err(_) => {
                        report.malformed(line, format!("unknown scheme `{token}`"));
                        continue;
                    }
                },
            };
            let subject_id = row.subject_id.trim().to_string();
            if subject_id.is_empty() {
                report.malformed(line, "empty subject_id");
                continue;
            }
            let journal_id = match resolve_key(
                &self.issn_index,
                &self.eissn_index,
                &self.journals,
                &row.journal_key,
            ) {
                Some(j) => j.id.clone(),
                None => {
                    report.malformed(line, format!("unresolvable journal key `{}`", row.journal_key));
                    continue;
                }
            };
            let key = (row_scheme, subject_id, journal_id);
            if self.subjects.contains_key(&key) {
                report.duplicates_dropped += 1;
                continue;
            }
            self.subjects.insert(key, row.subject_label.trim().to_string());
            report.records_accepted += 1;
        }
        Ok(report)
    }

    /// Ingests the optional `edges.jsonl` supplement of citations known
    /// without reference-list metadata.
    pub fn ingest_edges<R: BufRead>(&mut self, source: R) -> Result<IngestReport> {
        let mut report = IngestReport::default();
        for item in lines(source) {
            let (line_no, line) = item?;
            report.records_read += 1;
            let raw: EdgeLine = match serde_json::from_str(&line) {
                Ok(r) => r,
                Err(e) => {
                    report.malformed(line_no, format!("json: {e}"));
                    continue;
                }
            };
            let (citing, cited) = (raw.citing.trim().to_string(), raw.cited.trim().to_string());
            if citing.is_empty() || cited.is_empty() {
                report.malformed(line_no, "empty endpoint");
                continue;
            }
            if self.edges.insert((citing, cited)) {
                report.records_accepted += 1;
            } else {
                report.duplicates_dropped += 1;
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CorpusConfig;

    fn builder() -> CorpusBuilder {
        CorpusBuilder::new(CorpusConfig::default())
    }

    #[test]
    fn three_clean_papers() {
        let src = r#"{"id":"a","doi":"10.1/a","year":2021,"doc_type":"research_article","journal_id":"j","references":[],"ref_count":null}
{"id":"b","doi":"10.1/b","year":2021,"doc_type":"research_article","journal_id":"j","references":["a"],"ref_count":3}
{"id":"c","doi":"10.1/c","year":2022,"doc_type":"review_article","journal_id":null,"references":["a","b"]}
"#;
        let mut b = builder();
        let r = b.ingest_papers(src.as_bytes()).unwrap();
        assert_eq!((r.records_read, r.records_accepted, r.malformed), (3, 3, 0));
        assert!(r.reconciles());
    }

    #[test]
    fn duplicate_doi_keeps_first() {
        let src = r#"{"id":"a","doi":"10.1/X","year":2021,"doc_type":"research_article"}
{"id":"b","doi":"https://doi.org/10.1/x","year":2022,"doc_type":"letter"}
"#;
        let mut b = builder();
        let r = b.ingest_papers(src.as_bytes()).unwrap();
        assert_eq!((r.records_accepted, r.duplicates_dropped), (1, 1));
        let c = b.seal();
        assert_eq!(c.paper_by_doi("10.1/x").unwrap().id, "a");
    }

    #[test]
    fn out_of_bounds_year_is_malformed() {
        let src = r#"{"id":"a","year":99999,"doc_type":"research_article"}
{"id":"b","year":2020,"doc_type":"research_article"}
not json
"#;
        let mut b = builder();
        let r = b.ingest_papers(src.as_bytes()).unwrap();
        assert_eq!((r.records_accepted, r.malformed), (1, 2));
        assert_eq!(r.sample_errors[0].0, 1);
        assert_eq!(r.sample_errors[1].0, 3);
        assert!(r.reconciles());
    }

    #[test]
    fn unknown_doc_type_maps_to_other() {
        let src = r#"{"id":"a","year":2021,"doc_type":"erratum"}"#;
        let mut b = builder();
        let r = b.ingest_papers(src.as_bytes()).unwrap();
        assert_eq!((r.records_accepted, r.unknown_doc_types), (1, 1));
        assert_eq!(b.seal().paper("a").unwrap().doc_type, DocType::Other);
    }

    #[test]
    fn declared_count_below_listed_is_malformed() {
        let src = r#"{"id":"a","year":2021,"doc_type":"letter","references":["x","y","y"],"ref_count":1}
{"id":"b","year":2021,"doc_type":"letter","references":["x","y","y"],"ref_count":2}"#;
        let mut b = builder();
        let r = b.ingest_papers(src.as_bytes()).unwrap();
        assert_eq!((r.records_accepted, r.malformed), (1, 1));
    }

    #[test]
    fn journal_issn_normalized_and_conflicts() {
        let src = r#"{"id":"sci","title":"Science","issn":["0036-8075"],"eissn":[]}
{"id":"j1","title":"One","issn":["1234-5679"]}
{"id":"j2","title":"Two","issn":["1234-5679"]}
{"id":"t","title":"Title Only"}
{"id":"bad","title":"","issn":["1234-5678"]}
{"id":"half","title":"","issn":["1234-5678"],"eissn":["0000-006X"]}
"#;
        let mut b = builder();
        let r = b.ingest_journals(src.as_bytes()).unwrap();
        assert_eq!(r.conflicts, 1);
        assert_eq!(r.malformed, 1);
        assert_eq!(r.records_accepted, 4);
        assert_eq!(r.dropped_keys, 1);
        assert!(r.reconciles());
        let c = b.seal();
        let sci = Issn::parse("00368075").unwrap();
        assert_eq!(c.journal_by_issn(&sci).unwrap().id, "sci");
        assert!(c.journal("j2").is_none());
        assert!(c.journal("t").unwrap().issn.is_empty());
        assert_eq!(c.resolve_journal_key("0000-006x").unwrap().id, "half");
    }

    #[test]
    fn subjects_resolve_and_dedup() {
        let mut b = builder();
        b.ingest_journals(r#"{"id":"econ","title":"Econ","issn":["0036-8075"]}"#.as_bytes())
            .unwrap();
        let csv = "journal_key,scheme,subject_id,subject_label\n\
                   0036-8075,scopus_asjc,2002,Economics and Econometrics\n\
                   00368075,scopus_asjc,2002,Economics and Econometrics\n\
                   9999-9999,scopus_asjc,2002,Economics and Econometrics\n\
                   0036-8075,scilit,77,Economics\n";
        let r = b.ingest_subject_assignments(csv.as_bytes(), "scopus_asjc").unwrap();
        assert_eq!(
            (r.records_accepted, r.duplicates_dropped, r.malformed),
            (1, 1, 2),
            "{r:?}"
        );
        assert!(r.reconciles());
        let c = b.seal();
        assert_eq!(c.subjects().len(), 1);
        assert_eq!(c.subjects()[0].journal_id, "econ");
    }

    #[test]
    fn unknown_scheme_fails_before_reading() {
        struct Exploding;
        impl Read for Exploding {
            fn read(&mut self, _: &mut [u8]) -> std::io::Result<usize> {
                panic!("stream touched")
            }
        }
        let mut b = builder();
        assert!(matches!(
            b.ingest_subject_assignments(Exploding, "mesh"),
            Err(Error::UnknownScheme(_))
        ));
    }

    #[test]
    fn edges_dedup() {
        let mut b = builder();
        let r = b
            .ingest_edges("{\"citing\":\"a\",\"cited\":\"b\"}\n{\"citing\":\"a\",\"cited\":\"b\"}\n{}\n".as_bytes())
            .unwrap();
        assert_eq!((r.records_accepted, r.duplicates_dropped, r.malformed), (1, 1, 1));
    }
}
