//! Seeded synthetic corpora and the brute-force indicator oracle.
//!
//! [`generate`] writes the same wire formats the corpus ingests, so a
//! generated corpus round-trips through [`SynthCorpus::load`]. The
//! [`oracle`] recomputes I3, I3/N, JIF and CiteScore from the raw records
//! without touching engine code.

mod config;
mod generate;
pub mod oracle;

pub use config::{CitationModel, DocShare, GeneratorConfig, ReferenceModel, Tier};
pub use generate::{generate, SynthCorpus, EDGES_FILE, JOURNALS_FILE, PAPERS_FILE, SUBJECTS_FILE};
pub use oracle::{Oracle, OracleIndicators, OracleSettings, ORACLE_MAX_PAPERS};
