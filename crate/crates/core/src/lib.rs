//! Citation-indicator engine for journals.
//!
//! The crate computes percentile-class impact indicators (I3 and the
//! size-normalized I3/N) next to the mean-based Journal Impact Factor and
//! CiteScore, starting from raw paper, journal and subject records, and
//! provides the tooling to compare indicators across years: concordance,
//! ECDF shifts, quadrant diagnostics, rank-difference quartiles, subject
//! crosswalks and publisher distribution tests.
//!
//! Pipeline, bottom up:
//!
//! - [`corpus`] ingests and deduplicates records into a sealed [`corpus::Corpus`].
//! - [`graph`] resolves references into weighted citation edges.
//! - [`percentile`] ranks papers inside (year, doc type) cohorts.
//! - [`indicators`] aggregates journals into [`indicators::IndicatorTable`]s.
//! - [`compare`] matches journals across tables and runs the analyses.
//! - [`synth`] generates seeded corpora and holds a brute-force oracle.
//!
//! ```no_run
//! use impactum::corpus::{CorpusBuilder, CorpusConfig};
//! use impactum::graph::CitationGraph;
//! use impactum::indicators::{compute_indicators, IndicatorConfig};
//!
//! # fn main() -> impactum::Result<()> {
//! let mut builder = CorpusBuilder::new(CorpusConfig::default());
//! builder.ingest_journals(std::fs::File::open("journals.jsonl").map(std::io::BufReader::new)?)?;
//! builder.ingest_papers(std::fs::File::open("papers.jsonl").map(std::io::BufReader::new)?)?;
//! let corpus = builder.seal();
//! let graph = CitationGraph::build(&corpus);
//! let table = compute_indicators(&graph, 2024, &IndicatorConfig::default())?;
//! for row in &table.rows {
//!     println!("{} I3={} I3/N={:?}", row.journal_id, row.i3, row.i3_n);
//! }
//! # Ok(())
//! # }
//! ```

pub mod cli;
pub mod compare;
pub mod corpus;
mod error;
pub mod graph;
pub mod indicators;
pub mod io;
pub mod percentile;
pub mod stats;
pub mod synth;
mod window;

pub use error::{Error, Result};
pub use window::YearRange;
