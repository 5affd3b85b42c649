//! Write a small synthetic corpus to disk, ingest it file by file and look
//! at the resolved citation graph.

use std::fs::File;
use std::io::BufReader;

use impactum::corpus::{CorpusBuilder, CorpusConfig};
use impactum::graph::CitationGraph;
use impactum::synth::{generate, GeneratorConfig, EDGES_FILE, JOURNALS_FILE, PAPERS_FILE, SUBJECTS_FILE};

fn main() -> impactum::Result<()> {
    let dir = std::env::temp_dir().join("impactum-ingest-example");
    let mut config = GeneratorConfig::with_size(7, 20, 3000);
    config.references.bare_rate = 0.05;
    generate(&config)?.write_dir(&dir)?;

    let open = |name: &str| BufReader::new(File::open(dir.join(name)).expect("generated file"));
    let mut builder = CorpusBuilder::new(CorpusConfig::default());
    let journals = builder.ingest_journals(open(JOURNALS_FILE))?;
    let papers = builder.ingest_papers(open(PAPERS_FILE))?;
    let subjects = builder.ingest_subjects(open(SUBJECTS_FILE))?;
    let edges = builder.ingest_edges(open(EDGES_FILE))?;
    let corpus = builder.seal();
    for (name, r) in [("journals", &journals), ("papers", &papers), ("subjects", &subjects), ("edges", &edges)] {
        println!("{name:>8}: read {:>5}, accepted {:>5}, malformed {}", r.records_read, r.records_accepted, r.malformed);
    }
    println!("validation: {:?}", corpus.validate());

    let graph = CitationGraph::build(&corpus);
    let stats = graph.stats();
    println!(
        "{} papers, {} edges; references seen {}, resolved {}, unresolved {}, reconciles: {}",
        graph.paper_count(),
        graph.edge_count(),
        stats.references_seen,
        stats.edges_resolved,
        stats.unresolved,
        stats.reconciles()
    );

    let most_cited = (0..graph.paper_count() as u32).max_by_key(|&p| graph.citers_of(p).len()).unwrap();
    let citer = graph.citers_of(most_cited)[0];
    println!(
        "most cited: {} ({} citers); one citer {} gives weight {:.4} (m = {})",
        graph.paper_id(most_cited),
        graph.citers_of(most_cited).len(),
        graph.paper_id(citer),
        graph.weight(citer),
        graph.reference_count(citer)
    );
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}
