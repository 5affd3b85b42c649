//! I3, I3/N, JIF, CiteScore and the h family for one indicator year.

use impactum::graph::CitationGraph;
use impactum::indicators::{compute_indicators, describe, IndicatorConfig};
use impactum::synth::{generate, GeneratorConfig};

fn main() -> impactum::Result<()> {
    let (corpus, _) = generate(&GeneratorConfig::planted(3, 40, 8000))?.load()?;
    let graph = CitationGraph::build(&corpus);
    let table = compute_indicators(&graph, 2024, &IndicatorConfig::default())?;

    let mut rows: Vec<_> = table.rows.iter().filter(|r| r.i3_n.is_some()).collect();
    rows.sort_by(|a, b| b.i3_n.partial_cmp(&a.i3_n).unwrap());
    println!("{:<8} {:>6} {:>6} {:>7} {:>6} {:>9} {:>3}", "journal", "N", "I3", "I3/N", "JIF", "CiteScore", "h");
    for r in rows.iter().take(10) {
        println!(
            "{:<8} {:>6} {:>6} {:>7.2} {:>6.2} {:>9.2} {:>3}",
            r.journal_id,
            r.n_pubs,
            r.i3,
            r.i3_n.unwrap(),
            r.jif.unwrap_or(f64::NAN),
            r.citescore.unwrap_or(f64::NAN),
            r.h_index
        );
    }

    let i3n: Vec<f64> = table.rows.iter().filter_map(|r| r.i3_n).collect();
    let d = describe(&i3n)?;
    println!("I3/N over {} journals: mean {:.2}, median {:.2}, max {:.2}", d.n, d.mean, d.median, d.max);
    println!("JIF asymmetry flags: {}", table.asymmetries.len());
    Ok(())
}
