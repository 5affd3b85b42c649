//! Generate a seeded corpus and check the engine against the brute-force
//! oracle.

use impactum::graph::CitationGraph;
use impactum::indicators::{compute_indicators, IndicatorConfig};
use impactum::synth::{generate, GeneratorConfig, Oracle, OracleSettings};

fn main() -> impactum::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let seed = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2024);
    let config = GeneratorConfig::with_size(seed, 30, 5000);
    let synth = generate(&config)?;
    println!("seed {seed}: {} papers, {} journals", synth.papers.len(), synth.journals.len());

    let (corpus, _) = synth.load()?;
    let graph = CitationGraph::build(&corpus);
    let oracle = Oracle::from_synth(&synth, OracleSettings::default())?;
    for year in [2022, 2023, 2024] {
        let table = compute_indicators(&graph, year, &IndicatorConfig::default())?;
        let expected = oracle.year(year);
        let agree = table.rows.iter().filter(|r| {
            let o = &expected[&r.journal_id];
            o.i3 == r.i3 && o.n_pubs == r.n_pubs && o.jif == r.jif && o.citescore == r.citescore
        });
        println!("{year}: {}/{} journals agree with the oracle", agree.count(), table.rows.len());
    }
    Ok(())
}
