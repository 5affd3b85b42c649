use impactum::graph::CitationGraph;
use impactum::indicators::{compute_indicators, IndicatorConfig};
use impactum::synth::{generate, GeneratorConfig, Oracle, OracleSettings};

fn rel_close(a: Option<f64>, b: Option<f64>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0),
        _ => false,
    }
}

fn check(config: &GeneratorConfig, years: &[i32]) {
    let synth = generate(config).unwrap();
    let (corpus, _) = synth.load().unwrap();
    let graph = CitationGraph::build(&corpus);
    let oracle = Oracle::from_synth(&synth, OracleSettings::default()).unwrap();
    for &y in years {
        let table = compute_indicators(&graph, y, &IndicatorConfig::default()).unwrap();
        let expected = oracle.year(y);
        assert_eq!(table.rows.len(), expected.len());
        for row in &table.rows {
            let o = &expected[&row.journal_id];
            assert_eq!((row.i3, row.n_pubs), (o.i3, o.n_pubs), "{} {y}", row.journal_id);
            assert!(rel_close(row.i3_n, o.i3_n));
            assert!(rel_close(row.jif, o.jif));
            assert!(rel_close(row.citescore, o.citescore));
        }
    }
}

#[test]
fn lognormal_corpus_matches_oracle() {
    let mut c = GeneratorConfig::with_size(11, 30, 4000);
    c.references.bare_rate = 0.03;
    check(&c, &[2022, 2024]);
}

#[test]
fn planted_corpus_matches_oracle() {
    check(&GeneratorConfig::planted(12, 40, 5000), &[2023, 2024]);
}
