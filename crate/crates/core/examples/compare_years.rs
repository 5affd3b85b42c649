//! Year-over-year comparison on a planted corpus: concordance, rank
//! quartiles and publisher shifts.

use impactum::compare::{
    concordance_matrix, match_journals, publisher_distribution, rank_difference_analysis, Indicator, SourceTable,
};
use impactum::graph::CitationGraph;
use impactum::indicators::{compute_years, IndicatorConfig};
use impactum::synth::{generate, GeneratorConfig};

fn main() -> impactum::Result<()> {
    let synth = generate(&GeneratorConfig::planted(11, 120, 20_000))?;
    let (corpus, _) = synth.load()?;
    let graph = CitationGraph::build(&corpus);
    let table = compute_years(&graph, &[2023, 2024], &IndicatorConfig::default())?;
    let matched = match_journals(vec![SourceTable::from_corpus("synthetic", &corpus, &table)]);

    for c in concordance_matrix(&matched, 2024) {
        println!("{} vs {}: spearman {:.3}, ccc {:.3} (n = {})", c.x, c.y, c.spearman.unwrap_or(f64::NAN), c.ccc.unwrap_or(f64::NAN), c.n);
    }

    let rq = rank_difference_analysis(&matched, 2024)?;
    let humanities: Vec<&str> = synth.journals_in_tier("humanities").collect();
    for q in &rq.summary {
        let share = rq
            .journals
            .iter()
            .filter(|r| r.quartile == q.quartile && humanities.contains(&r.journal.as_str()))
            .count() as f64
            / q.n as f64;
        println!(
            "Q{}: {} journals, mean rank difference {:+.3}, mean outputs {:.1}, humanities share {:.2}",
            q.quartile,
            q.n,
            q.mean_difference,
            q.outputs.unwrap_or(f64::NAN),
            share
        );
    }

    for p in publisher_distribution(&matched, Indicator::I3N, 2023, 2024, 5)? {
        println!(
            "{:<13} {:>2} journals, median I3/N {:.2} -> {:.2} ({:+.1}%), {}",
            p.publisher,
            p.n_y2,
            p.median_y1.unwrap_or(f64::NAN),
            p.median_y2.unwrap_or(f64::NAN),
            p.delta_pct.unwrap_or(f64::NAN),
            p.verdict
        );
    }
    Ok(())
}
