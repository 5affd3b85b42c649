//! Comparison outputs as tables.

use serde_json::{json, Value};

use crate::compare::{
    concordance_matrix, crosswalk_triangles, descriptives, ecdf_shift, quadrant_assess_normalized,
    quadrant_assess_raw, quartile_subject_proportions, rank_difference_analysis, subject_crosswalk,
    subject_trend, publisher_distribution, Indicator, MatchedJournalSet, QuadrantLabel, SubjectIndex, SubjectKey,
};
use crate::error::Result;
use crate::io::{fmt_f64, fmt_opt, fmt_opt_f64, Table};
use crate::stats::significance_stars;

#[derive(Debug, Clone)]
pub struct CompareOptions {
    pub years: (i32, i32),
    pub crosswalk_threshold: usize,
    pub min_publisher_journals: usize,
    pub top_subjects: usize,
}

const DESCRIBED: [Indicator; 8] = Indicator::ALL;
const SHIFTED: [Indicator; 4] = [Indicator::I3, Indicator::I3N, Indicator::Jif, Indicator::CiteScore];
const TRENDED: [Indicator; 3] = [Indicator::I3N, Indicator::Jif, Indicator::CiteScore];

fn quadrant_table(name: String, labels: &[QuadrantLabel]) -> Table {
    let mut t = Table::new(name, &["journal_id", "axis_x", "axis_y", "quadrant"]);
    for l in labels {
        t.push(vec![l.journal.clone(), fmt_f64(l.axis_x), fmt_f64(l.axis_y), l.quadrant.to_string()]);
    }
    t
}

fn subjects_cell(s: &[SubjectKey]) -> String {
    s.iter().map(|k| k.to_string()).collect::<Vec<_>>().join("+")
}

/// Every comparison table, plus notes for the manifest.
pub fn comparison_tables(
    matched: &MatchedJournalSet,
    subjects: Option<&SubjectIndex>,
    opts: &CompareOptions,
) -> Result<(Vec<Table>, Value)> {
    let (y1, y2) = opts.years;
    let mut tables = Vec::new();
    let mut skipped: Vec<String> = Vec::new();

    let mut t = Table::new("match_report", &["source", "journals", "matched", "unmatched"]);
    for (i, s) in matched.sources.iter().enumerate() {
        t.push(vec![
            s.name.clone(),
            s.keys.len().to_string(),
            matched.entries.len().to_string(),
            matched.unmatched[i].len().to_string(),
        ]);
    }
    tables.push(t);

    let mut t = Table::new(
        "descriptives",
        &["year", "indicator", "n", "min", "mean", "median", "max", "ci95_low", "ci95_high", "sd", "se"],
    );
    for y in [y1, y2] {
        for d in descriptives(matched, y, &DESCRIBED) {
            let s = d.stats;
            t.push(vec![
                y.to_string(),
                d.indicator.to_string(),
                s.n.to_string(),
                fmt_f64(s.min),
                fmt_f64(s.mean),
                fmt_f64(s.median),
                fmt_f64(s.max),
                fmt_f64(s.ci95_low),
                fmt_f64(s.ci95_high),
                fmt_f64(s.sd),
                fmt_f64(s.se),
            ]);
        }
    }
    tables.push(t);

    let mut t = Table::new("concordance", &["year", "x", "y", "n", "spearman", "ccc"]);
    for y in [y1, y2] {
        for c in concordance_matrix(matched, y) {
            t.push(vec![
                y.to_string(),
                c.x.to_string(),
                c.y.to_string(),
                c.n.to_string(),
                fmt_opt_f64(c.spearman),
                fmt_opt_f64(c.ccc),
            ]);
        }
    }
    tables.push(t);

    let mut t = Table::new("ecdf_diff", &["indicator", "t", "diff"]);
    for ind in SHIFTED {
        match ecdf_shift(matched, ind, y1, y2) {
            Ok(shift) => {
                for (g, d) in shift.grid.iter().zip(&shift.difference) {
                    t.push(vec![ind.to_string(), fmt_f64(*g), fmt_f64(*d)]);
                }
            }
            Err(e) => skipped.push(format!("ecdf_diff {ind}: {e}")),
        }
    }
    tables.push(t);

    for y in [y1, y2] {
        tables.push(quadrant_table(format!("quadrants_raw_{y}"), &quadrant_assess_raw(matched, y)));
        tables.push(quadrant_table(format!("quadrants_norm_{y}"), &quadrant_assess_normalized(matched, y)));
    }

    let mut quartiles = Vec::new();
    for y in [y1, y2] {
        match rank_difference_analysis(matched, y) {
            Ok(rq) => {
                let mut s = Table::new(
                    format!("rank_quartiles_{y}"),
                    &[
                        "quartile",
                        "n",
                        "mean_rank_difference",
                        "outputs",
                        "citations",
                        "i3_n",
                        "citescore",
                        "i3_n_rank",
                        "citescore_rank",
                    ],
                );
                for q in &rq.summary {
                    s.push(vec![
                        q.quartile.to_string(),
                        q.n.to_string(),
                        fmt_f64(q.mean_difference),
                        fmt_opt_f64(q.outputs),
                        fmt_opt_f64(q.citations),
                        fmt_f64(q.i3_n),
                        fmt_f64(q.citescore),
                        fmt_f64(q.i3n_rank),
                        fmt_f64(q.citescore_rank),
                    ]);
                }
                tables.push(s);
                let mut j = Table::new(
                    format!("rank_journals_{y}"),
                    &["journal_id", "i3_n_rank", "citescore_rank", "rank_difference", "quartile", "n_pubs", "citations", "i3_n", "citescore"],
                );
                for r in &rq.journals {
                    j.push(vec![
                        r.journal.clone(),
                        fmt_f64(r.i3n_rank),
                        fmt_f64(r.citescore_rank),
                        fmt_f64(r.difference),
                        r.quartile.to_string(),
                        fmt_opt_f64(r.n_pubs),
                        fmt_opt_f64(r.citations),
                        fmt_f64(r.i3_n),
                        fmt_f64(r.citescore),
                    ]);
                }
                tables.push(j);
                quartiles.push(rq);
            }
            Err(e) => skipped.push(format!("rank quartiles {y}: {e}")),
        }
    }

    let mut trends_omitted = 0usize;
    if let Some(index) = subjects {
        let edges = subject_crosswalk(index, opts.crosswalk_threshold);
        let mut t = Table::new(
            "crosswalk_edges",
            &["scheme_a", "subject_a", "label_a", "scheme_b", "subject_b", "label_b", "overlap"],
        );
        for e in &edges {
            t.push(vec![
                e.subject_a.scheme.to_string(),
                e.subject_a.id.clone(),
                index.label(&e.subject_a).to_string(),
                e.subject_b.scheme.to_string(),
                e.subject_b.id.clone(),
                index.label(&e.subject_b).to_string(),
                e.overlap.to_string(),
            ]);
        }
        tables.push(t);

        let mut groups: Vec<Vec<SubjectKey>> = crosswalk_triangles(&edges).into_iter().map(Vec::from).collect();
        groups.extend(index.journals.keys().map(|k| vec![k.clone()]));
        let mut t = Table::new(
            "subject_trends",
            &["subjects", "indicator", "n", "median_diff", "direction", "statistic", "p_value", "method", "stars", "unpaired_p", "unpaired_stars"],
        );
        for g in &groups {
            for ind in TRENDED {
                match subject_trend(matched, index, g, ind, y1, y2) {
                    Ok(r) => t.push(vec![
                        subjects_cell(&r.subjects),
                        ind.to_string(),
                        r.n.to_string(),
                        fmt_f64(r.median_difference),
                        r.direction.as_str().to_string(),
                        fmt_f64(r.test.statistic),
                        fmt_f64(r.test.p_value),
                        r.test.method.as_str().to_string(),
                        r.stars.to_string(),
                        fmt_opt_f64(r.unpaired.map(|u| u.p_value)),
                        fmt_opt(r.unpaired.map(|u| significance_stars(u.p_value))),
                    ]),
                    Err(_) => trends_omitted += 1,
                }
            }
        }
        tables.push(t);

        for rq in &quartiles {
            for scheme in index.schemes() {
                let props = quartile_subject_proportions(rq, index, scheme, opts.top_subjects)?;
                let mut t = Table::new(
                    format!("subject_quartiles_{}_{}", rq.year, scheme),
                    &["subject_id", "label", "n", "q1", "q2", "q3", "q4", "p_q1", "p_q2", "p_q3", "p_q4", "eligible", "top_q1_rank", "top_q4_rank"],
                );
                for r in &props.rows {
                    let rank_in = |list: &[SubjectKey]| list.iter().position(|k| *k == r.subject).map(|p| p + 1);
                    let mut row = vec![r.subject.id.clone(), r.label.clone(), r.n.to_string()];
                    row.extend(r.counts.iter().map(|c| c.to_string()));
                    row.extend(r.proportions.iter().map(|p| fmt_f64(*p)));
                    row.push(r.eligible.to_string());
                    row.push(fmt_opt(rank_in(&props.top_q1)));
                    row.push(fmt_opt(rank_in(&props.top_q4)));
                    t.push(row);
                }
                tables.push(t);
            }
        }
    }

    let mut t = Table::new(
        "publisher_shift",
        &["publisher", "n_y1", "n_y2", "median_y1", "median_y2", "delta_pct", "statistic", "p_value", "method", "verdict"],
    );
    for p in publisher_distribution(matched, Indicator::I3N, y1, y2, opts.min_publisher_journals)? {
        t.push(vec![
            p.publisher.clone(),
            p.n_y1.to_string(),
            p.n_y2.to_string(),
            fmt_opt_f64(p.median_y1),
            fmt_opt_f64(p.median_y2),
            fmt_opt_f64(p.delta_pct),
            fmt_opt_f64(p.test.map(|r| r.statistic)),
            fmt_opt_f64(p.test.map(|r| r.p_value)),
            fmt_opt(p.test.map(|r| r.method.as_str())),
            p.verdict.to_string(),
        ]);
    }
    tables.push(t);

    let notes = json!({
        "years": [y1, y2],
        "matched_journals": matched.entries.len(),
        "ambiguous_keys": matched.ambiguous,
        "trend_test": "paired_signed_rank",
        "publisher_indicator": "i3_n",
        "trends_omitted": trends_omitted,
        "skipped": skipped,
    });
    Ok((tables, notes))
}
