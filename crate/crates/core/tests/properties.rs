use std::collections::BTreeSet;

use proptest::prelude::*;

use impactum::compare::{match_journals, subject_crosswalk, JournalKeys, SourceTable, SubjectIndex};
use impactum::corpus::{DocType, Issn, Scheme, SubjectAssignment};
use impactum::indicators::{IndicatorRow, IndicatorTable};
use impactum::percentile::{classify_cohort, cohort_class_counts, ClassWeights, Cohort};
use impactum::stats::{lin_ccc, spearman, wilcoxon_signed_rank, PairedSample};

fn row(id: &str, year: i32, v: f64) -> IndicatorRow {
    IndicatorRow {
        journal_id: id.into(),
        year,
        n_pubs: 5,
        i3: 0,
        i3_n: Some(v),
        jif: Some(v),
        citescore: Some(v),
        h_index: 0,
        i10_index: 0,
        h5_index: 0,
        citations: None,
    }
}

fn issn(i: usize) -> String {
    Issn::from_body(1_000_000 + i as u32).hyphenated()
}

fn source(name: &str, ids: &[(String, String)]) -> SourceTable {
    let mut t = IndicatorTable::default();
    let mut keys = Vec::new();
    for (id, issn) in ids {
        t.rows.push(row(id, 2024, 1.0));
        keys.push(JournalKeys { journal_id: id.clone(), issn: vec![issn.clone()], title: id.clone(), ..Default::default() });
    }
    t.sort();
    SourceTable::with_keys(name, keys, &t)
}

proptest! {
    #[test]
    fn partition_holds(counts in prop::collection::vec(0u32..50, 1..400)) {
        let counts: Vec<f64> = counts.into_iter().map(|c| f64::from(c) / 4.0).collect();
        let n = counts.len();
        let cohort = Cohort { year: 2020, doc_type: DocType::ResearchArticle, members: (0..n as u32).collect() };
        let classes = classify_cohort(&cohort, &counts, &ClassWeights::default());
        prop_assert_eq!(cohort_class_counts(&classes).iter().sum::<u64>(), n as u64);
        for c in &classes {
            prop_assert!((0.0..100.0).contains(&c.percentile));
        }
    }

    #[test]
    fn correlations_bounded(pairs in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 3..60)) {
        let (x, y): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let p = PairedSample::new(x, y).unwrap();
        if let Ok(r) = spearman(&p) { prop_assert!((-1.0..=1.0).contains(&r)); }
        if let Ok(c) = lin_ccc(&p) { prop_assert!((-1.0..=1.0).contains(&c)); }
    }

    #[test]
    fn signed_rank_p_is_a_probability(d in prop::collection::vec(-5i32..5, 0..40)) {
        let d: Vec<f64> = d.into_iter().map(f64::from).collect();
        let r = wilcoxon_signed_rank(&d).unwrap();
        prop_assert!(r.p_value > 0.0 && r.p_value <= 1.0);
        let flipped: Vec<f64> = d.iter().map(|v| -v).collect();
        let f = wilcoxon_signed_rank(&flipped).unwrap();
        prop_assert!((r.p_value - f.p_value).abs() < 1e-12);
    }

    #[test]
    fn matching_is_symmetric(n in 1usize..30, drop in prop::collection::btree_set(0usize..30, 0..10)) {
        let a: Vec<(String, String)> = (0..n).map(|i| (format!("A{i}"), issn(i))).collect();
        let b: Vec<(String, String)> = (0..n)
            .filter(|i| !drop.contains(i))
            .map(|i| (format!("B{i}"), issn(i)))
            .collect();
        let ab = match_journals(vec![source("a", &a), source("b", &b)]);
        let ba = match_journals(vec![source("b", &b), source("a", &a)]);
        let pairs = |m: &impactum::compare::MatchedJournalSet, flip: bool| -> BTreeSet<(String, String)> {
            m.entries.iter().map(|e| {
                let (x, y) = (e.members[0].clone(), e.members[1].clone());
                if flip { (y, x) } else { (x, y) }
            }).collect()
        };
        prop_assert_eq!(pairs(&ab, false), pairs(&ba, true));
        prop_assert_eq!(ab.entries.len(), b.len());
    }

    #[test]
    fn crosswalk_shrinks_with_threshold(assign in prop::collection::vec((0usize..20, 0usize..3, 0usize..3), 1..80)) {
        let ids: Vec<(String, String)> = (0..20).map(|i| (format!("J{i}"), issn(100 + i))).collect();
        let matched = match_journals(vec![source("s", &ids)]);
        let subjects: Vec<SubjectAssignment> = assign
            .iter()
            .map(|&(j, scheme, subject)| SubjectAssignment {
                journal_id: format!("J{j}"),
                scheme: Scheme::ALL[scheme],
                subject_id: format!("S{subject}"),
                subject_label: format!("Subject {subject}"),
            })
            .collect();
        let index = SubjectIndex::build(&subjects, &matched, 0);
        let mut previous = usize::MAX;
        for t in 0..8 {
            let edges = subject_crosswalk(&index, t);
            prop_assert!(edges.len() <= previous);
            prop_assert!(edges.iter().all(|e| e.overlap > t));
            previous = edges.len();
        }
    }
}
