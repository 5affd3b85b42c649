//! Percentile classes of one cohort: strictly-below percentiles, the
//! 1/10/50 bands and their weights.

use impactum::corpus::DocType;
use impactum::percentile::{classify_cohort, cohort_class_counts, ClassWeights, Cohort, PercentileClass};

fn main() -> impactum::Result<()> {
    // 200 papers with skewed fractional counts and a block of ties at zero.
    let counts: Vec<f64> = (0..200).map(|i| if i < 60 { 0.0 } else { (i as f64 / 20.0).powi(3) / 7.0 }).collect();
    let cohort = Cohort { year: 2022, doc_type: DocType::ResearchArticle, members: (0..200).collect() };
    let weights = ClassWeights::new([100, 10, 2, 0])?;
    let classified = classify_cohort(&cohort, &counts, &weights);

    let per_class = cohort_class_counts(&classified);
    for (class, n) in PercentileClass::ALL.iter().zip(per_class) {
        println!("{:>9}: {n:>3} papers, weight {}", class.as_str(), weights.weight(*class));
    }
    let top = classified.iter().max_by(|a, b| a.percentile.total_cmp(&b.percentile)).unwrap();
    println!("highest percentile {:.1} for count {:.3}", top.percentile, top.fractional_count);
    let tied = &classified[0];
    println!("a paper tied at zero sits at percentile {:.1} ({})", tied.percentile, tied.class.as_str());
    let i3: u64 = classified.iter().map(|c| c.class_weight).sum();
    println!("cohort I3 = {i3}, I3/N = {:.3}", i3 as f64 / classified.len() as f64);
    Ok(())
}
