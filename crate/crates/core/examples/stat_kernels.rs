//! Spearman, Lin's CCC, the signed-rank test and ECDF differences.

use impactum::stats::{
    ecdf_diff, lin_ccc, pooled_grid, significance_stars, spearman, wilcoxon_rank_sum, wilcoxon_signed_rank,
    PairedSample,
};

fn main() -> impactum::Result<()> {
    let x: Vec<f64> = (1..=30).map(|i| f64::from(i).sqrt()).collect();
    let y: Vec<f64> = x.iter().enumerate().map(|(i, v)| v * 1.3 + if i % 4 == 0 { 0.4 } else { -0.1 }).collect();
    let pair = PairedSample::new(x.clone(), y.clone())?;
    println!("spearman {:.4}, ccc {:.4}", spearman(&pair)?, lin_ccc(&pair)?);

    let diffs: Vec<f64> = x.iter().zip(&y).map(|(a, b)| b - a).collect();
    let paired = wilcoxon_signed_rank(&diffs)?;
    println!(
        "signed-rank: W+ {} p {:.2e} ({}) {}",
        paired.statistic,
        paired.p_value,
        paired.method.as_str(),
        significance_stars(paired.p_value)
    );
    let small = wilcoxon_signed_rank(&[0.5, -0.2, 1.1, 0.9, 0.3, -0.4, 0.8])?;
    println!("seven differences: p {:.4} ({})", small.p_value, small.method.as_str());
    let unpaired = wilcoxon_rank_sum(&x, &y)?;
    println!("rank-sum: U {} p {:.4}", unpaired.statistic, unpaired.p_value);

    let grid = pooled_grid(&x, &y);
    let d = ecdf_diff(&y, &x, &grid)?;
    let most = d.iter().cloned().fold(f64::INFINITY, f64::min);
    println!("ECDF(y) - ECDF(x): {} grid points, min {:.3}", grid.len(), most);
    Ok(())
}
