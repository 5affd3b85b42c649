//! Statistical kernels used by the comparison suite. All functions are
//! pure.

mod correlation;
mod ecdf;
mod rank;
mod wilcoxon;

pub use correlation::{lin_ccc, pearson, spearman, PairedSample};
pub use ecdf::{ecdf_diff, pooled_grid, Ecdf};
pub use rank::{average_ranks, median, minmax_normalize, percent_rank, quantile, tie_groups};
pub use wilcoxon::{
    significance_stars, wilcoxon_rank_sum, wilcoxon_signed_rank, TestMethod, TestResult, EXACT_MAX_N,
};
