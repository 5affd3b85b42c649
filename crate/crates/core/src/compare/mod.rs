//! Analyses over two or more indicator tables: journal matching,
//! descriptives, concordance, ECDF shifts, quadrant diagnostics,
//! rank-difference quartiles, subject crosswalk and trends, and publisher
//! distribution shifts.
//!
//! Year-over-year tests are paired: journals are matched across years and
//! the signed-rank test runs on their differences.

mod analysis;
mod matching;
mod publisher;
mod subjects;

pub use analysis::{
    concordance_matrix, descriptives, ecdf_shift, quadrant_assess_normalized, quadrant_assess_raw,
    quadrants_by_threshold, quartile_sizes, rank_difference_analysis, scale_and_quality, ConcordanceCell,
    DescriptiveRow, EcdfShift, Indicator, Quadrant, QuadrantLabel, QuartileSummary, RankDifference, RankQuartiles,
    CONCORDANCE_PAIRS,
};
pub use matching::{match_journals, normalize_title, JournalKeys, MatchKey, MatchedEntry, MatchedJournalSet, SourceTable};
pub use publisher::{publisher_distribution, PublisherShift, Verdict, DEFAULT_MIN_PUBLISHER_JOURNALS, VERDICT_ALPHA};
pub use subjects::{
    crosswalk_triangles, quartile_subject_proportions, subject_crosswalk, subject_trend, CrosswalkEdge, Direction,
    SubjectIndex, SubjectKey, SubjectProportions, SubjectQuartileRow, TrendResult, DEFAULT_CROSSWALK_THRESHOLD,
};
