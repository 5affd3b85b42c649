use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matching::{MatchedEntry, MatchedJournalSet};
use crate::error::{Error, Result};
use crate::indicators::{describe, DescriptiveStats, IndicatorRow};
use crate::stats::{ecdf_diff, lin_ccc, median, minmax_normalize, percent_rank, pooled_grid, spearman, PairedSample};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Indicator {
    NPubs,
    I3,
    I3N,
    Jif,
    CiteScore,
    H,
    I10,
    H5,
}

impl Indicator {
    pub const ALL: [Indicator; 8] = [
        Indicator::NPubs,
        Indicator::I3,
        Indicator::I3N,
        Indicator::Jif,
        Indicator::CiteScore,
        Indicator::H,
        Indicator::I10,
        Indicator::H5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Indicator::NPubs => "n_pubs",
            Indicator::I3 => "i3",
            Indicator::I3N => "i3_n",
            Indicator::Jif => "jif",
            Indicator::CiteScore => "citescore",
            Indicator::H => "h",
            Indicator::I10 => "i10",
            Indicator::H5 => "h5",
        }
    }

    /// The value in one row. I3 and the publication count only exist
    /// where I3/N does, so a table without I3 windows reports them as
    /// undefined rather than 0.
    pub fn of(self, row: &IndicatorRow) -> Option<f64> {
        let counted = row.i3_n.is_some();
        match self {
            Indicator::NPubs => counted.then_some(row.n_pubs as f64),
            Indicator::I3 => counted.then_some(row.i3 as f64),
            Indicator::I3N => row.i3_n,
            Indicator::Jif => row.jif,
            Indicator::CiteScore => row.citescore,
            Indicator::H => Some(row.h_index as f64),
            Indicator::I10 => Some(row.i10_index as f64),
            Indicator::H5 => Some(row.h5_index as f64),
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Indicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        Indicator::ALL
            .into_iter()
            .find(|i| i.as_str() == key)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown indicator `{s}`")))
    }
}

impl MatchedJournalSet {
    /// The indicator for an entry in `year`, taken from the first source
    /// that defines it.
    pub fn value(&self, entry: &MatchedEntry, year: i32, indicator: Indicator) -> Option<f64> {
        self.sources
            .iter()
            .zip(&entry.members)
            .find_map(|(src, id)| src.row(id, year).and_then(|r| indicator.of(r)))
    }

    /// Integer citations to the I3 publications, from the first source
    /// that reports them.
    pub fn citations(&self, entry: &MatchedEntry, year: i32) -> Option<f64> {
        self.sources
            .iter()
            .zip(&entry.members)
            .find_map(|(src, id)| src.row(id, year).and_then(|r| r.citations).map(|c| c as f64))
    }

    /// `(entry, values)` for entries with every indicator defined in `year`.
    pub fn complete<const N: usize>(&self, year: i32, indicators: [Indicator; N]) -> Vec<(&MatchedEntry, [f64; N])> {
        self.entries
            .iter()
            .filter_map(|e| {
                let mut out = [0.0; N];
                for (slot, ind) in out.iter_mut().zip(indicators) {
                    *slot = self.value(e, year, ind)?;
                }
                Some((e, out))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveRow {
    pub year: i32,
    pub indicator: Indicator,
    pub stats: DescriptiveStats,
}

/// Descriptive statistics per indicator over the matched set; indicators
/// with no defined value are skipped.
pub fn descriptives(matched: &MatchedJournalSet, year: i32, indicators: &[Indicator]) -> Vec<DescriptiveRow> {
    indicators
        .iter()
        .filter_map(|&ind| {
            let vals: Vec<f64> = matched.entries.iter().filter_map(|e| matched.value(e, year, ind)).collect();
            describe(&vals).ok().map(|stats| DescriptiveRow { year, indicator: ind, stats })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcordanceCell {
    pub year: i32,
    pub x: Indicator,
    pub y: Indicator,
    pub n: usize,
    pub spearman: Option<f64>,
    pub ccc: Option<f64>,
}

pub const CONCORDANCE_PAIRS: [(Indicator, Indicator); 3] = [
    (Indicator::I3N, Indicator::CiteScore),
    (Indicator::I3N, Indicator::Jif),
    (Indicator::Jif, Indicator::CiteScore),
];

/// Spearman and Lin's CCC for each pair over the journals defining both.
/// A cell is undefined with fewer than two pairs or zero variance.
pub fn concordance_matrix(matched: &MatchedJournalSet, year: i32) -> Vec<ConcordanceCell> {
    CONCORDANCE_PAIRS
        .iter()
        .map(|&(x, y)| {
            let both = matched.complete(year, [x, y]);
            let (xs, ys): (Vec<f64>, Vec<f64>) = both.iter().map(|(_, v)| (v[0], v[1])).unzip();
            let n = xs.len();
            let (mut s, mut c) = (None, None);
            if let Ok(pair) = PairedSample::new(xs, ys) {
                s = spearman(&pair).ok();
                c = lin_ccc(&pair).ok();
            }
            ConcordanceCell { year, x, y, n, spearman: s, ccc: c }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quadrant {
    Q1,
    Q2,
    Q3,
    Q4,
}

impl Quadrant {
    /// Q1 both high, Q2 x high and y low, Q3 both low, Q4 x low and y high.
    pub fn from_sides(x_high: bool, y_high: bool) -> Quadrant {
        match (x_high, y_high) {
            (true, true) => Quadrant::Q1,
            (true, false) => Quadrant::Q2,
            (false, false) => Quadrant::Q3,
            (false, true) => Quadrant::Q4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Quadrant::Q1 => "Q1",
            Quadrant::Q2 => "Q2",
            Quadrant::Q3 => "Q3",
            Quadrant::Q4 => "Q4",
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadrantLabel {
    pub journal: String,
    pub quadrant: Quadrant,
    pub axis_x: f64,
    pub axis_y: f64,
}

/// Labels points against thresholds; a point on a threshold counts as high.
pub fn quadrants_by_threshold(points: &[(String, f64, f64)], tx: f64, ty: f64) -> Vec<QuadrantLabel> {
    points
        .iter()
        .map(|(j, x, y)| QuadrantLabel {
            journal: j.clone(),
            quadrant: Quadrant::from_sides(*x >= tx, *y >= ty),
            axis_x: *x,
            axis_y: *y,
        })
        .collect()
}

/// I3 against I3/N, split at the medians of the matched population.
pub fn quadrant_assess_raw(matched: &MatchedJournalSet, year: i32) -> Vec<QuadrantLabel> {
    let pts: Vec<(String, f64, f64)> = matched
        .complete(year, [Indicator::I3, Indicator::I3N])
        .into_iter()
        .map(|(e, v)| (e.key.clone(), v[0], v[1]))
        .collect();
    if pts.is_empty() {
        return Vec::new();
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.2).collect();
    let (mx, my) = (median(&xs).expect("non-empty"), median(&ys).expect("non-empty"));
    quadrants_by_threshold(&pts, mx, my)
}

/// `(scale effect, unit quality)` from min-max normalized values.
pub fn scale_and_quality(n_i3: f64, n_pubs: f64, n_i3n: f64, n_cs: f64) -> (f64, f64) {
    (n_i3 - n_pubs, n_i3n - n_cs)
}

/// Scale effect `norm(I3) - norm(N)` against unit quality
/// `norm(I3/N) - norm(CiteScore)`, split at zero.
pub fn quadrant_assess_normalized(matched: &MatchedJournalSet, year: i32) -> Vec<QuadrantLabel> {
    let rows = matched.complete(year, [Indicator::I3, Indicator::NPubs, Indicator::I3N, Indicator::CiteScore]);
    if rows.is_empty() {
        return Vec::new();
    }
    let norm: Vec<Vec<f64>> = (0..4)
        .map(|k| minmax_normalize(&rows.iter().map(|(_, v)| v[k]).collect::<Vec<_>>()).expect("non-empty"))
        .collect();
    let pts: Vec<(String, f64, f64)> = rows
        .iter()
        .enumerate()
        .map(|(i, (e, _))| {
            let (s, q) = scale_and_quality(norm[0][i], norm[1][i], norm[2][i], norm[3][i]);
            (e.key.clone(), s, q)
        })
        .collect();
    quadrants_by_threshold(&pts, 0.0, 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankDifference {
    pub journal: String,
    pub i3n_rank: f64,
    pub citescore_rank: f64,
    pub difference: f64,
    /// 1 to 4.
    pub quartile: u8,
    pub n_pubs: Option<f64>,
    pub citations: Option<f64>,
    pub i3_n: f64,
    pub citescore: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuartileSummary {
    pub quartile: u8,
    pub n: usize,
    pub mean_difference: f64,
    pub outputs: Option<f64>,
    pub citations: Option<f64>,
    pub i3_n: f64,
    pub citescore: f64,
    pub i3n_rank: f64,
    pub citescore_rank: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankQuartiles {
    pub year: i32,
    /// Ascending by difference, then journal.
    pub journals: Vec<RankDifference>,
    pub summary: Vec<QuartileSummary>,
}

/// Quartile sizes for `n` journals; earlier quartiles take the remainder.
pub fn quartile_sizes(n: usize) -> [usize; 4] {
    let (q, r) = (n / 4, n % 4);
    let mut sizes = [q; 4];
    for s in sizes.iter_mut().take(r) {
        *s += 1;
    }
    sizes
}

fn mean_of(v: impl Iterator<Item = f64>) -> Option<f64> {
    let (mut s, mut n) = (0.0, 0usize);
    for x in v {
        s += x;
        n += 1;
    }
    (n > 0).then(|| s / n as f64)
}

/// `percent_rank(I3/N) - percent_rank(CiteScore)` per journal, sorted and
/// split into four quartiles.
pub fn rank_difference_analysis(matched: &MatchedJournalSet, year: i32) -> Result<RankQuartiles> {
    let rows = matched.complete(year, [Indicator::I3N, Indicator::CiteScore]);
    if rows.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "rank-difference quartiles need 4 journals, {year} has {}",
            rows.len()
        )));
    }
    let r_i3n = percent_rank(&rows.iter().map(|(_, v)| v[0]).collect::<Vec<_>>())?;
    let r_cs = percent_rank(&rows.iter().map(|(_, v)| v[1]).collect::<Vec<_>>())?;
    let mut journals: Vec<RankDifference> = rows
        .iter()
        .enumerate()
        .map(|(i, (e, v))| RankDifference {
            journal: e.key.clone(),
            i3n_rank: r_i3n[i],
            citescore_rank: r_cs[i],
            difference: r_i3n[i] - r_cs[i],
            quartile: 0,
            n_pubs: matched.value(e, year, Indicator::NPubs),
            citations: matched.citations(e, year),
            i3_n: v[0],
            citescore: v[1],
        })
        .collect();
    journals.sort_by(|a, b| a.difference.total_cmp(&b.difference).then_with(|| a.journal.cmp(&b.journal)));
    let sizes = quartile_sizes(journals.len());
    let mut summary = Vec::new();
    let mut start = 0;
    for (q, &size) in sizes.iter().enumerate() {
        let part = &mut journals[start..start + size];
        for j in part.iter_mut() {
            j.quartile = q as u8 + 1;
        }
        let part = &journals[start..start + size];
        summary.push(QuartileSummary {
            quartile: q as u8 + 1,
            n: size,
            mean_difference: mean_of(part.iter().map(|j| j.difference)).unwrap_or(0.0),
            outputs: mean_of(part.iter().filter_map(|j| j.n_pubs)),
            citations: mean_of(part.iter().filter_map(|j| j.citations)),
            i3_n: mean_of(part.iter().map(|j| j.i3_n)).unwrap_or(0.0),
            citescore: mean_of(part.iter().map(|j| j.citescore)).unwrap_or(0.0),
            i3n_rank: mean_of(part.iter().map(|j| j.i3n_rank)).unwrap_or(0.0),
            citescore_rank: mean_of(part.iter().map(|j| j.citescore_rank)).unwrap_or(0.0),
        });
        start += size;
    }
    Ok(RankQuartiles { year, journals, summary })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcdfShift {
    pub indicator: Indicator,
    pub grid: Vec<f64>,
    /// `F_Y2(t) - F_Y1(t)` on `grid`.
    pub difference: Vec<f64>,
}

/// ECDF difference between two years of one indicator over the matched
/// set, evaluated on the pooled jump points.
pub fn ecdf_shift(matched: &MatchedJournalSet, indicator: Indicator, y1: i32, y2: i32) -> Result<EcdfShift> {
    let a: Vec<f64> = matched.entries.iter().filter_map(|e| matched.value(e, y1, indicator)).collect();
    let b: Vec<f64> = matched.entries.iter().filter_map(|e| matched.value(e, y2, indicator)).collect();
    let grid = pooled_grid(&a, &b);
    let difference = ecdf_diff(&b, &a, &grid)?;
    Ok(EcdfShift { indicator, grid, difference })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrant_sides() {
        let pts = vec![
            ("top".to_string(), 10.0, 10.0),
            ("plos".to_string(), 9.0, 1.0),
            ("low".to_string(), 0.0, 0.0),
            ("niche".to_string(), 1.0, 9.0),
            ("mid".to_string(), 5.0, 5.0),
        ];
        let q: Vec<Quadrant> = quadrants_by_threshold(&pts, 5.0, 5.0).iter().map(|l| l.quadrant).collect();
        assert_eq!(q, vec![Quadrant::Q1, Quadrant::Q2, Quadrant::Q3, Quadrant::Q4, Quadrant::Q1]);
    }

    #[test]
    fn normalized_sign_convention() {
        let (s, q) = scale_and_quality(0.4, 0.4, 0.7, 0.7);
        assert_eq!(Quadrant::from_sides(s >= 0.0, q >= 0.0), Quadrant::Q1);
        let (s, q) = scale_and_quality(0.9, 0.1, 0.2, 0.8);
        assert_eq!(Quadrant::from_sides(s >= 0.0, q >= 0.0), Quadrant::Q2);
        let (s, q) = scale_and_quality(0.1, 0.6, 0.9, 0.3);
        assert_eq!(Quadrant::from_sides(s >= 0.0, q >= 0.0), Quadrant::Q4);
    }

    #[test]
    fn quartile_split() {
        assert_eq!(quartile_sizes(8), [2, 2, 2, 2]);
        assert_eq!(quartile_sizes(10), [3, 3, 2, 2]);
        assert_eq!(quartile_sizes(4), [1, 1, 1, 1]);
    }

    #[test]
    fn indicator_tokens() {
        for i in Indicator::ALL {
            assert_eq!(i.as_str().parse::<Indicator>().unwrap(), i);
        }
        assert!("sjr".parse::<Indicator>().is_err());
    }
}
