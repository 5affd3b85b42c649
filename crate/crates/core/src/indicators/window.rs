use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::window::YearRange;

/// Publication and citation windows for one indicator year `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowPolicy {
    pub indicator_year: i32,
    /// I3 publications, default `Y-3..=Y-2`.
    pub i3_pub: YearRange,
    /// I3 citing years, default `Y-3..=Y`.
    pub i3_cite: YearRange,
    /// JIF items, `Y-2..=Y-1`.
    pub jif_items: YearRange,
    pub jif_cite: YearRange,
    /// CiteScore documents, `Y-4..=Y-1`.
    pub citescore_items: YearRange,
    pub citescore_cite: YearRange,
    /// h5 publications, `Y-4..=Y`.
    pub h5_items: YearRange,
}

/// Year offsets back from `Y` for the I3 windows: `(from, to)` means
/// `Y-from..=Y-to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct I3Offsets {
    pub pub_from: i32,
    pub pub_to: i32,
    pub cite_from: i32,
    pub cite_to: i32,
}

impl Default for I3Offsets {
    fn default() -> Self {
        I3Offsets { pub_from: 3, pub_to: 2, cite_from: 3, cite_to: 0 }
    }
}

impl WindowPolicy {
    pub fn for_year(year: i32) -> WindowPolicy {
        WindowPolicy::with_i3_offsets(year, I3Offsets::default())
            .expect("default offsets are valid")
    }

    pub fn with_i3_offsets(year: i32, o: I3Offsets) -> Result<WindowPolicy> {
        let i3_pub = YearRange::new(year - o.pub_from, year - o.pub_to)?;
        let i3_cite = YearRange::new(year - o.cite_from, year - o.cite_to)?;
        if i3_cite.first() < i3_pub.first() || i3_cite.last() < i3_pub.last() {
            return Err(Error::InvalidConfig(format!(
                "I3 citation window {i3_cite} must contain or follow publication window {i3_pub}"
            )));
        }
        Ok(WindowPolicy {
            indicator_year: year,
            i3_pub,
            i3_cite,
            jif_items: YearRange::new(year - 2, year - 1)?,
            jif_cite: YearRange::single(year),
            citescore_items: YearRange::new(year - 4, year - 1)?,
            citescore_cite: YearRange::single(year),
            h5_items: YearRange::new(year - 4, year)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_anchoring_for_2024() {
        let p = WindowPolicy::for_year(2024);
        assert_eq!((p.i3_pub.first(), p.i3_pub.last()), (2021, 2022));
        assert_eq!((p.i3_cite.first(), p.i3_cite.last()), (2021, 2024));
        assert_eq!((p.jif_items.first(), p.jif_items.last()), (2022, 2023));
        assert_eq!((p.citescore_items.first(), p.citescore_items.last()), (2020, 2023));
        assert!(p.jif_cite.contains(2024) && p.citescore_cite.len() == 1);
    }

    #[test]
    fn rejects_citation_window_before_publications() {
        let o = I3Offsets { pub_from: 2, pub_to: 1, cite_from: 4, cite_to: 3 };
        assert!(WindowPolicy::with_i3_offsets(2024, o).is_err());
        let o = I3Offsets { pub_from: 1, pub_to: 2, cite_from: 1, cite_to: 0 };
        assert!(matches!(WindowPolicy::with_i3_offsets(2024, o), Err(Error::EmptyWindow)));
    }
}
