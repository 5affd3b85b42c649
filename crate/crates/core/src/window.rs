use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inclusive, non-empty range of years.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YearRange {
    first: i32,
    last: i32,
}

impl YearRange {
    pub fn new(first: i32, last: i32) -> Result<Self> {
        if first > last {
            return Err(Error::EmptyWindow);
        }
        Ok(YearRange { first, last })
    }

    pub fn single(year: i32) -> Self {
        YearRange { first: year, last: year }
    }

    pub fn first(&self) -> i32 {
        self.first
    }

    pub fn last(&self) -> i32 {
        self.last
    }

    pub fn contains(&self, year: i32) -> bool {
        self.first <= year && year <= self.last
    }

    pub fn len(&self) -> usize {
        (self.last - self.first) as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn years(&self) -> impl Iterator<Item = i32> {
        self.first..=self.last
    }

    pub fn covers(&self, other: &YearRange) -> bool {
        self.first <= other.first && other.last <= self.last
    }
}

impl fmt::Display for YearRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.last {
            write!(f, "{}", self.first)
        } else {
            write!(f, "{}-{}", self.first, self.last)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusive_bounds() {
        let r = YearRange::new(2021, 2024).unwrap();
        assert!(r.contains(2021) && r.contains(2024) && !r.contains(2025));
        assert_eq!(r.len(), 4);
        assert_eq!(r.to_string(), "2021-2024");
        assert!(matches!(YearRange::new(2024, 2021), Err(Error::EmptyWindow)));
    }
}
