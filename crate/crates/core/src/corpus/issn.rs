use std::fmt;

use serde::{Deserialize, Serialize};

/// An ISSN in canonical form: eight characters, no hyphen, uppercase `X`
/// check digit, mod-11 check digit verified.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Issn(String);

impl Issn {
    /// Parses `0036-8075`, `00368075`, ` 0036-8075 ` and lowercase-`x`
    /// variants. Returns `None` when the shape or the check digit is wrong.
    pub fn parse(raw: &str) -> Option<Issn> {
        let cleaned: String = raw
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '-')
            .map(|c| c.to_ascii_uppercase())
            .collect();
        if cleaned.len() != 8 {
            return None;
        }
        let bytes = cleaned.as_bytes();
        let mut sum = 0u32;
        for (i, b) in bytes[..7].iter().enumerate() {
            if !b.is_ascii_digit() {
                return None;
            }
            sum += u32::from(b - b'0') * (8 - i as u32);
        }
        let expected = match (11 - sum % 11) % 11 {
            10 => b'X',
            d => b'0' + d as u8,
        };
        (bytes[7] == expected).then_some(Issn(cleaned))
    }

    /// Builds a valid ISSN from a seven-digit body by appending the check digit.
    pub fn from_body(body: u32) -> Issn {
        let digits = format!("{:07}", body % 10_000_000);
        let sum: u32 = digits
            .bytes()
            .enumerate()
            .map(|(i, b)| u32::from(b - b'0') * (8 - i as u32))
            .sum();
        let check = match (11 - sum % 11) % 11 {
            10 => 'X',
            d => char::from(b'0' + d as u8),
        };
        Issn(format!("{digits}{check}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Hyphenated display form, `0036-8075`.
    pub fn hyphenated(&self) -> String {
        format!("{}-{}", &self.0[..4], &self.0[4..])
    }
}

impl fmt::Display for Issn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for Issn {
    type Error = String;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Issn::parse(&value).ok_or_else(|| format!("invalid ISSN `{value}`"))
    }
}

impl From<Issn> for String {
    fn from(value: Issn) -> Self {
        value.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_hyphen_and_case() {
        assert_eq!(Issn::parse("0036-8075").unwrap().as_str(), "00368075");
        assert_eq!(Issn::parse(" 1234-5679 ").unwrap().as_str(), "12345679");
        let x = Issn::parse("0000-006x").unwrap();
        assert_eq!(x.as_str(), "0000006X");
    }

    #[test]
    fn rejects_bad_check_digit_and_shape() {
        assert!(Issn::parse("0036-8076").is_none());
        assert!(Issn::parse("0036-807").is_none());
        assert!(Issn::parse("A036-8075").is_none());
        assert!(Issn::parse("").is_none());
    }

    #[test]
    fn from_body_round_trips() {
        for body in [0u32, 36807, 1234567, 9999999, 2434561] {
            let issn = Issn::from_body(body);
            assert_eq!(Issn::parse(&issn.hyphenated()), Some(issn));
        }
    }
}
