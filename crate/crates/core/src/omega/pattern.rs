use std::fmt;
use std::str::FromStr;

use super::OmegaError;

/// Ordered list of tangency multiplicities along one trajectory.
///
/// Entries are positive; a pattern has at least one entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<u32>);

impl Pattern {
    pub fn new(entries: Vec<u32>) -> Result<Self, OmegaError> {
        if entries.is_empty() {
            return Err(OmegaError::InvalidPattern("empty pattern".into()));
        }
        if entries.contains(&0) {
            return Err(OmegaError::InvalidPattern("pattern entries must be positive".into()));
        }
        Ok(Pattern(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|ω| = Σ ω_i`.
    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `|ω|' = Σ (ω_i - 1)`.
    pub fn reduced_norm(&self) -> u32 {
        self.0.iter().map(|&m| m - 1).sum()
    }

    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn odd_count(&self) -> usize {
        self.0.iter().filter(|&&m| m % 2 == 1).count()
    }

    /// Canonical text form: a bare digit string when every entry is a
    /// single digit, otherwise a comma-separated list.
    pub fn to_compact_string(&self) -> String {
        if self.0.iter().all(|&m| m <= 9) {
            self.0.iter().map(|m| m.to_string()).collect()
        } else if self.0.len() == 1 {
            format!("({})", self.0[0])
        } else {
            self.to_list_string()
        }
    }

    pub fn to_list_string(&self) -> String {
        self.0.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact_string())
    }
}

impl FromStr for Pattern {
    type Err = OmegaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let inner = trimmed.strip_prefix('(').and_then(|t| t.strip_suffix(')'));
        let body = inner.unwrap_or(trimmed).trim();
        if body.is_empty() {
            return Err(OmegaError::InvalidPattern(format!("cannot parse {s:?}")));
        }
        let entries = if inner.is_some() || body.contains(',') {
            body.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|_| OmegaError::InvalidPattern(format!("bad entry {tok:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            body.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| OmegaError::InvalidPattern(format!("bad digit {c:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Pattern::new(entries)
    }
}

impl TryFrom<&[u32]> for Pattern {
    type Error = OmegaError;

    fn try_from(value: &[u32]) -> Result<Self, Self::Error> {
        Pattern::new(value.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn norms() {
        assert_eq!(p("121").norm(), 4);
        assert_eq!(p("2").norm(), 2);
        assert_eq!(p("23274542314641").norm(), 48);
        assert_eq!(p("11").reduced_norm(), 0);
        assert_eq!(p("121").reduced_norm(), 1);
        assert_eq!(p("23274542314641").reduced_norm(), 34);
    }

    #[test]
    fn parse_both_syntaxes() {
        assert_eq!(p("1,12,1").entries(), &[1, 12, 1]);
        assert_eq!(p("(1,2,1)"), p("121"));
        assert_eq!(p("1,12,1").to_string(), "1,12,1");
        assert_eq!(p("121").to_string(), "121");
        assert!("".parse::<Pattern>().is_err());
        assert!("102".parse::<Pattern>().is_err());
        assert!("1,,2".parse::<Pattern>().is_err());
        assert!("1a".parse::<Pattern>().is_err());
    }
}
