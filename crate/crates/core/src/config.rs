//! Global states of a network, packed into a machine word.
//!
//! Node `i` is bit `i` of the word. A configuration does not carry its own
//! size: every operation that needs `n` takes it from the owning network.
//! The textual form puts node 0 leftmost, so `100` means `x_0 = 1`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Largest node count a configuration word can hold.
pub const MAX_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigParseError {
    #[error("empty configuration literal")]
    Empty,
    #[error("invalid character {0:?} in configuration literal (expected 0 or 1)")]
    BadChar(char),
    #[error("configuration literal has {found} nodes, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("configuration literal longer than {MAX_NODES} nodes")]
    TooLong,
}

/// A global state: one Boolean per node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Configuration(pub u64);

impl Configuration {
    #[inline]
    pub const fn new(word: u64) -> Self {
        Configuration(word)
    }

    #[inline]
    pub const fn word(self) -> u64 {
        self.0
    }

    /// All-zero configuration.
    pub const ZERO: Configuration = Configuration(0);

    /// All-one configuration of `n` nodes.
    #[inline]
    pub fn ones(n: usize) -> Self {
        Configuration(full_mask(n))
    }

    #[inline]
    pub fn get(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    #[inline]
    #[must_use]
    pub fn with(self, i: usize, value: bool) -> Self {
        if value {
            Configuration(self.0 | (1 << i))
        } else {
            Configuration(self.0 & !(1 << i))
        }
    }

    /// Flips every one of the `n` node states.
    #[inline]
    #[must_use]
    pub fn complement(self, n: usize) -> Self {
        Configuration(!self.0 & full_mask(n))
    }

    /// Number of active nodes.
    #[inline]
    pub fn count_ones(self) -> u32 {
        self.0.count_ones()
    }

    /// Whether this word is a configuration of an `n`-node network.
    #[inline]
    pub fn fits(self, n: usize) -> bool {
        self.0 & !full_mask(n) == 0
    }

    /// Renders the state as a binary string, node 0 leftmost.
    pub fn to_binary(self, n: usize) -> String {
        (0..n)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    /// Parses a binary string with node 0 leftmost. The length of the
    /// literal gives the node count.
    pub fn parse_binary(s: &str) -> Result<(Configuration, usize), ConfigParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ConfigParseError::Empty);
        }
        if s.len() > MAX_NODES {
            return Err(ConfigParseError::TooLong);
        }
        let mut word = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => word |= 1 << i,
                other => return Err(ConfigParseError::BadChar(other)),
            }
        }
        Ok((Configuration(word), s.chars().count()))
    }

    /// Parses a binary string that must describe exactly `n` nodes.
    pub fn parse_sized(s: &str, n: usize) -> Result<Configuration, ConfigParseError> {
        let (x, len) = Self::parse_binary(s)?;
        if len != n {
            return Err(ConfigParseError::Length {
                expected: n,
                found: len,
            });
        }
        Ok(x)
    }

    /// Sort key matching the lexicographic order of [`Self::to_binary`].
    #[inline]
    pub fn lex_key(self, n: usize) -> u64 {
        if n == 0 {
            0
        } else {
            self.0.reverse_bits() >> (64 - n)
        }
    }

    /// Lexicographic comparison of the binary renderings.
    #[inline]
    pub fn lex_cmp(self, other: Configuration, n: usize) -> Ordering {
        self.lex_key(n).cmp(&other.lex_key(n))
    }
}

impl From<u64> for Configuration {
    fn from(word: u64) -> Self {
        Configuration(word)
    }
}

/// Displays the raw word; use [`Configuration::to_binary`] for the
/// node-ordered rendering.
impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates every configuration of an `n`-node network in word order.
pub fn all_configurations(n: usize) -> impl Iterator<Item = Configuration> + Clone {
    assert!(n < 64, "cannot enumerate 2^{n} configurations");
    (0..(1u64 << n)).map(Configuration)
}

/// Iterates the non-strict submasks of `mask`, from `mask` down to `0`.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}

/// Node indices set in `mask`, ascending.
pub fn mask_members(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(i)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_rendering_puts_node_zero_first() {
        let x = Configuration(0b001);
        assert_eq!(x.to_binary(3), "100");
        assert_eq!(Configuration::parse_binary("100").unwrap(), (x, 3));
    }

    #[test]
    fn complement_flips_all_bits() {
        let zero = Configuration::ZERO;
        assert_eq!(zero.complement(3).to_binary(3), "111");
        let x = Configuration(0b1011);
        assert_eq!(x.complement(4).complement(4), x);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Configuration::parse_binary(""),
            Err(ConfigParseError::Empty)
        );
        assert_eq!(
            Configuration::parse_binary("102"),
            Err(ConfigParseError::BadChar('2'))
        );
        assert_eq!(
            Configuration::parse_sized("10", 3),
            Err(ConfigParseError::Length {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn lex_order_follows_rendering() {
        let n = 4;
        let mut xs: Vec<_> = all_configurations(n).collect();
        xs.sort_by(|a, b| a.lex_cmp(*b, n));
        let rendered: Vec<_> = xs.iter().map(|x| x.to_binary(n)).collect();
        let mut sorted = rendered.clone();
        sorted.sort();
        assert_eq!(rendered, sorted);
    }

    #[test]
    fn submask_enumeration_is_complete() {
        let mask = 0b1011;
        let subs: Vec<_> = submasks(mask).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s & !mask == 0));
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn members_ascending() {
        assert_eq!(mask_members(0b10110).collect::<Vec<_>>(), vec![1, 2, 4]);
    }
}
