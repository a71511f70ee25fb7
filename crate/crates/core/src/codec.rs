//! Spin configurations and their hexadecimal solution-string encoding.
//!
//! A solution string lists variables 1..n as bits, four per hex digit,
//! most-significant bit first, digits read left to right. Bit 0 is spin -1
//! and bit 1 is spin +1. When n is not a multiple of four the unused low bits
//! of the last digit must be zero.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("non-hex character {ch:?} at position {position} (0-based, whitespace removed)")]
    InvalidChar { ch: char, position: usize },
    #[error("expected {expected} hex digits for n={n}, found {found}")]
    LengthMismatch { n: usize, expected: usize, found: usize },
    #[error("nonzero padding bits in final digit {digit:?}")]
    NonzeroPadding { digit: char },
    #[error("spin value {value} at index {index} is not -1 or +1")]
    InvalidSpin { index: usize, value: i8 },
    #[error("malformed substitution {0:?}, expected FROM=TO")]
    BadSubstitution(String),
}

/// A vector of spins in {-1, +1}. Variable `i` (1-indexed) lives at slice
/// index `i - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinConfiguration(Vec<i8>);

impl SpinConfiguration {
    pub fn new(spins: Vec<i8>) -> Result<Self, CodecError> {
        if let Some((index, &value)) = spins.iter().enumerate().find(|(_, &s)| s != 1 && s != -1) {
            return Err(CodecError::InvalidSpin { index, value });
        }
        Ok(Self(spins))
    }

    /// All spins set to `spin`.
    pub fn uniform(n: usize, spin: i8) -> Self {
        assert!(spin == 1 || spin == -1);
        Self(vec![spin; n])
    }

    /// Spins from bits: `true` is +1.
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        Self(bits.into_iter().map(|b| if b { 1 } else { -1 }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    /// Spin of 1-indexed variable `v`.
    pub fn spin(&self, v: u32) -> i8 {
        self.0[v as usize - 1]
    }

    /// Negates the spin of 1-indexed variable `v` in place.
    pub fn flip(&mut self, v: u32) {
        self.0[v as usize - 1] = -self.0[v as usize - 1];
    }

    pub(crate) fn flip_index(&mut self, index: usize) {
        self.0[index] = -self.0[index];
    }

    pub(crate) fn from_raw(spins: Vec<i8>) -> Self {
        debug_assert!(spins.iter().all(|&s| s == 1 || s == -1));
        Self(spins)
    }

    /// Every spin negated.
    pub fn global_flip(&self) -> Self {
        Self(self.0.iter().map(|s| -s).collect())
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }

    /// Lowercase hex encoding, no whitespace.
    pub fn to_hex(&self) -> String {
        encode_hex(self)
    }
}

impl fmt::Display for SpinConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn global_flip(config: &SpinConfiguration) -> SpinConfiguration {
    config.global_flip()
}

/// Removes all whitespace, including line breaks from wrapped listings.
pub fn strip_whitespace(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Decodes a (possibly wrapped) hex string into `n` spins.
pub fn decode_hex(hex: &str, n: usize) -> Result<SpinConfiguration, CodecError> {
    let digits = strip_whitespace(hex);
    let mut values = Vec::with_capacity(digits.len());
    for (position, ch) in digits.chars().enumerate() {
        let d = ch.to_digit(16).ok_or(CodecError::InvalidChar { ch, position })?;
        values.push(d as u8);
    }
    let expected = n.div_ceil(4);
    if values.len() != expected {
        return Err(CodecError::LengthMismatch {
            n,
            expected,
            found: values.len(),
        });
    }
    let pad = expected * 4 - n;
    if let Some(&last) = values.last() {
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(CodecError::NonzeroPadding {
                digit: digits.chars().last().unwrap(),
            });
        }
    }
    let bits = values
        .iter()
        .flat_map(|d| (0..4).rev().map(move |k| (d >> k) & 1 == 1))
        .take(n);
    Ok(SpinConfiguration::from_bits(bits))
}

/// Encodes spins as lowercase hex, MSB first, zero-padded in the last digit.
pub fn encode_hex(config: &SpinConfiguration) -> String {
    config
        .as_slice()
        .chunks(4)
        .map(|chunk| {
            let d = chunk
                .iter()
                .enumerate()
                .fold(0u32, |acc, (k, &s)| acc | (u32::from(s > 0) << (3 - k)));
            char::from_digit(d, 16).unwrap()
        })
        .collect()
}

/// An explicit single-character repair applied before decoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substitution {
    pub from: char,
    pub to: char,
}

impl std::str::FromStr for Substitution {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next(), chars.next(), chars.next()) {
            (Some(from), Some('='), Some(to), None) => Ok(Self { from, to }),
            _ => Err(CodecError::BadSubstitution(s.to_string())),
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.from, self.to)
    }
}

/// Applies substitutions to whitespace-stripped text and returns the new
/// text plus the 0-based positions that were changed.
pub fn apply_substitutions(digits: &str, subs: &[Substitution]) -> (String, Vec<(usize, char, char)>) {
    let mut changes = Vec::new();
    let out = digits
        .chars()
        .enumerate()
        .map(|(i, c)| match subs.iter().find(|s| s.from == c) {
            Some(s) => {
                changes.push((i, c, s.to));
                s.to
            }
            None => c,
        })
        .collect();
    (out, changes)
}

/// Contents of a solution file: the hex body plus the optional
/// `# instance=<name> n=<n>` header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionText {
    pub instance: Option<String>,
    pub n: Option<usize>,
    /// Whitespace-stripped hex digits.
    pub digits: String,
}

impl SolutionText {
    /// Lines starting with `#` are comments; a `key=value` comment may carry
    /// `instance` and `n` and is otherwise ignored.
    pub fn parse(text: &str) -> Self {
        let mut instance = None;
        let mut n = None;
        let mut digits = String::new();
        for line in text.lines() {
            let trimmed = line.trim();
            if let Some(header) = trimmed.strip_prefix('#') {
                for field in header.split_whitespace() {
                    match field.split_once('=') {
                        Some(("instance", v)) => instance = Some(v.to_string()),
                        Some(("n", v)) => n = v.parse().ok(),
                        _ => {}
                    }
                }
            } else {
                digits.extend(trimmed.chars().filter(|c| !c.is_whitespace()));
            }
        }
        Self { instance, n, digits }
    }

    pub fn render(config: &SpinConfiguration, instance: &str) -> String {
        format!("# instance={} n={}\n{}\n", instance, config.len(), config.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spins(v: &[i8]) -> SpinConfiguration {
        SpinConfiguration::new(v.to_vec()).unwrap()
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_hex("f", 4).unwrap(), spins(&[1, 1, 1, 1]));
        assert_eq!(
            decode_hex("2b", 8).unwrap(),
            spins(&[-1, -1, 1, -1, 1, -1, 1, 1])
        );
        assert_eq!(decode_hex("2B", 8).unwrap(), decode_hex("2b", 8).unwrap());
        assert_eq!(decode_hex(" 2\n b\r\n", 8).unwrap(), decode_hex("2b", 8).unwrap());
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_hex(&spins(&[1, 1, 1, 1])), "f");
        assert_eq!(encode_hex(&spins(&[-1, -1, -1, -1, -1, -1, -1, 1])), "01");
        assert_eq!(encode_hex(&spins(&[1, -1, 1])), "a");
        assert_eq!(encode_hex(&SpinConfiguration::uniform(0, 1)), "");
    }

    #[test]
    fn padding_must_be_zero() {
        assert_eq!(decode_hex("a", 3).unwrap(), spins(&[1, -1, 1]));
        assert_eq!(
            decode_hex("b", 3),
            Err(CodecError::NonzeroPadding { digit: 'b' })
        );
    }

    #[test]
    fn errors_report_position() {
        assert_eq!(
            decode_hex("dc df\nlc", 24),
            Err(CodecError::InvalidChar { ch: 'l', position: 4 })
        );
        assert_eq!(
            decode_hex("ff", 12),
            Err(CodecError::LengthMismatch { n: 12, expected: 3, found: 2 })
        );
    }

    #[test]
    fn rejects_bad_spins() {
        assert_eq!(
            SpinConfiguration::new(vec![1, 0]),
            Err(CodecError::InvalidSpin { index: 1, value: 0 })
        );
    }

    #[test]
    fn flip_examples() {
        assert_eq!(global_flip(&spins(&[1, -1])), spins(&[-1, 1]));
        let mut c = spins(&[1, -1, 1]);
        c.flip(2);
        assert_eq!(c, spins(&[1, 1, 1]));
        assert_eq!(c.spin(3), 1);
    }

    #[test]
    fn substitution_parse_and_apply() {
        let sub: Substitution = "l=1".parse().unwrap();
        assert_eq!(sub, Substitution { from: 'l', to: '1' });
        assert_eq!(sub.to_string(), "l=1");
        assert!("l1".parse::<Substitution>().is_err());
        assert!("l==1".parse::<Substitution>().is_err());
        let (out, changes) = apply_substitutions("dcdflc", &[sub]);
        assert_eq!(out, "dcdf1c");
        assert_eq!(changes, vec![(4, 'l', '1')]);
    }

    #[test]
    fn solution_text_header() {
        let t = SolutionText::parse("# instance=G72 n=10000\n2b09\nd309 \n");
        assert_eq!(t.instance.as_deref(), Some("G72"));
        assert_eq!(t.n, Some(10_000));
        assert_eq!(t.digits, "2b09d309");
        let c = spins(&[1, -1, -1, 1, 1]);
        let rendered = SolutionText::render(&c, "x");
        let back = SolutionText::parse(&rendered);
        assert_eq!(decode_hex(&back.digits, back.n.unwrap()).unwrap(), c);
    }
}
