//! Word types over the ranked alphabet and over `{0,1}`, plus the border,
//! occurrence and tower helpers the rest of the crate is built on.
//!
//! Algorithms take plain slices, so infixes are passed around as borrowed
//! views and never copied.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A symbol `0_n` or `1_n` of the counter alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankedSymbol {
    order: u32,
    bit: u8,
}

impl RankedSymbol {
    pub fn new(order: u32, bit: u8) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("symbol order must be at least 1".into()));
        }
        if bit > 1 {
            return Err(Error::InvalidArgument(format!("bit must be 0 or 1, got {bit}")));
        }
        Ok(RankedSymbol { order, bit })
    }

    /// `0_order`.
    pub fn zero(order: u32) -> Self {
        Self::new(order, 0).expect("order must be positive")
    }

    /// `1_order`.
    pub fn one(order: u32) -> Self {
        Self::new(order, 1).expect("order must be positive")
    }

    pub fn order(self) -> u32 {
        self.order
    }

    pub fn bit(self) -> u8 {
        self.bit
    }
}

impl fmt::Display for RankedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.bit, self.order)
    }
}

impl FromStr for RankedSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (bit, order) = s
            .split_once('_')
            .ok_or_else(|| Error::syntax("ranked symbol", s, "expected <bit>_<order>"))?;
        let bit = match bit {
            "0" => 0,
            "1" => 1,
            _ => return Err(Error::syntax("ranked symbol", s, "bit must be 0 or 1")),
        };
        let order: u32 = order
            .parse()
            .map_err(|_| Error::syntax("ranked symbol", s, "order must be a decimal integer"))?;
        RankedSymbol::new(order, bit).map_err(|_| Error::syntax("ranked symbol", s, "order must be positive"))
    }
}

/// A finite word over the ranked alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankedWord(Vec<RankedSymbol>);

impl RankedWord {
    pub fn new(symbols: Vec<RankedSymbol>) -> Self {
        RankedWord(symbols)
    }

    pub fn symbols(&self) -> &[RankedSymbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<RankedSymbol> {
        self.0
    }

    /// Largest symbol order, `None` for the empty word.
    pub fn max_order(&self) -> Option<u32> {
        self.0.iter().map(|s| s.order).max()
    }
}

impl Deref for RankedWord {
    type Target = [RankedSymbol];

    fn deref(&self) -> &[RankedSymbol] {
        &self.0
    }
}

impl From<Vec<RankedSymbol>> for RankedWord {
    fn from(v: Vec<RankedSymbol>) -> Self {
        RankedWord(v)
    }
}

impl FromIterator<RankedSymbol> for RankedWord {
    fn from_iter<I: IntoIterator<Item = RankedSymbol>>(iter: I) -> Self {
        RankedWord(iter.into_iter().collect())
    }
}

impl fmt::Display for RankedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for RankedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(str::parse).collect()
    }
}

/// A finite word over `{0,1}`, stored one bit per byte.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    /// Builds a word from bits; every entry must be 0 or 1.
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidArgument(format!("binary word contains {b}")));
        }
        Ok(BinaryWord(bits))
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        BinaryWord(bits)
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.0
    }

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        BinaryWord(bits)
    }
}

impl Deref for BinaryWord {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect();
        f.write_str(&s)
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::syntax("binary word", s, format!("unexpected character {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BinaryWord)
    }
}

/// Knuth–Morris–Pratt failure function: entry `i` is the length of the
/// longest proper border of `w[..=i]`.
pub fn prefix_function<T: PartialEq>(w: &[T]) -> Vec<usize> {
    let mut pf = vec![0usize; w.len()];
    for i in 1..w.len() {
        let mut k = pf[i - 1];
        while k > 0 && w[i] != w[k] {
            k = pf[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        pf[i] = k;
    }
    pf
}

/// All offsets `m` with `haystack[m..m + needle.len()] == needle`, ascending.
///
/// The empty needle occurs at every position `0..=haystack.len()`.
pub fn occurrences<T: PartialEq>(needle: &[T], haystack: &[T]) -> Vec<usize> {
    if needle.is_empty() {
        return (0..=haystack.len()).collect();
    }
    if needle.len() > haystack.len() {
        return Vec::new();
    }
    let pf = prefix_function(needle);
    let mut out = Vec::new();
    let mut k = 0;
    for (i, c) in haystack.iter().enumerate() {
        while k > 0 && (k == needle.len() || *c != needle[k]) {
            k = pf[k - 1];
        }
        if *c == needle[k] {
            k += 1;
        }
        if k == needle.len() {
            out.push(i + 1 - k);
        }
    }
    out
}

/// Lengths `b >= 1` of the borders of `w` with `2b < |w|`, ascending.
///
/// These are exactly the decompositions `w = αβα` with `α` and `β` non-empty.
pub fn proper_borders<T: PartialEq>(w: &[T]) -> Result<Vec<usize>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let pf = prefix_function(w);
    let mut out = Vec::new();
    let mut b = pf[w.len() - 1];
    while b > 0 {
        if 2 * b < w.len() {
            out.push(b);
        }
        b = pf[b - 1];
    }
    out.reverse();
    Ok(out)
}

/// Decimal digit count of `base^exp`, or `None` when it does not even fit
/// in an `f64`.
fn pow_digits(base: &BigUint, exp: &BigUint) -> Option<f64> {
    let log10 = match base.to_f64() {
        Some(b) if b.is_finite() => b.log10(),
        _ => base.bits() as f64 * std::f64::consts::LOG10_2,
    };
    let e = exp.to_f64()?;
    Some((e * log10).floor() + 1.0)
}

/// `base^exp` exactly, refusing results longer than `max_digits` digits.
pub(crate) fn capped_pow(
    base: &BigUint,
    exp: &BigUint,
    max_digits: u64,
    what: &'static str,
) -> Result<BigUint> {
    if base.is_zero() {
        return Ok(if exp.is_zero() { BigUint::one() } else { BigUint::zero() });
    }
    if base.is_one() || exp.is_zero() {
        return Ok(BigUint::one());
    }
    match pow_digits(base, exp) {
        Some(d) if d <= max_digits as f64 => {}
        Some(d) => return Err(Error::resource(what, format!("{d} digits"), format!("{max_digits} digits"))),
        None => return Err(Error::resource(what, "unbounded digits", format!("{max_digits} digits"))),
    }
    let e = exp.to_u32().ok_or_else(|| Error::resource(what, exp, u32::MAX))?;
    Ok(num_traits::pow::Pow::pow(base, e))
}

pub(crate) fn check_digits(value: &BigUint, max_digits: u64, what: &'static str) -> Result<()> {
    let approx = (value.bits() as f64 * std::f64::consts::LOG10_2).floor() as u64 + 1;
    if approx > max_digits {
        return Err(Error::resource(what, format!("{approx} digits"), format!("{max_digits} digits")));
    }
    Ok(())
}

/// `Tower(n, k)`: `Tower(0, k) = 1` and `Tower(n + 1, k) = k^Tower(n, k)`.
pub fn tower(n: u32, k: u32) -> Result<BigUint> {
    tower_with(n, k, &Limits::default())
}

pub fn tower_with(n: u32, k: u32, limits: &Limits) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("tower base must be at least 2, got {k}")));
    }
    let base = BigUint::from(k);
    let mut value = BigUint::one();
    for _ in 0..n {
        value = capped_pow(&base, &value, limits.max_digits, "tower value")?;
    }
    Ok(value)
}

/// The unary tower `τ(n) = Tower(n, 2)`.
pub fn tau(n: u32) -> Result<BigUint> {
    tower(n, 2)
}

pub fn tau_with(n: u32, limits: &Limits) -> Result<BigUint> {
    tower_with(n, 2, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn borders_brute(w: &[u8]) -> Vec<usize> {
        (1..w.len()).filter(|&b| 2 * b < w.len() && w[..b] == w[w.len() - b..]).collect()
    }

    #[test]
    fn occurrences_examples() {
        assert_eq!(occurrences(b"na", b"banana"), vec![2, 4]);
        assert_eq!(occurrences(b"a", b"a"), vec![0]);
        assert_eq!(occurrences(b"", b"ab"), vec![0, 1, 2]);
        assert_eq!(occurrences(b"aa", b"aaaa"), vec![0, 1, 2]);
        assert!(occurrences(b"abc", b"ab").is_empty());
    }

    #[test]
    fn proper_borders_examples() {
        assert_eq!(proper_borders(b"aba").unwrap(), vec![1]);
        assert_eq!(proper_borders(b"aa").unwrap(), Vec::<usize>::new());
        assert_eq!(proper_borders(b"aaabaaa").unwrap(), borders_brute(b"aaabaaa"));
        assert_eq!(proper_borders(b"aaabaaa").unwrap(), vec![1, 2, 3]);
        assert_eq!(proper_borders::<u8>(&[]), Err(Error::EmptyWord));
    }

    #[test]
    fn borders_match_brute_force_on_all_short_binary_words() {
        for len in 1..=12usize {
            for mask in 0u32..(1 << len) {
                let w: Vec<u8> = (0..len).map(|i| ((mask >> i) & 1) as u8).collect();
                assert_eq!(proper_borders(&w).unwrap(), borders_brute(&w), "{w:?}");
            }
        }
    }

    #[test]
    fn tower_values() {
        assert_eq!(tower(0, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(tower(3, 2).unwrap(), BigUint::from(16u32));
        assert_eq!(tower(2, 3).unwrap(), BigUint::from(27u32));
        assert_eq!(tau(4).unwrap(), BigUint::from(65536u32));
        assert_eq!(tau(5).unwrap().bits(), 65537);
        assert!(tau(6).unwrap_err().is_resource());
        assert!(tower(1, 1).is_err());
    }

    #[test]
    fn tower_recurrence() {
        for k in 2..6u32 {
            for n in 0..3u32 {
                let next = tower(n + 1, k).unwrap();
                let prev = tower(n, k).unwrap();
                assert_eq!(next, num_traits::pow::Pow::pow(BigUint::from(k), prev.to_u32().unwrap()));
            }
        }
    }

    #[test]
    fn text_formats() {
        let w: RankedWord = "0_3 1_1 0_2".parse().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w[0], RankedSymbol::zero(3));
        assert_eq!(w.to_string(), "0_3 1_1 0_2");
        assert_eq!(w.max_order(), Some(3));
        assert!("0_0".parse::<RankedWord>().is_err());
        assert!("2_1".parse::<RankedWord>().is_err());
        assert!("01".parse::<RankedWord>().is_err());
        let b: BinaryWord = "0110".parse().unwrap();
        assert_eq!(b.bits(), &[0, 1, 1, 0]);
        assert_eq!(b.to_string(), "0110");
        assert!("012".parse::<BinaryWord>().is_err());
        assert_eq!("".parse::<RankedWord>().unwrap().len(), 0);
    }
}
