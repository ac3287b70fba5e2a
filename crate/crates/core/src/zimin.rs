//! Zimin patterns, Zimin type and index, and generic pattern matching.
//!
//! The Zimin type obeys the border recursion
//! `type(w) = 1 + max { type(α) : w = αβα, α, β ≠ ε }`. For a fixed start
//! offset the borders of every prefix come out of a single prefix-function
//! pass, so the types of all prefixes of one suffix are filled in one sweep
//! ([`TypeRow`]). The Zimin index is the maximum over all start offsets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::par;

/// A word over the pattern variables `x1, x2, ...`, stored as indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<u32>);

impl Pattern {
    /// Variable indices must be at least 1.
    pub fn new(variables: Vec<u32>) -> Result<Self> {
        if variables.contains(&0) {
            return Err(Error::InvalidArgument("pattern variables are numbered from 1".into()));
        }
        Ok(Pattern(variables))
    }

    pub fn variables(&self) -> &[u32] {
        &self.0
    }

    pub fn distinct_variables(&self) -> BTreeSet<u32> {
        self.0.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let vars = s
            .split_whitespace()
            .map(|tok| {
                tok.strip_prefix('x')
                    .and_then(|d| d.parse::<u32>().ok())
                    .filter(|&v| v > 0)
                    .ok_or_else(|| Error::syntax("pattern", s, format!("bad variable token {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Pattern(vars))
    }
}

/// A non-erasing assignment of words to pattern variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismWitness<T> {
    pub assignment: BTreeMap<u32, Vec<T>>,
}

impl<T: Clone> MorphismWitness<T> {
    /// Image of `pattern`, or `None` if some variable is unassigned.
    pub fn apply(&self, pattern: &Pattern) -> Option<Vec<T>> {
        let mut out = Vec::new();
        for v in pattern.variables() {
            out.extend_from_slice(self.assignment.get(v)?);
        }
        Some(out)
    }
}

/// `Z_0 = ε`, `Z_{n+1} = Z_n x_{n+1} Z_n`.
pub fn zimin_pattern(n: u32) -> Result<Pattern> {
    zimin_pattern_with(n, &Limits::default())
}

pub fn zimin_pattern_with(n: u32, limits: &Limits) -> Result<Pattern> {
    if n > limits.max_zimin_order {
        return Err(Error::resource("Zimin pattern order", n, limits.max_zimin_order));
    }
    let mut vars: Vec<u32> = Vec::with_capacity((1usize << n) - 1);
    for i in 1..=n {
        let prev = vars.clone();
        vars.push(i);
        vars.extend_from_slice(&prev);
    }
    Ok(Pattern(vars))
}

/// Incremental Zimin types of the prefixes of one word.
///
/// After pushing the prefix of length `len`, `types[len]` is its Zimin type
/// and `chain_max[len]` is the maximum type over that prefix and all of its
/// borders.
#[derive(Debug, Clone)]
pub(crate) struct TypeRow {
    pf: Vec<u32>,
    types: Vec<u8>,
    chain_max: Vec<u8>,
}

impl TypeRow {
    pub(crate) fn new() -> Self {
        TypeRow {
            pf: Vec::new(),
            types: vec![0],
            chain_max: vec![0],
        }
    }

    pub(crate) fn with_capacity(cap: usize) -> Self {
        let mut row = TypeRow {
            pf: Vec::with_capacity(cap),
            types: Vec::with_capacity(cap + 1),
            chain_max: Vec::with_capacity(cap + 1),
        };
        row.types.push(0);
        row.chain_max.push(0);
        row
    }

    /// `w` is the word this row tracks, already extended by one letter.
    /// Returns the Zimin type of `w`.
    pub(crate) fn push<T: PartialEq>(&mut self, w: &[T]) -> u8 {
        let len = w.len();
        debug_assert_eq!(len, self.pf.len() + 1);
        let i = len - 1;
        let border = if i == 0 {
            0
        } else {
            let mut k = self.pf[i - 1] as usize;
            while k > 0 && w[i] != w[k] {
                k = self.pf[k - 1] as usize;
            }
            if w[i] == w[k] {
                k + 1
            } else {
                k
            }
        };
        self.pf.push(border as u32);
        let mut b = border;
        while 2 * b >= len {
            b = self.pf[b - 1] as usize;
        }
        let t = 1 + self.chain_max[b];
        self.types.push(t);
        let cm = t.max(self.chain_max[border]);
        self.chain_max.push(cm);
        t
    }

    pub(crate) fn pop(&mut self) {
        self.pf.pop();
        self.types.pop();
        self.chain_max.pop();
    }

    fn max_type(&self) -> u8 {
        self.types.iter().copied().max().unwrap_or(0)
    }
}

/// Zimin types of every prefix of `w`; entry `len` belongs to `w[..len]`.
pub fn prefix_types<T: PartialEq>(w: &[T]) -> Vec<u8> {
    let mut row = TypeRow::with_capacity(w.len());
    for len in 1..=w.len() {
        row.push(&w[..len]);
    }
    row.types
}

/// Largest `n` such that `w` is the image of `Z_n` under a non-erasing
/// morphism; 0 for the empty word.
pub fn zimin_type<T: PartialEq>(w: &[T]) -> u32 {
    prefix_types(w).last().copied().unwrap_or(0) as u32
}

/// Maximum Zimin type over all infixes of `w` (0 for the empty word).
pub fn zimin_index<T: PartialEq + Sync>(w: &[T]) -> Result<u32> {
    zimin_index_with(w, &Limits::default())
}

pub fn zimin_index_with<T: PartialEq + Sync>(w: &[T], limits: &Limits) -> Result<u32> {
    if w.len() > limits.max_index_len {
        return Err(Error::resource("word length for Zimin index", w.len(), limits.max_index_len));
    }
    Ok(zimin_index_unchecked(w))
}

const PAR_INDEX_THRESHOLD: usize = 512;

pub(crate) fn zimin_index_unchecked<T: PartialEq + Sync>(w: &[T]) -> u32 {
    let row_max = |s: usize| -> u8 {
        let suffix = &w[s..];
        let mut row = TypeRow::with_capacity(suffix.len());
        for len in 1..=suffix.len() {
            row.push(&suffix[..len]);
        }
        row.max_type()
    };
    let best = if w.len() >= PAR_INDEX_THRESHOLD {
        par::max_over_range(w.len(), row_max)
    } else {
        (0..w.len()).map(row_max).max()
    };
    best.unwrap_or(0) as u32
}

/// Searches for a non-erasing morphism mapping `p` onto `w`.
///
/// Backtracks over image lengths, shortest first, assigning variables in
/// order of first appearance. A candidate length is rejected as soon as the
/// remaining pattern can no longer fit in the remaining word.
pub fn matches<T: Clone + PartialEq>(w: &[T], p: &Pattern) -> Result<Option<MorphismWitness<T>>> {
    if p.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let matcher = Matcher::new(p);
    Ok(matcher.run(w))
}

struct Matcher {
    /// Pattern with variables renumbered densely from 0.
    dense: Vec<usize>,
    names: Vec<u32>,
    /// `remaining[i][v]`: occurrences of variable `v` in `dense[i..]`.
    remaining: Vec<Vec<usize>>,
}

impl Matcher {
    fn new(p: &Pattern) -> Self {
        let mut names: Vec<u32> = Vec::new();
        let dense: Vec<usize> = p
            .variables()
            .iter()
            .map(|v| match names.iter().position(|n| n == v) {
                Some(i) => i,
                None => {
                    names.push(*v);
                    names.len() - 1
                }
            })
            .collect();
        let mut remaining = vec![vec![0usize; names.len()]; dense.len() + 1];
        for i in (0..dense.len()).rev() {
            remaining[i] = remaining[i + 1].clone();
            remaining[i][dense[i]] += 1;
        }
        Matcher { dense, names, remaining }
    }

    fn run<T: Clone + PartialEq>(&self, w: &[T]) -> Option<MorphismWitness<T>> {
        let mut images: Vec<Option<(usize, usize)>> = vec![None; self.names.len()];
        if !self.step(w, 0, 0, &mut images) {
            return None;
        }
        let assignment = images
            .iter()
            .zip(&self.names)
            .map(|(img, &name)| {
                let (s, l) = img.expect("all variables assigned after a match");
                (name, w[s..s + l].to_vec())
            })
            .collect();
        Some(MorphismWitness { assignment })
    }

    fn step<T: PartialEq>(&self, w: &[T], idx: usize, pos: usize, images: &mut [Option<(usize, usize)>]) -> bool {
        if idx == self.dense.len() {
            return pos == w.len();
        }
        let var = self.dense[idx];
        if let Some((s, l)) = images[var] {
            return pos + l <= w.len() && w[pos..pos + l] == w[s..s + l] && self.step(w, idx + 1, pos + l, images);
        }
        let others: usize = self.remaining[idx]
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != var)
            .map(|(v, &c)| c * images[v].map_or(1, |(_, l)| l))
            .sum();
        let left = w.len() - pos;
        if others >= left {
            return false;
        }
        let copies = self.remaining[idx][var];
        let max_len = (left - others) / copies;
        for l in 1..=max_len {
            images[var] = Some((pos, l));
            if self.step(w, idx + 1, pos + l, images) {
                return true;
            }
        }
        images[var] = None;
        false
    }
}

/// Leftmost, then shortest, infix of `w` matching `p`, with its offset.
pub fn encounters<T: Clone + PartialEq>(w: &[T], p: &Pattern) -> Result<Option<(usize, MorphismWitness<T>)>> {
    if p.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let matcher = Matcher::new(p);
    for start in 0..w.len() {
        for end in start + p.len()..=w.len() {
            if let Some(witness) = matcher.run(&w[start..end]) {
                return Ok(Some((start, witness)));
            }
        }
    }
    Ok(None)
}

/// Unavoidability test: a pattern over `n` distinct variables is
/// unavoidable iff `Z_n` encounters it.
pub fn is_unavoidable(p: &Pattern) -> Result<bool> {
    is_unavoidable_with(p, &Limits::default())
}

pub fn is_unavoidable_with(p: &Pattern, limits: &Limits) -> Result<bool> {
    if p.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let n = p.distinct_variables().len() as u32;
    let zn = zimin_pattern_with(n, limits)?;
    Ok(encounters(zn.variables(), p)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn chars(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    #[test]
    fn zimin_patterns() {
        assert!(zimin_pattern(0).unwrap().is_empty());
        assert_eq!(zimin_pattern(1).unwrap(), pat("x1"));
        assert_eq!(zimin_pattern(3).unwrap(), pat("x1 x2 x1 x3 x1 x2 x1"));
        for n in 0..10u32 {
            let z = zimin_pattern(n).unwrap();
            assert_eq!(z.len(), (1usize << n) - 1);
            for i in 1..=n {
                let count = z.variables().iter().filter(|&&v| v == i).count();
                assert_eq!(count, 1usize << (n - i));
            }
        }
        assert!(zimin_pattern(26).unwrap_err().is_resource());
    }

    #[test]
    fn pattern_text_format() {
        let p = pat("x1 x2 x1");
        assert_eq!(p.to_string(), "x1 x2 x1");
        assert!("x0".parse::<Pattern>().is_err());
        assert!("y1".parse::<Pattern>().is_err());
        assert!(Pattern::new(vec![0]).is_err());
    }

    #[test]
    fn zimin_type_examples() {
        assert_eq!(zimin_type(&chars("aaab")), 1);
        assert_eq!(zimin_type(&chars("aba")), 2);
        assert_eq!(zimin_type(&chars("aaaaaaabaaaaaaa")), 4);
        assert_eq!(zimin_type::<char>(&[]), 0);
        assert_eq!(zimin_type(&chars("baaabaaa")), 1);
    }

    #[test]
    fn zimin_index_examples() {
        assert_eq!(zimin_index(&chars("aaab")).unwrap(), 2);
        assert_eq!(zimin_index(&chars("baaabaaa")).unwrap(), 3);
        assert_eq!(zimin_index(&chars("bbaba")).unwrap(), 2);
        assert_eq!(zimin_index::<char>(&[]).unwrap(), 0);
        let limits = Limits { max_index_len: 3, ..Limits::default() };
        assert!(zimin_index_with(&chars("abcd"), &limits).unwrap_err().is_resource());
    }

    #[test]
    fn periodic_words_use_long_border_chains() {
        let w = vec![0u8; 63];
        assert_eq!(zimin_type(&w), 6);
        assert_eq!(zimin_index(&w).unwrap(), 6);
        let w = vec![0u8; 600];
        assert_eq!(zimin_index(&w).unwrap(), 9);
    }

    #[test]
    fn matches_examples() {
        let w = matches(&chars("nana"), &pat("x1 x1")).unwrap().unwrap();
        assert_eq!(w.assignment[&1], chars("na"));
        let w = matches(&chars("abca"), &pat("x1 x2 x1")).unwrap().unwrap();
        assert_eq!(w.assignment[&1], chars("a"));
        assert_eq!(w.assignment[&2], chars("bc"));
        assert!(matches(&chars("ab"), &pat("x1 x1")).unwrap().is_none());
        assert_eq!(matches(&chars("ab"), &Pattern(vec![])), Err(Error::EmptyPattern));
    }

    #[test]
    fn encounters_examples() {
        let (off, w) = encounters(&chars("banana"), &pat("x1 x1")).unwrap().unwrap();
        assert_eq!(off, 1);
        assert_eq!(w.assignment[&1], chars("an"));
        // "nana" is a square too, but "anan" starts further left.
        let nana = matches(&chars("banana")[2..], &pat("x1 x1")).unwrap().unwrap();
        assert_eq!(nana.assignment[&1], chars("na"));
        assert!(encounters(&chars("abca"), &pat("x1 x2 x1")).unwrap().is_some());
        assert!(encounters(&chars("abc"), &pat("x1 x1")).unwrap().is_none());
    }

    #[test]
    fn unavoidability() {
        assert!(is_unavoidable(&pat("x1 x2 x1")).unwrap());
        assert!(!is_unavoidable(&pat("x1 x1")).unwrap());
        assert!(!is_unavoidable(&pat("x1 x2 x1 x2")).unwrap());
        assert!(is_unavoidable(&pat("x1 x2 x1 x3 x1 x2 x1")).unwrap());
        assert!(is_unavoidable(&pat("x2 x1 x2")).unwrap());
        assert!(is_unavoidable(&pat("x1")).unwrap());
    }
}
