//! The binary coding ψ of ranked symbols, the code languages C, L, R, F,
//! simple words, and parses of infixes of coded words.
//!
//! `ψ(0_n) = 00 (01)^{n-1} 00` and `ψ(1_n) = 11 (01)^{n-1} 11`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::counters::{counter, CounterId};
use crate::error::{Error, Result};
use crate::regular::{Dfa, Regex};
use crate::words::{occurrences, BinaryWord, RankedSymbol, RankedWord};

/// Words shorter than this are simple.
pub const SIMPLE_MIN_LEN: usize = 11;
/// A run of this many equal bits makes a word simple.
pub const SIMPLE_RUN: usize = 10;

pub const C_REGEX: &str = "00(01)*00|11(01)*11";
pub const L_REGEX: &str = "ε|0|1|(ε|1)(01)*11|(ε|0|1)(01)*00";
pub const R_REGEX: &str = "ε|0|1|11(01)*(ε|0|1)|00(01)*(ε|0)";
pub const F_REGEX: &str = "(ε|0)(01)*(ε|0)|(ε|1)(01)*(ε|0|1)";

pub const BINARY: [char; 2] = ['0', '1'];

/// The bits of `ψ(s)`.
pub fn code_bits(s: RankedSymbol) -> Vec<u8> {
    let b = s.bit();
    let mut out = Vec::with_capacity(2 * s.order() as usize + 2);
    out.extend([b, b]);
    for _ in 1..s.order() {
        out.extend([0, 1]);
    }
    out.extend([b, b]);
    out
}

pub fn code_of(s: RankedSymbol) -> BinaryWord {
    BinaryWord::from_bits_unchecked(code_bits(s))
}

pub fn psi(w: &[RankedSymbol]) -> BinaryWord {
    let mut out = Vec::with_capacity(w.iter().map(|s| 2 * s.order() as usize + 2).sum());
    for &s in w {
        out.extend(code_bits(s));
    }
    BinaryWord::from_bits_unchecked(out)
}

/// `ψ(C_i^n)`.
pub fn encoded_counter(id: &CounterId) -> Result<BinaryWord> {
    Ok(psi(&counter(id)?))
}

/// Minimal DFAs for the four code languages over `{0, 1}`.
#[derive(Debug, Clone)]
pub struct Languages {
    pub c: Dfa,
    pub l: Dfa,
    pub r: Dfa,
    pub f: Dfa,
}

pub fn language_dfas() -> &'static Languages {
    static CACHE: OnceLock<Languages> = OnceLock::new();
    CACHE.get_or_init(|| {
        let build = |re| Dfa::from_regex_str(re, &BINARY).expect("built-in regex is well formed");
        Languages {
            c: build(C_REGEX),
            l: build(L_REGEX),
            r: build(R_REGEX),
            f: build(F_REGEX),
        }
    })
}

fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
}

/// Finite word sets behind [`restricted_languages`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RestrictedWords {
    pub c: BTreeSet<String>,
    pub l: BTreeSet<String>,
    pub r: BTreeSet<String>,
    pub f: BTreeSet<String>,
}

pub fn restricted_words(n: u32) -> Result<RestrictedWords> {
    if n == 0 {
        return Err(Error::InvalidArgument("order bound must be at least 1".into()));
    }
    let mut out = RestrictedWords::default();
    for order in 1..=n {
        for bit in 0..2 {
            let code = bits_to_string(&code_bits(RankedSymbol::new(order, bit)?));
            let len = code.len();
            for i in 1..=len {
                out.l.insert(code[i..].to_string());
                out.r.insert(code[..len - i].to_string());
            }
            for i in 1..len {
                for j in i..len {
                    out.f.insert(code[i..j].to_string());
                }
            }
            out.c.insert(code);
        }
    }
    Ok(out)
}

/// The four languages restricted to codes of symbols of order at most `n`:
/// the codes themselves, and their strict suffixes, prefixes and infixes.
pub fn restricted_languages(n: u32) -> Result<Languages> {
    let words = restricted_words(n)?;
    let build = |set: BTreeSet<String>| Dfa::from_regex(&Regex::words(set), &BINARY);
    Ok(Languages {
        c: build(words.c)?,
        l: build(words.l)?,
        r: build(words.r)?,
        f: build(words.f)?,
    })
}

fn longest_run(a: &[u8]) -> usize {
    a.chunk_by(|x, y| x == y).map(<[u8]>::len).max().unwrap_or(0)
}

/// A word is simple if it is short, a strict infix of a code, or contains a
/// long run of equal bits.
pub fn is_simple(a: &[u8]) -> bool {
    a.len() < SIMPLE_MIN_LEN || language_dfas().f.accepts_indices(a) || longest_run(a) >= SIMPLE_RUN
}

/// `(ℓ, u, r)` with `ℓ ∈ L`, `r ∈ R`; its value is `ℓ ψ(u) r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parse {
    pub left: BinaryWord,
    pub center: RankedWord,
    pub right: BinaryWord,
}

impl Parse {
    pub fn value(&self) -> BinaryWord {
        let mut bits = self.left.bits().to_vec();
        bits.extend_from_slice(psi(&self.center).bits());
        bits.extend_from_slice(self.right.bits());
        BinaryWord::from_bits_unchecked(bits)
    }

    /// Checks `left ∈ L` and `right ∈ R`.
    pub fn is_well_formed(&self) -> bool {
        let langs = language_dfas();
        langs.l.accepts_indices(&self.left) && langs.r.accepts_indices(&self.right)
    }
}

fn or_epsilon(s: String) -> String {
    if s.is_empty() {
        "ε".into()
    } else {
        s
    }
}

impl fmt::Display for Parse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            or_epsilon(self.left.to_string()),
            or_epsilon(self.center.to_string()),
            or_epsilon(self.right.to_string())
        )
    }
}

/// End of the code block starting at `p`, if one does.
fn block_end(a: &[u8], p: usize) -> Option<usize> {
    let x = *a.get(p)?;
    if *a.get(p + 1)? != x {
        return None;
    }
    let mut q = p + 2;
    loop {
        let (c0, c1) = (*a.get(q)?, *a.get(q + 1)?);
        if c0 == x && c1 == x {
            return Some(q + 2);
        }
        if (c0, c1) != (0, 1) {
            return None;
        }
        q += 2;
    }
}

fn block_symbol(a: &[u8], p: usize, end: usize) -> RankedSymbol {
    RankedSymbol::new(((end - p - 2) / 2) as u32, a[p]).expect("decoded block has order >= 1")
}

/// Every parse of `a`, ordered by the length of the left part and then by
/// the length of the center.
///
/// Codes are decoded deterministically (a block is fixed by its first two
/// bits), so only the left/right boundaries are searched.
pub fn parses(a: &[u8]) -> Vec<Parse> {
    let langs = language_dfas();
    let n = a.len();
    let l_live = langs.l.live_states();
    let r_live = langs.r.live_states();

    let mut left_ok = vec![false; n + 1];
    let mut q = langs.l.start();
    left_ok[0] = langs.l.is_accepting(q);
    for i in 0..n {
        q = langs.l.step(q, a[i] as usize);
        if !l_live[q] {
            break;
        }
        left_ok[i + 1] = langs.l.is_accepting(q);
    }

    let mut right_ok = vec![false; n + 1];
    for (j, ok) in right_ok.iter_mut().enumerate() {
        let mut q = langs.r.start();
        let mut alive = true;
        for &b in &a[j..] {
            q = langs.r.step(q, b as usize);
            if !r_live[q] {
                alive = false;
                break;
            }
        }
        *ok = alive && langs.r.is_accepting(q);
    }

    let mut ends: Vec<Option<Option<usize>>> = vec![None; n + 1];
    let mut out = Vec::new();
    for i in (0..=n).filter(|&i| left_ok[i]) {
        let mut j = i;
        let mut center = Vec::new();
        loop {
            if right_ok[j] {
                out.push(Parse {
                    left: BinaryWord::from_bits_unchecked(a[..i].to_vec()),
                    center: RankedWord::new(center.clone()),
                    right: BinaryWord::from_bits_unchecked(a[j..].to_vec()),
                });
            }
            let end = *ends[j].get_or_insert_with(|| block_end(a, j));
            match end {
                Some(e) => {
                    center.push(block_symbol(a, j, e));
                    j = e;
                }
                None => break,
            }
        }
    }
    out
}

fn left_fits(p: &Parse, w: &[RankedSymbol], m: usize) -> bool {
    p.left.is_empty() || (m > 0 && code_bits(w[m - 1]).ends_with(&p.left))
}

fn right_fits(p: &Parse, w: &[RankedSymbol], m: usize) -> bool {
    let after = m + p.center.len();
    p.right.is_empty() || (after < w.len() && code_bits(w[after]).starts_with(&p.right))
}

/// Offsets `m` where the center of `p` occurs in `w` and the left and right
/// parts fit the codes of the neighbouring symbols.
pub fn parse_occurrences(p: &Parse, w: &[RankedSymbol]) -> Vec<usize> {
    occurrences(p.center.symbols(), w)
        .into_iter()
        .filter(|&m| left_fits(p, w, m) && right_fits(p, w, m))
        .collect()
}

/// The center plus one neighbouring symbol on each side where the parse has
/// a non-empty left or right part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseContext {
    /// Offset of the context in the host word.
    pub start: usize,
    pub word: RankedWord,
}

pub fn context_of(p: &Parse, w: &[RankedSymbol], m: usize) -> Result<ParseContext> {
    let end = m + p.center.len();
    let valid = end <= w.len() && w[m..end] == *p.center.symbols() && left_fits(p, w, m) && right_fits(p, w, m);
    if !valid {
        return Err(Error::InvalidOccurrence { offset: m });
    }
    let start = m - usize::from(!p.left.is_empty());
    let stop = end + usize::from(!p.right.is_empty());
    Ok(ParseContext {
        start,
        word: RankedWord::new(w[start..stop].to_vec()),
    })
}

/// Offset in `ψ(w)` of the value of `p` placed at parse occurrence `m`.
pub fn coded_offset(p: &Parse, w: &[RankedSymbol], m: usize) -> usize {
    let before: usize = w[..m].iter().map(|s| 2 * s.order() as usize + 2).sum();
    before - p.left.len()
}
