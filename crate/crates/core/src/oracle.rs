//! Slow reference implementations, written directly from the definitions.
//! The fast code paths are checked against these.

use crate::psi::{code_bits, Parse};
use crate::words::{BinaryWord, RankedSymbol, RankedWord};

/// Zimin type by plain recursion over every decomposition `w = αβα`.
pub fn zimin_type_naive<T: PartialEq>(w: &[T]) -> u32 {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let mut best = 0;
    for b in 1..n {
        if 2 * b >= n {
            break;
        }
        if w[..b] == w[n - b..] {
            best = best.max(zimin_type_naive(&w[..b]));
        }
    }
    1 + best
}

pub fn zimin_index_naive<T: PartialEq>(w: &[T]) -> u32 {
    let mut best = 0;
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            best = best.max(zimin_type_naive(&w[i..j]));
        }
    }
    best
}

fn codes_long_enough(len: usize) -> impl Iterator<Item = Vec<u8>> {
    // strict affixes of length `len` need codes longer than `len`, and every
    // such affix already shows up among codes of order <= len/2 + 2
    let lo = ((len as u32).saturating_sub(1) / 2).max(1);
    (lo..=(len as u32) / 2 + 2).flat_map(|order| (0..2).map(move |bit| code_bits(RankedSymbol::new(order, bit).unwrap())))
}

/// `x` is a strict suffix of some code.
pub fn in_l(x: &[u8]) -> bool {
    codes_long_enough(x.len()).any(|c| c.len() > x.len() && c.ends_with(x))
}

/// `x` is a strict prefix of some code.
pub fn in_r(x: &[u8]) -> bool {
    codes_long_enough(x.len()).any(|c| c.len() > x.len() && c.starts_with(x))
}

/// `x` is a strict infix (both sides non-empty) of some code.
pub fn in_f(x: &[u8]) -> bool {
    codes_long_enough(x.len()).any(|c| {
        c.len() >= x.len() + 2 && (1..=c.len() - x.len() - 1).any(|i| &c[i..i + x.len()] == x)
    })
}

/// `x` is the code of a symbol.
pub fn decode_code(x: &[u8]) -> Option<RankedSymbol> {
    if x.len() < 4 || x.len() % 2 == 1 {
        return None;
    }
    let sym = RankedSymbol::new((x.len() as u32 - 2) / 2, x[0]).ok()?;
    (code_bits(sym) == x).then_some(sym)
}

fn factorizations(x: &[u8], prefix: &mut Vec<RankedSymbol>, out: &mut Vec<Vec<RankedSymbol>>) {
    if x.is_empty() {
        out.push(prefix.clone());
        return;
    }
    for cut in 1..=x.len() {
        if let Some(sym) = decode_code(&x[..cut]) {
            prefix.push(sym);
            factorizations(&x[cut..], prefix, out);
            prefix.pop();
        }
    }
}

/// Every parse of `a`: all splits `a = ℓ c r` with `ℓ` a strict code suffix,
/// `r` a strict code prefix and `c` any factorization into codes.
pub fn parses_naive(a: &[u8]) -> Vec<Parse> {
    let mut out = Vec::new();
    for i in 0..=a.len() {
        if !in_l(&a[..i]) {
            continue;
        }
        for j in i..=a.len() {
            if !in_r(&a[j..]) {
                continue;
            }
            let mut centers = Vec::new();
            factorizations(&a[i..j], &mut Vec::new(), &mut centers);
            for c in centers {
                out.push(Parse {
                    left: BinaryWord::new(a[..i].to_vec()).unwrap(),
                    center: RankedWord::new(c),
                    right: BinaryWord::new(a[j..].to_vec()).unwrap(),
                });
            }
        }
    }
    out.sort();
    out
}

/// Parikh vector of `w` over the letters `0..k`.
fn counts(w: &[u8], k: usize) -> Vec<usize> {
    let mut c = vec![0; k];
    for &x in w {
        c[x as usize] += 1;
    }
    c
}

fn compositions(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for first in 1..=total.saturating_sub(parts - 1) {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// First abelian occurrence of `Z_n` in `w`, found by trying every
/// factorization of every infix into `2^n - 1` non-empty blocks. Returns
/// `(j, λ)` minimal in (offset, width, λ lexicographic) order.
pub fn abelian_encounter_naive(w: &[u8], n: u32) -> Option<(usize, Vec<usize>)> {
    let k = w.iter().copied().max().map_or(1, |m| m as usize + 1);
    // variable of each block of Z_n
    let vars: Vec<usize> = (1..1usize << n).map(|p| p.trailing_zeros() as usize).collect();
    for j in 0..w.len() {
        for end in j + vars.len()..=w.len() {
            let mut found: Vec<Vec<usize>> = Vec::new();
            let mut comps = Vec::new();
            compositions(end - j, vars.len(), &mut Vec::new(), &mut comps);
            for comp in comps {
                let mut blocks = Vec::with_capacity(comp.len());
                let mut pos = j;
                for len in &comp {
                    blocks.push(counts(&w[pos..pos + len], k));
                    pos += len;
                }
                let mut first: Vec<Option<usize>> = vec![None; n as usize];
                let ok = vars.iter().enumerate().all(|(b, &v)| match first[v] {
                    None => {
                        first[v] = Some(b);
                        true
                    }
                    Some(f) => blocks[f] == blocks[b],
                });
                if ok {
                    found.push((0..n as usize).map(|v| comp[first[v].unwrap()]).collect());
                }
            }
            if let Some(best) = found.into_iter().min() {
                return Some((j, best));
            }
        }
    }
    None
}
