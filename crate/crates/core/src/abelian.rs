//! Abelian equivalence, abelian occurrences of Zimin patterns, `g(n, k)`, and
//! the probability bounds behind its lower bound.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::search::{longest_avoiding_with, Checkpoint, EncounterChecker, FValue, SearchCertificate, SearchOptions};
use crate::words::capped_pow;

/// Letter counts of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParikhVector<T: Ord> {
    counts: BTreeMap<T, usize>,
}

impl<T: Ord + Clone> ParikhVector<T> {
    pub fn of(w: &[T]) -> Self {
        let mut counts = BTreeMap::new();
        for x in w {
            *counts.entry(x.clone()).or_insert(0) += 1;
        }
        ParikhVector { counts }
    }

    pub fn count(&self, letter: &T) -> usize {
        self.counts.get(letter).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn counts(&self) -> &BTreeMap<T, usize> {
        &self.counts
    }
}

pub fn parikh<T: Ord + Clone>(w: &[T]) -> ParikhVector<T> {
    ParikhVector::of(w)
}

/// `u ≡ v`: same letter counts.
pub fn abelian_equiv<T: Ord + Clone>(u: &[T], v: &[T]) -> bool {
    u.len() == v.len() && parikh(u) == parikh(v)
}

/// Block lengths `λ(x_1), ..., λ(x_n)` of an abelian occurrence of `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AbelianAssignment {
    lambda: Vec<usize>,
}

impl AbelianAssignment {
    pub fn new(lambda: Vec<usize>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if lambda.contains(&0) {
            return Err(Error::InvalidArgument("block lengths must be positive".into()));
        }
        if lambda.len() > 24 {
            return Err(Error::resource("pattern order", lambda.len(), 24));
        }
        Ok(AbelianAssignment { lambda })
    }

    /// The pattern order `n`.
    pub fn n(&self) -> u32 {
        self.lambda.len() as u32
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    /// `Σ_i 2^{n-i} λ(x_i)`.
    pub fn width(&self) -> usize {
        let n = self.lambda.len();
        self.lambda.iter().enumerate().map(|(i, &l)| l << (n - 1 - i)).sum()
    }

    /// Lengths of the `2^n - 1` blocks, in pattern order.
    pub fn block_lengths(&self) -> Vec<usize> {
        zimin_variables(self.n()).into_iter().map(|v| self.lambda[v]).collect()
    }
}

/// 0-based variable of each position of `Z_n`.
fn zimin_variables(n: u32) -> Vec<usize> {
    (1..1usize << n).map(|p| p.trailing_zeros() as usize).collect()
}

/// Prefix letter counts over a dense alphabet `0..k`.
#[derive(Debug, Clone)]
struct PrefixCounts {
    k: usize,
    /// Row `i` holds the counts of the first `i` letters.
    rows: Vec<u32>,
}

impl PrefixCounts {
    fn new(k: usize) -> Self {
        PrefixCounts { k, rows: vec![0; k] }
    }

    fn of(w: &[usize], k: usize) -> Self {
        let mut pc = PrefixCounts::new(k);
        for &x in w {
            pc.push(x);
        }
        pc
    }

    fn push(&mut self, letter: usize) {
        let start = self.rows.len() - self.k;
        self.rows.extend_from_within(start..);
        let last = self.rows.len() - self.k;
        self.rows[last + letter] += 1;
    }

    fn pop(&mut self) {
        self.rows.truncate(self.rows.len() - self.k);
    }

    fn len(&self) -> usize {
        self.rows.len() / self.k - 1
    }

    fn equal_blocks(&self, a: usize, b: usize, len: usize) -> bool {
        let k = self.k;
        (0..k).all(|c| {
            self.rows[(a + len) * k + c] - self.rows[a * k + c] == self.rows[(b + len) * k + c] - self.rows[b * k + c]
        })
    }

    /// Is `(j, λ)` an abelian occurrence? Caller guarantees it fits.
    fn occurrence(&self, j: usize, lambda: &[usize], vars: &[usize]) -> bool {
        let mut first = [usize::MAX; 32];
        let mut pos = j;
        for &v in vars {
            let len = lambda[v];
            if first[v] == usize::MAX {
                first[v] = pos;
            } else if !self.equal_blocks(first[v], pos, len) {
                return false;
            }
            pos += len;
        }
        true
    }
}

/// Calls `f` on every λ of the given width in lexicographic order until it
/// returns `true`; reports whether it did.
fn for_each_lambda(n: usize, width: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(i: usize, n: usize, rest: usize, lambda: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        let coeff = 1usize << (n - 1 - i);
        if i == n - 1 {
            if rest == 0 {
                return false;
            }
            lambda.push(rest);
            let stop = f(lambda);
            lambda.pop();
            return stop;
        }
        // every later variable needs at least one letter per copy
        let reserve = (1usize << (n - 1 - i)) - 1;
        let mut l = 1;
        while coeff * l + reserve <= rest {
            lambda.push(l);
            if go(i + 1, n, rest - coeff * l, lambda, f) {
                return true;
            }
            lambda.pop();
            l += 1;
        }
        false
    }
    go(0, n, width, &mut Vec::with_capacity(n), f)
}

fn dense<T: Ord + Clone>(w: &[T]) -> (Vec<usize>, usize) {
    let mut letters: Vec<T> = w.to_vec();
    letters.sort();
    letters.dedup();
    let idx = w.iter().map(|x| letters.binary_search(x).unwrap()).collect();
    (idx, letters.len().max(1))
}

/// Whether `w[j .. j + width(a))` splits into blocks following `Z_n` with
/// abelian-equivalent blocks for equal variables.
pub fn abelian_occurrence<T: Ord + Clone>(w: &[T], j: usize, a: &AbelianAssignment) -> Result<bool> {
    let width = a.width();
    if j + width > w.len() {
        return Err(Error::InvalidArgument(format!(
            "occurrence at {j} of width {width} does not fit a word of length {}",
            w.len()
        )));
    }
    let (idx, k) = dense(&w[j..j + width]);
    let pc = PrefixCounts::of(&idx, k);
    Ok(pc.occurrence(0, &a.lambda, &zimin_variables(a.n())))
}

/// First abelian occurrence of `Z_n` in `w`, by offset, then width, then
/// λ in lexicographic order.
pub fn encounters_abelian_zimin<T: Ord + Clone>(w: &[T], n: u32) -> Result<Option<(usize, AbelianAssignment)>> {
    if n == 0 {
        return Err(Error::EmptyPattern);
    }
    if n > 24 {
        return Err(Error::resource("pattern order", n, 24));
    }
    let (idx, k) = dense(w);
    let pc = PrefixCounts::of(&idx, k);
    let vars = zimin_variables(n);
    let min_width = vars.len();
    for j in 0..w.len() {
        for width in min_width..=w.len() - j {
            let mut found = None;
            for_each_lambda(n as usize, width, &mut |lambda| {
                if pc.occurrence(j, lambda, &vars) {
                    found = Some(lambda.to_vec());
                    true
                } else {
                    false
                }
            });
            if let Some(lambda) = found {
                return Ok(Some((j, AbelianAssignment { lambda })));
            }
        }
    }
    Ok(None)
}

/// Tracks abelian avoidance of `Z_n`; only occurrences ending at the newest
/// letter are checked.
#[derive(Debug, Clone)]
pub struct AbelianChecker {
    n: usize,
    vars: Vec<usize>,
    counts: PrefixCounts,
}

impl AbelianChecker {
    pub fn new(n: u32, k: u32) -> Self {
        AbelianChecker {
            n: n as usize,
            vars: zimin_variables(n),
            counts: PrefixCounts::new(k as usize),
        }
    }
}

impl EncounterChecker for AbelianChecker {
    fn push(&mut self, letter: u8) -> bool {
        self.counts.push(letter as usize);
        let len = self.counts.len();
        for width in self.vars.len()..=len {
            let j = len - width;
            let pc = &self.counts;
            let vars = &self.vars;
            if for_each_lambda(self.n, width, &mut |lambda| pc.occurrence(j, lambda, vars)) {
                return false;
            }
        }
        true
    }

    fn pop(&mut self) {
        self.counts.pop();
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > 24 {
        return Err(Error::InvalidArgument("pattern order n must be in 1..=24".into()));
    }
    Ok(())
}

/// Longest word over `[k]` avoiding `Z_n` in the abelian sense.
pub fn longest_abelian_avoiding(n: u32, k: u32, opts: &SearchOptions) -> Result<SearchCertificate> {
    Ok(longest_abelian_avoiding_resumable(n, k, opts, None)?.0)
}

pub fn longest_abelian_avoiding_resumable(
    n: u32,
    k: u32,
    opts: &SearchOptions,
    resume: Option<&Checkpoint>,
) -> Result<(SearchCertificate, Option<Checkpoint>)> {
    check_n(n)?;
    longest_avoiding_with("abelian", n, k, AbelianChecker::new(n, k), opts, resume)
}

/// `g(n, k)`, exact when the search finishes.
pub fn g_value(n: u32, k: u32, opts: &SearchOptions) -> Result<(FValue, SearchCertificate)> {
    let cert = longest_abelian_avoiding(n, k, opts)?;
    Ok((FValue::from_certificate(&cert), cert))
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument("alphabet size must be at least 2".into()));
    }
    Ok(())
}

fn pow(base: u64, exp: u64, what: &'static str) -> Result<BigUint> {
    capped_pow(&BigUint::from(base), &BigUint::from(exp), Limits::default().max_digits, what)
}

/// `k^{⌊2^n/(n+2)⌋ - 1}`; `g(n, k)` is strictly larger. Defined for `n >= 2`.
pub fn g_lower_bound(n: u32, k: u32) -> Result<BigUint> {
    check_k(k)?;
    if !(2..=60).contains(&n) {
        return Err(Error::InvalidArgument("the lower bound formula needs 2 <= n <= 60".into()));
    }
    let exp = (1u64 << n) / (u64::from(n) + 2) - 1;
    pow(u64::from(k), exp, "abelian lower bound")
}

/// `2^{(4k)^n (n-1)!}`.
pub fn g_upper_bound(n: u32, k: u32) -> Result<BigUint> {
    check_k(k)?;
    check_n(n)?;
    let mut exp = pow(4 * u64::from(k), u64::from(n), "abelian upper bound exponent")?;
    for m in 1..u64::from(n) {
        exp *= m;
    }
    capped_pow(&BigUint::from(2u32), &exp, Limits::default().max_digits, "abelian upper bound")
}

/// `g(1, k) = 1` chained through `g(m+1, k) <= (g(m, k) + 1)(g(m, k)^{km} + 1)`.
pub fn g_upper_recurrence(n: u32, k: u32) -> Result<BigUint> {
    check_k(k)?;
    check_n(n)?;
    let max_digits = Limits::default().max_digits;
    let mut g = BigUint::one();
    for m in 1..n {
        let p = capped_pow(&g, &BigUint::from(u64::from(k) * u64::from(m)), max_digits, "abelian recurrence")?;
        g = (&g + 1u32) * (p + 1u32);
    }
    Ok(g)
}

const MAX_ORACLE_CASES: u64 = 1 << 22;

fn cases(k: u32, len: u64, what: &'static str) -> Result<u64> {
    u32::try_from(len)
        .ok()
        .and_then(|l| u64::from(k).checked_pow(l))
        .filter(|&c| c <= MAX_ORACLE_CASES)
        .ok_or_else(|| Error::resource(what, format!("{k}^{len}"), MAX_ORACLE_CASES))
}

fn unrank(mut code: u64, k: u32, out: &mut [usize]) {
    for x in out.iter_mut().rev() {
        *x = (code % u64::from(k)) as usize;
        code /= u64::from(k);
    }
}

/// Probability that `m` uniform words of length `h` over `[k]` are pairwise
/// abelian equivalent, by enumerating all `k^{hm}` tuples.
pub fn claim1_oracle(k: u32, h: usize, m: usize) -> Result<BigRational> {
    check_k(k)?;
    if h == 0 || m == 0 {
        return Err(Error::InvalidArgument("word length and count must be positive".into()));
    }
    let total = cases(k, (h * m) as u64, "tuples to enumerate")?;
    let mut buf = vec![0usize; h * m];
    let mut hits = 0u64;
    for code in 0..total {
        unrank(code, k, &mut buf);
        let pc = PrefixCounts::of(&buf, k as usize);
        if (1..m).all(|i| pc.equal_blocks(0, i * h, h)) {
            hits += 1;
        }
    }
    Ok(BigRational::new(hits.into(), total.into()))
}

/// `(1/k)^{m-1}`.
pub fn claim1_bound(k: u32, m: usize) -> Result<BigRational> {
    check_k(k)?;
    let d = pow(u64::from(k), m.saturating_sub(1) as u64, "claim bound")?;
    Ok(BigRational::new(BigUint::one().into(), d.into()))
}

/// Probability that `(0, λ)` is an abelian occurrence of `Z_n` in a uniform
/// word of length `width(λ)`, by enumerating all such words.
pub fn claim2_oracle(k: u32, a: &AbelianAssignment) -> Result<BigRational> {
    check_k(k)?;
    let width = a.width();
    let total = cases(k, width as u64, "words to enumerate")?;
    let vars = zimin_variables(a.n());
    let mut buf = vec![0usize; width];
    let mut hits = 0u64;
    for code in 0..total {
        unrank(code, k, &mut buf);
        if PrefixCounts::of(&buf, k as usize).occurrence(0, &a.lambda, &vars) {
            hits += 1;
        }
    }
    Ok(BigRational::new(hits.into(), total.into()))
}

/// `k^{n - 2^n + 1}`.
pub fn claim2_bound(n: u32, k: u32) -> Result<BigRational> {
    check_k(k)?;
    check_n(n)?;
    let d = pow(u64::from(k), (1u64 << n) - u64::from(n) - 1, "claim bound")?;
    Ok(BigRational::new(BigUint::one().into(), d.into()))
}

/// `ℓ^{n+2} / k^{2^n - n - 1}`, an upper bound on the expected number of
/// abelian occurrences of `Z_n` in a uniform word of length `ℓ`.
pub fn delta_upper_bound(n: u32, k: u32, l: u64) -> Result<BigRational> {
    check_k(k)?;
    check_n(n)?;
    let num = pow(l, u64::from(n) + 2, "expected-occurrence bound")?;
    let den = pow(u64::from(k), (1u64 << n) - u64::from(n) - 1, "expected-occurrence bound")?;
    Ok(BigRational::new(num.into(), den.into()))
}

/// Smallest `ℓ >= 1` with `delta_upper_bound(n, k, ℓ) >= 1`.
pub fn delta_threshold(n: u32, k: u32) -> Result<u64> {
    check_k(k)?;
    check_n(n)?;
    let den = pow(u64::from(k), (1u64 << n) - u64::from(n) - 1, "expected-occurrence bound")?;
    let e = n + 2;
    // binary search on ℓ^{n+2} >= den
    let (mut lo, mut hi) = (1u64, 1u64);
    while BigUint::from(hi).pow(e) < den {
        hi = hi.checked_mul(2).ok_or_else(|| Error::resource("threshold", "overflow", u64::MAX))?;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if BigUint::from(mid).pow(e) >= den {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::abelian_encounter_naive;
    use crate::search::{longest_avoiding, Budget};
    use crate::zimin::{encounters, zimin_pattern};

    fn lam(v: &[usize]) -> AbelianAssignment {
        AbelianAssignment::new(v.to_vec()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn binary_words(max_len: usize) -> impl Iterator<Item = Vec<u8>> {
        (0..=max_len).flat_map(|len| (0u32..(1 << len)).map(move |m| (0..len).map(|i| ((m >> i) & 1) as u8).collect()))
    }

    #[test]
    fn equivalence() {
        assert!(abelian_equiv(b"ab", b"ba"));
        assert!(!abelian_equiv(b"aab", b"abb"));
        assert!(abelian_equiv::<u8>(b"", b""));
        assert_eq!(parikh(b"banana").count(&b'a'), 3);
        assert_eq!(parikh(b"banana").total(), 6);
    }

    #[test]
    fn assignments() {
        assert_eq!(lam(&[2, 1]).width(), 5);
        assert_eq!(lam(&[1, 1, 1]).width(), 7);
        assert_eq!(lam(&[1, 2, 3]).block_lengths(), vec![1, 2, 1, 3, 1, 2, 1]);
        assert!(AbelianAssignment::new(vec![1, 0]).is_err());
        assert!(AbelianAssignment::new(vec![]).is_err());
    }

    #[test]
    fn occurrences() {
        assert!(abelian_occurrence(b"abcba", 0, &lam(&[2, 1])).unwrap());
        assert!(!abelian_occurrence(b"abcde", 0, &lam(&[2, 1])).unwrap());
        assert!(abelian_occurrence(b"aba", 0, &lam(&[1, 1])).unwrap());
        assert!(abelian_occurrence(b"aba", 1, &lam(&[1, 1])).is_err());
        let (j, a) = encounters_abelian_zimin(b"abcba", 2).unwrap().unwrap();
        assert_eq!((j, a.lambda()), (0, &[1, 3][..]));
        assert_eq!(encounters_abelian_zimin(b"ab", 2).unwrap(), None);
        assert!(encounters_abelian_zimin(b"ab", 0).is_err());
    }

    #[test]
    fn agrees_with_naive_factorization() {
        for w in binary_words(10) {
            let fast = encounters_abelian_zimin(&w, 2).unwrap().map(|(j, a)| (j, a.lambda));
            assert_eq!(fast, abelian_encounter_naive(&w, 2), "{w:?}");
        }
    }

    #[test]
    fn exact_encounters_are_abelian() {
        for n in 2..=3 {
            let z = zimin_pattern(n).unwrap();
            for w in binary_words(12) {
                if encounters(&w, &z).unwrap().is_some() {
                    assert!(encounters_abelian_zimin(&w, n).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn checker_matches_offline_test() {
        for w in binary_words(11) {
            let mut c = AbelianChecker::new(2, 2);
            let mut avoided = true;
            for &a in &w {
                avoided = c.push(a);
                if !avoided {
                    break;
                }
            }
            assert_eq!(avoided, encounters_abelian_zimin(&w, 2).unwrap().is_none());
        }
    }

    #[test]
    fn small_g_values() {
        let opts = SearchOptions::serial(Budget::unlimited());
        for k in 2..=4 {
            assert_eq!(g_value(1, k, &opts).unwrap().0, FValue::Exact { value: 1 });
        }
        for k in 2..=3 {
            let g = g_value(2, k, &opts).unwrap().0.exact().unwrap();
            let f = longest_avoiding(2, k, &opts).unwrap().max_avoiding_length + 1;
            assert!(g <= f);
            assert!(BigUint::from(g) > g_lower_bound(2, k).unwrap());
        }
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(g_lower_bound(3, 2).unwrap(), 1u32.into());
        assert_eq!(g_lower_bound(4, 2).unwrap(), 2u32.into());
        assert_eq!(g_lower_bound(3, 10).unwrap(), 1u32.into());
        assert!(g_lower_bound(1, 2).is_err());
        assert_eq!(g_upper_bound(1, 3).unwrap(), BigUint::one() << 12);
        assert_eq!(g_upper_recurrence(1, 5).unwrap(), 1u32.into());
        assert_eq!(g_upper_recurrence(2, 7).unwrap(), 4u32.into());
        assert_eq!(g_upper_recurrence(3, 2).unwrap(), 1285u32.into());
        assert!(g_upper_recurrence(2, 2).unwrap() <= g_upper_bound(2, 2).unwrap());
        assert_eq!(g_upper_bound(2, 2).unwrap(), BigUint::one() << 64);
        assert!(g_upper_bound(5, 5).unwrap_err().is_resource());
    }

    #[test]
    fn claim_oracles() {
        assert_eq!(claim1_oracle(2, 1, 2).unwrap(), q(1, 2));
        assert_eq!(claim1_oracle(2, 2, 2).unwrap(), q(3, 8));
        assert_eq!(claim1_oracle(3, 1, 3).unwrap(), q(1, 9));
        assert_eq!(claim1_bound(3, 3).unwrap(), q(1, 9));
        assert_eq!(claim2_oracle(2, &lam(&[1, 1])).unwrap(), q(1, 2));
        assert!(claim2_oracle(2, &lam(&[2, 1])).unwrap() <= q(1, 2));
        assert_eq!(claim2_oracle(5, &lam(&[1])).unwrap(), q(1, 1));
        assert_eq!(claim2_bound(1, 5).unwrap(), q(1, 1));
        assert_eq!(claim2_bound(2, 2).unwrap(), q(1, 2));
        assert!(claim1_oracle(2, 12, 2).unwrap_err().is_resource());
    }

    #[test]
    fn expected_occurrence_bound() {
        assert_eq!(delta_upper_bound(2, 2, 3).unwrap(), q(81, 2));
        assert_eq!(delta_upper_bound(3, 2, 10).unwrap(), q(100_000, 16));
        assert_eq!(delta_threshold(3, 2).unwrap(), 2);
        for n in 1..=4 {
            for k in 2..=4 {
                let t = delta_threshold(n, k).unwrap();
                assert!(delta_upper_bound(n, k, t).unwrap() >= BigRational::one());
                assert!(t == 1 || delta_upper_bound(n, k, t - 1).unwrap() < BigRational::one());
                let fm = crate::search::first_moment_threshold(n, k).unwrap();
                assert!(BigUint::from(t) <= fm);
            }
        }
    }
}
