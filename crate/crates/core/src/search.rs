//! Exhaustive search for long words avoiding a pattern, plus the first-moment
//! quantities for random words.
//!
//! Words over `[k]` are written with the letters `0-9a-z`, so `k <= 36`.
//! Avoidance is closed under taking prefixes, so the avoiding words form a
//! tree and a depth-first walk in ascending letter order visits them in
//! lexicographic order. The first word reaching a new maximal length is
//! therefore the lexicographically smallest one of that length.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::counters::{counter_length, counter_with, CounterId};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::par::Exec;
use crate::psi::psi;
use crate::words::{capped_pow, tau};
use crate::zimin::{matches, zimin_index_unchecked, zimin_index_with, zimin_pattern, TypeRow};

pub const MAX_ALPHABET: u32 = 36;
const CHECKPOINT_VERSION: u32 = 1;

pub fn letter_char(a: u8) -> char {
    char::from_digit(a as u32, MAX_ALPHABET).expect("letter below 36")
}

pub fn word_string(w: &[u8]) -> String {
    w.iter().map(|&a| letter_char(a)).collect()
}

pub fn parse_word(s: &str, k: u32) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c.to_digit(MAX_ALPHABET) {
            Some(d) if d < k => Ok(d as u8),
            _ => Err(Error::syntax("word", s, format!("letter {c:?} is outside [{k}]"))),
        })
        .collect()
}

/// Incremental pattern-encounter test driven by the search.
pub trait EncounterChecker: Clone + Send + Sync {
    /// Appends a letter; returns `true` if the extended word still avoids.
    /// The letter is kept either way and must be removed with [`pop`].
    ///
    /// [`pop`]: EncounterChecker::pop
    fn push(&mut self, letter: u8) -> bool;
    fn pop(&mut self);
}

/// Tracks avoidance of `Z_n`.
///
/// Any new encounter after appending a letter ends at that letter, so only
/// suffixes need checking. One incremental row of prefix types is kept per
/// start offset, which makes the Zimin types of all suffixes available in
/// amortized time linear in the word length.
#[derive(Debug, Clone)]
pub struct ZiminChecker {
    n: u32,
    word: Vec<u8>,
    rows: Vec<TypeRow>,
    recompute: bool,
}

impl ZiminChecker {
    pub fn new(n: u32) -> Self {
        ZiminChecker {
            n,
            word: Vec::new(),
            rows: Vec::new(),
            recompute: false,
        }
    }

    /// Recomputes the full Zimin index at every node instead.
    pub fn recomputing(n: u32) -> Self {
        ZiminChecker {
            recompute: true,
            ..ZiminChecker::new(n)
        }
    }
}

impl EncounterChecker for ZiminChecker {
    fn push(&mut self, letter: u8) -> bool {
        self.word.push(letter);
        if self.recompute {
            return zimin_index_unchecked(&self.word) < self.n;
        }
        self.rows.push(TypeRow::new());
        let len = self.word.len();
        let mut avoids = true;
        for (s, row) in self.rows.iter_mut().enumerate() {
            if u32::from(row.push(&self.word[s..len])) >= self.n {
                avoids = false;
            }
        }
        avoids
    }

    fn pop(&mut self) {
        self.word.pop();
        if !self.recompute {
            self.rows.pop();
            for row in &mut self.rows {
                row.pop();
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(n: u64) -> Self {
        Budget {
            max_nodes: Some(n),
            max_seconds: None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub budget: Budget,
    pub exec: Exec,
    /// Depth at which the tree is cut into parallel tasks.
    pub split_depth: usize,
    /// Use the per-node full recomputation instead of the incremental check.
    pub recompute: bool,
}

impl SearchOptions {
    pub fn serial(budget: Budget) -> Self {
        SearchOptions {
            budget,
            split_depth: DEFAULT_SPLIT_DEPTH,
            ..Default::default()
        }
    }

    pub fn parallel(budget: Budget, threads: usize) -> Self {
        SearchOptions {
            budget,
            exec: Exec::from_threads(threads),
            split_depth: DEFAULT_SPLIT_DEPTH,
            recompute: false,
        }
    }
}

pub const DEFAULT_SPLIT_DEPTH: usize = 8;

/// Result of a longest-avoiding-word search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub n: u32,
    pub k: u32,
    pub max_avoiding_length: usize,
    pub witness: String,
    /// The whole tree was explored, so no avoiding word is longer.
    pub exhausted: bool,
    /// Avoiding words visited, the empty word included.
    pub nodes_explored: u64,
}

/// The smallest length at which every word encounters the pattern, or a
/// strict lower bound on it when the search was cut short.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FValue {
    Exact { value: usize },
    /// The true value is strictly greater than `exceeds`.
    LowerBound { exceeds: usize },
}

impl FValue {
    pub fn from_certificate(c: &SearchCertificate) -> Self {
        if c.exhausted {
            FValue::Exact {
                value: c.max_avoiding_length + 1,
            }
        } else {
            FValue::LowerBound {
                exceeds: c.max_avoiding_length,
            }
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            FValue::Exact { value } => Some(*value),
            FValue::LowerBound { .. } => None,
        }
    }
}

/// Resumable state of a serial search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub kind: String,
    pub n: u32,
    pub k: u32,
    /// The current node: an avoiding word.
    pub path: String,
    /// Next child letter to try below `path`.
    pub next_letter: u32,
    pub best_length: usize,
    pub best_witness: String,
    pub nodes_explored: u64,
    pub finished: bool,
}

struct Deadline {
    start: Instant,
    limit: Option<Duration>,
}

impl Deadline {
    fn new(seconds: Option<f64>) -> Self {
        Deadline {
            start: Instant::now(),
            limit: seconds.map(|s| Duration::from_secs_f64(s.max(0.0))),
        }
    }

    fn passed(&self) -> bool {
        self.limit.is_some_and(|l| self.start.elapsed() >= l)
    }
}

/// Depth-first walk below a fixed root.
struct Dfs<C> {
    checker: C,
    k: u8,
    base: usize,
    path: Vec<u8>,
    next: Vec<u8>,
    best: Vec<u8>,
    /// Nodes visited strictly below the root.
    nodes: u64,
}

impl<C: EncounterChecker> Dfs<C> {
    /// `root` must avoid; the checker is fed its letters.
    fn new(mut checker: C, k: u8, root: &[u8]) -> Self {
        for &a in root {
            let ok = checker.push(a);
            debug_assert!(ok, "search root must avoid the pattern");
        }
        Dfs {
            checker,
            k,
            base: root.len(),
            path: root.to_vec(),
            next: vec![0],
            best: root.to_vec(),
            nodes: 0,
        }
    }

    /// Returns `true` once the subtree is exhausted, `false` when the budget
    /// ran out first (the walk can then be continued).
    fn run(&mut self, max_nodes: Option<u64>, deadline: &Deadline) -> bool {
        let mut ticks: u32 = 0;
        loop {
            let top = self.next.len() - 1;
            if self.next[top] < self.k {
                if max_nodes.is_some_and(|m| self.nodes >= m) {
                    return false;
                }
                ticks = ticks.wrapping_add(1);
                if ticks.is_multiple_of(1024) && deadline.passed() {
                    return false;
                }
                let a = self.next[top];
                self.next[top] += 1;
                if self.checker.push(a) {
                    self.path.push(a);
                    self.nodes += 1;
                    if self.path.len() > self.best.len() {
                        self.best = self.path.clone();
                    }
                    self.next.push(0);
                } else {
                    self.checker.pop();
                }
            } else {
                if self.path.len() == self.base {
                    return true;
                }
                self.next.pop();
                self.path.pop();
                self.checker.pop();
            }
        }
    }
}

fn validate(n: u32, k: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("pattern order n must be at least 1".into()));
    }
    if !(2..=MAX_ALPHABET).contains(&k) {
        return Err(Error::InvalidArgument(format!("alphabet size must be in 2..={MAX_ALPHABET}")));
    }
    Ok(())
}

/// All avoiding words of length exactly `depth` (in lexicographic order),
/// together with the longest avoiding word of length at most `depth` and the
/// number of avoiding words of length `1..=depth`.
fn frontier<C: EncounterChecker>(checker: C, k: u8, depth: usize) -> (Vec<Vec<u8>>, Vec<u8>, u64) {
    let mut out = Vec::new();
    let mut best = Vec::new();
    let mut nodes = 0;
    let mut stack = vec![(Vec::new(), checker)];
    while let Some((word, checker)) = stack.pop() {
        if word.len() > best.len() {
            best = word.clone();
        }
        if word.len() == depth {
            out.push(word);
            continue;
        }
        for a in (0..k).rev() {
            let mut c = checker.clone();
            if c.push(a) {
                nodes += 1;
                let mut w = word.clone();
                w.push(a);
                stack.push((w, c));
            }
        }
    }
    (out, best, nodes)
}

fn search<C: EncounterChecker>(
    kind: &str,
    n: u32,
    k: u32,
    checker: C,
    opts: &SearchOptions,
    resume: Option<&Checkpoint>,
) -> Result<(SearchCertificate, Option<Checkpoint>)> {
    validate(n, k)?;
    let deadline = Deadline::new(opts.budget.max_seconds);
    let k8 = k as u8;
    let certificate = |best: &[u8], exhausted, nodes| SearchCertificate {
        n,
        k,
        max_avoiding_length: best.len(),
        witness: word_string(best),
        exhausted,
        nodes_explored: nodes,
    };

    if opts.exec.is_parallel() && resume.is_none() {
        let (roots, shallow_best, shallow_nodes) = frontier(checker.clone(), k8, opts.split_depth);
        let per_task = opts.budget.max_nodes.map(|m| (m / roots.len().max(1) as u64).max(1));
        let results = opts.exec.map(roots, |root| {
            let mut dfs = Dfs::new(checker.clone(), k8, &root);
            let done = dfs.run(per_task, &deadline);
            (dfs.best, dfs.nodes, done)
        });
        let mut best = shallow_best;
        let mut nodes = 1 + shallow_nodes;
        let mut exhausted = true;
        for (b, c, done) in results {
            // roots arrive in lexicographic order, so only strictly longer words replace the best
            if b.len() > best.len() {
                best = b;
            }
            nodes += c;
            exhausted &= done;
        }
        return Ok((certificate(&best, exhausted, nodes), None));
    }

    let mut dfs = Dfs::new(checker, k8, &[]);
    let mut nodes_before = 1;
    if let Some(cp) = resume {
        if cp.version != CHECKPOINT_VERSION || cp.kind != kind || cp.n != n || cp.k != k {
            return Err(Error::Checkpoint("checkpoint belongs to a different search".into()));
        }
        let path = parse_word(&cp.path, k).map_err(|e| Error::Checkpoint(e.to_string()))?;
        let best = parse_word(&cp.best_witness, k).map_err(|e| Error::Checkpoint(e.to_string()))?;
        if best.len() != cp.best_length || cp.next_letter > k {
            return Err(Error::Checkpoint("inconsistent checkpoint".into()));
        }
        if cp.finished {
            return Ok((certificate(&best, true, cp.nodes_explored), Some(cp.clone())));
        }
        for &a in &path {
            if !dfs.checker.push(a) {
                return Err(Error::Checkpoint("checkpoint path encounters the pattern".into()));
            }
        }
        dfs.next = path.iter().map(|&a| a + 1).collect();
        dfs.next.push(cp.next_letter as u8);
        dfs.path = path;
        dfs.best = if best.len() >= dfs.path.len() { best } else { dfs.path.clone() };
        nodes_before = cp.nodes_explored;
    }
    let done = dfs.run(opts.budget.max_nodes, &deadline);
    let nodes = nodes_before + dfs.nodes;
    let cp = Checkpoint {
        version: CHECKPOINT_VERSION,
        kind: kind.to_string(),
        n,
        k,
        path: word_string(&dfs.path),
        next_letter: u32::from(*dfs.next.last().unwrap()),
        best_length: dfs.best.len(),
        best_witness: word_string(&dfs.best),
        nodes_explored: nodes,
        finished: done,
    };
    Ok((certificate(&dfs.best, done, nodes), Some(cp)))
}

/// Longest word over `[k]` avoiding `Z_n`.
pub fn longest_avoiding(n: u32, k: u32, opts: &SearchOptions) -> Result<SearchCertificate> {
    Ok(longest_avoiding_resumable(n, k, opts, None)?.0)
}

/// Like [`longest_avoiding`], resuming from and returning a checkpoint.
/// Checkpoints are only produced by serial runs.
pub fn longest_avoiding_resumable(
    n: u32,
    k: u32,
    opts: &SearchOptions,
    resume: Option<&Checkpoint>,
) -> Result<(SearchCertificate, Option<Checkpoint>)> {
    let checker = if opts.recompute {
        ZiminChecker::recomputing(n)
    } else {
        ZiminChecker::new(n)
    };
    search("zimin", n, k, checker, opts, resume)
}

pub(crate) fn longest_avoiding_with<C: EncounterChecker>(
    kind: &str,
    n: u32,
    k: u32,
    checker: C,
    opts: &SearchOptions,
    resume: Option<&Checkpoint>,
) -> Result<(SearchCertificate, Option<Checkpoint>)> {
    search(kind, n, k, checker, opts, resume)
}

pub fn f_value(n: u32, k: u32, opts: &SearchOptions) -> Result<(FValue, SearchCertificate)> {
    let cert = longest_avoiding(n, k, opts)?;
    Ok((FValue::from_certificate(&cert), cert))
}

/// Counter words as avoidance witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterWitnessReport {
    pub n: u32,
    /// Zimin index of `C_0^n`.
    pub zimin_index: u32,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub length: BigUint,
    /// `τ(n-1)`.
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub tau_prev: BigUint,
    /// `C_0^n` avoids `Z_n` and is longer than `τ(n-1)`, so
    /// `f(n, 2n-1) > τ(n-1)`.
    pub certified: bool,
}

/// Checks `C_0^n` over an alphabet of `2n - 1` symbols as an avoidance witness.
pub fn counter_witness_bounds(n: u32) -> Result<CounterWitnessReport> {
    counter_witness_bounds_with(n, &Limits::default())
}

pub fn counter_witness_bounds_with(n: u32, limits: &Limits) -> Result<CounterWitnessReport> {
    let length = counter_length(n)?;
    if length > BigUint::from(limits.max_index_len) {
        return Err(Error::resource("counter length for Zimin index", &length, limits.max_index_len));
    }
    let c = counter_with(&CounterId::new_with(n, 0u32, limits)?, limits)?;
    let zimin_index = zimin_index_with(&c, limits)?;
    let tau_prev = tau(n - 1)?;
    Ok(CounterWitnessReport {
        n,
        zimin_index,
        certified: n >= 1 && zimin_index < n && length > tau_prev,
        length,
        tau_prev,
    })
}

/// Encoded counters as binary avoidance witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinaryWitnessReport {
    pub m: u32,
    pub counters_checked: u64,
    pub max_zimin_index: u32,
    pub min_length: usize,
    #[serde(serialize_with = "crate::serde_big::biguint")]
    pub tau_prev: BigUint,
    /// Every checked `ψ(C_i^m)` has index at most `m + 1` and is longer than
    /// `τ(m-1)`, so each witnesses `f(m + 2, 2) > τ(m-1)`.
    pub certified: bool,
}

/// Checks `ψ(C_i^m)` for the given counter indices.
pub fn binary_witness_bounds(m: u32, indices: &[u64], exec: Exec) -> Result<BinaryWitnessReport> {
    let limits = Limits::default();
    let ids = indices
        .iter()
        .map(|&i| CounterId::new_with(m, i, &limits))
        .collect::<Result<Vec<_>>>()?;
    let words = ids
        .iter()
        .map(|id| counter_with(id, &limits).map(|c| psi(&c)))
        .collect::<Result<Vec<_>>>()?;
    if let Some(w) = words.iter().find(|w| w.len() > limits.max_index_len) {
        return Err(Error::resource("encoded counter length", w.len(), limits.max_index_len));
    }
    let min_length = words.iter().map(|w| w.len()).min().unwrap_or(0);
    let indices = exec.map(words, |w| zimin_index_unchecked(&w));
    let max_zimin_index = indices.iter().copied().max().unwrap_or(0);
    let tau_prev = if m >= 1 { tau(m - 1)? } else { BigUint::one() };
    Ok(BinaryWitnessReport {
        m,
        counters_checked: ids.len() as u64,
        max_zimin_index,
        min_length,
        certified: !ids.is_empty() && max_zimin_index <= m + 1 && BigUint::from(min_length) > tau_prev,
        tau_prev,
    })
}

/// Probability that a uniform word of length `2^n - 1` over `[k]` matches `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchProbability {
    #[serde(serialize_with = "crate::serde_big::rational")]
    pub closed_form: BigRational,
    /// `(matching words, all words)` when the words were enumerated.
    pub enumeration: Option<(u64, u64)>,
}

impl MatchProbability {
    pub fn enumeration_agrees(&self) -> Option<bool> {
        self.enumeration.map(|(hit, total)| {
            BigRational::new(hit.into(), total.into()) == self.closed_form
        })
    }
}

const MAX_MATCH_ENUMERATION: u64 = 1 << 20;

pub fn match_probability(n: u32, k: u32) -> Result<MatchProbability> {
    validate(n, k)?;
    if n > 24 {
        return Err(Error::resource("pattern order", n, 24));
    }
    // k^{n + 1 - 2^n}
    let exp = (1u64 << n) - u64::from(n) - 1;
    let denom = capped_pow(&BigUint::from(k), &BigUint::from(exp), Limits::default().max_digits, "probability denominator")?;
    let closed_form = BigRational::new(1u32.into(), denom.into());
    let len = (1usize << n) - 1;
    let total = u64::from(k).checked_pow(len as u32).filter(|&t| t <= MAX_MATCH_ENUMERATION);
    let enumeration = match total {
        None => None,
        Some(total) => {
            let pattern = zimin_pattern(n)?;
            let mut hits = 0;
            let mut w = vec![0u8; len];
            for code in 0..total {
                let mut c = code;
                for x in w.iter_mut().rev() {
                    *x = (c % u64::from(k)) as u8;
                    c /= u64::from(k);
                }
                if matches(&w, &pattern)?.is_some() {
                    hits += 1;
                }
            }
            Some((hits, total))
        }
    };
    Ok(MatchProbability {
        closed_form,
        enumeration,
    })
}

/// `k^{2^n - n - 1} + 2^n`.
pub fn first_moment_threshold(n: u32, k: u32) -> Result<BigUint> {
    validate(n, k)?;
    if n > 60 {
        return Err(Error::resource("pattern order", n, 60));
    }
    let exp = (1u64 << n) - u64::from(n) - 1;
    let pow = capped_pow(&BigUint::from(k), &BigUint::from(exp), Limits::default().max_digits, "first-moment threshold")?;
    Ok(pow + (BigUint::one() << n))
}

/// Converts a small rational to `f64` for display.
pub fn approx(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zimin::zimin_index;

    fn serial() -> SearchOptions {
        SearchOptions::serial(Budget::unlimited())
    }

    #[test]
    fn small_f_values() {
        for k in 2..=5 {
            let (f, cert) = f_value(1, k, &serial()).unwrap();
            assert_eq!(f, FValue::Exact { value: 1 });
            assert_eq!(cert.witness, "");
            let (f, cert) = f_value(2, k, &serial()).unwrap();
            assert_eq!(f.exact(), Some(2 * k as usize + 1));
            assert_eq!(cert.max_avoiding_length, 2 * k as usize);
        }
        let cert = longest_avoiding(2, 2, &serial()).unwrap();
        assert_eq!(cert.witness, "0011");
    }

    #[test]
    fn incremental_check_matches_recomputation() {
        // every binary word up to length 14, checked letter by letter
        for n in 1..=4 {
            for len in 1..=14usize {
                for mask in 0u32..(1 << len) {
                    let w: Vec<u8> = (0..len).map(|i| ((mask >> (len - 1 - i)) & 1) as u8).collect();
                    let mut c = ZiminChecker::new(n);
                    let mut avoided = true;
                    for &a in &w {
                        avoided = c.push(a);
                        if !avoided {
                            break;
                        }
                    }
                    if avoided {
                        assert!(zimin_index(&w).unwrap() < n);
                    } else {
                        // the first failing prefix is the first that encounters
                        let cut = c.word.len();
                        assert!(zimin_index(&w[..cut]).unwrap() >= n);
                        assert!(zimin_index(&w[..cut - 1]).unwrap() < n);
                    }
                }
            }
        }
    }

    #[test]
    fn recompute_mode_agrees() {
        let mut opts = serial();
        let fast = longest_avoiding(2, 3, &opts).unwrap();
        opts.recompute = true;
        assert_eq!(longest_avoiding(2, 3, &opts).unwrap(), fast);
    }

    #[test]
    fn parallel_agrees_with_serial() {
        let s = longest_avoiding(2, 4, &serial()).unwrap();
        let mut popts = SearchOptions::parallel(Budget::unlimited(), 2);
        popts.split_depth = 3;
        assert_eq!(longest_avoiding(2, 4, &popts).unwrap(), s);
        popts.split_depth = 20;
        assert_eq!(longest_avoiding(2, 4, &popts).unwrap(), s);
    }

    #[test]
    fn budget_and_checkpoints() {
        let full = longest_avoiding(2, 5, &serial()).unwrap();
        let mut cp = None;
        let mut rounds = 0;
        let cert = loop {
            let (cert, next) = longest_avoiding_resumable(2, 5, &SearchOptions::serial(Budget::nodes(7)), cp.as_ref()).unwrap();
            rounds += 1;
            let next = next.unwrap();
            let json = serde_json::to_string(&next).unwrap();
            cp = Some(serde_json::from_str::<Checkpoint>(&json).unwrap());
            if cert.exhausted {
                break cert;
            }
            assert_eq!(FValue::from_certificate(&cert).exact(), None);
        };
        assert!(rounds > 2);
        assert_eq!(cert, full);
        let mut other = cp.unwrap();
        other.n = 3;
        assert!(matches!(
            longest_avoiding_resumable(2, 5, &serial(), Some(&other)),
            Err(Error::Checkpoint(_))
        ));
    }

    #[test]
    fn large_instances_only_give_lower_bounds() {
        let (f, cert) = f_value(4, 2, &SearchOptions::serial(Budget::nodes(2000))).unwrap();
        assert!(!cert.exhausted);
        assert_eq!(f, FValue::LowerBound { exceeds: cert.max_avoiding_length });
        let w = parse_word(&cert.witness, 2).unwrap();
        assert!(zimin_index(&w).unwrap() < 4);
    }

    #[test]
    fn argument_checks() {
        assert!(longest_avoiding(0, 2, &serial()).is_err());
        assert!(longest_avoiding(2, 1, &serial()).is_err());
        assert!(longest_avoiding(2, 37, &serial()).is_err());
        assert!(parse_word("012", 2).is_err());
    }

    #[test]
    fn counter_witnesses() {
        let r = counter_witness_bounds(3).unwrap();
        assert_eq!((r.zimin_index, r.length.clone(), r.tau_prev.clone()), (2, 20u32.into(), 4u32.into()));
        assert!(r.certified);
        let r = counter_witness_bounds(4).unwrap();
        assert_eq!((r.zimin_index, r.length.clone(), r.tau_prev.clone()), (3, 336u32.into(), 16u32.into()));
        assert!(r.certified);
        assert!(counter_witness_bounds(5).unwrap_err().is_resource());
        let b = binary_witness_bounds(2, &[0, 1, 2, 3], Exec::Serial).unwrap();
        assert!(b.certified && b.max_zimin_index <= 3);
        assert_eq!(b.min_length, 20);
    }

    #[test]
    fn probabilities() {
        let p = match_probability(2, 2).unwrap();
        assert_eq!(p.closed_form, BigRational::new(1.into(), 2.into()));
        assert_eq!(p.enumeration, Some((4, 8)));
        let p = match_probability(3, 2).unwrap();
        assert_eq!(p.enumeration, Some((8, 128)));
        assert_eq!(p.enumeration_agrees(), Some(true));
        assert_eq!(match_probability(1, 7).unwrap().closed_form, BigRational::one());
        assert_eq!(first_moment_threshold(2, 2).unwrap(), 6u32.into());
        assert_eq!(first_moment_threshold(3, 2).unwrap(), 24u32.into());
        assert_eq!(first_moment_threshold(2, 3).unwrap(), 7u32.into());
    }
}
