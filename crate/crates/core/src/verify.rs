//! Property suites: each check recomputes a known fact and reports PASS/FAIL
//! with enough detail to diagnose a failure.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::abelian::{
    claim1_bound, claim1_oracle, claim2_bound, claim2_oracle, delta_upper_bound, encounters_abelian_zimin,
    g_lower_bound, g_upper_bound, g_upper_recurrence, g_value, AbelianAssignment,
};
use crate::counters::{counter, decode_counter, CounterId};
use crate::error::{Error, Result};
use crate::oracle::{parses_naive, zimin_index_naive, zimin_type_naive};
use crate::par;
use crate::psi::{
    code_bits, coded_offset, context_of, encoded_counter, is_simple, language_dfas, parse_occurrences, parses, psi,
    restricted_words, BINARY, SIMPLE_RUN,
};
use crate::regular::{Dfa, Equivalence, Regex};
use crate::search::{
    binary_witness_bounds, counter_witness_bounds, f_value, match_probability, word_string, Budget, FValue,
    SearchOptions,
};
use crate::words::{occurrences, tau, RankedSymbol};
use crate::zimin::{zimin_index_unchecked, zimin_type};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl PropertyResult {
    pub fn new(name: impl Into<String>, passed: bool, detail: Value) -> Self {
        PropertyResult {
            name: name.into(),
            passed,
            detail,
        }
    }

    fn from_result(name: &str, r: Result<PropertyResult>) -> Self {
        r.unwrap_or_else(|e| PropertyResult::new(name, false, json!({ "error": e.to_string() })))
    }
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)
    }
}

/// `Small` finishes in well under a minute; `Full` adds `f(3,2)` and every
/// order-4 counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Small,
    Full,
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scale> {
        match s {
            "small" => Ok(Scale::Small),
            "full" => Ok(Scale::Full),
            _ => Err(Error::InvalidArgument(format!("unknown scale {s:?}, expected small or full"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub scale: Scale,
    pub passed: bool,
    pub results: Vec<PropertyResult>,
}

fn bits_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
}

// ---------------------------------------------------------------- counters

/// Expected `zimin_index(C_i^n)`.
pub fn expected_counter_index(n: u32, i: u64) -> u32 {
    match n {
        1 => 1,
        2 => [2, 1, 1, 2][i as usize % 4],
        3 => 2,
        _ => n - 1,
    }
}

struct CounterCheck {
    index: u32,
    decodes: bool,
    unique_subs: bool,
    order_from_position: bool,
}

fn orders_determined_by_distance(orders: &[u32], n: u32) -> bool {
    let len = orders.len();
    let mut seen: Vec<u32> = vec![0; 2 * len + 1];
    for (q, _) in orders.iter().enumerate().filter(|(_, &o)| o == n) {
        for (p, &o) in orders.iter().enumerate() {
            let d = len + q - p;
            if seen[d] == 0 {
                seen[d] = o;
            } else if seen[d] != o {
                return false;
            }
        }
    }
    true
}

fn check_counter(n: u32, i: u64, subs: &[Vec<RankedSymbol>]) -> Result<CounterCheck> {
    let c = counter(&CounterId::new(n, i)?)?.into_symbols();
    let orders: Vec<u32> = c.iter().map(|s| s.order()).collect();
    Ok(CounterCheck {
        index: zimin_index_unchecked(&c),
        decodes: decode_counter(&c, n)? == BigUint::from(i),
        unique_subs: subs.iter().all(|s| occurrences(s, &c).len() == 1),
        order_from_position: orders_determined_by_distance(&orders, n),
    })
}

/// Structure and Zimin-index checks over every counter of order `n <= 4`.
pub fn counter_suite(n: u32) -> Result<Vec<PropertyResult>> {
    if !(1..=4).contains(&n) {
        return Err(Error::InvalidArgument("counter suites cover orders 1 to 4".into()));
    }
    let count: u64 = u64::try_from(tau(n)?).expect("τ(4) fits");
    let subs: Vec<Vec<RankedSymbol>> = if n > 1 {
        (0..u64::try_from(tau(n - 1)?).expect("τ(3) fits"))
            .map(|j| Ok(counter(&CounterId::new(n - 1, j)?)?.into_symbols()))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let ids: Vec<u64> = (0..count).collect();
    let checks = par::map(&ids, |&i| check_counter(n, i, &subs))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let first_bad = |f: &dyn Fn(&CounterCheck) -> bool| checks.iter().position(|c| !f(c));
    let mut out = Vec::new();

    let bad = first_bad(&|c| c.decodes);
    out.push(PropertyResult::new(
        format!("counters n={n}: τ(n) pairwise distinct counters"),
        bad.is_none() && checks.len() as u64 == count,
        json!({ "counters": count, "first_failure": bad }),
    ));
    if n > 1 {
        let bad = first_bad(&|c| c.unique_subs);
        out.push(PropertyResult::new(
            format!("counters n={n}: each order-{} counter occurs exactly once", n - 1),
            bad.is_none(),
            json!({ "sub_counters": subs.len(), "first_failure": bad }),
        ));
        let bad = first_bad(&|c| c.order_from_position);
        out.push(PropertyResult::new(
            format!("counters n={n}: order determined by distance to an order-{n} symbol"),
            bad.is_none(),
            json!({ "first_failure": bad }),
        ));
    }

    let indices: Vec<u32> = checks.iter().map(|c| c.index).collect();
    let mismatch = indices
        .iter()
        .enumerate()
        .find(|&(i, &v)| v != expected_counter_index(n, i as u64));
    let distinct: BTreeSet<u32> = indices.iter().copied().collect();
    out.push(PropertyResult::new(
        format!("counters n={n}: Zimin index table"),
        mismatch.is_none(),
        json!({
            "values": distinct,
            "first_mismatch": mismatch.map(|(i, v)| json!({ "i": i, "index": v, "expected": expected_counter_index(n, i as u64) })),
        }),
    ));
    let zero = indices[0];
    out.push(PropertyResult::new(
        format!("counters n={n}: every index at most that of C_0"),
        indices.iter().all(|&v| v <= zero),
        json!({ "zero_index": zero }),
    ));
    Ok(out)
}

/// `C_0^n` (for `n >= 3`) and the encoded counters as avoidance witnesses.
pub fn witness_suite() -> Vec<PropertyResult> {
    let mut out = Vec::new();
    for n in 3..=4 {
        let name = format!("witness: C_0^{n} avoids Z_{n} over {} letters", 2 * n - 1);
        out.push(PropertyResult::from_result(
            &name,
            counter_witness_bounds(n).map(|r| {
                PropertyResult::new(&name, r.certified, serde_json::to_value(&r).unwrap_or(Value::Null))
            }),
        ));
    }
    for m in 2..=3u32 {
        let name = format!("witness: ψ(C_i^{m}) avoids Z_{}", m + 2);
        let all: Vec<u64> = (0..1u64 << (1u32 << (m - 1))).collect();
        out.push(PropertyResult::from_result(
            &name,
            binary_witness_bounds(m, &all, crate::par::Exec::Parallel { threads: 0 }).map(|r| {
                PropertyResult::new(&name, r.certified, serde_json::to_value(&r).unwrap_or(Value::Null))
            }),
        ));
    }
    out
}

// ---------------------------------------------------------------- ψ and C, L, R, F

/// `ψ(a)` is never an infix of `ψ(b)` for distinct symbols of order <= `max_order`.
pub fn infix_code(max_order: u32) -> PropertyResult {
    let codes: Vec<(RankedSymbol, Vec<u8>)> = (1..=max_order)
        .flat_map(|o| [RankedSymbol::zero(o), RankedSymbol::one(o)])
        .map(|s| (s, code_bits(s)))
        .collect();
    let clash = codes.iter().find_map(|(a, ca)| {
        codes
            .iter()
            .find(|(b, cb)| a != b && !occurrences(ca, cb).is_empty())
            .map(|(b, _)| format!("ψ({a}) in ψ({b})"))
    });
    PropertyResult::new(
        format!("ψ: infix code up to order {max_order}"),
        clash.is_none(),
        json!({ "symbols": codes.len(), "clash": clash }),
    )
}

fn lang(re: &str) -> Result<Regex> {
    Regex::parse(re)
}

fn equivalence_detail(e: &Equivalence) -> Value {
    match e {
        Equivalence::Equivalent => json!({ "equivalent": true }),
        Equivalence::Distinguished(w) => json!({ "equivalent": false, "counterexample": w }),
    }
}

/// The identities on `L·R`, and the exact finite set `L·R ∩ F`.
pub fn regular_identities() -> Result<Vec<PropertyResult>> {
    use crate::psi::{C_REGEX, L_REGEX, R_REGEX};
    let langs = language_dfas();
    let lr = Dfa::from_regex(&Regex::concat(vec![lang(L_REGEX)?, lang(R_REGEX)?]), &BINARY)?;
    let lcr = Dfa::from_regex(
        &Regex::concat(vec![lang(L_REGEX)?, lang(C_REGEX)?.star(), lang(R_REGEX)?]),
        &BINARY,
    )?;
    let mut out = Vec::new();

    let lr_c = lr.intersect(&langs.c)?;
    let expected = Dfa::from_regex(&Regex::words(["0000", "1111"]), &BINARY)?;
    let eq = lr_c.equivalent(&expected)?;
    out.push(PropertyResult::new(
        "regular: L·R ∩ C = {0000, 1111}",
        eq.is_equivalent(),
        equivalence_detail(&eq),
    ));

    let lr_f = lr.intersect(&langs.f)?;
    let lcr_f = lcr.intersect(&langs.f)?;
    let eq = lcr_f.equivalent(&lr_f)?;
    out.push(PropertyResult::new(
        "regular: L·C*·R ∩ F = L·R ∩ F",
        eq.is_equivalent(),
        equivalence_detail(&eq),
    ));

    let finite = lr_f.is_finite();
    let words = if finite { lr_f.enumerate_finite(1 << 16)? } else { Vec::new() };
    let has = |w: &str| words.iter().any(|x| x == w);
    out.push(PropertyResult::new(
        "regular: L·R ∩ F is finite and enumerated",
        finite,
        json!({
            "words": words.iter().map(|w| if w.is_empty() { "ε".to_string() } else { w.clone() }).collect::<Vec<_>>(),
            "contains_001": has("001"),
            "contains_100": has("100"),
            "contains_110": has("110"),
        }),
    ));
    Ok(out)
}

/// Words over `{0_1, 1_1, ..., 0_n, 1_n}` of length at most `max_len`.
pub fn ranked_words(n: u32, max_len: usize) -> Vec<Vec<RankedSymbol>> {
    let symbols: Vec<RankedSymbol> = (1..=n).flat_map(|o| [RankedSymbol::zero(o), RankedSymbol::one(o)]).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<RankedSymbol>| {
                symbols.iter().map(move |&s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every infix of `ψ(w)` for `w ∈ Σ_n^{<= max_len}` lies in
/// `F_n ∪ L_n·C_n*·R_n` (restricted to orders at most `n`).
pub fn characterization(n: u32, max_len: usize) -> Result<PropertyResult> {
    let rw = restricted_words(n)?;
    let target = Dfa::from_regex(
        &Regex::union(vec![
            Regex::words(&rw.f),
            Regex::concat(vec![Regex::words(&rw.l), Regex::words(&rw.c).star(), Regex::words(&rw.r)]),
        ]),
        &BINARY,
    )?;
    let mut infixes: HashSet<Vec<u8>> = HashSet::new();
    for w in ranked_words(n, max_len) {
        let a = psi(&w).into_bits();
        for i in 0..=a.len() {
            for j in i..=a.len() {
                infixes.insert(a[i..j].to_vec());
            }
        }
    }
    let mut bad: Vec<String> = infixes
        .iter()
        .filter(|x| !target.accepts_indices(x))
        .map(|x| bits_string(x))
        .collect();
    bad.sort();
    Ok(PropertyResult::new(
        format!("ψ: infixes of coded words over Σ_{n}^≤{max_len} lie in F ∪ L·C*·R"),
        bad.is_empty(),
        json!({ "infixes": infixes.len(), "outside": bad.into_iter().take(5).collect::<Vec<_>>() }),
    ))
}

/// Host words for the parse suites: `Σ_2^{<= 4}` and every order-3 counter.
pub fn parse_hosts() -> Result<Vec<Vec<RankedSymbol>>> {
    let mut hosts = ranked_words(2, 4);
    for i in 0..16u32 {
        hosts.push(counter(&CounterId::new(3, i)?)?.into_symbols());
    }
    Ok(hosts)
}

fn distinct_infixes(a: &[u8]) -> Vec<&[u8]> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..=a.len() {
            if seen.insert(&a[i..j]) {
                out.push(&a[i..j]);
            }
        }
    }
    out
}

/// Non-simple infixes have exactly one parse, and the parser agrees with
/// the all-splits oracle on every infix.
pub fn parse_uniqueness(hosts: &[Vec<RankedSymbol>]) -> Vec<PropertyResult> {
    let mut all: HashSet<Vec<u8>> = HashSet::new();
    for h in hosts {
        let a = psi(h).into_bits();
        for x in distinct_infixes(&a) {
            all.insert(x.to_vec());
        }
    }
    let mut all: Vec<Vec<u8>> = all.into_iter().collect();
    all.sort();
    // (non-simple, parse count, agrees with the oracle)
    let rows = par::map(&all, |x| {
        let mut fast = parses(x);
        fast.sort();
        let naive = parses_naive(x);
        (!is_simple(x), fast.len(), fast == naive)
    });
    let non_simple = rows.iter().filter(|r| r.0).count();
    let ambiguous = all.iter().zip(&rows).find(|(_, r)| r.0 && r.1 != 1).map(|(x, r)| (bits_string(x), r.1));
    let disagree = all.iter().zip(&rows).find(|(_, r)| !r.2).map(|(x, _)| bits_string(x));
    vec![
        PropertyResult::new(
            "ψ: every non-simple infix has exactly one parse",
            ambiguous.is_none(),
            json!({ "hosts": hosts.len(), "non_simple_infixes": non_simple, "first_failure": ambiguous }),
        ),
        PropertyResult::new(
            "ψ: parser agrees with the all-splits oracle",
            disagree.is_none(),
            json!({ "infixes": all.len(), "first_failure": disagree }),
        ),
    ]
}

#[derive(Default)]
struct HostTally {
    infixes: usize,
    bijection_failure: Option<String>,
    letters_checked: usize,
    letter_failure: Option<String>,
}

fn check_host(w: &[RankedSymbol]) -> HostTally {
    let a = psi(w).into_bits();
    let max_order = w.iter().map(|s| s.order()).max().unwrap_or(0);
    let letters: Vec<(RankedSymbol, Vec<u8>)> = (2..=max_order)
        .flat_map(|o| [RankedSymbol::zero(o), RankedSymbol::one(o)])
        .map(|s| (s, code_bits(s)))
        .collect();
    let mut t = HostTally::default();
    for x in distinct_infixes(&a).into_iter().filter(|x| !is_simple(x)) {
        t.infixes += 1;
        let ps = parses(x);
        let [p] = ps.as_slice() else {
            t.bijection_failure.get_or_insert_with(|| format!("{} has {} parses", bits_string(x), ps.len()));
            continue;
        };
        let hits = occurrences(x, &a);
        let ms = parse_occurrences(p, w);
        let mapped: Vec<usize> = ms.iter().map(|&m| coded_offset(p, w, m)).collect();
        let contexts_ok = ms.iter().all(|&m| context_of(p, w, m).is_ok());
        if hits != mapped || !contexts_ok {
            t.bijection_failure
                .get_or_insert_with(|| format!("{}: occurrences {hits:?}, parse image {mapped:?}", bits_string(x)));
        }
        for (s, code) in &letters {
            let in_alpha = occurrences(code, x).len();
            if in_alpha > 1 {
                t.letters_checked += 1;
                let in_center = p.center.symbols().iter().filter(|&c| c == s).count();
                if in_center != in_alpha {
                    t.letter_failure.get_or_insert_with(|| {
                        format!("{}: ψ({s}) occurs {in_alpha} times, {s} occurs {in_center} times in {p}", bits_string(x))
                    });
                }
            }
        }
    }
    t
}

/// Occurrence bijection through `ρ` and the letter-count transfer.
pub fn parse_occurrence_suite(hosts: &[Vec<RankedSymbol>]) -> Vec<PropertyResult> {
    let tallies = par::map(hosts, |w| check_host(w));
    let pairs: usize = tallies.iter().map(|t| t.infixes).sum();
    let letters: usize = tallies.iter().map(|t| t.letters_checked).sum();
    let bij = tallies.iter().find_map(|t| t.bijection_failure.clone());
    let let_fail = tallies.iter().find_map(|t| t.letter_failure.clone());
    vec![
        PropertyResult::new(
            "ψ: occurrences of a non-simple infix correspond to occurrences of its parse",
            bij.is_none(),
            json!({ "host_infix_pairs": pairs, "first_failure": bij }),
        ),
        PropertyResult::new(
            "ψ: repeated letter codes transfer to the parse center",
            let_fail.is_none() && letters > 0,
            json!({ "letters_checked": letters, "first_failure": let_fail }),
        ),
    ]
}

/// Largest Zimin index of a simple infix of `ψ(C_i^n)` over the given
/// indices; must be at most `n - 1`.
pub fn simple_infix_bound(n: u32, indices: &[u64]) -> Result<PropertyResult> {
    let f = &language_dfas().f;
    let words = indices
        .iter()
        .map(|&i| encoded_counter(&CounterId::new(n, i)?).map(|w| w.into_bits()))
        .collect::<Result<Vec<_>>>()?;
    // (max index, longest run)
    let rows = par::map(&words, |a| {
        let mut best = 0u32;
        for s in 0..a.len() {
            // F is closed under infixes, so the longest F-word from s covers the rest
            let mut q = f.start();
            let mut end = s;
            while end < a.len() {
                let next = f.step(q, a[end] as usize);
                if !f.is_accepting(next) {
                    break;
                }
                q = next;
                end += 1;
            }
            best = best.max(zimin_index_unchecked(&a[s..end]));
            best = best.max(zimin_index_unchecked(&a[s..(s + 10).min(a.len())]));
        }
        let run = a.chunk_by(|x, y| x == y).map(<[u8]>::len).max().unwrap_or(0);
        (best, run)
    });
    let max_index = rows.iter().map(|r| r.0).max().unwrap_or(0);
    let max_run = rows.iter().map(|r| r.1).max().unwrap_or(0);
    Ok(PropertyResult::new(
        format!("ψ: simple infixes of ψ(C_i^{n}) have Zimin index at most {}", n - 1),
        max_index < n && max_run < SIMPLE_RUN,
        json!({ "counters": indices.len(), "max_index": max_index, "longest_run": max_run }),
    ))
}

/// `ψ(C_i^n)ψ(b)` and `ψ(b)ψ(C_i^n)` have index at most `n + 1` for both
/// order-`(n+1)` symbols `b` and every `i`.
pub fn boundary(n: u32) -> Result<PropertyResult> {
    let count = u64::try_from(tau(n)?).map_err(|_| Error::resource("counters", n, 3))?;
    let mut words = Vec::new();
    for i in 0..count {
        let c = encoded_counter(&CounterId::new(n, i)?)?;
        for b in [RankedSymbol::zero(n + 1), RankedSymbol::one(n + 1)] {
            let code = crate::psi::code_of(b);
            words.push(c.concat(&code).into_bits());
            words.push(code.concat(&c).into_bits());
        }
    }
    let indices = par::map(&words, |w| zimin_index_unchecked(w));
    let max = indices.iter().copied().max().unwrap_or(0);
    Ok(PropertyResult::new(
        format!("ψ: counter codes extended by an order-{} code have index at most {}", n + 1, n + 1),
        max <= n + 1,
        json!({ "words": words.len(), "max_index": max, "longest": words.iter().map(Vec::len).max() }),
    ))
}

// ---------------------------------------------------------------- Zimin

fn binary_words(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1u32 << len).map(move |code| (0..len).map(|b| (code >> (len - 1 - b) & 1) as u8).collect())
}

/// `zimin_type` and `zimin_index` against the recursive oracles.
pub fn zimin_oracles(max_len: usize) -> PropertyResult {
    let words: Vec<Vec<u8>> = (0..=max_len).flat_map(binary_words).collect();
    let bad = par::map(&words, |w| {
        zimin_type(w) == zimin_type_naive(w) && zimin_index_unchecked(w) == zimin_index_naive(w)
    })
    .iter()
    .position(|ok| !ok)
    .map(|i| word_string(&words[i]));
    PropertyResult::new(
        format!("zimin: type and index match the oracles on binary words up to length {max_len}"),
        bad.is_none(),
        json!({ "words": words.len(), "first_failure": bad }),
    )
}

/// `zimin_index(w) <= ⌊log2(|w| + 1)⌋` on random words.
pub fn zimin_log_bound(samples: usize, seed: u64) -> PropertyResult {
    let mut rng = StdRng::seed_from_u64(seed);
    let words: Vec<Vec<u8>> = (0..samples)
        .map(|_| {
            let k = rng.gen_range(1..=4u8);
            let len = rng.gen_range(0..=128usize);
            (0..len).map(|_| rng.gen_range(0..k)).collect()
        })
        .collect();
    let ok = par::all(&words, |w| zimin_index_unchecked(w) <= (w.len() + 1).ilog2());
    PropertyResult::new(
        "zimin: index at most log2(|w| + 1) on random words",
        ok,
        json!({ "samples": samples, "seed": seed }),
    )
}

// ---------------------------------------------------------------- search

pub fn f_check(n: u32, k: u32, expected: usize, opts: &SearchOptions) -> PropertyResult {
    let name = format!("search: f({n},{k}) = {expected}");
    PropertyResult::from_result(
        &name,
        f_value(n, k, opts).map(|(v, cert)| {
            let index = zimin_index_unchecked(cert.witness.as_bytes());
            let ok = v.exact() == Some(expected)
                && cert.exhausted
                && cert.witness.chars().count() + 1 == expected
                && index < n;
            PropertyResult::new(
                &name,
                ok,
                json!({
                    "value": v,
                    "witness": cert.witness,
                    "witness_index": index,
                    "nodes_explored": cert.nodes_explored,
                }),
            )
        }),
    )
}

pub fn search_opts() -> SearchOptions {
    if cfg!(feature = "parallel") {
        SearchOptions::parallel(Budget::unlimited(), 0)
    } else {
        SearchOptions::serial(Budget::unlimited())
    }
}

/// `f(1,k) = 1` and `f(2,k) = 2k + 1` for `k` in 2..=5.
pub fn small_f_table() -> Vec<PropertyResult> {
    let opts = search_opts();
    let mut out = Vec::new();
    for k in 2..=5 {
        out.push(f_check(1, k, 1, &opts));
        out.push(f_check(2, k, 2 * k as usize + 1, &opts));
    }
    out
}

pub fn f_3_2() -> PropertyResult {
    f_check(3, 2, 29, &search_opts())
}

/// A budgeted `f(4,2)` search reports only a lower bound.
pub fn f_4_2_refuses(nodes: u64) -> PropertyResult {
    let name = "search: budgeted f(4,2) reports a lower bound only";
    PropertyResult::from_result(
        name,
        f_value(4, 2, &SearchOptions::serial(Budget::nodes(nodes))).map(|(v, cert)| {
            PropertyResult::new(
                name,
                matches!(v, FValue::LowerBound { .. }) && !cert.exhausted,
                json!({ "value": v, "nodes_explored": cert.nodes_explored }),
            )
        }),
    )
}

/// Exact match probability of `Z_n` against enumeration.
pub fn probability_suite() -> Vec<PropertyResult> {
    [(2u32, 2u32, (4u64, 8u64)), (3, 2, (8, 128))]
        .into_iter()
        .map(|(n, k, expected)| {
            let name = format!("probability: Z_{n} over {k} letters matches {}/{}", expected.0, expected.1);
            PropertyResult::from_result(
                &name,
                match_probability(n, k).map(|p| {
                    PropertyResult::new(
                        &name,
                        p.enumeration == Some(expected) && p.enumeration_agrees() == Some(true),
                        json!({ "closed_form": p.closed_form.to_string(), "enumeration": p.enumeration }),
                    )
                }),
            )
        })
        .collect()
}

// ---------------------------------------------------------------- abelian

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn abelian_oracle_agreement() -> Result<PropertyResult> {
    let words: Vec<Vec<u8>> = (0..=10).flat_map(binary_words).collect();
    let mut bad = None;
    for w in &words {
        let fast = encounters_abelian_zimin(w, 2)?.map(|(j, a)| (j, a.lambda().to_vec()));
        if fast != crate::oracle::abelian_encounter_naive(w, 2) {
            bad = Some(word_string(w));
            break;
        }
    }
    Ok(PropertyResult::new(
        "abelian: encounter check matches the factorization oracle (n = 2, binary, length ≤ 10)",
        bad.is_none(),
        json!({ "words": words.len(), "first_failure": bad }),
    ))
}

fn g_checks() -> Result<Vec<PropertyResult>> {
    let opts = search_opts();
    let mut out = Vec::new();
    for k in 2..=4 {
        let (g, _) = g_value(1, k, &opts)?;
        out.push(PropertyResult::new(
            format!("abelian: g(1,{k}) = 1"),
            g.exact() == Some(1),
            json!({ "value": g }),
        ));
    }
    for k in 2..=3 {
        let (g, cert) = g_value(2, k, &opts)?;
        let (f, _) = f_value(2, k, &opts)?;
        let ok = matches!((g.exact(), f.exact()), (Some(gv), Some(fv)) if gv <= fv);
        out.push(PropertyResult::new(
            format!("abelian: g(2,{k}) exhaustive and at most f(2,{k})"),
            ok,
            json!({ "g": g, "f": f, "witness": cert.witness }),
        ));
    }
    Ok(out)
}

fn claim_grids() -> Result<Vec<PropertyResult>> {
    let mut worst1 = None;
    let mut cases1 = 0;
    for k in 2..=3 {
        for h in 1..=3 {
            for m in 1..=3 {
                cases1 += 1;
                let (v, b) = (claim1_oracle(k, h, m)?, claim1_bound(k, m)?);
                if v > b {
                    worst1.get_or_insert(json!({ "k": k, "h": h, "m": m, "value": v.to_string() }));
                }
            }
        }
    }
    let mut worst2 = None;
    let mut cases2 = 0;
    for k in 2..=3 {
        for lambda in [vec![1], vec![2], vec![3], vec![4], vec![5], vec![6], vec![1, 1], vec![2, 1], vec![1, 2], vec![1, 3], vec![3, 1], vec![2, 2], vec![1, 4]] {
            let a = AbelianAssignment::new(lambda.clone())?;
            if a.width() > 6 {
                continue;
            }
            cases2 += 1;
            let (v, b) = (claim2_oracle(k, &a)?, claim2_bound(a.n(), k)?);
            if v > b {
                worst2.get_or_insert(json!({ "k": k, "lambda": lambda, "value": v.to_string() }));
            }
        }
    }
    let spot = claim1_oracle(2, 1, 2)? == ratio(1, 2)
        && claim1_oracle(2, 2, 2)? == ratio(3, 8)
        && claim1_oracle(3, 1, 3)? == ratio(1, 9)
        && claim2_oracle(2, &AbelianAssignment::new(vec![1, 1])?)? == ratio(1, 2);
    Ok(vec![
        PropertyResult::new(
            "abelian: equal-Parikh probability within (1/k)^(m-1)",
            worst1.is_none() && spot,
            json!({ "cases": cases1, "first_violation": worst1 }),
        ),
        PropertyResult::new(
            "abelian: occurrence probability within k^(n-2^n+1)",
            worst2.is_none(),
            json!({ "cases": cases2, "first_violation": worst2 }),
        ),
    ])
}

fn bound_formulas() -> Result<PropertyResult> {
    let big = |v: u64| BigUint::from(v);
    let mut checks = vec![
        ("g_lower(3,2)", g_lower_bound(3, 2)? == big(1)),
        ("g_lower(4,2)", g_lower_bound(4, 2)? == big(2)),
        ("g_lower(3,10)", g_lower_bound(3, 10)? == big(1)),
        ("g_upper(1,2)", g_upper_bound(1, 2)? == big(1 << 8)),
        ("g_upper(1,3)", g_upper_bound(1, 3)? == big(1 << 12)),
        ("recurrence(2,2)", g_upper_recurrence(2, 2)? == big(4)),
        ("recurrence(2,2) <= closed(2,2)", g_upper_recurrence(2, 2)? <= g_upper_bound(2, 2)?),
        ("delta(2,2,3)", delta_upper_bound(2, 2, 3)? == ratio(81, 2)),
        ("delta(3,2,10)", delta_upper_bound(3, 2, 10)? == ratio(100_000, 16)),
    ];
    checks.push(("g_upper(2,2)", g_upper_bound(2, 2)? == BigUint::from(1u8) << 64u32));
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Ok(PropertyResult::new(
        "abelian: bound formulas",
        failed.is_empty(),
        json!({ "checked": checks.len(), "failed": failed }),
    ))
}

pub fn abelian_suite() -> Vec<PropertyResult> {
    let mut out = vec![PropertyResult::from_result("abelian: oracle agreement", abelian_oracle_agreement())];
    match g_checks() {
        Ok(v) => out.extend(v),
        Err(e) => out.push(PropertyResult::new("abelian: g values", false, json!({ "error": e.to_string() }))),
    }
    match claim_grids() {
        Ok(v) => out.extend(v),
        Err(e) => out.push(PropertyResult::new("abelian: claim grids", false, json!({ "error": e.to_string() }))),
    }
    out.push(PropertyResult::from_result("abelian: bound formulas", bound_formulas()));
    out
}

// ---------------------------------------------------------------- everything

fn extend(out: &mut Vec<PropertyResult>, name: &str, r: Result<Vec<PropertyResult>>) {
    match r {
        Ok(v) => out.extend(v),
        Err(e) => out.push(PropertyResult::new(name, false, json!({ "error": e.to_string() }))),
    }
}

/// Regular identities and every ψ lemma check.
pub fn psi_suite(scale: Scale) -> Vec<PropertyResult> {
    let mut out = vec![infix_code(8)];
    extend(&mut out, "regular identities", regular_identities());
    out.push(PropertyResult::from_result("ψ: characterization", characterization(2, 4)));
    match parse_hosts() {
        Ok(hosts) => {
            out.extend(parse_uniqueness(&hosts));
            out.extend(parse_occurrence_suite(&hosts));
        }
        Err(e) => out.push(PropertyResult::new("ψ: parse hosts", false, json!({ "error": e.to_string() }))),
    }
    let sample: Vec<u64> = match scale {
        Scale::Small => (0..16u64).map(|j| j * 4369).collect(),
        Scale::Full => (0..256u64).map(|j| j * 257).collect(),
    };
    out.push(PropertyResult::from_result("ψ: simple infixes", simple_infix_bound(4, &sample)));
    for n in [2, 3] {
        out.push(PropertyResult::from_result("ψ: boundary", boundary(n)));
    }
    out
}

pub fn verify_all(scale: Scale) -> VerifyReport {
    let mut results = Vec::new();
    let top = if scale == Scale::Full { 4 } else { 3 };
    for n in 1..=top {
        extend(&mut results, "counters", counter_suite(n));
    }
    results.extend(witness_suite());
    results.extend(psi_suite(scale));
    results.push(zimin_oracles(if scale == Scale::Full { 14 } else { 12 }));
    results.push(zimin_log_bound(10_000, 0x5eed));
    results.extend(small_f_table());
    if scale == Scale::Full {
        results.push(f_3_2());
    }
    results.push(f_4_2_refuses(20_000));
    results.extend(probability_suite());
    results.extend(abelian_suite());
    VerifyReport {
        scale,
        passed: results.iter().all(|r| r.passed),
        results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counter_suites_small_orders() {
        for n in 1..=3 {
            for r in counter_suite(n).unwrap() {
                assert!(r.passed, "{r:?}");
            }
        }
        assert!(counter_suite(5).is_err());
    }

    #[test]
    fn order_pattern_detector() {
        assert!(orders_determined_by_distance(&[1, 2, 1, 2], 2));
        assert!(!orders_determined_by_distance(&[1, 2, 2, 1, 2], 2));
    }

    #[test]
    fn identities_hold() {
        for r in regular_identities().unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn characterization_small() {
        let r = characterization(2, 2).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn parse_suites_on_short_hosts() {
        let hosts = ranked_words(2, 2);
        for r in parse_uniqueness(&hosts).into_iter().chain(parse_occurrence_suite(&hosts)) {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn boundary_n2() {
        assert!(boundary(2).unwrap().passed);
    }

    #[test]
    fn scale_parsing() {
        assert_eq!("small".parse::<Scale>().unwrap(), Scale::Small);
        assert!("huge".parse::<Scale>().is_err());
        assert_eq!(PropertyResult::new("x", false, Value::Null).to_string(), "FAIL x");
    }
}
