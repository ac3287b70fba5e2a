//! A small regular-language engine: regex parsing, Thompson NFAs, subset
//! construction, and the boolean algebra of complete DFAs over an explicit
//! alphabet.
//!
//! Regex syntax: literal characters, `|` for union, juxtaposition for
//! concatenation, postfix `*`, `+`, `?`, `{m}`, `{m,}` and `{m,n}`,
//! parentheses, `ε` for the empty word and `∅` for the empty language.
//! Whitespace is ignored.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regex {
    /// The empty language.
    Empty,
    /// The language `{ε}`.
    Epsilon,
    Literal(char),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
    Repeat {
        inner: Box<Regex>,
        min: u32,
        max: Option<u32>,
    },
}

impl Regex {
    pub fn parse(s: &str) -> Result<Regex> {
        let mut p = RegexParser {
            chars: s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            len: s.len(),
        };
        let re = p.alternation()?;
        if p.pos < p.chars.len() {
            let (at, c) = p.chars[p.pos];
            return Err(Error::Regex {
                position: at,
                reason: format!("unexpected {c:?}"),
            });
        }
        Ok(re)
    }

    /// The single word `w`.
    pub fn word(w: &str) -> Regex {
        let parts: Vec<Regex> = w.chars().map(Regex::Literal).collect();
        if parts.is_empty() {
            Regex::Epsilon
        } else {
            Regex::Concat(parts)
        }
    }

    /// A finite language.
    pub fn words<I, S>(words: I) -> Regex
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let alts: Vec<Regex> = words.into_iter().map(|w| Regex::word(w.as_ref())).collect();
        if alts.is_empty() {
            Regex::Empty
        } else {
            Regex::Union(alts)
        }
    }

    pub fn concat(parts: Vec<Regex>) -> Regex {
        Regex::Concat(parts)
    }

    pub fn union(parts: Vec<Regex>) -> Regex {
        Regex::Union(parts)
    }

    pub fn star(self) -> Regex {
        Regex::Star(Box::new(self))
    }

    /// Literal characters used by the expression.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Empty | Regex::Epsilon => {}
            Regex::Literal(c) => {
                out.insert(*c);
            }
            Regex::Concat(v) | Regex::Union(v) => v.iter().for_each(|r| r.collect_letters(out)),
            Regex::Star(r) => r.collect_letters(out),
            Regex::Repeat { inner, .. } => inner.collect_letters(out),
        }
    }
}

impl FromStr for Regex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Regex> {
        Regex::parse(s)
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Empty => f.write_str("∅"),
            Regex::Epsilon => f.write_str("ε"),
            Regex::Literal(c) => write!(f, "{c}"),
            Regex::Concat(v) => {
                for r in v {
                    match r {
                        Regex::Union(_) => write!(f, "({r})")?,
                        _ => write!(f, "{r}")?,
                    }
                }
                Ok(())
            }
            Regex::Union(v) => {
                for (i, r) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    write!(f, "{r}")?;
                }
                Ok(())
            }
            Regex::Star(r) => write_postfix(f, r, "*"),
            Regex::Repeat { inner, min, max } => {
                let suffix = match max {
                    Some(m) if m == min => format!("{{{min}}}"),
                    Some(m) => format!("{{{min},{m}}}"),
                    None => format!("{{{min},}}"),
                };
                write_postfix(f, inner, &suffix)
            }
        }
    }
}

fn write_postfix(f: &mut fmt::Formatter<'_>, r: &Regex, op: &str) -> fmt::Result {
    match r {
        Regex::Literal(_) | Regex::Epsilon | Regex::Empty => write!(f, "{r}{op}"),
        _ => write!(f, "({r}){op}"),
    }
}

struct RegexParser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl RegexParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn at(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Regex {
            position: self.at(),
            reason: reason.into(),
        }
    }

    fn alternation(&mut self) -> Result<Regex> {
        let mut alts = vec![self.concatenation()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            alts.push(self.concatenation()?);
        }
        Ok(if alts.len() == 1 { alts.pop().unwrap() } else { Regex::Union(alts) })
    }

    fn concatenation(&mut self) -> Result<Regex> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.postfix()?);
        }
        Ok(match parts.len() {
            0 => Regex::Epsilon,
            1 => parts.pop().unwrap(),
            _ => Regex::Concat(parts),
        })
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut re = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    re = Regex::Star(Box::new(re));
                }
                Some('+') => {
                    self.pos += 1;
                    re = Regex::Repeat { inner: Box::new(re), min: 1, max: None };
                }
                Some('?') => {
                    self.pos += 1;
                    re = Regex::Repeat { inner: Box::new(re), min: 0, max: Some(1) };
                }
                Some('{') => {
                    self.pos += 1;
                    let min = self.number()?;
                    let max = if self.peek() == Some(',') {
                        self.pos += 1;
                        if self.peek() == Some('}') {
                            None
                        } else {
                            Some(self.number()?)
                        }
                    } else {
                        Some(min)
                    };
                    if self.peek() != Some('}') {
                        return Err(self.err("expected '}'"));
                    }
                    self.pos += 1;
                    if max.is_some_and(|m| m < min) {
                        return Err(self.err("repetition bounds out of order"));
                    }
                    re = Regex::Repeat { inner: Box::new(re), min, max };
                }
                _ => return Ok(re),
            }
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        let mut value: u32 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d))
                .ok_or_else(|| self.err("repetition bound too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            None => Err(self.err("unexpected end of expression")),
            Some('(') => {
                self.pos += 1;
                let inner = self.alternation()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('ε') => {
                self.pos += 1;
                Ok(Regex::Epsilon)
            }
            Some('∅') => {
                self.pos += 1;
                Ok(Regex::Empty)
            }
            Some(c @ ('*' | '+' | '?' | '{' | '}' | ')' | '|' | ',')) => Err(self.err(format!("unexpected {c:?}"))),
            Some(c) => {
                self.pos += 1;
                Ok(Regex::Literal(c))
            }
        }
    }
}

/// Thompson automaton with ε-moves; letters are alphabet indices.
struct Nfa {
    eps: Vec<Vec<usize>>,
    moves: Vec<Vec<(usize, usize)>>,
}

impl Nfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.moves.push(Vec::new());
        self.eps.len() - 1
    }

    /// Returns the (entry, exit) pair of a fragment for `re`.
    fn build(&mut self, re: &Regex, alphabet: &[char]) -> Result<(usize, usize)> {
        let s = self.state();
        let e = self.state();
        match re {
            Regex::Empty => {}
            Regex::Epsilon => self.eps[s].push(e),
            Regex::Literal(c) => {
                let idx = alphabet
                    .binary_search(c)
                    .map_err(|_| Error::InvalidArgument(format!("letter {c:?} is not in the alphabet")))?;
                self.moves[s].push((idx, e));
            }
            Regex::Concat(parts) => {
                let mut cur = s;
                for p in parts {
                    let (ps, pe) = self.build(p, alphabet)?;
                    self.eps[cur].push(ps);
                    cur = pe;
                }
                self.eps[cur].push(e);
            }
            Regex::Union(parts) => {
                for p in parts {
                    let (ps, pe) = self.build(p, alphabet)?;
                    self.eps[s].push(ps);
                    self.eps[pe].push(e);
                }
            }
            Regex::Star(inner) => {
                let (ps, pe) = self.build(inner, alphabet)?;
                self.eps[s].push(ps);
                self.eps[s].push(e);
                self.eps[pe].push(ps);
                self.eps[pe].push(e);
            }
            Regex::Repeat { inner, min, max } => {
                let mut cur = s;
                for _ in 0..*min {
                    let (ps, pe) = self.build(inner, alphabet)?;
                    self.eps[cur].push(ps);
                    cur = pe;
                }
                match max {
                    None => {
                        let (ps, pe) = self.build(&Regex::Star(inner.clone()), alphabet)?;
                        self.eps[cur].push(ps);
                        cur = pe;
                    }
                    Some(max) => {
                        for _ in *min..*max {
                            let (ps, pe) = self.build(inner, alphabet)?;
                            self.eps[cur].push(ps);
                            self.eps[cur].push(pe);
                            cur = pe;
                        }
                    }
                }
                self.eps[cur].push(e);
            }
        }
        Ok((s, e))
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q] {
                if set.insert(r) {
                    stack.push(r);
                }
            }
        }
    }
}

/// A complete deterministic automaton over an explicit, sorted alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DfaJson", into = "DfaJson")]
pub struct Dfa {
    alphabet: Vec<char>,
    start: usize,
    accepting: Vec<bool>,
    /// `transitions[state][letter]`.
    transitions: Vec<Vec<usize>>,
}

/// Wire form: `{alphabet, states, start, accepting, transitions}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DfaJson {
    pub alphabet: Vec<char>,
    pub states: usize,
    pub start: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<Vec<usize>>,
}

impl From<Dfa> for DfaJson {
    fn from(d: Dfa) -> Self {
        DfaJson {
            states: d.transitions.len(),
            start: d.start,
            accepting: (0..d.accepting.len()).filter(|&q| d.accepting[q]).collect(),
            alphabet: d.alphabet,
            transitions: d.transitions,
        }
    }
}

impl TryFrom<DfaJson> for Dfa {
    type Error = Error;

    fn try_from(j: DfaJson) -> Result<Dfa> {
        let mut accepting = vec![false; j.states];
        for q in j.accepting {
            *accepting
                .get_mut(q)
                .ok_or_else(|| Error::InvalidDfa(format!("accepting state {q} out of range")))? = true;
        }
        Dfa::new(j.alphabet, j.start, accepting, j.transitions)
    }
}

/// Outcome of a language-equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// A shortest word accepted by exactly one of the two automata.
    Distinguished(String),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }
}

impl Dfa {
    /// Validates that the alphabet is sorted and duplicate-free, the table is
    /// total, and all states are in range.
    pub fn new(alphabet: Vec<char>, start: usize, accepting: Vec<bool>, transitions: Vec<Vec<usize>>) -> Result<Dfa> {
        let n = transitions.len();
        if n == 0 {
            return Err(Error::InvalidDfa("automaton has no states".into()));
        }
        if alphabet.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDfa("alphabet must be sorted and duplicate-free".into()));
        }
        if start >= n {
            return Err(Error::InvalidDfa(format!("start state {start} out of range")));
        }
        if accepting.len() != n {
            return Err(Error::InvalidDfa("accepting set does not match the state count".into()));
        }
        for (q, row) in transitions.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidDfa(format!("state {q} is missing transitions")));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::InvalidDfa(format!("transition from {q} to missing state {t}")));
            }
        }
        Ok(Dfa {
            alphabet,
            start,
            accepting,
            transitions,
        })
    }

    /// Subset construction followed by minimization.
    pub fn from_regex(re: &Regex, alphabet: &[char]) -> Result<Dfa> {
        let mut alphabet = alphabet.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        let mut nfa = Nfa {
            eps: Vec::new(),
            moves: Vec::new(),
        };
        let (s, e) = nfa.build(re, &alphabet)?;

        let mut start_set = BTreeSet::from([s]);
        nfa.closure(&mut start_set);
        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut sets = vec![start_set.clone()];
        ids.insert(start_set, 0);
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = Vec::with_capacity(alphabet.len());
            for a in 0..alphabet.len() {
                let mut next = BTreeSet::new();
                for &q in &sets[i] {
                    for &(letter, r) in &nfa.moves[q] {
                        if letter == a {
                            next.insert(r);
                        }
                    }
                }
                nfa.closure(&mut next);
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        sets.push(next.clone());
                        ids.insert(next, sets.len() - 1);
                        sets.len() - 1
                    }
                };
                row.push(id);
            }
            transitions.push(row);
            i += 1;
        }
        let accepting = sets.iter().map(|set| set.contains(&e)).collect();
        Ok(Dfa {
            alphabet,
            start: 0,
            accepting,
            transitions,
        }
        .minimize())
    }

    pub fn from_regex_str(re: &str, alphabet: &[char]) -> Result<Dfa> {
        Dfa::from_regex(&Regex::parse(re)?, alphabet)
    }

    /// The automaton accepting nothing.
    pub fn empty(alphabet: &[char]) -> Dfa {
        Dfa::from_regex(&Regex::Empty, alphabet).expect("the empty language has no letters")
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    /// Transition on the letter with alphabet index `letter`.
    #[inline]
    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.transitions[q][letter]
    }

    pub fn letter_index(&self, c: char) -> Option<usize> {
        self.alphabet.binary_search(&c).ok()
    }

    /// Membership; words using letters outside the alphabet are rejected.
    pub fn accepts(&self, word: &str) -> bool {
        let mut q = self.start;
        for c in word.chars() {
            match self.letter_index(c) {
                Some(a) => q = self.step(q, a),
                None => return false,
            }
        }
        self.accepting[q]
    }

    /// Membership for a word given as alphabet indices.
    pub fn accepts_indices(&self, word: &[u8]) -> bool {
        let q = word.iter().fold(self.start, |q, &a| self.step(q, a as usize));
        self.accepting[q]
    }

    fn product(&self, other: &Dfa, keep: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let k = self.alphabet.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        ids.insert((self.start, other.start), 0);
        let mut transitions = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let next = (self.step(p, a), other.step(q, a));
                let id = *ids.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                row.push(id);
            }
            transitions.push(row);
            i += 1;
        }
        let accepting = pairs.iter().map(|&(p, q)| keep(self.accepting[p], other.accepting[q])).collect();
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            start: 0,
            accepting,
            transitions,
        }
        .minimize())
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            alphabet: self.alphabet.clone(),
            start: self.start,
            accepting: self.accepting.iter().map(|a| !a).collect(),
            transitions: self.transitions.clone(),
        }
        .minimize()
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(q) = stack.pop() {
            for &r in &self.transitions[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// Canonical minimal automaton: unreachable states dropped, Moore
    /// partition refinement, then states renumbered in breadth-first order
    /// from the start state. Equal languages give structurally equal results.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let live: Vec<usize> = (0..self.state_count()).filter(|&q| reach[q]).collect();
        let mut class = vec![usize::MAX; self.state_count()];
        for &q in &live {
            class[q] = usize::from(self.accepting[q]);
        }
        let mut classes = live.iter().map(|&q| class[q]).collect::<BTreeSet<_>>().len();
        loop {
            let mut sig_ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![usize::MAX; self.state_count()];
            for &q in &live {
                let sig = (class[q], self.transitions[q].iter().map(|&r| class[r]).collect::<Vec<_>>());
                let len = sig_ids.len();
                next[q] = *sig_ids.entry(sig).or_insert(len);
            }
            let count = sig_ids.len();
            class = next;
            if count == classes {
                break;
            }
            classes = count;
        }
        // BFS renumbering
        let mut order: HashMap<usize, usize> = HashMap::new();
        let mut reps = Vec::new();
        let mut queue = VecDeque::new();
        order.insert(class[self.start], 0);
        reps.push(self.start);
        queue.push_back(self.start);
        while let Some(q) = queue.pop_front() {
            for &r in &self.transitions[q] {
                if let std::collections::hash_map::Entry::Vacant(e) = order.entry(class[r]) {
                    e.insert(reps.len());
                    reps.push(r);
                    queue.push_back(r);
                }
            }
        }
        let transitions = reps
            .iter()
            .map(|&q| self.transitions[q].iter().map(|&r| order[&class[r]]).collect())
            .collect();
        let accepting = reps.iter().map(|&q| self.accepting[q]).collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            start: 0,
            accepting,
            transitions,
        }
    }

    /// Language equivalence with a shortest distinguishing word (found by
    /// breadth-first search over the product, letters in alphabet order).
    pub fn equivalent(&self, other: &Dfa) -> Result<Equivalence> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        // pair -> (predecessor pair, letter)
        type Pair = (usize, usize);
        let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::new();
        let root = (self.start, other.start);
        parent.insert(root, None);
        let mut queue = VecDeque::from([root]);
        while let Some(pair) = queue.pop_front() {
            if self.accepting[pair.0] != other.accepting[pair.1] {
                let mut letters = Vec::new();
                let mut cur = pair;
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    letters.push(self.alphabet[*a]);
                    cur = *prev;
                }
                letters.reverse();
                return Ok(Equivalence::Distinguished(letters.into_iter().collect()));
            }
            for a in 0..self.alphabet.len() {
                let next = (self.step(pair.0, a), other.step(pair.1, a));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some((pair, a)));
                    queue.push_back(next);
                }
            }
        }
        Ok(Equivalence::Equivalent)
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut co = self.accepting.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..n {
                if !co[q] && self.transitions[q].iter().any(|&r| co[r]) {
                    co[q] = true;
                    changed = true;
                }
            }
        }
        co
    }

    /// States that are reachable and can still reach an accepting state.
    fn trim(&self) -> Vec<bool> {
        let reach = self.reachable();
        let co = self.live_states();
        reach.iter().zip(co).map(|(&r, c)| r && c).collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.trim()[self.start]
    }

    /// True iff the language is finite (no cycle through useful states).
    pub fn is_finite(&self) -> bool {
        let useful = self.trim();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; self.state_count()];
        for s in 0..self.state_count() {
            if !useful[s] || color[s] != 0 {
                continue;
            }
            let mut stack = vec![(s, 0usize)];
            color[s] = 1;
            while let Some(&mut (q, ref mut next)) = stack.last_mut() {
                if *next == self.alphabet.len() {
                    color[q] = 2;
                    stack.pop();
                    continue;
                }
                let r = self.transitions[q][*next];
                *next += 1;
                if !useful[r] {
                    continue;
                }
                match color[r] {
                    1 => return false,
                    0 => {
                        color[r] = 1;
                        stack.push((r, 0));
                    }
                    _ => {}
                }
            }
        }
        true
    }

    /// All accepted words of length at most `max_len`, shortest first and
    /// lexicographic (alphabet order) within a length.
    pub fn enumerate(&self, max_len: usize, cap: usize) -> Result<Vec<String>> {
        let n = self.state_count();
        // exact[r][q]: some word of length exactly r leads from q to acceptance
        let mut exact = vec![self.accepting.clone()];
        for r in 1..=max_len {
            let row = (0..n)
                .map(|q| self.transitions[q].iter().any(|&t| exact[r - 1][t]))
                .collect();
            exact.push(row);
        }
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for len in 0..=max_len {
            self.enumerate_len(self.start, len, &exact, &mut buf, &mut out, cap)?;
        }
        Ok(out)
    }

    fn enumerate_len(
        &self,
        q: usize,
        left: usize,
        exact: &[Vec<bool>],
        buf: &mut Vec<char>,
        out: &mut Vec<String>,
        cap: usize,
    ) -> Result<()> {
        if !exact[left][q] {
            return Ok(());
        }
        if left == 0 {
            if out.len() == cap {
                return Err(Error::resource("enumerated words", format!("more than {cap}"), cap));
            }
            out.push(buf.iter().collect());
            return Ok(());
        }
        for a in 0..self.alphabet.len() {
            buf.push(self.alphabet[a]);
            self.enumerate_len(self.step(q, a), left - 1, exact, buf, out, cap)?;
            buf.pop();
        }
        Ok(())
    }

    /// Every word of a finite language (errors on infinite languages).
    pub fn enumerate_finite(&self, cap: usize) -> Result<Vec<String>> {
        if !self.is_finite() {
            return Err(Error::InvalidArgument("language is infinite".into()));
        }
        // a word of a finite language never repeats a useful state
        self.enumerate(self.state_count(), cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BIN: [char; 2] = ['0', '1'];

    fn dfa(re: &str) -> Dfa {
        Dfa::from_regex_str(re, &BIN).unwrap()
    }

    fn all_words(max_len: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        for len in 1..=max_len {
            for mask in 0u32..(1 << len) {
                out.push((0..len).map(|i| if (mask >> (len - 1 - i)) & 1 == 1 { '1' } else { '0' }).collect());
            }
        }
        out
    }

    #[test]
    fn parses_and_prints() {
        let re = Regex::parse("00(01)*00|11(01)*11").unwrap();
        assert_eq!(re.to_string(), "00(01)*00|11(01)*11");
        assert_eq!(Regex::parse("").unwrap(), Regex::Epsilon);
        assert_eq!(Regex::parse("()").unwrap(), Regex::Epsilon);
        assert!(Regex::parse("(01").is_err());
        assert!(Regex::parse("*").is_err());
        assert!(Regex::parse("0{3,1}").is_err());
        assert!(Regex::parse("0)").is_err());
        assert!(Dfa::from_regex_str("2", &BIN).is_err());
    }

    #[test]
    fn regex_membership() {
        let d = dfa("00(01)*00");
        assert!(d.accepts("000100"));
        assert!(d.accepts("0000"));
        for w in all_words(5).iter().filter(|w| w.len() == 5) {
            assert!(!d.accepts(w));
        }
        let r = dfa("0{2,3}1?");
        for w in ["00", "000", "001", "0001"] {
            assert!(r.accepts(w), "{w}");
        }
        for w in ["0", "0000", "01", "1"] {
            assert!(!r.accepts(w), "{w}");
        }
        assert!(dfa("(01)+").accepts("0101"));
        assert!(!dfa("(01)+").accepts(""));
        assert!(!dfa("∅").accepts(""));
        assert!(dfa("ε").accepts(""));
        assert!(!dfa("0").accepts("x"));
    }

    #[test]
    fn algebra() {
        let a = dfa("(0|1)*1(0|1)");
        let comp = a.complement();
        assert!(a.intersect(&comp).unwrap().is_empty());
        assert_eq!(a.union(&comp).unwrap(), dfa("(0|1)*"));
        let m = a.minimize();
        assert_eq!(m.minimize(), m);
        assert!(m.equivalent(&a).unwrap().is_equivalent());
        assert_eq!(m.state_count(), 4);
        let other = Dfa::from_regex_str("ab", &['a', 'b']).unwrap();
        assert_eq!(a.intersect(&other), Err(Error::AlphabetMismatch));
        assert_eq!(a.equivalent(&other), Err(Error::AlphabetMismatch));
    }

    #[test]
    fn operations_agree_with_brute_force_membership() {
        let exprs = ["(0|1)*00", "0*1*", "(01|10)*", "1(0|1){2}", "(00)*|1", "ε|0(10)*"];
        let words = all_words(10);
        for x in exprs {
            for y in exprs {
                let (a, b) = (dfa(x), dfa(y));
                let inter = a.intersect(&b).unwrap();
                let uni = a.union(&b).unwrap();
                let diff = a.difference(&b).unwrap();
                let comp = a.complement();
                for w in &words {
                    let (in_a, in_b) = (a.accepts(w), b.accepts(w));
                    assert_eq!(inter.accepts(w), in_a && in_b);
                    assert_eq!(uni.accepts(w), in_a || in_b);
                    assert_eq!(diff.accepts(w), in_a && !in_b);
                    assert_eq!(comp.accepts(w), !in_a);
                }
            }
        }
    }

    #[test]
    fn shortest_counterexample() {
        let a = dfa("(0|1)*");
        let b = dfa("(0|1)*1|ε");
        assert_eq!(a.equivalent(&b).unwrap(), Equivalence::Distinguished("0".into()));
        let c = dfa("0000|11");
        let d = dfa("11");
        assert_eq!(c.equivalent(&d).unwrap(), Equivalence::Distinguished("0000".into()));
    }

    #[test]
    fn emptiness_finiteness_enumeration() {
        let fin = dfa("0|10|110");
        assert!(fin.is_finite());
        assert_eq!(fin.enumerate_finite(100).unwrap(), vec!["0", "10", "110"]);
        assert_eq!(fin.enumerate(2, 100).unwrap(), vec!["0", "10"]);
        assert!(!dfa("0*").is_finite());
        assert!(dfa("0*").enumerate_finite(100).is_err());
        assert!(Dfa::empty(&BIN).is_empty());
        assert!(Dfa::empty(&BIN).is_finite());
        assert_eq!(Dfa::empty(&BIN).enumerate(5, 10).unwrap(), Vec::<String>::new());
        assert!(dfa("(0|1)*").enumerate(10, 100).unwrap_err().is_resource());
        let infinite_enum = dfa("(0|1)*").enumerate(2, 100).unwrap();
        assert_eq!(infinite_enum, vec!["", "0", "1", "00", "01", "10", "11"]);
        for (re, finite) in [("0*1", false), ("(01){0,3}", true), ("∅", true), ("1(0|1)*0", false)] {
            let d = dfa(re);
            assert_eq!(d.is_finite(), finite, "{re}");
            let listed = d.enumerate(12, 100_000).unwrap();
            if finite {
                assert_eq!(listed, d.enumerate(30, 100_000).unwrap());
            } else {
                assert!(listed.len() < d.enumerate(14, 100_000).unwrap().len());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let d = dfa("00(01)*00|11(01)*11");
        let s = serde_json::to_string(&d).unwrap();
        let back: Dfa = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        let bad = r#"{"alphabet":["0","1"],"states":1,"start":0,"accepting":[3],"transitions":[[0,0]]}"#;
        assert!(serde_json::from_str::<Dfa>(bad).is_err());
        let partial = r#"{"alphabet":["0","1"],"states":1,"start":0,"accepting":[],"transitions":[[0]]}"#;
        assert!(serde_json::from_str::<Dfa>(partial).is_err());
    }
}
