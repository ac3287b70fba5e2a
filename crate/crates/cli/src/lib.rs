//! `zimctl`: JSON front end for zimin-core.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage error,
//! 3 a budget or resource cap was hit.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use zimin_core::abelian::{
    claim1_bound, claim1_oracle, claim2_bound, claim2_oracle, g_lower_bound, g_upper_bound, g_upper_recurrence,
    longest_abelian_avoiding_resumable, AbelianAssignment,
};
use zimin_core::counters::{counter_length_with, counter_with, CounterId, CounterStream};
use zimin_core::psi::{encoded_counter, is_simple, parses, psi};
use zimin_core::regular::{Dfa, Equivalence};
use zimin_core::search::{
    first_moment_threshold, longest_avoiding_resumable, match_probability, Budget, Checkpoint, FValue,
    SearchCertificate, SearchOptions,
};
use zimin_core::verify::{self, PropertyResult, Scale};
use zimin_core::zimin::{encounters, is_unavoidable_with, zimin_index_with, zimin_pattern_with, zimin_type, Pattern};
use zimin_core::{BinaryWord, Error, Exec, Limits, RankedWord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "zimctl", version, about = "Zimin patterns, counters, binary coding and avoidance search")]
struct Cli {
    /// Also print a human-readable summary on standard error.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zimin type, index and pattern encounters.
    #[command(subcommand)]
    Zimin(ZiminCmd),
    /// Higher-order counters.
    #[command(subcommand)]
    Counters(CountersCmd),
    /// The binary coding ψ and parses.
    #[command(subcommand)]
    Psi(PsiCmd),
    /// Regular-language engine.
    #[command(subcommand)]
    Regular(RegularCmd),
    /// Longest Zimin-avoiding words.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Abelian Zimin avoidance.
    #[command(subcommand)]
    Abelian(AbelianCmd),
    /// Run every property suite.
    Verify {
        #[arg(long, default_value = "small", value_parser = ["small", "full"])]
        scale: String,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct CapArgs {
    /// Longest word accepted for a Zimin index computation.
    #[arg(long, env = "ZIMIN_MAX_INDEX_LEN", default_value_t = Limits::default().max_index_len)]
    max_index_len: usize,
    /// Largest counter (in symbols) that may be materialized.
    #[arg(long, env = "ZIMIN_MAX_COUNTER_SYMBOLS", default_value_t = Limits::default().max_counter_symbols)]
    max_counter_symbols: u64,
    /// Largest number of decimal digits of any big integer.
    #[arg(long, env = "ZIMIN_MAX_DIGITS", default_value_t = Limits::default().max_digits)]
    max_digits: u64,
}

impl CapArgs {
    fn limits(self) -> Limits {
        Limits {
            max_index_len: self.max_index_len,
            max_counter_symbols: self.max_counter_symbols,
            max_digits: self.max_digits,
            ..Limits::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum ZiminCmd {
    /// Zimin type of a word (each character is a letter).
    Type { word: String },
    /// Zimin index of a word.
    Index {
        word: String,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Leftmost shortest encounter of `Z_n` or of a pattern such as "x1 x2 x1".
    Encounters {
        word: String,
        #[arg(long, conflicts_with = "pattern", required_unless_present = "pattern")]
        n: Option<u32>,
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Print `Z_n`.
    Pattern { n: u32 },
    /// Whether a pattern such as "x1 x2 x1" is unavoidable.
    Unavoidable { pattern: String },
}

#[derive(Subcommand, Debug)]
enum CountersCmd {
    /// Print the counter `C_i^n`.
    Make {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        index: BigUint,
        /// Generate symbols on the fly instead of materializing the word.
        #[arg(long)]
        stream: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Length of order-`n` counters.
    Length {
        #[arg(long)]
        order: u32,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Structure and Zimin-index checks over every counter of an order up to 4.
    Check {
        #[arg(long)]
        order: u32,
    },
}

#[derive(Subcommand, Debug)]
enum PsiCmd {
    /// Encode a ranked word such as "0_1 1_2".
    Encode { word: String },
    /// Encoded counter `ψ(C_i^n)`.
    Counter {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        index: BigUint,
    },
    /// Every parse of a binary word.
    Parses { bits: String },
    /// Whether a binary word is simple.
    Simple { bits: String },
    /// Run the ψ lemma suites.
    VerifyLemmas {
        #[arg(long, default_value = "small", value_parser = ["small", "full"])]
        scale: String,
    },
}

#[derive(Subcommand, Debug)]
enum RegularCmd {
    /// Identities on the code languages and the exact set `L·R ∩ F`.
    CheckIdentities,
    /// Equivalence of two expressions, with a shortest distinguishing word.
    Equiv {
        left: String,
        right: String,
        #[arg(long, default_value = "01")]
        alphabet: String,
    },
    /// Words of an expression in length-then-lexicographic order.
    Enumerate {
        regex: String,
        #[arg(long, default_value = "01")]
        alphabet: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct SearchArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    /// Stop after this many search nodes.
    #[arg(long, env = "ZIMIN_BUDGET_NODES")]
    budget_nodes: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long, env = "ZIMIN_BUDGET_SECONDS")]
    budget_seconds: Option<f64>,
    /// Worker threads: 1 is serial, 0 uses every core.
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// Resume from and save to this checkpoint file (serial only).
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// Exact `f(n, k)`, or a lower bound when the budget runs out.
    F(SearchArgs),
    /// Probability that a uniform word of length `2^n - 1` matches `Z_n`.
    Probability {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Subcommand, Debug)]
enum AbelianCmd {
    /// Exact `g(n, k)`, or a lower bound when the budget runs out.
    G(SearchArgs),
    /// Lower bound, closed-form upper bound and recurrence upper bound.
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Claim oracles on the enumerable grid.
    Oracles,
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    command: &'static str,
    inputs: Value,
    body: Value,
    code: i32,
    pretty: String,
}

impl Report {
    fn new(command: &'static str, inputs: Value, result: Value) -> Self {
        Report {
            command,
            inputs,
            body: json!({ "result": result }),
            code: EXIT_OK,
            pretty: String::new(),
        }
    }

    fn with(mut self, key: &str, value: Value) -> Self {
        self.body[key] = value;
        self
    }

    fn properties(command: &'static str, inputs: Value, results: Vec<PropertyResult>) -> Self {
        let passed = results.iter().all(|r| r.passed);
        let pretty = results.iter().map(|r| format!("{r}\n")).collect();
        Report {
            command,
            inputs,
            body: json!({ "result": if passed { "PASS" } else { "FAIL" }, "properties": results }),
            code: if passed { EXIT_OK } else { EXIT_FAIL },
            pretty,
        }
    }

    fn into_json(self) -> Value {
        let mut v = self.body;
        v["command"] = json!(self.command);
        v["inputs"] = self.inputs;
        v
    }
}

enum Failure {
    Usage(String),
    Resource(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CmdResult = std::result::Result<Report, Failure>;

fn letters(word: &str) -> Vec<char> {
    word.chars().collect()
}

fn pattern_arg(s: &str) -> std::result::Result<Pattern, Failure> {
    Ok(s.parse::<Pattern>()?)
}

fn zimin_cmd(cmd: ZiminCmd) -> CmdResult {
    Ok(match cmd {
        ZiminCmd::Type { word } => {
            Report::new("zimin type", json!({ "word": word }), json!(zimin_type(&letters(&word))))
        }
        ZiminCmd::Index { word, caps } => {
            let v = zimin_index_with(&letters(&word), &caps.limits())?;
            Report::new("zimin index", json!({ "word": word }), json!(v))
        }
        ZiminCmd::Encounters { word, n, pattern } => {
            let p = match (n, &pattern) {
                (Some(n), _) => zimin_pattern_with(n, &Limits::default())?,
                (None, Some(p)) => pattern_arg(p)?,
                (None, None) => return Err(Failure::Usage("give --n or --pattern".into())),
            };
            let w = letters(&word);
            let hit = encounters(&w, &p)?;
            let result = hit.is_some();
            let witness = hit.map(|(offset, m)| {
                let image: String = m.apply(&p).unwrap_or_default().into_iter().collect();
                let assignment: serde_json::Map<String, Value> = m
                    .assignment
                    .iter()
                    .map(|(v, s)| (format!("x{v}"), json!(s.iter().collect::<String>())))
                    .collect();
                json!({ "offset": offset, "image": image, "assignment": assignment })
            });
            Report::new("zimin encounters", json!({ "word": word, "pattern": p.to_string() }), json!(result))
                .with("witness", json!(witness))
        }
        ZiminCmd::Pattern { n } => {
            let p = zimin_pattern_with(n, &Limits::default())?;
            Report::new("zimin pattern", json!({ "n": n }), json!(p.to_string())).with("length", json!(p.len()))
        }
        ZiminCmd::Unavoidable { pattern } => {
            let p = pattern_arg(&pattern)?;
            Report::new(
                "zimin unavoidable",
                json!({ "pattern": p.to_string() }),
                json!(is_unavoidable_with(&p, &Limits::default())?),
            )
        }
    })
}

fn counters_cmd(cmd: CountersCmd, out: &mut dyn Write) -> std::result::Result<Option<Report>, Failure> {
    Ok(Some(match cmd {
        CountersCmd::Make {
            order,
            index,
            stream,
            caps,
        } => {
            let limits = caps.limits();
            let id = CounterId::new_with(order, index.clone(), &limits)?;
            let length = counter_length_with(order, &limits)?;
            let inputs = json!({ "order": order, "index": index.to_string() });
            if stream {
                // keys in sorted order, the word written one symbol at a time
                let head = format!(
                    "{{\"command\":\"counters make\",\"inputs\":{},\"length\":\"{}\",\"result\":\"",
                    inputs, length
                );
                let io = |e: io::Error| Failure::Io(e.to_string());
                let mut w = io::BufWriter::new(out);
                w.write_all(head.as_bytes()).map_err(io)?;
                for (i, s) in CounterStream::new(&id).enumerate() {
                    if i > 0 {
                        w.write_all(b" ").map_err(io)?;
                    }
                    write!(w, "{s}").map_err(io)?;
                }
                w.write_all(b"\"}\n").map_err(io)?;
                w.flush().map_err(io)?;
                return Ok(None);
            }
            let c = counter_with(&id, &limits)?;
            Report::new("counters make", inputs, json!(c.to_string())).with("length", json!(length.to_string()))
        }
        CountersCmd::Length { order, caps } => Report::new(
            "counters length",
            json!({ "order": order }),
            json!(counter_length_with(order, &caps.limits())?.to_string()),
        ),
        CountersCmd::Check { order } => {
            Report::properties("counters check", json!({ "order": order }), verify::counter_suite(order)?)
        }
    }))
}

fn binary(s: &str) -> std::result::Result<BinaryWord, Failure> {
    if s == "ε" {
        return Ok(BinaryWord::default());
    }
    Ok(s.parse::<BinaryWord>()?)
}

fn scale(s: &str) -> std::result::Result<Scale, Failure> {
    Ok(s.parse::<Scale>()?)
}

fn psi_cmd(cmd: PsiCmd) -> CmdResult {
    Ok(match cmd {
        PsiCmd::Encode { word } => {
            let w: RankedWord = word.parse()?;
            let bits = psi(&w);
            Report::new("psi encode", json!({ "word": w.to_string() }), json!(bits.to_string()))
                .with("length", json!(bits.len()))
        }
        PsiCmd::Counter { order, index } => {
            let bits = encoded_counter(&CounterId::new(order, index.clone())?)?;
            Report::new(
                "psi counter",
                json!({ "order": order, "index": index.to_string() }),
                json!(bits.to_string()),
            )
            .with("length", json!(bits.len()))
        }
        PsiCmd::Parses { bits } => {
            let b = binary(&bits)?;
            let ps: Vec<String> = parses(b.bits()).iter().map(|p| p.to_string()).collect();
            Report::new("psi parses", json!({ "bits": b.to_string() }), json!(ps))
                .with("simple", json!(is_simple(b.bits())))
        }
        PsiCmd::Simple { bits } => {
            let b = binary(&bits)?;
            Report::new("psi simple", json!({ "bits": b.to_string() }), json!(is_simple(b.bits())))
        }
        PsiCmd::VerifyLemmas { scale: s } => {
            let sc = scale(&s)?;
            Report::properties("psi verify-lemmas", json!({ "scale": s }), verify::psi_suite(sc))
        }
    })
}

fn regular_cmd(cmd: RegularCmd) -> CmdResult {
    Ok(match cmd {
        RegularCmd::CheckIdentities => {
            Report::properties("regular check-identities", json!({}), verify::regular_identities()?)
        }
        RegularCmd::Equiv { left, right, alphabet } => {
            let a = letters(&alphabet);
            let (l, r) = (Dfa::from_regex_str(&left, &a)?, Dfa::from_regex_str(&right, &a)?);
            let (eq, cex) = match l.equivalent(&r)? {
                Equivalence::Equivalent => (true, None),
                Equivalence::Distinguished(w) => (false, Some(w)),
            };
            Report::new(
                "regular equiv",
                json!({ "left": left, "right": right, "alphabet": alphabet }),
                json!(eq),
            )
            .with("counterexample", json!(cex))
        }
        RegularCmd::Enumerate {
            regex,
            alphabet,
            max_len,
            cap,
        } => {
            let d = Dfa::from_regex_str(&regex, &letters(&alphabet))?;
            let words = d.enumerate(max_len, cap)?;
            Report::new(
                "regular enumerate",
                json!({ "regex": regex, "alphabet": alphabet, "max_len": max_len }),
                json!(words),
            )
            .with("finite", json!(d.is_finite()))
            .with("states", json!(d.state_count()))
        }
    })
}

type SearchFn =
    fn(u32, u32, &SearchOptions, Option<&Checkpoint>) -> zimin_core::Result<(SearchCertificate, Option<Checkpoint>)>;

fn run_search(command: &'static str, args: SearchArgs, search: SearchFn) -> CmdResult {
    let mut opts = SearchOptions::serial(Budget {
        max_nodes: args.budget_nodes,
        max_seconds: args.budget_seconds,
    });
    opts.exec = Exec::from_threads(args.parallel);
    if args.checkpoint.is_some() && opts.exec.is_parallel() {
        return Err(Failure::Usage("--checkpoint needs a serial run (--parallel 1)".into()));
    }
    let resume: Option<Checkpoint> = match &args.checkpoint {
        Some(path) if path.exists() => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Io(e.to_string()))?;
            Some(serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad checkpoint: {e}")))?)
        }
        _ => None,
    };
    let (cert, cp) = search(args.n, args.k, &opts, resume.as_ref())?;
    if let (Some(path), Some(cp)) = (&args.checkpoint, &cp) {
        let text = serde_json::to_string_pretty(cp).map_err(|e| Failure::Io(e.to_string()))?;
        fs::write(path, text).map_err(|e| Failure::Io(e.to_string()))?;
    }
    let value = FValue::from_certificate(&cert);
    let mut r = Report::new(
        command,
        json!({
            "n": args.n,
            "k": args.k,
            "budget_nodes": args.budget_nodes,
            "budget_seconds": args.budget_seconds,
            "resumed": resume.is_some(),
        }),
        json!(value),
    )
    .with("certificate", json!(cert));
    if value.exact().is_none() {
        r.code = EXIT_RESOURCE;
    }
    Ok(r)
}

fn search_cmd(cmd: SearchCmd) -> CmdResult {
    match cmd {
        SearchCmd::F(args) => run_search("search f", args, longest_avoiding_resumable),
        SearchCmd::Probability { n, k } => {
            let p = match_probability(n, k)?;
            Ok(Report::new(
                "search probability",
                json!({ "n": n, "k": k }),
                json!(p.closed_form.to_string()),
            )
            .with("enumeration", json!(p.enumeration))
            .with("agrees", json!(p.enumeration_agrees()))
            .with("first_moment_threshold", json!(first_moment_threshold(n, k)?.to_string())))
        }
    }
}

fn abelian_cmd(cmd: AbelianCmd) -> CmdResult {
    match cmd {
        AbelianCmd::G(args) => run_search("abelian g", args, longest_abelian_avoiding_resumable),
        AbelianCmd::Bounds { n, k } => {
            let show = |r: zimin_core::Result<BigUint>| match r {
                Ok(v) => json!(v.to_string()),
                Err(e) => json!({ "error": e.to_string() }),
            };
            Ok(Report::new(
                "abelian bounds",
                json!({ "n": n, "k": k }),
                json!({
                    "lower": show(g_lower_bound(n, k)),
                    "upper_closed_form": show(g_upper_bound(n, k)),
                    "upper_recurrence": show(g_upper_recurrence(n, k)),
                }),
            ))
        }
        AbelianCmd::Oracles => {
            let mut rows = Vec::new();
            let mut ok = true;
            for k in 2..=3u32 {
                for h in 1..=3usize {
                    for m in 1..=3usize {
                        let (v, b) = (claim1_oracle(k, h, m)?, claim1_bound(k, m)?);
                        ok &= v <= b;
                        rows.push(json!({ "claim": 1, "k": k, "h": h, "m": m, "value": v.to_string(), "bound": b.to_string() }));
                    }
                }
                for lambda in [vec![1], vec![3], vec![1, 1], vec![2, 1], vec![1, 2], vec![2, 2], vec![1, 4]] {
                    let a = AbelianAssignment::new(lambda.clone())?;
                    let (v, b) = (claim2_oracle(k, &a)?, claim2_bound(a.n(), k)?);
                    ok &= v <= b;
                    rows.push(json!({ "claim": 2, "k": k, "lambda": lambda, "value": v.to_string(), "bound": b.to_string() }));
                }
            }
            let mut r = Report::new("abelian oracles", json!({}), json!(if ok { "PASS" } else { "FAIL" }))
                .with("cases", json!(rows));
            if !ok {
                r.code = EXIT_FAIL;
            }
            Ok(r)
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> std::result::Result<Option<Report>, Failure> {
    Ok(Some(match cli.command {
        Command::Zimin(c) => zimin_cmd(c)?,
        Command::Counters(c) => return counters_cmd(c, out),
        Command::Psi(c) => psi_cmd(c)?,
        Command::Regular(c) => regular_cmd(c)?,
        Command::Search(c) => search_cmd(c)?,
        Command::Abelian(c) => abelian_cmd(c)?,
        Command::Verify { scale: s } => {
            let report = verify::verify_all(scale(&s)?);
            Report::properties("verify", json!({ "scale": s }), report.results)
        }
    }))
}

/// Runs `argv` (including the program name), writing the JSON report to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pretty = cli.pretty;
    match dispatch(cli, out) {
        Ok(None) => EXIT_OK,
        Ok(Some(report)) => {
            let code = report.code;
            if pretty {
                let _ = err.write_all(report.pretty.as_bytes());
            }
            let v = report.into_json();
            if pretty {
                let _ = writeln!(err, "{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            }
            let _ = writeln!(out, "{v}");
            code
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Resource(m)) => {
            let _ = writeln!(err, "error: {m}");
            let _ = writeln!(out, "{}", json!({ "error": m, "kind": "resource" }));
            EXIT_RESOURCE
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
    }
}

/// Like [`run_with`], capturing both streams.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8_lossy(&out).into_owned(),
        stderr: String::from_utf8_lossy(&err).into_owned(),
    }
}
