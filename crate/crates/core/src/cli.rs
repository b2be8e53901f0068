//! The `addsys` command line.
//!
//! Exit codes: 0 on success, 1 when the answer is a mathematical negative
//! (a counterexample, a non-BNS contraction, a decomposable set that was
//! required to be indecomposable), 2 for usage and input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::decompose::{classify_system, decompose_set, refine_to_prime_radices, Classification, Decomposition};
use crate::document::{parse_system, JsonNat, SystemDocument};
use crate::radix::{RadixSeq, RadixTail};
use crate::sets::DigitSet;
use crate::system::{AdditiveSystem, Assignment};
use crate::transform::{
    bns_from_radices, bns_shape, contract, dilate_by_sequence, dilate_system, radices_prefix, stabilized_limit,
    Partition,
};
use crate::verify::{decode, encode, peel, verify_additive, CounterExample};
use crate::Nat;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "addsys", version, about = "Additive systems of nonnegative integers")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the British number system of a radix sequence.
    Bns {
        /// Comma-separated radices; end with `..` to repeat the last one.
        #[arg(long)]
        radices: String,
        /// Number of blocks before the closing ray (default: all finite radices).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Check unique representation for every n below a bound.
    Verify {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        bound: u64,
    },
    /// Write n as a sum of elements, one from each set.
    Encode {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        n: Nat,
    },
    /// Sum an assignment such as `1:1,3:4` (set index : element).
    Decode {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        assignment: String,
    },
    /// Sum the sets within each part of an index partition.
    Contract {
        #[command(flatten)]
        system: SystemArg,
        /// Groups separated by `|`, e.g. "1 2|3 4"; a trailing `..` absorbs all later indices.
        #[arg(long)]
        parts: String,
        /// Truncation bound for infinite parts that cannot be kept symbolic.
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
        /// Exit with 1 unless the result is a British number system.
        #[arg(long)]
        require_bns: bool,
    },
    /// Dilate a system by one factor or by a sequence of radices.
    Dilate {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long, conflicts_with = "seq", required_unless_present = "seq")]
        g: Option<Nat>,
        /// Comma-separated radices g_1,...,g_n for g_1 * (g_2 * ... (g_n * A)).
        #[arg(long)]
        seq: Option<String>,
    },
    /// List every decomposition of a finite set as a direct sum.
    Decompose {
        /// Comma-separated elements, including 0.
        #[arg(long)]
        set: String,
        /// Exit with 1 if the set has a decomposition.
        #[arg(long)]
        require_indecomposable: bool,
    },
    /// Look for a decomposable set among the first sets of a system.
    Classify {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        depth: usize,
    },
    /// Refine radices into primes.
    Refine {
        #[arg(long)]
        radices: String,
    },
    /// Split off the interval [0, g) from the set containing 1.
    Peel {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        bound: u64,
    },
    /// Approximate the limit of g_1 * (... (g_n * A)) as n grows.
    Limit {
        #[arg(long)]
        radices: String,
        /// Base system A (default: the trivial system (N_0)).
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        bound: Nat,
    },
}

#[derive(Debug, Args)]
struct SystemArg {
    /// JSON system file, or `-` for standard input.
    #[arg(long = "system", value_name = "FILE")]
    path: PathBuf,
}

struct Outcome {
    text: String,
    json: Value,
    code: i32,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, code: EXIT_OK }
    }

    fn negative(text: String, json: Value) -> Self {
        Outcome { text, json, code: EXIT_NEGATIVE }
    }
}

/// Runs the command line with the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut io::stdout().lock(), &mut io::stderr().lock())
}

/// Runs the command line, writing results to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string(&outcome.json).expect("json values serialize"))
            } else {
                write!(out, "{}", outcome.text)
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Bns { radices, depth } => cmd_bns(&radices, depth),
        Command::Verify { system, bound } => cmd_verify(&load(&system.path)?, bound),
        Command::Encode { system, n } => cmd_encode(&load(&system.path)?, &n),
        Command::Decode { system, assignment } => cmd_decode(&load(&system.path)?, &assignment),
        Command::Contract { system, parts, bound, require_bns } => {
            cmd_contract(&load(&system.path)?, &parts, bound, require_bns)
        }
        Command::Dilate { system, g, seq } => cmd_dilate(&load(&system.path)?, g, seq.as_deref()),
        Command::Decompose { set, require_indecomposable } => cmd_decompose(&set, require_indecomposable),
        Command::Classify { system, depth } => cmd_classify(&load(&system.path)?, depth),
        Command::Refine { radices } => cmd_refine(&radices),
        Command::Peel { system, bound } => cmd_peel(&load(&system.path)?, bound),
        Command::Limit { radices, base, nmax, bound } => {
            let base = match base {
                Some(p) => load(&p)?,
                None => AdditiveSystem::trivial(),
            };
            cmd_limit(&radices, &base, nmax, &bound)
        }
    }
}

fn load(path: &Path) -> Result<AdditiveSystem, String> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| format!("reading standard input: {e}"))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?
    };
    parse_system(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_nats(s: &str) -> Result<Vec<Nat>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| Nat::from_str(t).map_err(|_| format!("'{t}' is not a nonnegative integer")))
        .collect()
}

/// `2,3,4` is finite; `2,3,..` repeats the last radix forever.
pub fn parse_radices(s: &str) -> Result<RadixSeq, String> {
    let trimmed = s.trim();
    let (body, tail) = match trimmed.strip_suffix("...").or_else(|| trimmed.strip_suffix("..")) {
        Some(rest) => (rest, RadixTail::RepeatLast),
        None => (trimmed, RadixTail::Finite),
    };
    RadixSeq::new(parse_nats(body)?, tail).map_err(|e| e.to_string())
}

fn system_text(system: &AdditiveSystem) -> String {
    system.to_string()
}

fn system_json(system: &AdditiveSystem) -> Value {
    serde_json::to_value(SystemDocument::from_system(system)).expect("documents serialize")
}

fn nat_json(n: &Nat) -> Value {
    serde_json::to_value(JsonNat::from(n)).expect("integers serialize")
}

fn nats_json(xs: &[Nat]) -> Value {
    Value::Array(xs.iter().map(nat_json).collect())
}

fn assignment_json(a: &Assignment) -> Value {
    Value::Array(a.parts().iter().map(|(i, e)| json!({"index": i, "element": nat_json(e)})).collect())
}

fn counterexample_json(c: &CounterExample) -> Value {
    json!({
        "verified": false,
        "counterexample": {
            "n": nat_json(&c.n),
            "count": nat_json(&c.count),
            "witnesses": c.witnesses.iter().map(assignment_json).collect::<Vec<_>>(),
        }
    })
}

fn decomposition_json(d: &Decomposition) -> Value {
    json!({"left": nats_json(d.left().elements()), "right": nats_json(d.right().elements())})
}

fn cmd_bns(radices: &str, depth: Option<usize>) -> Result<Outcome, String> {
    let radices = parse_radices(radices)?;
    let depth = match (depth, radices.len()) {
        (Some(d), _) => d,
        (None, Some(n)) => n,
        (None, None) => return Err("--depth is required for repeating radices".into()),
    };
    let sys = bns_from_radices(&radices, depth).map_err(|e| e.to_string())?;
    Ok(Outcome::ok(system_text(&sys), system_json(&sys)))
}

fn cmd_verify(system: &AdditiveSystem, bound: u64) -> Result<Outcome, String> {
    Ok(match verify_additive(system, bound) {
        Ok(_) => Outcome::ok(
            format!("verified: every n < {bound} has exactly one representation\n"),
            json!({"verified": true, "bound": bound}),
        ),
        Err(c) => Outcome::negative(format!("counterexample: {c}\n"), counterexample_json(&c)),
    })
}

fn cmd_encode(system: &AdditiveSystem, n: &Nat) -> Result<Outcome, String> {
    let bound = u64::try_from(n + 1u32).map_err(|_| format!("{n} is too large to verify densely"))?;
    let verified = match verify_additive(system, bound) {
        Ok(v) => v,
        Err(c) => return Ok(Outcome::negative(format!("counterexample: {c}\n"), counterexample_json(&c))),
    };
    let a = encode(&verified, n).map_err(|e| e.to_string())?;
    Ok(Outcome::ok(format!("{n} = {a}\n"), json!({"n": nat_json(n), "assignment": assignment_json(&a)})))
}

fn parse_assignment(s: &str) -> Result<Assignment, String> {
    let mut a = Assignment::new();
    for pair in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (i, e) = pair.split_once(':').ok_or_else(|| format!("'{pair}' is not of the form index:element"))?;
        let i: usize = i.trim().parse().map_err(|_| format!("bad set index '{i}'"))?;
        let e = Nat::from_str(e.trim()).map_err(|_| format!("bad element '{e}'"))?;
        if a.get(i).is_some() {
            return Err(format!("set {i} appears twice"));
        }
        a.insert(i, e);
    }
    Ok(a)
}

fn cmd_decode(system: &AdditiveSystem, assignment: &str) -> Result<Outcome, String> {
    let a = parse_assignment(assignment)?;
    let n = decode(system, &a).map_err(|e| e.to_string())?;
    Ok(Outcome::ok(format!("{n}\n"), json!({"n": nat_json(&n)})))
}

fn cmd_contract(system: &AdditiveSystem, parts: &str, bound: u64, require_bns: bool) -> Result<Outcome, String> {
    let partition = Partition::from_str(parts).map_err(|e| e.to_string())?;
    let result = contract(system, &partition, bound).map_err(|e| e.to_string())?;
    let shape = bns_shape(&result);
    let mut text = system_text(&result);
    if let Some(s) = &shape {
        let radices: Vec<String> = s.radices.prefix().iter().map(Nat::to_string).collect();
        let dots = if s.radices.is_finite() { "" } else { ",.." };
        text.push_str(&format!("British number system with radices {}{dots}\n", radices.join(",")));
    } else {
        text.push_str("not a British number system\n");
    }
    let json = json!({"system": system_json(&result), "bns": shape.is_some()});
    Ok(if require_bns && shape.is_none() { Outcome::negative(text, json) } else { Outcome::ok(text, json) })
}

fn cmd_dilate(system: &AdditiveSystem, g: Option<Nat>, seq: Option<&str>) -> Result<Outcome, String> {
    let result = match (g, seq) {
        (Some(g), _) => dilate_system(system, &g),
        (None, Some(seq)) => dilate_by_sequence(system, &parse_nats(seq)?),
        (None, None) => return Err("one of --g or --seq is required".into()),
    }
    .map_err(|e| e.to_string())?;
    Ok(Outcome::ok(system_text(&result), system_json(&result)))
}

fn cmd_decompose(set: &str, require_indecomposable: bool) -> Result<Outcome, String> {
    let a = DigitSet::from_naturals(parse_nats(set)?).map_err(|e| e.to_string())?;
    let ds = decompose_set(&a);
    let mut text = String::new();
    if ds.is_empty() {
        text.push_str(&format!("{a} is indecomposable\n"));
    }
    for d in &ds {
        text.push_str(&format!("{d}\n"));
    }
    let json = json!({
        "set": nats_json(a.elements()),
        "decompositions": ds.iter().map(decomposition_json).collect::<Vec<_>>(),
    });
    Ok(if require_indecomposable && !ds.is_empty() { Outcome::negative(text, json) } else { Outcome::ok(text, json) })
}

fn cmd_classify(system: &AdditiveSystem, depth: usize) -> Result<Outcome, String> {
    Ok(match classify_system(system, depth).map_err(|e| e.to_string())? {
        Classification::Indecomposable => Outcome::ok(
            format!("the first {depth} sets are indecomposable\n"),
            json!({"indecomposable": true, "depth": depth}),
        ),
        Classification::Decomposable { index, witness } => Outcome::negative(
            format!("set {index} decomposes as {witness}\n"),
            json!({"indecomposable": false, "depth": depth, "index": index, "witness": decomposition_json(&witness)}),
        ),
    })
}

fn cmd_refine(radices: &str) -> Result<Outcome, String> {
    let radices = parse_radices(radices)?;
    let r = refine_to_prime_radices(&radices);
    let refined: Vec<String> = r.refined.prefix().iter().map(Nat::to_string).collect();
    let dots = if r.refined.is_finite() { "" } else { ",.." };
    let mut text = format!("refined: {}{dots}\ngrouping: {}\n", refined.join(","), r.grouping);
    if r.prefix_only {
        text.push_str("note: the repeating composite radix was refined in the prefix only\n");
    }
    let mut json = json!({
        "refined": nats_json(r.refined.prefix()),
        "grouping": r.grouping.parts().iter().map(|p| p.included().to_vec()).collect::<Vec<_>>(),
    });
    if !r.refined.is_finite() {
        json["tail"] = json!("repeat-last");
    }
    if r.prefix_only {
        json["prefixOnly"] = json!(true);
    }
    Ok(Outcome::ok(text, json))
}

fn cmd_peel(system: &AdditiveSystem, bound: u64) -> Result<Outcome, String> {
    let verified = match verify_additive(system, bound) {
        Ok(v) => v,
        Err(c) => return Ok(Outcome::negative(format!("counterexample: {c}\n"), counterexample_json(&c))),
    };
    let p = peel(&verified, bound).map_err(|e| e.to_string())?;
    let mut text = format!("i1 = {}, g = {}\nhead = {}\n", p.i1, p.g, p.head);
    if p.dilation_case {
        text.push_str(&format!("the system is {} times the following system\n", p.g));
    }
    text.push_str(&system_text(&p.peeled));
    let json = json!({
        "i1": p.i1,
        "g": nat_json(&p.g),
        "dilationCase": p.dilation_case,
        "head": serde_json::to_value(crate::document::SetDescriptor::from_set(&p.head)).expect("sets serialize"),
        "peeled": system_json(&p.peeled),
    });
    Ok(Outcome::ok(text, json))
}

fn cmd_limit(radices: &str, base: &AdditiveSystem, nmax: usize, bound: &Nat) -> Result<Outcome, String> {
    let radices = parse_radices(radices)?;
    let gs = radices_prefix(&radices, nmax)
        .ok_or_else(|| format!("--nmax {nmax} needs at least {nmax} radices; end the list with .. to repeat"))?;
    for n in 1..=nmax {
        dilate_by_sequence(base, &gs[..n]).map_err(|e| e.to_string())?;
    }
    let family = |n: usize| dilate_by_sequence(base, &gs[..n]).expect("checked above");
    let limit = stabilized_limit(family, nmax, bound);
    let mut text = format!(
        "approximate limit over n in [{}, {}], elements below {}:\n",
        limit.window.0, limit.window.1, limit.bound
    );
    for s in &limit.sets {
        let elems: Vec<String> = s.elements.iter().map(Nat::to_string).collect();
        let dots = if s.infinite { ", ..." } else { "" };
        text.push_str(&format!("{{{}{dots}}}\n", elems.join(",")));
    }
    let json = json!({
        "window": [limit.window.0, limit.window.1],
        "bound": nat_json(&limit.bound),
        "approximate": true,
        "sets": limit.sets.iter().map(|s| json!({
            "elements": nats_json(&s.elements),
            "firstSeen": s.first_seen,
            "infinite": s.infinite,
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(text, json))
}
