//! Command-line front end. [`run`] does all the work so it can be driven
//! from tests; the binary only forwards `argv` and the exit code.

pub mod literal;
pub mod table;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::pattern::{find_encounter, is_instance, is_unavoidable};
use crate::series::rat::{decimal_unit, parse_rat, to_decimal, Rat};
use crate::series::{
    empirical_density, iz2, iz3, iz3_bounds, izn_generic_bounds, izn_upper, BoundsResult, DensityTarget, Mode,
};
use crate::seq::{SeqKind, SeqStore};
use crate::word::is_zimin_instance;
use literal::{Alphabet, PatternLiteral};
use table::TableId;

#[derive(Parser, Debug)]
#[command(name = "zimin", version, about = "Pattern instances, Zimin-word densities and their counting sequences")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Decimal places in printed values.
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// JSON file persisting sequence tables between runs.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Instance, encounter, unavoidability and Zimin membership queries.
    Check {
        #[command(subcommand)]
        query: CheckQuery,
    },
    /// Dump a counting sequence.
    Seq {
        /// a, c, d, b or bhat.
        #[arg(value_parser = parse_kind)]
        kind: SeqKind,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Context length (all kinds but a).
        #[arg(long)]
        ell: Option<usize>,
        /// Last index printed.
        #[arg(long)]
        max: usize,
    },
    /// Densities and their bounds.
    Density {
        #[command(subcommand)]
        target: DensityQuery,
    },
    /// Run consistency suites.
    Verify {
        #[arg(value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
    },
    /// Recompute a reference table.
    Table {
        #[arg(value_enum)]
        which: TableId,
    },
}

#[derive(Args, Debug, Clone)]
pub struct WordArgs {
    #[arg(long)]
    pub word: String,
    /// Comma-separated letter tokens; defaults to the characters of the word.
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Alphabet size, if larger than the letters used.
    #[arg(long, default_value_t = 0)]
    pub q: u32,
}

#[derive(Subcommand, Debug)]
pub enum CheckQuery {
    /// Is the word an instance of the pattern?
    Instance {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        pattern: String,
    },
    /// Does some factor of the word instance the pattern?
    Encounter {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        pattern: String,
    },
    /// Is the pattern unavoidable?
    Unavoidable {
        #[arg(long)]
        pattern: String,
    },
    /// Is the word an instance of `Z_n`?
    Zimin {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleMode {
    Exhaustive,
    Montecarlo,
}

#[derive(Subcommand, Debug)]
pub enum DensityQuery {
    /// Limit density of `Z_2`-instances.
    Z2 {
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Target interval width; defaults from --digits.
        #[arg(long)]
        eps: Option<String>,
    },
    /// Limit density of `Z_3`-instances.
    Z3 {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        eps: Option<String>,
        /// Fixed context cap N (with --m); skips auto-tuning.
        #[arg(long, requires = "m")]
        n_cap: Option<usize>,
        /// Fixed series parameter M (with --n-cap).
        #[arg(long, requires = "n_cap")]
        m: Option<usize>,
    },
    /// Closed-form lower bound and nested-sum upper bound for `Z_n`.
    ZnBounds {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Comma-separated caps N_1,..,N_{n-2}.
        #[arg(long, value_delimiter = ',')]
        caps: Vec<usize>,
    },
    /// Fraction of length-`len` words that are instances.
    Empirical {
        /// Pattern literal, e.g. `abacaba`.
        #[arg(long, conflicts_with = "zimin", required_unless_present = "zimin")]
        pattern: Option<String>,
        /// Zimin index instead of a pattern.
        #[arg(long)]
        zimin: Option<u32>,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Word length.
        #[arg(long)]
        len: usize,
        #[arg(long, value_enum, default_value_t = SampleMode::Exhaustive)]
        mode: SampleMode,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
}

fn parse_kind(s: &str) -> std::result::Result<SeqKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FALSE: i32 = 1;
    pub const FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const DENSITY: i32 = 3;
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (result, fail_code) = match &cli.command {
        Command::Check { query } => (check(query, &cli.common), exit::USAGE),
        Command::Seq { kind, q, ell, max } => (seq(*kind, *q, *ell, *max, &cli.common), exit::USAGE),
        Command::Density { target } => (density(target, &cli.common), exit::DENSITY),
        Command::Verify { suite } => (verify::run(*suite, cli.common.format), exit::USAGE),
        Command::Table { which } => (table_cmd(*which, cli.common.format), exit::DENSITY),
    };
    match result {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return exit::USAGE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            fail_code
        }
    }
}

type Output = Result<(String, i32)>;

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn word_of(args: &WordArgs) -> Result<(crate::word::Word, Alphabet)> {
    let alphabet = match &args.alphabet {
        Some(list) => Alphabet::parse_list(list)?,
        None => Alphabet::infer(&args.word)?,
    };
    let w = alphabet.encode(&args.word, args.q)?;
    Ok((w, alphabet))
}

fn verdict(value: bool) -> i32 {
    if value {
        exit::OK
    } else {
        exit::FALSE
    }
}

fn render_witness(pairs: &[(String, String)], format: Format) -> String {
    match format {
        Format::Csv => pairs.iter().map(|(v, i)| format!("{v},{i}\n")).collect(),
        _ => pairs.iter().map(|(v, i)| format!("φ({v}) = {i}\n")).collect(),
    }
}

fn check(query: &CheckQuery, common: &Common) -> Output {
    let f = common.format;
    match query {
        CheckQuery::Instance { word, pattern } | CheckQuery::Encounter { word, pattern } => {
            let (w, alphabet) = word_of(word)?;
            let p = PatternLiteral::parse(pattern)?;
            let encounter = matches!(query, CheckQuery::Encounter { .. });
            let found = if encounter {
                find_encounter(&w, &p.pattern)?.map(|e| (Some((e.start, e.end)), e.morphism))
            } else {
                is_instance(&w, &p.pattern)?.map(|m| (None, m))
            };
            let text = match (&found, f) {
                (_, Format::Json) => {
                    let (span, witness) = match &found {
                        Some((span, phi)) => (
                            span.map(|(s, e)| json!({"start": s, "end": e})),
                            Some(
                                p.witness(phi, &alphabet)
                                    .into_iter()
                                    .map(|(v, i)| json!({"variable": v, "image": i}))
                                    .collect::<Vec<_>>(),
                            ),
                        ),
                        None => (None, None),
                    };
                    json_text(&json!({"result": found.is_some(), "span": span, "witness": witness}))
                }
                (None, _) => "false\n".into(),
                (Some((span, phi)), _) => {
                    let mut s = String::from("true\n");
                    if let Some((a, b)) = span {
                        s.push_str(&format!("factor [{a}, {b}) = {}\n", alphabet.decode(&w.letters()[*a..*b])));
                    }
                    s + &render_witness(&p.witness(phi, &alphabet), f)
                }
            };
            Ok((text, verdict(found.is_some())))
        }
        CheckQuery::Unavoidable { pattern } => {
            let p = PatternLiteral::parse(pattern)?;
            let v = is_unavoidable(&p.pattern)?;
            let text = match f {
                Format::Json => json_text(&json!({"result": v})),
                _ => format!("{v}\n"),
            };
            Ok((text, verdict(v)))
        }
        CheckQuery::Zimin { word, n } => {
            let (w, _) = word_of(word)?;
            if *n > crate::word::MAX_ZIMIN_INDEX {
                return Err(Error::Size(format!("Zimin index {n} exceeds {}", crate::word::MAX_ZIMIN_INDEX)));
            }
            let v = is_zimin_instance(&w, *n);
            let text = match f {
                Format::Json => json_text(&json!({"result": v})),
                _ => format!("{v}\n"),
            };
            Ok((text, verdict(v)))
        }
    }
}

fn seq(kind: SeqKind, q: u32, ell: Option<usize>, max: usize, common: &Common) -> Output {
    let ell = if kind.needs_ell() { ell } else { None };
    let store = match &common.cache {
        Some(path) => SeqStore::load(path)?,
        None => SeqStore::new(),
    };
    let table = store.get(kind, q, ell, max)?;
    if let Some(path) = &common.cache {
        store.save(path)?;
    }
    let values: Vec<String> = table.values().iter().map(|v| v.to_str_radix(10)).collect();
    let ell_text = ell.map_or(String::new(), |l| l.to_string());
    let text = match common.format {
        Format::Text => values.iter().map(|v| format!("{v}\n")).collect(),
        Format::Csv => {
            let mut s = String::from("kind,q,ell,m,value\n");
            for (m, v) in values.iter().enumerate() {
                s.push_str(&format!("{kind},{q},{ell_text},{m},{v}\n"));
            }
            s
        }
        Format::Json => json_text(&json!({
            "key": format!("{kind}:{q}:{}", ell.unwrap_or(0)),
            "kind": kind,
            "q": q,
            "ell": ell,
            "values": values,
        })),
        Format::Md => {
            let mut s = String::from("| m | value |\n|---|---|\n");
            for (m, v) in values.iter().enumerate() {
                s.push_str(&format!("| {m} | {v} |\n"));
            }
            s
        }
    };
    Ok((text, exit::OK))
}

/// Tightens a bounds computation until both ends round to the same
/// `digits`-place decimal.
pub fn settle<F>(f: F, digits: u32) -> Result<String>
where
    F: Fn(&Rat) -> Result<BoundsResult>,
{
    let (b, value) = settle_bounds(f, digits, None)?;
    value.ok_or_else(|| {
        let (lo, hi) = b.decimals(digits);
        Error::Convergence(format!("bounds {lo} and {hi} do not agree to {digits} places"))
    })
}

fn settle_bounds<F>(f: F, digits: u32, eps: Option<Rat>) -> Result<(BoundsResult, Option<String>)>
where
    F: Fn(&Rat) -> Result<BoundsResult>,
{
    if let Some(eps) = eps {
        let b = f(&eps)?;
        let v = b.rounded(digits);
        return Ok((b, v));
    }
    let mut last = None;
    for extra in [2u32, 6, 12] {
        let b = f(&decimal_unit(digits + extra))?;
        if let Some(v) = b.rounded(digits) {
            return Ok((b, Some(v)));
        }
        last = Some(b);
    }
    Ok((last.expect("at least one attempt"), None))
}

fn bounds_text(b: &BoundsResult, value: Option<String>, digits: u32, format: Format) -> String {
    let (lo, hi) = b.decimals(digits);
    let n = b.params.n.map_or("-".into(), |n| n.to_string());
    let m = b.params.m.map_or("-".into(), |m| m.to_string());
    match format {
        Format::Json => json_text(&b.to_json(digits)),
        Format::Csv => format!("target,q,N,M,lower,upper\n{},{},{n},{m},{lo},{hi}\n", b.target, b.q),
        Format::Md => format!(
            "| target | q | N | M | lower | upper |\n|---|---|---|---|---|---|\n| {} | {} | {n} | {m} | {lo} | {hi} |\n",
            b.target, b.q
        ),
        Format::Text => format!(
            "{}\nlower {lo}\nupper {hi}\nparams target={} q={} N={n} M={m}\n",
            value.unwrap_or_else(|| format!("[{lo}, {hi}]")),
            b.target,
            b.q
        ),
    }
}

fn density(target: &DensityQuery, common: &Common) -> Output {
    let f = common.format;
    match target {
        DensityQuery::Z2 { q, eps } => {
            let digits = common.digits.unwrap_or(7);
            let eps = eps.as_deref().map(parse_rat).transpose()?;
            let (b, v) = settle_bounds(|e| iz2(*q, e), digits, eps)?;
            Ok((bounds_text(&b, v, digits, f), exit::OK))
        }
        DensityQuery::Z3 { q, eps, n_cap, m } => {
            let digits = common.digits.unwrap_or(8);
            let (b, v) = match (n_cap, m) {
                (Some(n), Some(m)) => {
                    let b = iz3_bounds(*q, *n, *m)?;
                    let v = b.rounded(digits);
                    (b, v)
                }
                _ => {
                    let eps = eps.as_deref().map(parse_rat).transpose()?;
                    settle_bounds(|e| iz3(*q, e), digits, eps)?
                }
            };
            Ok((bounds_text(&b, v, digits, f), exit::OK))
        }
        DensityQuery::ZnBounds { n, q, caps } => {
            let digits = common.digits.unwrap_or(8);
            let generic = izn_generic_bounds(*n, *q)?;
            let upper = izn_upper(*n, *q, caps)?;
            let caps_text = caps.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            let (lo, gen_hi, hi) = (
                to_decimal(&generic.lower, digits),
                to_decimal(&generic.upper, digits),
                to_decimal(&upper, digits),
            );
            let text = match f {
                Format::Json => json_text(&json!({
                    "target": format!("z{n}"),
                    "q": q,
                    "caps": caps,
                    "lower": generic.lower.to_string(),
                    "upper": upper.to_string(),
                    "generic_upper": generic.upper.to_string(),
                    "decimal": {"lower": lo, "upper": hi, "generic_upper": gen_hi, "digits": digits},
                })),
                Format::Csv => format!("n,q,caps,lower,upper,generic_upper\n{n},{q},\"{caps_text}\",{lo},{hi},{gen_hi}\n"),
                Format::Md => format!(
                    "| n | q | caps | lower | upper | generic upper |\n|---|---|---|---|---|---|\n| {n} | {q} | {caps_text} | {lo} | {hi} | {gen_hi} |\n"
                ),
                Format::Text => format!(
                    "lower {lo}\nupper {hi}\ngeneric-upper {gen_hi}\nparams target=z{n} q={q} caps={caps_text}\n"
                ),
            };
            Ok((text, exit::OK))
        }
        DensityQuery::Empirical { pattern, zimin, q, len, mode, samples } => {
            let digits = common.digits.unwrap_or(6);
            let target = match (pattern, zimin) {
                (Some(p), _) => DensityTarget::from_pattern(PatternLiteral::parse(p)?.pattern)?,
                (None, Some(k)) => DensityTarget::Zimin(*k),
                (None, None) => return Err(Error::Precondition("need --pattern or --zimin".into())),
            };
            let mode = match mode {
                SampleMode::Exhaustive => Mode::Exhaustive,
                SampleMode::Montecarlo => Mode::MonteCarlo,
            };
            let est = empirical_density(&target, *q, *len, mode, *samples, common.seed)?;
            let value = to_decimal(&est.value, digits);
            let seed = est.seed.map_or("-".into(), |s| s.to_string());
            let mode_name = match est.mode {
                Mode::Exhaustive => "exhaustive",
                Mode::MonteCarlo => "montecarlo",
            };
            let text = match f {
                Format::Json => {
                    let mut v = serde_json::to_value(&est).map_err(|e| Error::Io(e.to_string()))?;
                    v["decimal"] = json!({"value": value, "digits": digits});
                    json_text(&v)
                }
                Format::Csv => format!(
                    "mode,q,n,hits,samples,seed,value\n{mode_name},{q},{len},{},{},{seed},{value}\n",
                    est.hits, est.samples
                ),
                Format::Md => format!(
                    "| mode | q | n | hits | samples | seed | value |\n|---|---|---|---|---|---|---|\n| {mode_name} | {q} | {len} | {} | {} | {seed} | {value} |\n",
                    est.hits, est.samples
                ),
                Format::Text => format!(
                    "{value}\nexact {}/{}\nparams mode={mode_name} q={q} n={len} samples={} seed={seed}\n",
                    est.hits, est.samples, est.samples
                ),
            };
            Ok((text, exit::OK))
        }
    }
}

fn table_cmd(which: TableId, format: Format) -> Output {
    let t = table::build(which)?;
    let text = match format {
        Format::Text => t.to_text(),
        Format::Csv => t.to_csv(),
        Format::Md => t.to_markdown(),
        Format::Json => json_text(&serde_json::to_value(&t).map_err(|e| Error::Io(e.to_string()))?),
    };
    Ok((text, exit::OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("zimin").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes_follow_the_answer() {
        assert_eq!(call(&["check", "unavoidable", "--pattern", "aba"]).0, exit::OK);
        assert_eq!(call(&["check", "unavoidable", "--pattern", "aa"]).0, exit::FALSE);
        assert_eq!(call(&["check", "nothing"]).0, exit::USAGE);
        assert_eq!(call(&["density", "z2", "--q", "1"]).0, exit::DENSITY);
    }

    #[test]
    fn freezer_witness() {
        let (code, out, _) = call(&["check", "instance", "--word", "freezer", "--pattern", "cool"]);
        assert_eq!(code, exit::OK);
        assert_eq!(out, "true\nφ(c) = fr\nφ(o) = e\nφ(l) = zer\n");
    }

    #[test]
    fn settle_rounds_to_digits() {
        assert_eq!(settle(|eps| iz2(2, eps), 5).unwrap(), "0.73221");
    }

    #[test]
    fn seq_csv_rows() {
        let (code, out, _) = call(&["seq", "b", "--q", "2", "--ell", "1", "--max", "4", "--format", "csv"]);
        assert_eq!(code, exit::OK);
        assert_eq!(out.lines().last(), Some("b,2,1,4,3"));
    }

    #[test]
    fn bad_eps_is_a_density_error() {
        let (code, _, err) = call(&["density", "z3", "--eps", "nope"]);
        assert_eq!(code, exit::DENSITY);
        assert!(err.starts_with("error:"));
    }
}
