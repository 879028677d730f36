//! Consistency suites: recursions against enumeration, the five-case
//! partition, alternating-series bracketing, and the reference tables.

use num_traits::Signed;
use serde::Serialize;
use serde_json::json;

use super::table::{self, TableId};
use super::{exit, json_text, Format, Output};
use crate::error::Result;
use crate::series::rat::{cmp_rat, decimal_unit, parse_rat, Rat};
use crate::series::z3::series_terms;
use crate::series::{iz2, iz2_partial, iz2_term, iz3_bounds, Series};
use crate::seq::oracle::{self, bifix_free_words, BifixCase};
use crate::seq::{a_seq, b_seq, bhat_seq, cd_seq};
use crate::word::{bifix_lengths, is_zimin_instance_letters, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Recursions,
    Cases,
    Sandwich,
    Tables,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub pass: bool,
    pub checks: u64,
    pub detail: String,
}

struct Tally {
    checks: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    fn report(self, suite: &'static str, summary: String) -> SuiteReport {
        let pass = self.failures.is_empty();
        let detail = if pass { summary } else { self.failures.join("; ") };
        SuiteReport { suite, pass, checks: self.checks, detail }
    }
}

fn guarded(suite: &'static str, body: impl FnOnce() -> Result<SuiteReport>) -> SuiteReport {
    body().unwrap_or_else(|e| SuiteReport { suite, pass: false, checks: 0, detail: format!("error: {e}") })
}

/// Recursions against brute-force counts, two contexts per length.
pub fn recursions() -> SuiteReport {
    guarded("recursions", || {
        let mut t = Tally::new();
        for (q, max) in [(2u32, 20usize), (3, 12)] {
            let a = a_seq(q, max)?;
            for n in 0..=max {
                let o = oracle::oracle_bifix_free(q, n)?;
                t.check(a.get(n) == Some(&o), || format!("a q={q} n={n}"));
            }
        }
        for (q, max) in [(2u32, 14usize), (3, 9)] {
            for ell in 1..=3 {
                let b = b_seq(q, ell, max)?;
                let (c, d) = cd_seq(q, ell, max)?;
                let bh = bhat_seq(q, ell, max)?;
                for l in bifix_free_words(q, ell, 2)? {
                    for m in 0..=max {
                        let ob = oracle::oracle_b(q, &l, m)?;
                        let (oc, od) = oracle::oracle_cd(q, &l, m)?;
                        let obh = oracle::oracle_bhat(q, &l, m)?;
                        t.check(b.get(m) == Some(&ob), || format!("b q={q} L={l} m={m}"));
                        t.check(c.get(m) == Some(&oc) && d.get(m) == Some(&od), || format!("c/d q={q} L={l} m={m}"));
                        t.check(bh.get(m) == Some(&obh), || format!("bhat q={q} L={l} m={m}"));
                        t.check(bh.get(m) >= b.get(m), || format!("bhat < b at q={q} ell={ell} m={m}"));
                    }
                }
            }
        }
        let n = t.checks;
        Ok(t.report("recursions", format!("{n} checks against enumeration")))
    })
}

fn has_z2_bifix(w: &[u8]) -> bool {
    bifix_lengths(w).into_iter().any(|k| is_zimin_instance_letters(&w[..k], 2))
}

/// Every binary word `0 A 0` of length up to `max_len` with a `Z_2`-bifix
/// falls in exactly one case.
pub fn cases_up_to(max_len: usize) -> SuiteReport {
    guarded("cases", || {
        let mut t = Tally::new();
        let l = Word::new(vec![0], 2)?;
        let mut counts = [0u64; 5];
        for len in 3..=max_len {
            for bits in 0u64..1 << (len - 2) {
                let mut letters = vec![0u8; len];
                for (i, slot) in letters[1..len - 1].iter_mut().enumerate() {
                    *slot = ((bits >> i) & 1) as u8;
                }
                let expect = has_z2_bifix(&letters);
                let w = Word::new(letters, 2)?;
                match oracle::oracle_case_classify(&w, &l) {
                    Ok(Some(case)) => {
                        counts[BifixCase::ALL.iter().position(|c| *c == case).expect("listed")] += 1;
                        t.check(expect, || format!("{w} classified without a Z_2-bifix"));
                    }
                    Ok(None) => t.check(!expect, || format!("{w} has a Z_2-bifix but no case")),
                    Err(e) => t.check(false, || format!("{w}: {e}")),
                }
            }
        }
        let summary = BifixCase::ALL
            .iter()
            .zip(counts)
            .map(|(c, n)| format!("{}={n}", c.tag()))
            .collect::<Vec<_>>()
            .join(" ");
        Ok(t.report("cases", format!("exactly one case per word ({summary})")))
    })
}

pub fn cases() -> SuiteReport {
    cases_up_to(12)
}

fn alternates_and_shrinks(terms: &[Rat]) -> bool {
    terms.iter().enumerate().all(|(i, x)| x.is_positive() == (i % 2 == 0))
        && terms.windows(2).all(|p| cmp_rat(&p[1].abs(), &p[0].abs()).is_lt())
}

/// Alternating brackets for the series, and nesting of the `Z_3` bounds.
pub fn sandwich() -> SuiteReport {
    guarded("sandwich", || {
        let mut t = Tally::new();
        for q in 2..=8u32 {
            let f: Vec<Rat> = (0..=8).map(|i| iz2_term(q, i)).collect::<Result<_>>()?;
            t.check(alternates_and_shrinks(&f), || format!("F terms q={q}"));
            let s: Vec<Rat> = (0..=10).map(|j| iz2_partial(q, j)).collect::<Result<_>>()?;
            for j in 0..=10 {
                for k in 0..=10 {
                    if j % 2 == 1 && k % 2 == 0 {
                        t.check(s[j] < s[k], || format!("Z_2 partials q={q} J={j} vs {k}"));
                    }
                }
            }
            let b = iz2(q, &decimal_unit(10))?;
            let (lo, hi) = (Rat::new(1.into(), q.into()), Rat::new(1.into(), (q - 1).into()));
            t.check(lo < b.lower && b.upper < hi, || format!("1/q < I(Z_2) < 1/(q-1) at q={q}"));
        }
        for q in [2u32, 3] {
            for ell in 1..=3 {
                for which in [Series::G, Series::H] {
                    let st = series_terms(which, ell, q, 2, 9);
                    let terms: Vec<Rat> = (0..9).map(|i| st.term(i)).collect();
                    t.check(alternates_and_shrinks(&terms), || format!("{which:?} terms q={q} ell={ell}"));
                }
            }
        }
        let grid: Vec<(usize, usize)> = [8usize, 16, 31]
            .iter()
            .flat_map(|&n| [2usize, 4, 6].map(|m| (n, m)))
            .collect();
        let bounds = grid
            .iter()
            .map(|&(n, m)| iz3_bounds(2, n, m).map(|b| ((n, m), b)))
            .collect::<Result<Vec<_>>>()?;
        for (p, b) in &bounds {
            t.check(cmp_rat(&b.lower, &b.upper).is_lt(), || format!("Z_3 lower < upper at {p:?}"));
            for (p2, b2) in &bounds {
                if p != p2 && p.0 <= p2.0 && p.1 <= p2.1 {
                    t.check(b2.inside(b), || format!("Z_3 bounds at {p2:?} not inside {p:?}"));
                }
            }
        }
        let n = t.checks;
        Ok(t.report("sandwich", format!("{n} bracketing checks")))
    })
}

/// Printed values, as `(table, row, values)`.
const PRINTED: &[(TableId, usize, &[&str])] = &[
    (TableId::T1, 0, &["0.7322132", "0.4430202", "0.3122520", "0.2399355", "0.1944229"]),
    (TableId::T1, 1, &["0.1194437", "0.0183514", "0.0051925", "0.0019974", "0.0009253"]),
    (TableId::T3, 0, &["0.50000", ".33333", ".25000", ".20000", ".16667", ".14286", ".12500"]),
    (TableId::T3, 1, &["0.73221", ".44302", ".31225", ".23994", ".19442", ".16326", ".14062"]),
    (TableId::T3, 2, &["0.87500", ".46296", ".31771", ".24200", ".19537", ".16375", ".14090"]),
    (TableId::T3, 3, &["1.00000", ".50000", ".33333", ".25000", ".20000", ".16667", ".14286"]),
    (TableId::T4, 0, &["0.11944370", "0.01835140", "0.00519251", "0.00199739", "0.00092532"]),
];

fn within_ulp(got: &str, printed: &str) -> Result<bool> {
    let digits = printed.rsplit('.').next().map_or(0, str::len) as u32;
    let diff = parse_rat(got)? - parse_rat(printed)?;
    Ok(diff.abs() <= decimal_unit(digits))
}

/// The reference tables against their printed digits (±1 in the last place).
pub fn tables() -> SuiteReport {
    guarded("tables", || {
        let mut t = Tally::new();
        let built = [TableId::T1, TableId::T2, TableId::T3, TableId::T4]
            .into_iter()
            .map(|id| table::build(id).map(|d| (id, d)))
            .collect::<Result<Vec<_>>>()?;
        let find = |id: TableId| &built.iter().find(|(i, _)| *i == id).expect("built").1;
        for (id, row, printed) in PRINTED {
            let cells = &find(*id).rows[*row][1..];
            for (q, (got, want)) in (2..).zip(cells.iter().zip(printed.iter())) {
                t.check(within_ulp(got, want)?, || format!("{id:?} row {row} q={q}: {got} vs {want}"));
            }
        }
        let (t1, t2) = (find(TableId::T1), find(TableId::T2));
        t.check(t2.rows[0][..t1.header.len()] == t1.rows[0][..], || "T2 and T1 disagree on I(Z_2,q)".into());
        let n = t.checks;
        Ok(t.report("tables", format!("{n} cells match the printed digits")))
    })
}

pub fn reports(suite: Suite) -> Vec<SuiteReport> {
    match suite {
        Suite::Recursions => vec![recursions()],
        Suite::Cases => vec![cases()],
        Suite::Sandwich => vec![sandwich()],
        Suite::Tables => vec![tables()],
        Suite::All => vec![recursions(), cases(), sandwich(), tables()],
    }
}

pub(super) fn run(suite: Suite, format: Format) -> Output {
    let reports = reports(suite);
    let pass = reports.iter().all(|r| r.pass);
    let text = match format {
        Format::Json => json_text(&json!({ "pass": pass, "suites": reports })),
        Format::Csv => {
            let mut s = String::from("suite,pass,checks,detail\n");
            for r in &reports {
                s.push_str(&format!("{},{},{},\"{}\"\n", r.suite, r.pass, r.checks, r.detail.replace('"', "'")));
            }
            s
        }
        Format::Md => {
            let mut s = String::from("| suite | result | checks | detail |\n|---|---|---|---|\n");
            for r in &reports {
                let verdict = if r.pass { "PASS" } else { "FAIL" };
                s.push_str(&format!("| {} | {verdict} | {} | {} |\n", r.suite, r.checks, r.detail));
            }
            s
        }
        Format::Text => reports
            .iter()
            .map(|r| format!("{} {}: {}\n", if r.pass { "PASS" } else { "FAIL" }, r.suite, r.detail))
            .collect(),
    };
    Ok((text, if pass { exit::OK } else { exit::FAILED }))
}
