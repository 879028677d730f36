//! Acceptance criteria 1-8. Runs without the libtest harness so each
//! criterion always prints one PASS/FAIL line; exits nonzero on any failure.

use std::time::{Duration, Instant};

use zimin::cli;
use zimin::seq::oracle::bifix_free_words;
use zimin::seq::{a_seq, b_seq, bhat_seq, oracle_b, oracle_bifix_free};
use zimin::series::empirical::{empirical_exhaustive, empirical_monte_carlo};
use zimin::series::rat::{decimal_unit, parse_rat};
use zimin::series::{iz3, izn_generic_bounds, izn_upper, z2_exact_prefix_density, DensityTarget};
use zimin::Result;

type Outcome = Result<(bool, String)>;
type Criterion = (u32, fn() -> Outcome, Duration);

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("zimin").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn printed_digits(kind: &str, digits: &str, expected: &[&str]) -> Outcome {
    let tol = decimal_unit(digits.parse().expect("digit count"));
    let mut bad = Vec::new();
    for (q, want) in (2..).zip(expected) {
        let (code, out) = run_cli(&["density", kind, "--q", &q.to_string(), "--digits", digits]);
        let got = out.lines().next().unwrap_or("").to_string();
        let close = code == 0
            && parse_rat(&got).is_ok_and(|g| {
                let d = g - parse_rat(want).expect("literal");
                d <= tol && -d <= tol
            });
        if !close {
            bad.push(format!("q={q} got {got:?} want {want}"));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("{} values", expected.len()) } else { bad.join(", ") }))
}

fn c1() -> Outcome {
    printed_digits("z2", "5", &["0.73221", "0.44302", "0.31225", "0.23994", "0.19442", "0.16326", "0.14062"])
}

fn c2() -> Outcome {
    printed_digits("z3", "8", &["0.11944370", "0.01835140", "0.00519251", "0.00199739", "0.00092532"])
}

fn c3() -> Outcome {
    let goldens: &[(u32, usize, usize, &[u64])] = &[
        (2, 1, 3, &[2, 3, 6, 14, 25, 52, 100]),
        (2, 2, 5, &[2, 4, 8, 13, 32, 58]),
        (2, 3, 7, &[2, 4, 8, 16, 30, 63]),
        (3, 1, 3, &[3, 8, 24, 78]),
    ];
    let mut bad = Vec::new();
    for &(q, ell, from, want) in goldens {
        let b = b_seq(q, ell, from + want.len() - 1)?;
        let got: Vec<u64> = b.values()[from..].iter().map(|v| u64::try_from(v).expect("small")).collect();
        if got != want {
            bad.push(format!("q={q} ell={ell}: {got:?}"));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "4 golden runs".into() } else { bad.join(", ") }))
}

fn c4() -> Outcome {
    let mut checks = 0;
    for (q, max) in [(2u32, 20usize), (3, 12)] {
        let a = a_seq(q, max)?;
        for n in 0..=max {
            checks += 1;
            if a.values()[n] != oracle_bifix_free(q, n)? {
                return Ok((false, format!("a q={q} ell={n}")));
            }
        }
    }
    for ell in 1..=3 {
        let b = b_seq(2, ell, 14)?;
        let ls = bifix_free_words(2, ell, 2)?;
        if ls.len() < 2 {
            return Ok((false, format!("fewer than two contexts at ell={ell}")));
        }
        for l in &ls {
            for m in 0..=14 {
                checks += 1;
                if b.values()[m] != oracle_b(2, l, m)? {
                    return Ok((false, format!("b L={l} m={m}")));
                }
            }
        }
    }
    Ok((true, format!("{checks} exact comparisons")))
}

fn c5() -> Outcome {
    let r = zimin::cli::verify::cases_up_to(12);
    Ok((r.pass && r.checks > 0, r.detail))
}

fn c6() -> Outcome {
    let r = zimin::cli::verify::sandwich();
    Ok((r.pass, r.detail))
}

fn c7() -> Outcome {
    for n in 1..=14 {
        let e = empirical_exhaustive(&DensityTarget::Zimin(2), 2, n)?;
        let exact = z2_exact_prefix_density(2, n)?;
        if e.value != exact {
            return Ok((false, format!("n={n}: {} vs {exact}", e.value)));
        }
    }
    let mc = empirical_monte_carlo(&DensityTarget::Zimin(3), 2, 200, 1_000_000, 1)?;
    let off = (mc.as_f64() - 0.11944370).abs();
    Ok((off <= 0.005, format!("exhaustive n<=14 exact; sampled {:.5} (off {off:.5})", mc.as_f64())))
}

fn c8() -> Outcome {
    let eps = decimal_unit(10);
    let mut notes = Vec::new();
    for q in 2..=6 {
        let inner = iz3(q, &eps)?;
        let generic = izn_generic_bounds(3, q)?;
        if !inner.strictly_inside(&generic) {
            notes.push(format!("generic bounds do not contain Z_3 at q={q}"));
        }
        if izn_upper(3, q, &[16])? < inner.lower {
            notes.push(format!("nested upper bound below Z_3 at q={q}"));
        }
    }
    let mut triples = 0;
    for (q, ells, max) in [(2u32, 1..=6, 40usize), (3, 1..=4, 30), (4, 1..=3, 20), (5, 1..=2, 16)] {
        for ell in ells {
            let (b, bh) = (b_seq(q, ell, max)?, bhat_seq(q, ell, max)?);
            for m in 0..=max {
                triples += 1;
                if bh.values()[m] < b.values()[m] {
                    notes.push(format!("bhat < b at q={q} ell={ell} m={m}"));
                }
            }
        }
    }
    let pass = notes.is_empty();
    notes.truncate(3);
    Ok((pass, if pass { format!("q=2..6; bhat >= b on {triples} triples") } else { notes.join(", ") }))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, c1, Duration::from_secs(1)),
        (2, c2, Duration::from_secs(30)),
        (3, c3, Duration::from_secs(60)),
        (4, c4, Duration::from_secs(120)),
        (5, c5, Duration::from_secs(60)),
        (6, c6, Duration::from_secs(120)),
        (7, c7, Duration::from_secs(300)),
        (8, c8, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (n, f, limit) in criteria {
        let start = Instant::now();
        let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        let took = start.elapsed();
        let ok = ok && took <= limit;
        if !ok {
            failed += 1;
        }
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {n}: {verdict} ({:.2?}, limit {limit:?}) {detail}", took);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
