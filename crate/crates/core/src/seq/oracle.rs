//! Brute-force counters used to check the recursions.
//!
//! Everything here enumerates words directly and tests the defining property;
//! none of it calls into the recursions in [`super::tables`].

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{self, Pattern};
use crate::word::{self, Letter, Word};

/// Largest number of words an oracle will enumerate.
pub const ORACLE_BUDGET: u64 = 10_000_000;

fn budget(q: u32, free_len: usize) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..free_len {
        total = total.saturating_mul(u64::from(q));
        if total > ORACLE_BUDGET {
            return Err(Error::Size(format!(
                "{q}^{free_len} words exceeds the oracle budget of {ORACLE_BUDGET}"
            )));
        }
    }
    Ok(total)
}

/// Decodes `index` as a base-`q` word of length `len` into `out`.
pub(crate) fn decode(mut index: u64, q: u32, out: &mut [Letter]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % u64::from(q)) as Letter;
        index /= u64::from(q);
    }
}

/// Counts `index in 0..total` accepted by `test`, decoding each index into a
/// per-thread scratch word of length `len`.
pub(crate) fn count_words<F>(q: u32, len: usize, total: u64, test: F) -> u64
where
    F: Fn(&[Letter]) -> bool + Sync,
{
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut buf = vec![0 as Letter; len];
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(total);
            (lo..hi)
                .filter(|&i| {
                    decode(i, q, &mut buf);
                    test(&buf)
                })
                .count() as u64
        })
        .sum()
}

/// Number of bifix-free `q`-ary words of length `len`, by enumeration.
///
/// The empty word is not counted, so `len == 0` gives 0.
pub fn oracle_bifix_free(q: u32, len: usize) -> Result<BigUint> {
    check_q(q)?;
    if len == 0 {
        return Ok(BigUint::from(0u32));
    }
    let total = budget(q, len)?;
    let n = count_words(q, len, total, naive_bifix_free);
    Ok(BigUint::from(n))
}

fn check_q(q: u32) -> Result<()> {
    if !(2..=word::MAX_ALPHABET).contains(&q) {
        return Err(Error::Precondition(format!("alphabet size must be at least 2, got {q}")));
    }
    Ok(())
}

/// Direct quadratic border test, independent of the failure-function code.
fn naive_bifix_free(w: &[Letter]) -> bool {
    (1..w.len()).all(|k| w[..k] != w[w.len() - k..])
}

fn naive_is_z2(w: &[Letter]) -> bool {
    (1..w.len()).any(|k| 2 * k < w.len() && w[..k] == w[w.len() - k..])
}

/// Does `w` have a proper border that is itself a `Z_2`-instance?
fn has_z2_bifix(w: &[Letter]) -> bool {
    (1..w.len()).any(|k| w[..k] == w[w.len() - k..] && naive_is_z2(&w[..k]))
}

fn check_context(l: &Word, q: u32) -> Result<()> {
    check_q(q)?;
    if l.is_empty() || !naive_bifix_free(l.letters()) {
        return Err(Error::Precondition(format!("{l} is not a nonempty bifix-free word")));
    }
    if l.letters().iter().any(|&c| u32::from(c) >= q) {
        return Err(Error::Precondition(format!("{l} is not a word over [{q}]")));
    }
    Ok(())
}

/// Enumerates `L A L` of length `m` (with `A` nonempty) and counts those
/// accepted by `test`.
fn count_framed<F>(q: u32, l: &Word, m: usize, test: F) -> Result<u64>
where
    F: Fn(&[Letter]) -> bool + Sync,
{
    check_context(l, q)?;
    let ell = l.len();
    if m <= 2 * ell {
        return Ok(0);
    }
    let free = m - 2 * ell;
    let total = budget(q, free)?;
    let frame = l.letters();
    Ok(count_words(q, free, total, |a| {
        let mut w = Vec::with_capacity(m);
        w.extend_from_slice(frame);
        w.extend_from_slice(a);
        w.extend_from_slice(frame);
        test(&w)
    }))
}

/// Number of length-`m` words `L A L` (`A` nonempty) with no `Z_2`-bifix.
pub fn oracle_b(q: u32, l: &Word, m: usize) -> Result<BigUint> {
    count_framed(q, l, m, |w| !has_z2_bifix(w)).map(BigUint::from)
}

/// The split of [`oracle_b`] into words not of the form `L L A L L` (`c`) and
/// those that are (`d`).
pub fn oracle_cd(q: u32, l: &Word, m: usize) -> Result<(BigUint, BigUint)> {
    let ell = l.len();
    let frame = l.letters().to_vec();
    let double = |w: &[Letter]| {
        w.len() > 4 * ell
            && w[ell..2 * ell] == frame[..]
            && w[w.len() - 2 * ell..w.len() - ell] == frame[..]
    };
    let d = count_framed(q, l, m, |w| !has_z2_bifix(w) && double(w))?;
    let b = count_framed(q, l, m, |w| !has_z2_bifix(w))?;
    Ok((BigUint::from(b - d), BigUint::from(d)))
}

/// Number of length-`m` words `L A L` (`A` nonempty) not of the form
/// `L B L B L`, `L B L L B L` or `L B L C L B L` for nonempty `B`, `C`.
///
/// Equivalently: no bifix `L B L` of length `k` with `2k <= m + |L|`.
pub fn oracle_bhat(q: u32, l: &Word, m: usize) -> Result<BigUint> {
    let ell = l.len();
    count_framed(q, l, m, |w| {
        let m = w.len();
        !(2 * ell + 1..m)
            .any(|k| 2 * k <= m + ell && w[..k] == w[m - k..])
    })
    .map(BigUint::from)
}

/// The five shapes a `Z_2`-instance `L A L` with a `Z_2`-bifix can take, with
/// `P` its shortest `Z_2`-bifix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BifixCase {
    /// `L B L C L B L`, `P = L B L`, `C` nonempty.
    Separated,
    /// `L B L L B L`, `P = L B L`.
    Adjacent,
    /// `L B L B L`, `P = L B L`.
    Overlapping,
    /// `L L F L L F L L`, `P = L L F L L`, `F` nonempty.
    DoubledFrame,
    /// `L L L L`.
    Quadruple,
}

impl BifixCase {
    pub const ALL: [BifixCase; 5] = [
        BifixCase::Separated,
        BifixCase::Adjacent,
        BifixCase::Overlapping,
        BifixCase::DoubledFrame,
        BifixCase::Quadruple,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            BifixCase::Separated => "i",
            BifixCase::Adjacent => "ii",
            BifixCase::Overlapping => "iii",
            BifixCase::DoubledFrame => "iv",
            BifixCase::Quadruple => "v",
        }
    }
}

impl fmt::Display for BifixCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.tag())
    }
}

/// Evaluates each of the five shape predicates independently.
///
/// The shortest `Z_2`-bifix is found with the general pattern matcher, so
/// this shares no code with the fast `Z_n` membership test.
pub fn oracle_case_flags(w: &Word, l: &Word) -> Result<[bool; 5]> {
    let (wl, ll) = (w.letters(), l.letters());
    let (m, ell) = (wl.len(), ll.len());
    if ell == 0 || !naive_bifix_free(ll) {
        return Err(Error::Precondition(format!("{l} is not a nonempty bifix-free word")));
    }
    if m <= 2 * ell || &wl[..ell] != ll || &wl[m - ell..] != ll {
        return Err(Error::Precondition(format!("{w} is not of the form {l} A {l} with A nonempty")));
    }
    let z2 = pattern::zimin(2)?;
    let mut shortest = None;
    for k in 1..m {
        if wl[..k] == wl[m - k..] {
            let prefix = w.substring(0, k)?;
            if pattern::is_instance(&prefix, &z2)?.is_some() {
                shortest = Some(k);
                break;
            }
        }
    }
    let Some(k) = shortest else {
        return Ok([false; 5]);
    };
    let p = &wl[..k];
    let framed = |s: &[Letter]| s.len() > 2 * ell && &s[..ell] == ll && &s[s.len() - ell..] == ll;
    let cat = |parts: &[&[Letter]]| -> Vec<Letter> { parts.concat() };

    let separated = framed(p) && 2 * k < m && cat(&[p, &wl[k..m - k], p]) == wl;
    let adjacent = framed(p) && 2 * k == m && cat(&[p, p]) == wl;
    let overlapping = framed(p) && {
        let b = &p[ell..k - ell];
        cat(&[ll, b, ll, b, ll]) == wl
    };
    let doubled = k > 4 * ell && &p[..2 * ell] == cat(&[ll, ll]).as_slice()
        && &p[k - 2 * ell..] == cat(&[ll, ll]).as_slice()
        && {
            let f = &p[2 * ell..k - 2 * ell];
            cat(&[ll, ll, f, ll, ll, f, ll, ll]) == wl
        };
    let quadruple = cat(&[ll, ll, ll, ll]) == wl;
    Ok([separated, adjacent, overlapping, doubled, quadruple])
}

/// Classifies `w = L A L` by the shape of its shortest `Z_2`-bifix; `None`
/// when `w` has no `Z_2`-bifix.
pub fn oracle_case_classify(w: &Word, l: &Word) -> Result<Option<BifixCase>> {
    let flags = oracle_case_flags(w, l)?;
    let fired: Vec<BifixCase> = BifixCase::ALL
        .iter()
        .zip(flags)
        .filter_map(|(&c, f)| f.then_some(c))
        .collect();
    let has_bifix = has_z2_bifix(w.letters());
    match (fired.as_slice(), has_bifix) {
        ([], false) => Ok(None),
        ([one], true) => Ok(Some(*one)),
        _ => Err(Error::Domain(format!(
            "{w} with frame {l}: Z2-bifix present = {has_bifix}, cases fired = {fired:?}"
        ))),
    }
}

/// Empirical count of `Z_n`-instances among all `q`-ary words of length `len`,
/// using the general matcher against `pattern`.
pub fn oracle_instances(q: u32, len: usize, v: &Pattern) -> Result<BigUint> {
    check_q(q)?;
    if v.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let total = budget(q, len)?;
    let n = count_words(q, len, total, |w| {
        let word = Word::new(w.to_vec(), q).expect("letters below q");
        matches!(pattern::is_instance(&word, v), Ok(Some(_)))
    });
    Ok(BigUint::from(n))
}

/// The first bifix-free words of length `len` over `[q]`, lexicographically.
pub fn bifix_free_words(q: u32, len: usize, limit: usize) -> Result<Vec<Word>> {
    check_q(q)?;
    let total = budget(q, len)?;
    let mut buf = vec![0 as Letter; len];
    let mut out = Vec::new();
    for i in 0..total {
        if out.len() == limit {
            break;
        }
        decode(i, q, &mut buf);
        if naive_bifix_free(&buf) {
            out.push(Word::new(buf.clone(), q)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::new(s.bytes().map(|b| b - b'0').collect(), 2).unwrap()
    }

    #[test]
    fn bifix_free_counts() {
        assert_eq!(oracle_bifix_free(2, 4).unwrap(), BigUint::from(6u32));
        assert_eq!(oracle_bifix_free(5, 1).unwrap(), BigUint::from(5u32));
        assert_eq!(oracle_bifix_free(2, 0).unwrap(), BigUint::from(0u32));
        assert_eq!(oracle_bifix_free(3, 2).unwrap(), BigUint::from(6u32));
        assert!(matches!(oracle_bifix_free(2, 30), Err(Error::Size(_))));
    }

    #[test]
    fn b_counts_and_guards() {
        assert_eq!(oracle_b(2, &w("0"), 6).unwrap(), BigUint::from(14u32));
        assert_eq!(oracle_b(2, &w("01"), 4).unwrap(), BigUint::from(0u32));
        assert_eq!(oracle_b(2, &w("01"), 5).unwrap(), oracle_b(2, &w("10"), 5).unwrap());
        assert_eq!(oracle_b(2, &w("01"), 5).unwrap(), BigUint::from(2u32));
        assert!(matches!(oracle_b(2, &w("00"), 6), Err(Error::Precondition(_))));
        assert!(matches!(oracle_b(2, &w("0"), 40), Err(Error::Size(_))));
    }

    #[test]
    fn cd_split_sums_to_b() {
        for m in 1..=10 {
            let (c, d) = oracle_cd(2, &w("0"), m).unwrap();
            assert_eq!(c + d, oracle_b(2, &w("0"), m).unwrap());
        }
    }

    #[test]
    fn bhat_first_values() {
        assert_eq!(oracle_bhat(2, &w("0"), 3).unwrap(), BigUint::from(2u32));
        assert_eq!(oracle_bhat(2, &w("0"), 2).unwrap(), BigUint::from(0u32));
    }

    #[test]
    fn case_examples() {
        let zero = w("0");
        assert_eq!(oracle_case_classify(&w("0000"), &zero).unwrap(), Some(BifixCase::Quadruple));
        assert_eq!(oracle_case_classify(&w("0100010"), &zero).unwrap(), Some(BifixCase::Separated));
        assert_eq!(oracle_case_classify(&w("010010"), &zero).unwrap(), Some(BifixCase::Adjacent));
        assert_eq!(oracle_case_classify(&w("01010"), &zero).unwrap(), Some(BifixCase::Overlapping));
        assert_eq!(oracle_case_classify(&w("00100100"), &zero).unwrap(), Some(BifixCase::DoubledFrame));
        assert_eq!(oracle_case_classify(&w("0110"), &zero).unwrap(), None);
        assert!(oracle_case_classify(&w("0110"), &w("00")).is_err());
        assert!(oracle_case_classify(&w("1110"), &zero).is_err());
    }
}
