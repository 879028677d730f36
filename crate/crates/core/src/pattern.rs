//! Patterns, nonerasing morphisms, and the instance/encounter relations.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{self, Letter, Word};

/// Largest number of distinct variables [`is_unavoidable`] accepts.
pub const MAX_UNAVOIDABLE_VARIABLES: usize = 5;

/// A word whose letters are variables.
///
/// Variables are renamed on construction so they appear in first-occurrence
/// order as `0, 1, 2, ..`; patterns differing only by a renaming compare
/// equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    vars: Vec<Letter>,
    num_vars: usize,
}

impl Pattern {
    pub fn new(ids: &[Letter]) -> Self {
        let mut rename: Vec<Option<Letter>> = vec![None; 256];
        let mut next: Letter = 0;
        let vars = ids
            .iter()
            .map(|&id| {
                *rename[id as usize].get_or_insert_with(|| {
                    let v = next;
                    next = next.wrapping_add(1);
                    v
                })
            })
            .collect();
        let num_vars = rename.iter().filter(|r| r.is_some()).count();
        Pattern { vars, num_vars }
    }

    /// Pattern from text, one variable per character.
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut seen: Vec<char> = Vec::new();
        let mut ids = Vec::with_capacity(chars.len());
        for c in chars {
            if c.is_whitespace() {
                return Err(Error::Parse(format!("whitespace in pattern {text:?}")));
            }
            let id = match seen.iter().position(|&s| s == c) {
                Some(i) => i,
                None => {
                    seen.push(c);
                    seen.len() - 1
                }
            };
            if id > 255 {
                return Err(Error::Parse("more than 256 distinct variables".into()));
            }
            ids.push(id as Letter);
        }
        Ok(Pattern::new(&ids))
    }

    pub fn vars(&self) -> &[Letter] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn num_variables(&self) -> usize {
        self.num_vars
    }

    /// The pattern read as a word over `num_variables()` letters.
    pub fn to_word(&self) -> Word {
        Word::new(self.vars.clone(), self.num_vars.max(1) as u32)
            .expect("canonical ids are below num_vars")
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return f.write_str("ε");
        }
        for &v in &self.vars {
            if v < 26 {
                write!(f, "{}", char::from(b'a' + v))?;
            } else {
                write!(f, "<{v}>")?;
            }
        }
        Ok(())
    }
}

/// The `n`-th Zimin word `Z_n` as a pattern over variables `0..n`.
pub fn zimin(n: u32) -> Result<Pattern> {
    Ok(Pattern::new(&word::zimin_letters(n)?))
}

/// A nonerasing morphism: every variable maps to a nonempty word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        if images.iter().any(Word::is_empty) {
            return Err(Error::Precondition(
                "nonerasing morphism cannot map a variable to ε".into(),
            ));
        }
        Ok(Morphism { images })
    }

    pub fn image(&self, var: Letter) -> Option<&Word> {
        self.images.get(var as usize)
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, v: &Pattern) -> Result<Word> {
        let q = self.images.iter().map(Word::alphabet_size).max().unwrap_or(1);
        let mut out = Vec::new();
        for &x in v.vars() {
            let img = self.image(x).ok_or_else(|| {
                Error::Precondition(format!("morphism has no image for variable {x}"))
            })?;
            out.extend_from_slice(img.letters());
        }
        Word::new(out, q)
    }
}

/// Searches for a nonerasing morphism `φ` with `φ(v) = w`.
///
/// Variables are bound in first-occurrence order and each binding tries image
/// lengths shortest first, so the witness returned is deterministic. A
/// binding is rejected early when the letters left cannot cover the
/// remaining occurrences.
pub fn is_instance(w: &Word, v: &Pattern) -> Result<Option<Morphism>> {
    if v.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(match_letters(w.letters(), v).map(|spans| {
        let images = spans
            .into_iter()
            .map(|(s, l)| {
                Word::new(w.letters()[s..s + l].to_vec(), w.alphabet_size())
                    .expect("factor of a valid word")
            })
            .collect();
        Morphism { images }
    }))
}

/// Letter-slice form of [`is_instance`] for hot loops; `v` must be nonempty.
pub(crate) fn is_instance_letters(w: &[Letter], v: &Pattern) -> bool {
    match_letters(w, v).is_some()
}

/// Core matcher; returns `(start, len)` in `w` of each variable's image.
fn match_letters(w: &[Letter], v: &Pattern) -> Option<Vec<(usize, usize)>> {
    if w.len() < v.len() {
        return None;
    }
    let k = v.num_variables();
    // counts[p][x]: occurrences of x in v[p..]
    let mut counts = vec![vec![0usize; k]; v.len() + 1];
    for p in (0..v.len()).rev() {
        counts[p] = counts[p + 1].clone();
        counts[p][v.vars()[p] as usize] += 1;
    }
    let mut spans: Vec<Option<(usize, usize)>> = vec![None; k];
    if search(w, v.vars(), &counts, 0, 0, &mut spans) {
        Some(spans.into_iter().map(|s| s.expect("all variables bound")).collect())
    } else {
        None
    }
}

fn search(
    w: &[Letter],
    vars: &[Letter],
    counts: &[Vec<usize>],
    p: usize,
    offset: usize,
    spans: &mut Vec<Option<(usize, usize)>>,
) -> bool {
    if p == vars.len() {
        return offset == w.len();
    }
    let x = vars[p] as usize;
    let remaining = w.len() - offset;
    if let Some((s, l)) = spans[x] {
        if l > remaining || w[s..s + l] != w[offset..offset + l] {
            return false;
        }
        return search(w, vars, counts, p + 1, offset + l, spans);
    }
    // Minimal letters needed by v[p..] given current bindings.
    let needed: usize = counts[p]
        .iter()
        .enumerate()
        .map(|(y, &c)| c * spans[y].map_or(1, |(_, l)| l))
        .sum();
    if needed > remaining {
        return false;
    }
    let c = counts[p][x];
    let max_len = (remaining - needed + c) / c;
    for l in 1..=max_len {
        spans[x] = Some((offset, l));
        if search(w, vars, counts, p + 1, offset + l, spans) {
            return true;
        }
    }
    spans[x] = None;
    false
}

/// An occurrence of a pattern instance inside a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encounter {
    pub start: usize,
    pub end: usize,
    pub morphism: Morphism,
}

/// Finds a factor of `w` that is a `v`-instance, scanning longest factors
/// first.
pub fn find_encounter(w: &Word, v: &Pattern) -> Result<Option<Encounter>> {
    if v.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let n = w.len();
    if n < v.len() {
        return Ok(None);
    }
    for len in (v.len()..=n).rev() {
        for start in 0..=n - len {
            let factor = w.substring(start, start + len)?;
            if let Some(morphism) = is_instance(&factor, v)? {
                return Ok(Some(Encounter { start, end: start + len, morphism }));
            }
        }
    }
    Ok(None)
}

/// `V ⪯ W`: some factor of `w` is an instance of `v`.
pub fn encounters(w: &Word, v: &Pattern) -> Result<bool> {
    Ok(find_encounter(w, v)?.is_some())
}

/// Zimin's test: a pattern with `n` distinct variables is unavoidable iff
/// `Z_n` encounters it.
pub fn is_unavoidable(v: &Pattern) -> Result<bool> {
    let n = v.num_variables();
    if n > MAX_UNAVOIDABLE_VARIABLES {
        return Err(Error::Size(format!(
            "{n} distinct variables; unavoidability is checked for at most {MAX_UNAVOIDABLE_VARIABLES}"
        )));
    }
    let z = zimin(n as u32)?.to_word();
    encounters(&z, v)
}
