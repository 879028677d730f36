//! Finite words over `[q] = {0, .., q-1}`, factors, bifixes, and Zimin words.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A letter id. Alphabets are limited to 256 letters.
pub type Letter = u8;

/// Largest alphabet a [`Word`] can carry.
pub const MAX_ALPHABET: u32 = 256;

/// Largest Zimin index [`zimin`] will build (|Z_30| is about a billion letters).
pub const MAX_ZIMIN_INDEX: u32 = 30;

/// An immutable word over the alphabet `[q]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
    q: u32,
}

impl Word {
    pub fn new(letters: Vec<Letter>, q: u32) -> Result<Self> {
        if q == 0 || q > MAX_ALPHABET {
            return Err(Error::Precondition(format!(
                "alphabet size must be in 1..={MAX_ALPHABET}, got {q}"
            )));
        }
        if let Some(&bad) = letters.iter().find(|&&l| u32::from(l) >= q) {
            return Err(Error::Letter { letter: bad.into(), q });
        }
        Ok(Word { letters, q })
    }

    /// Builds a word over the smallest alphabet containing every letter.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        let q = letters.iter().map(|&l| u32::from(l) + 1).max().unwrap_or(1);
        Word { letters, q }
    }

    /// The empty word over `[q]`.
    pub fn empty(q: u32) -> Result<Self> {
        Word::new(Vec::new(), q)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn alphabet_size(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `L(W)`: the set of letters occurring in the word.
    pub fn distinct_letters(&self) -> BTreeSet<Letter> {
        self.letters.iter().copied().collect()
    }

    /// Number of letter recurrences, `|W| - |L(W)|`.
    pub fn recurrences(&self) -> usize {
        self.len() - self.distinct_letters().len()
    }

    /// `W[i,j]`: the `j - i` letters starting at the `(i+1)`-th.
    pub fn substring(&self, i: usize, j: usize) -> Result<Word> {
        if i >= j || j > self.len() {
            return Err(Error::Bounds { start: i, end: j, len: self.len() });
        }
        Ok(Word { letters: self.letters[i..j].to_vec(), q: self.q })
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters, q: self.q.max(other.q) }
    }

    /// Ascending lengths `k`, `1 <= k < |W|`, with `W[0,k] == W[|W|-k,|W|]`.
    pub fn bifix_lengths(&self) -> Vec<usize> {
        bifix_lengths(&self.letters)
    }

    pub fn is_bifix_free(&self) -> bool {
        is_bifix_free(&self.letters)
    }

    /// Renders each letter as a single character: digits for `q <= 10`,
    /// otherwise `a..z` then raw ids.
    pub fn to_compact_string(&self) -> String {
        self.letters.iter().map(|&l| letter_char(l, self.q)).collect()
    }
}

fn letter_char(l: Letter, q: u32) -> char {
    if q <= 10 {
        char::from(b'0' + l)
    } else if l < 26 {
        char::from(b'a' + l)
    } else {
        '?'
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?}, q={})", self.to_compact_string(), self.q)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        if self.q <= 26 {
            f.write_str(&self.to_compact_string())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

/// KMP failure function: `fail[k]` is the length of the longest proper border
/// of `w[..k]`, for `k` in `0..=|w|`.
pub(crate) fn failure_function(w: &[Letter]) -> Vec<usize> {
    let mut fail = vec![0usize; w.len() + 1];
    let mut k = 0usize;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = fail[k];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    fail
}

/// All proper border lengths of `w`, ascending.
pub fn bifix_lengths(w: &[Letter]) -> Vec<usize> {
    if w.len() < 2 {
        return Vec::new();
    }
    let fail = failure_function(w);
    let mut out = Vec::new();
    let mut k = fail[w.len()];
    while k > 0 {
        out.push(k);
        k = fail[k];
    }
    out.reverse();
    out
}

/// Shortest proper border of `w`, if any.
pub fn shortest_bifix(w: &[Letter]) -> Option<usize> {
    bifix_lengths(w).first().copied()
}

pub fn is_bifix_free(w: &[Letter]) -> bool {
    // The shortest border, when it exists, has length at most |w|/2,
    // so only those prefixes need checking.
    (1..=w.len() / 2).all(|k| w[..k] != w[w.len() - k..])
}

/// `V <= W`: `V` occurs as a contiguous, nonempty factor of `W`.
pub fn is_factor(v: &Word, w: &Word) -> bool {
    is_factor_with(v, w, false)
}

/// As [`is_factor`]; with `allow_empty` the empty word counts as a factor of
/// every word.
pub fn is_factor_with(v: &Word, w: &Word, allow_empty: bool) -> bool {
    if v.is_empty() {
        return allow_empty;
    }
    find_factor(v.letters(), w.letters()).is_some()
}

/// Start of the first occurrence of `needle` in `hay`.
pub(crate) fn find_factor(needle: &[Letter], hay: &[Letter]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    if needle.len() > hay.len() {
        return None;
    }
    let fail = failure_function(needle);
    let mut k = 0usize;
    for (i, &c) in hay.iter().enumerate() {
        while k > 0 && needle[k] != c {
            k = fail[k];
        }
        if needle[k] == c {
            k += 1;
        }
        if k == needle.len() {
            return Some(i + 1 - k);
        }
    }
    None
}

/// Letters of the `n`-th Zimin word: `Z_0 = ε`, `Z_{k+1} = Z_k x_k Z_k`.
pub(crate) fn zimin_letters(n: u32) -> Result<Vec<Letter>> {
    if n > MAX_ZIMIN_INDEX {
        return Err(Error::Size(format!(
            "Zimin index {n} exceeds {MAX_ZIMIN_INDEX}"
        )));
    }
    let mut z: Vec<Letter> = Vec::with_capacity((1usize << n) - 1);
    for k in 0..n {
        let prev = z.clone();
        z.push(k as Letter);
        z.extend_from_slice(&prev);
    }
    Ok(z)
}

/// Is `w` an instance of `Z_n`?
///
/// `W` is a `Z_n`-instance iff it has a bifix `U` with `2|U| < |W|` that is a
/// `Z_{n-1}`-instance. Borders of every prefix come from one failure table,
/// so this runs a DP over `(n, prefix length)` in polynomial time.
pub fn is_zimin_instance_letters(w: &[Letter], n: u32) -> bool {
    match n {
        0 => return w.is_empty(),
        1 => return !w.is_empty(),
        _ => {}
    }
    // A Z_n-instance has at least 2^n - 1 letters.
    if n >= usize::BITS || w.len() < (1usize << n) - 1 {
        return false;
    }
    let fail = failure_function(w);
    // level[k]: prefix of length k is a Z_j-instance; starts at j = 1.
    let mut level: Vec<bool> = (0..=w.len()).map(|k| k > 0).collect();
    for _ in 2..=n {
        let mut next = vec![false; w.len() + 1];
        for (k, slot) in next.iter_mut().enumerate().skip(1) {
            let mut b = fail[k];
            while b > 0 {
                if 2 * b < k && level[b] {
                    *slot = true;
                    break;
                }
                b = fail[b];
            }
        }
        level = next;
    }
    level[w.len()]
}

pub fn is_zimin_instance(w: &Word, n: u32) -> bool {
    is_zimin_instance_letters(w.letters(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_letters(s.bytes().map(|b| b - b'0').collect())
    }

    #[test]
    fn rejects_letters_outside_alphabet() {
        assert_eq!(
            Word::new(vec![0, 2], 2),
            Err(Error::Letter { letter: 2, q: 2 })
        );
        assert!(Word::new(vec![], 0).is_err());
    }

    #[test]
    fn recurrences_and_alphabet() {
        // bananas over {a,b,n,s}
        let bananas = Word::new(vec![1, 0, 2, 0, 2, 0, 3], 4).unwrap();
        assert_eq!(bananas.len(), 7);
        assert_eq!(bananas.distinct_letters().len(), 4);
        assert_eq!(bananas.recurrences(), 3);
        let e = Word::empty(2).unwrap();
        assert_eq!(e.recurrences(), 0);
        assert!(e.distinct_letters().is_empty());
    }

    #[test]
    fn substring_bounds() {
        let bananas = Word::new(vec![1, 0, 2, 0, 2, 0, 3], 4).unwrap();
        let nana = bananas.substring(2, 6).unwrap();
        assert_eq!(nana.letters(), &[2, 0, 2, 0]);
        assert_eq!(bananas.substring(0, 7).unwrap(), bananas);
        assert_eq!(w("012").substring(1, 2).unwrap().letters(), &[1]);
        assert!(bananas.substring(3, 3).is_err());
        assert!(bananas.substring(2, 8).is_err());
    }

    #[test]
    fn factors() {
        let bananas = Word::new(vec![1, 0, 2, 0, 2, 0, 3], 4).unwrap();
        let nana = Word::new(vec![2, 0, 2, 0], 4).unwrap();
        assert!(is_factor(&nana, &bananas));
        assert!(is_factor(&bananas, &bananas));
        assert!(!is_factor(&w("01"), &w("10")));
        let e = Word::empty(2).unwrap();
        assert!(!is_factor(&e, &w("01")));
        assert!(is_factor_with(&e, &w("01"), true));
    }

    #[test]
    fn bifixes() {
        assert_eq!(w("0101").bifix_lengths(), vec![2]);
        assert_eq!(w("000").bifix_lengths(), vec![1, 2]);
        assert!(w("01").bifix_lengths().is_empty());
        assert!(w("01").is_bifix_free());
        assert!(!w("0110").is_bifix_free());
        assert!(Word::empty(2).unwrap().is_bifix_free());
    }

    #[test]
    fn zimin_words() {
        assert!(zimin_letters(0).unwrap().is_empty());
        assert_eq!(zimin_letters(2).unwrap(), vec![0, 1, 0]);
        assert_eq!(zimin_letters(3).unwrap(), vec![0, 1, 0, 2, 0, 1, 0]);
        assert_eq!(zimin_letters(5).unwrap().len(), 31);
        assert!(zimin_letters(31).is_err());
    }

    #[test]
    fn zimin_letters_are_two_adic_orders() {
        let z = zimin_letters(6).unwrap();
        for (i, &l) in z.iter().enumerate() {
            assert_eq!(u32::from(l), (i as u32 + 1).trailing_zeros());
        }
    }

    #[test]
    fn fast_zimin_membership() {
        assert!(is_zimin_instance(&w("0110"), 2));
        assert!(!is_zimin_instance(&w("0101"), 2));
        assert!(!is_zimin_instance(&w("010"), 3));
        assert!(is_zimin_instance(&w("0100010"), 3));
        assert!(is_zimin_instance(&Word::empty(2).unwrap(), 0));
        assert!(!is_zimin_instance(&w("0"), 0));
        assert!(is_zimin_instance(&w("0"), 1));
    }
}
