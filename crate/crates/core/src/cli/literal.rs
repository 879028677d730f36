//! Word and pattern literals on the command line.

use crate::error::{Error, Result};
use crate::pattern::{Morphism, Pattern};
use crate::word::{Letter, Word, MAX_ALPHABET};

/// Names for letters `0, 1, ..`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
}

impl Alphabet {
    /// Comma-separated token list, e.g. `"x,yy,z"`.
    pub fn parse_list(spec: &str) -> Result<Self> {
        let tokens: Vec<String> = spec.split(',').map(str::to_owned).collect();
        if tokens.iter().any(String::is_empty) {
            return Err(Error::Parse(format!("empty token in alphabet {spec:?}")));
        }
        for (i, t) in tokens.iter().enumerate() {
            if tokens[..i].contains(t) {
                return Err(Error::Parse(format!("token {t:?} listed twice")));
            }
        }
        Self::checked(tokens)
    }

    /// Alphabet for a literal: digit strings use letters `0..=9` by value,
    /// anything else uses its distinct characters in sorted order.
    pub fn infer(text: &str) -> Result<Self> {
        if !text.is_empty() && text.chars().all(|c| c.is_ascii_digit()) {
            let top = text.bytes().map(|b| b - b'0').max().unwrap_or(0);
            return Self::checked((0..=top).map(|d| d.to_string()).collect());
        }
        let mut chars: Vec<char> = text.chars().collect();
        chars.sort_unstable();
        chars.dedup();
        Self::checked(chars.into_iter().map(String::from).collect())
    }

    fn checked(tokens: Vec<String>) -> Result<Self> {
        if tokens.len() > MAX_ALPHABET as usize {
            return Err(Error::Parse(format!("more than {MAX_ALPHABET} letters")));
        }
        Ok(Alphabet { tokens })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Splits `text` into tokens, longest match first.
    pub fn encode(&self, text: &str, q: u32) -> Result<Word> {
        let mut letters: Vec<Letter> = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .tokens
                .iter()
                .enumerate()
                .filter(|(_, t)| rest.starts_with(t.as_str()))
                .max_by_key(|(_, t)| t.len())
                .ok_or_else(|| Error::Parse(format!("{rest:?} does not start with a letter of the alphabet")))?;
            letters.push(best.0 as Letter);
            rest = &rest[best.1.len()..];
        }
        Word::new(letters, q.max(self.tokens.len() as u32).max(1))
    }

    pub fn decode(&self, letters: &[Letter]) -> String {
        letters
            .iter()
            .map(|&l| self.tokens.get(l as usize).map_or_else(|| format!("<{l}>"), Clone::clone))
            .collect()
    }
}

/// A pattern together with the characters it was written in.
#[derive(Clone, Debug)]
pub struct PatternLiteral {
    pub pattern: Pattern,
    names: Vec<char>,
}

impl PatternLiteral {
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let pattern = Pattern::parse(text)?;
        let mut names: Vec<char> = Vec::new();
        for c in text.chars() {
            if !names.contains(&c) {
                names.push(c);
            }
        }
        Ok(PatternLiteral { pattern, names })
    }

    /// `(variable name, image)` pairs in first-occurrence order.
    pub fn witness(&self, phi: &Morphism, alphabet: &Alphabet) -> Vec<(String, String)> {
        self.names
            .iter()
            .zip(phi.images())
            .map(|(c, img)| (c.to_string(), alphabet.decode(img.letters())))
            .collect()
    }
}
