//! Alphabets and words.
//!
//! Letters are indices into an [`Alphabet`]; display names only matter for
//! parsing and rendering. A name that is a single character renders as
//! itself, a decoded letter such as `⟨ab⟩` renders verbatim, and any other
//! multi-character name renders in braces (`{x1}`).

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::invalid("alphabet must be nonempty"));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::invalid("letter names must be nonempty"));
            }
            if n.contains(['{', '}', ',', ';']) || n.chars().any(char::is_whitespace) {
                return Err(Error::invalid(format!("letter name {n:?} has reserved characters")));
            }
            if index.insert(n.clone(), i as Letter).is_some() {
                return Err(Error::invalid(format!("duplicate letter {n:?}")));
            }
        }
        Ok(Alphabet { names, index })
    }

    /// One letter per character of `chars`, in order.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(String::from))
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.names.len() as Letter
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a as usize]
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.iter().all(|&a| (a as usize) < self.names.len())
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.iter().find(|&&a| (a as usize) >= self.names.len()) {
            Some(a) => Err(Error::invalid(format!(
                "letter index {a} outside alphabet of size {}",
                self.size()
            ))),
            None => Ok(()),
        }
    }

    fn render_letter(&self, a: Letter, out: &mut String) {
        let n = self.name(a);
        if n.chars().count() == 1 || (n.starts_with('⟨') && n.ends_with('⟩')) {
            out.push_str(n);
        } else {
            out.push('{');
            out.push_str(n);
            out.push('}');
        }
    }

    pub fn render(&self, w: &Word) -> String {
        let mut s = String::new();
        for &a in w.iter() {
            self.render_letter(a, &mut s);
        }
        s
    }

    /// Splits `text` into letter tokens: `{name}`, `⟨...⟩` or single
    /// characters. Whitespace is ignored.
    pub fn tokenize(text: &str) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            let close = match c {
                '{' => Some('}'),
                '⟨' => Some('⟩'),
                _ => None,
            };
            match close {
                Some(close) => {
                    let mut name = String::new();
                    loop {
                        match chars.next() {
                            Some(d) if d == close => break,
                            Some(d) => name.push(d),
                            None => return Err(Error::invalid(format!("unterminated {c} in {text:?}"))),
                        }
                    }
                    if c == '⟨' {
                        name = format!("⟨{name}⟩");
                    }
                    if name.is_empty() {
                        return Err(Error::invalid("empty braced letter"));
                    }
                    out.push(name);
                }
                None => out.push(c.to_string()),
            }
        }
        Ok(out)
    }

    /// Parses a word written with this alphabet's rendering conventions.
    /// `ε` and the empty string denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "ε" {
            return Ok(Word::empty());
        }
        Alphabet::tokenize(text)?
            .iter()
            .map(|t| {
                self.letter(t)
                    .ok_or_else(|| Error::invalid(format!("letter {t:?} not in alphabet {:?}", self.names)))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Alphabet::new(v)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.names
    }
}

/// A finite word as a sequence of letter indices. Ordering is plain
/// lexicographic on indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    /// Whether `self` occurs as a factor of `other`.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        self.is_empty() || other.0.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    /// Distinct factors of the given length, in no particular order.
    pub fn factors_of_len(&self, k: usize) -> impl Iterator<Item = &[Letter]> {
        let n = if k == 0 || k > self.len() { 0 } else { self.len() - k + 1 };
        (0..n).map(move |i| &self.0[i..i + k])
    }

    pub fn count(&self, a: Letter) -> usize {
        self.0.iter().filter(|&&b| b == a).count()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
