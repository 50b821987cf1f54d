use std::fmt;

use crate::error::Result;
use crate::syntax::Symbol;

/// A finite word over the alphabet. The empty trace is the empty word.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trace(Vec<Symbol>);

impl Trace {
    pub fn empty() -> Trace {
        Trace(Vec::new())
    }

    /// Reads whitespace-separated symbol names; newlines count as whitespace.
    pub fn parse(text: &str) -> Result<Trace> {
        text.split_whitespace().map(Symbol::new).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    /// `self · other`.
    pub fn concat(&self, other: &Trace) -> Trace {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Trace(v)
    }

    pub fn first(&self) -> Option<&Symbol> {
        self.0.first()
    }

    pub fn tail(&self) -> Trace {
        Trace(self.0.iter().skip(1).cloned().collect())
    }

    /// Every word of length exactly `len` over `alphabet`, in lexicographic order.
    pub fn all_of_length(alphabet: &[Symbol], len: usize) -> Vec<Trace> {
        let mut words = vec![Trace::empty()];
        for _ in 0..len {
            words = words
                .iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |s| {
                        let mut w = w.clone();
                        w.push(s.clone());
                        w
                    })
                })
                .collect();
        }
        words
    }

    /// Every word of length at most `max_len` over `alphabet`.
    pub fn all_up_to(alphabet: &[Symbol], max_len: usize) -> Vec<Trace> {
        (0..=max_len)
            .flat_map(|n| Trace::all_of_length(alphabet, n))
            .collect()
    }
}

impl From<Vec<Symbol>> for Trace {
    fn from(v: Vec<Symbol>) -> Trace {
        Trace(v)
    }
}

impl FromIterator<Symbol> for Trace {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Trace {
        Trace(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Trace {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(s.as_str())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
