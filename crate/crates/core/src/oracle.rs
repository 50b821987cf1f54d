//! Brute-force semantic ground truth.
//!
//! Languages are computed directly from the set-theoretic definitions of
//! concatenation, union, Kleene star and shuffle, truncated to words of a
//! bounded length. Nothing here uses derivatives, so these functions serve
//! as an independent oracle for the rest of the crate.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::syntax::{Regex, Symbol};
use crate::trace::Trace;

/// Limits guarding the enumeration against combinatorial blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest word length accepted by [`lang_up_to_with`].
    pub max_len_guard: usize,
    /// Largest number of words any intermediate set may hold.
    pub cardinality_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_len_guard: 12,
            cardinality_cap: 1_000_000,
        }
    }
}

/// `{ w ∈ L(e) : |w| ≤ max_len }` for the expression it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedLanguage {
    pub max_len: usize,
    pub words: BTreeSet<Trace>,
}

impl BoundedLanguage {
    pub fn contains(&self, w: &Trace) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Restricts to words of length at most `max_len`.
    pub fn truncate(&self, max_len: usize) -> BoundedLanguage {
        BoundedLanguage {
            max_len: max_len.min(self.max_len),
            words: self
                .words
                .iter()
                .filter(|w| w.len() <= max_len)
                .cloned()
                .collect(),
        }
    }

    /// Words sorted by length, then lexicographically.
    pub fn sorted_words(&self) -> Vec<&Trace> {
        let mut v: Vec<&Trace> = self.words.iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }
}

/// All order-preserving interleavings of `w1` and `w2`.
pub fn shuffle_words(w1: &Trace, w2: &Trace) -> BTreeSet<Trace> {
    fn go(a: &[Symbol], b: &[Symbol], prefix: &mut Vec<Symbol>, out: &mut BTreeSet<Trace>) {
        if a.is_empty() || b.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(a);
            w.extend_from_slice(b);
            out.insert(Trace::from(w));
            return;
        }
        prefix.push(a[0].clone());
        go(&a[1..], b, prefix, out);
        prefix.pop();
        prefix.push(b[0].clone());
        go(a, &b[1..], prefix, out);
        prefix.pop();
    }
    let mut out = BTreeSet::new();
    go(w1.symbols(), w2.symbols(), &mut Vec::new(), &mut out);
    out
}

pub fn lang_up_to(e: &Regex, max_len: usize) -> Result<BoundedLanguage> {
    lang_up_to_with(e, max_len, &OracleConfig::default())
}

pub fn lang_up_to_with(e: &Regex, max_len: usize, cfg: &OracleConfig) -> Result<BoundedLanguage> {
    if max_len > cfg.max_len_guard {
        return Err(Error::InvalidArgument(format!(
            "word length bound {max_len} exceeds the oracle guard {}",
            cfg.max_len_guard
        )));
    }
    let words = Enumerator {
        max_len,
        cap: cfg.cardinality_cap,
    }
    .lang(e)?;
    Ok(BoundedLanguage { max_len, words })
}

/// `w ∈ L(e)`, decided by enumerating the language up to `|w|`.
pub fn membership_oracle(e: &Regex, w: &Trace) -> Result<bool> {
    Ok(lang_up_to(e, w.len())?.contains(w))
}

struct Enumerator {
    max_len: usize,
    cap: usize,
}

type Words = BTreeSet<Trace>;

impl Enumerator {
    fn check(&self, words: &Words) -> Result<()> {
        if words.len() > self.cap {
            Err(Error::ResourceLimit {
                what: "bounded language",
                limit: self.cap,
            })
        } else {
            Ok(())
        }
    }

    fn lang(&self, e: &Regex) -> Result<Words> {
        let words = match e {
            Regex::Empty => Words::new(),
            Regex::Eps => Words::from([Trace::empty()]),
            Regex::Sym(s) => {
                if self.max_len >= 1 {
                    Words::from([Trace::from(vec![s.clone()])])
                } else {
                    Words::new()
                }
            }
            Regex::Cat(l, r) => self.concat(&self.lang(l)?, &self.lang(r)?)?,
            Regex::Or(l, r) => {
                let mut words = self.lang(l)?;
                words.extend(self.lang(r)?);
                words
            }
            Regex::Star(inner) => self.star(&self.lang(inner)?)?,
            Regex::Shuffle(l, r) => self.shuffle(&self.lang(l)?, &self.lang(r)?)?,
        };
        self.check(&words)?;
        Ok(words)
    }

    fn concat(&self, l: &Words, r: &Words) -> Result<Words> {
        let mut out = Words::new();
        for w1 in l {
            for w2 in r {
                if w1.len() + w2.len() <= self.max_len {
                    out.insert(w1.concat(w2));
                }
            }
            self.check(&out)?;
        }
        Ok(out)
    }

    /// `L*` as the union of `L^n`, iterated until no new short word appears.
    fn star(&self, l: &Words) -> Result<Words> {
        let mut all = Words::from([Trace::empty()]);
        let mut last = all.clone();
        loop {
            let next: Words = self
                .concat(&last, l)?
                .into_iter()
                .filter(|w| !all.contains(w))
                .collect();
            if next.is_empty() {
                return Ok(all);
            }
            all.extend(next.iter().cloned());
            self.check(&all)?;
            last = next;
        }
    }

    fn shuffle(&self, l: &Words, r: &Words) -> Result<Words> {
        let mut out = Words::new();
        for w1 in l {
            for w2 in r {
                if w1.len() + w2.len() <= self.max_len {
                    out.extend(shuffle_words(w1, w2));
                }
            }
            self.check(&out)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Trace {
        Trace::parse(s).unwrap()
    }

    fn set(words: &[&str]) -> BTreeSet<Trace> {
        words.iter().map(|s| w(s)).collect()
    }

    fn re(s: &str) -> Regex {
        Regex::parse(s).unwrap()
    }

    #[test]
    fn shuffle_of_words() {
        assert_eq!(shuffle_words(&w(""), &w("b c")), set(&["b c"]));
        assert_eq!(shuffle_words(&w("b c"), &w("")), set(&["b c"]));
        assert_eq!(
            shuffle_words(&w("a b"), &w("c")),
            set(&["a b c", "a c b", "c a b"])
        );
        assert_eq!(shuffle_words(&w("a"), &w("a")), set(&["a a"]));
    }

    #[test]
    fn bounded_languages() {
        assert_eq!(lang_up_to(&re("a b"), 3).unwrap().words, set(&["a b"]));
        assert_eq!(
            lang_up_to(&re("a* b*"), 2).unwrap().words,
            set(&["", "a", "b", "a a", "a b", "b b"])
        );
        assert_eq!(
            lang_up_to(&re("a0 || a1"), 2).unwrap().words,
            set(&["a0 a1", "a1 a0"])
        );
        assert!(lang_up_to(&re("0"), 4).unwrap().is_empty());
        assert_eq!(lang_up_to(&re("eps"), 4).unwrap().words, set(&[""]));
        assert_eq!(lang_up_to(&re("a"), 0).unwrap().words, set(&[]));
    }

    #[test]
    fn star_of_nullable_language_terminates() {
        let lang = lang_up_to(&re("(eps + a)*"), 3).unwrap();
        assert_eq!(lang.words, set(&["", "a", "a a", "a a a"]));
    }

    #[test]
    fn membership() {
        assert!(membership_oracle(&re("a* b*"), &w("a b")).unwrap());
        assert!(!membership_oracle(&re("a"), &w("")).unwrap());
        assert!(!membership_oracle(&re("a0 || a1"), &w("a2")).unwrap());
    }

    #[test]
    fn guards() {
        assert!(matches!(
            lang_up_to(&re("a"), 13),
            Err(Error::InvalidArgument(_))
        ));
        let tight = OracleConfig {
            max_len_guard: 12,
            cardinality_cap: 10,
        };
        assert!(matches!(
            lang_up_to_with(&re("(a + b)*"), 4, &tight),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
