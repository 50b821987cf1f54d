//! Antimirov partial derivatives.
//!
//! The transition relation is nondeterministic: an expression may have zero,
//! one or several partial derivatives for a symbol. The functions here
//! compute the whole set at once, which is what an online monitor needs
//! since it cannot backtrack over a live trace. An empty set means no rule
//! applies and the trace seen so far is not a prefix of any accepted word.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::syntax::{Regex, Symbol};
use crate::trace::Trace;

/// Default cap on the number of states explored by [`closure`].
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// A finite set of structurally distinct expressions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Frontier(BTreeSet<Regex>);

impl Frontier {
    pub fn empty() -> Frontier {
        Frontier(BTreeSet::new())
    }

    pub fn singleton(e: Regex) -> Frontier {
        Frontier(BTreeSet::from([e]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &Regex) -> bool {
        self.0.contains(e)
    }

    pub fn insert(&mut self, e: Regex) -> bool {
        self.0.insert(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Regex> {
        self.0.iter()
    }

    /// Whether some member accepts the empty word.
    pub fn is_accepting(&self) -> bool {
        self.0.iter().any(Regex::is_nullable)
    }

    /// Members sorted by their printed form.
    pub fn sorted_by_text(&self) -> Vec<&Regex> {
        let mut v: Vec<(String, &Regex)> = self.0.iter().map(|e| (e.to_string(), e)).collect();
        v.sort();
        v.into_iter().map(|(_, e)| e).collect()
    }

    /// One step of the set-lifted relation: all partial derivatives of all members.
    pub fn step(&self, a: &Symbol) -> Frontier {
        let mut out = Frontier::empty();
        for e in &self.0 {
            collect(e, a, &mut |d| {
                out.0.insert(d);
            });
        }
        out
    }
}

impl FromIterator<Regex> for Frontier {
    fn from_iter<I: IntoIterator<Item = Regex>>(iter: I) -> Frontier {
        Frontier(iter.into_iter().collect())
    }
}

impl IntoIterator for Frontier {
    type Item = Regex;
    type IntoIter = std::collections::btree_set::IntoIter<Regex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a Frontier {
    type Item = &'a Regex;
    type IntoIter = std::collections::btree_set::Iter<'a, Regex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

fn collect(e: &Regex, a: &Symbol, out: &mut dyn FnMut(Regex)) {
    match e {
        Regex::Empty | Regex::Eps => {}
        Regex::Sym(b) => {
            if a == b {
                out(Regex::Eps);
            }
        }
        Regex::Cat(l, r) => {
            collect(l, a, &mut |d| out(Regex::Cat(Arc::new(d), r.clone())));
            if l.is_nullable() {
                collect(r, a, out);
            }
        }
        Regex::Or(l, r) => {
            collect(l, a, out);
            collect(r, a, out);
        }
        Regex::Star(inner) => {
            let whole = Arc::new(e.clone());
            collect(inner, a, &mut |d| {
                out(Regex::Cat(Arc::new(d), whole.clone()))
            });
        }
        Regex::Shuffle(l, r) => {
            collect(l, a, &mut |d| out(Regex::Shuffle(Arc::new(d), r.clone())));
            collect(r, a, &mut |d| out(Regex::Shuffle(l.clone(), Arc::new(d))));
        }
    }
}

/// Every `e'` with `e --a--> e'`.
pub fn partial_derivatives(e: &Regex, a: &Symbol) -> Frontier {
    let mut out = Frontier::empty();
    collect(e, a, &mut |d| {
        out.0.insert(d);
    });
    out
}

/// Every `e'` reachable from `e` by reading `w`; `{e}` for the empty word.
pub fn partial_derivatives_word(e: &Regex, w: &Trace) -> Frontier {
    w.iter()
        .fold(Frontier::singleton(e.clone()), |f, a| f.step(a))
}

/// `w ∈ L(e)` decided by the partial-derivative frontier.
pub fn accepts_by_partial(e: &Regex, w: &Trace) -> bool {
    partial_derivatives_word(e, w).is_accepting()
}

/// All partial derivatives reachable from `e` over any word, including `e`.
pub fn closure(e: &Regex) -> Result<BTreeSet<Regex>> {
    closure_with_cap(e, DEFAULT_STATE_CAP)
}

pub fn closure_with_cap(e: &Regex, cap: usize) -> Result<BTreeSet<Regex>> {
    let alphabet = e.symbols();
    let mut seen = BTreeSet::from([e.clone()]);
    let mut queue = VecDeque::from([e.clone()]);
    while let Some(state) = queue.pop_front() {
        for a in &alphabet {
            for d in partial_derivatives(&state, a) {
                if !seen.contains(&d) {
                    if seen.len() >= cap {
                        return Err(Error::ResourceLimit {
                            what: "partial-derivative closure",
                            limit: cap,
                        });
                    }
                    seen.insert(d.clone());
                    queue.push_back(d);
                }
            }
        }
    }
    Ok(seen)
}
