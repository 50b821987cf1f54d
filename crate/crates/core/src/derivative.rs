//! Brzozowski derivatives as a deterministic labelled transition system.
//!
//! Every expression has exactly one derivative for every symbol. Results are
//! kept exactly as the rules build them: the concatenation rule always
//! produces `e0' e1 + f e1'` where `f` is the literal constant `eps` or `0`
//! given by `has_eps(e0)`, and nothing is simplified afterwards.

use std::sync::Arc;

use crate::syntax::{Regex, Symbol};
use crate::trace::Trace;

/// The unique `e'` with `e --a--> e'`.
pub fn derive(e: &Regex, a: &Symbol) -> Regex {
    match e {
        Regex::Empty | Regex::Eps => Regex::Empty,
        Regex::Sym(b) => {
            if a == b {
                Regex::Eps
            } else {
                Regex::Empty
            }
        }
        Regex::Cat(l, r) => Regex::or(
            Regex::Cat(Arc::new(derive(l, a)), r.clone()),
            Regex::cat(Regex::from(l.has_eps()), derive(r, a)),
        ),
        Regex::Or(l, r) => Regex::or(derive(l, a), derive(r, a)),
        Regex::Star(inner) => Regex::Cat(Arc::new(derive(inner, a)), Arc::new(e.clone())),
        Regex::Shuffle(l, r) => Regex::or(
            Regex::Shuffle(Arc::new(derive(l, a)), r.clone()),
            Regex::Shuffle(l.clone(), Arc::new(derive(r, a))),
        ),
    }
}

/// Left fold of [`derive()`] over `w`; the empty word leaves `e` unchanged.
pub fn derive_word(e: &Regex, w: &Trace) -> Regex {
    w.iter().fold(e.clone(), |acc, a| derive(&acc, a))
}

/// `w ∈ L(e)` decided by nullability of the word derivative.
pub fn accepts_by_derivative(e: &Regex, w: &Trace) -> bool {
    derive_word(e, w).is_nullable()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(s: &str) -> Regex {
        Regex::parse(s).unwrap()
    }

    fn sym(s: &str) -> Symbol {
        Symbol::new(s).unwrap()
    }

    fn w(s: &str) -> Trace {
        Trace::parse(s).unwrap()
    }

    #[test]
    fn unsimplified_union_of_concatenations() {
        let e = re("a b + a c");
        assert_eq!(derive(&e, &sym("a")), re("(eps b + 0 0) + (eps c + 0 0)"));
        assert_eq!(derive(&e, &sym("b")), re("(0 b + 0 eps) + (0 c + 0 0)"));
    }

    #[test]
    fn shuffle_rule() {
        let d = derive(&re("a0 || a1"), &sym("a2"));
        assert_eq!(d, re("(0 || a1) + (a0 || 0)"));
        assert!(!d.is_nullable());
    }

    #[test]
    fn star_rule() {
        assert_eq!(derive(&re("a*"), &sym("a")), re("eps a*"));
        assert_eq!(derive(&re("a*"), &sym("b")), re("0 a*"));
    }

    #[test]
    fn constants_derive_to_empty() {
        assert_eq!(derive(&Regex::Empty, &sym("a")), Regex::Empty);
        assert_eq!(derive(&Regex::Eps, &sym("a")), Regex::Empty);
    }

    #[test]
    fn words() {
        let e = re("a* b*");
        assert_eq!(derive_word(&e, &Trace::empty()), e);
        assert_eq!(derive_word(&re("a"), &w("a")), Regex::Eps);
        assert_eq!(derive_word(&re("a"), &w("b")), Regex::Empty);
    }

    #[test]
    fn acceptance() {
        assert!(accepts_by_derivative(&re("a* b*"), &w("a b")));
        assert!(!accepts_by_derivative(&re("a"), &Trace::empty()));
        assert!(accepts_by_derivative(&re("a0 || a1"), &w("a1 a0")));
        assert!(!accepts_by_derivative(&re("a* b*"), &w("b a")));
    }

    // Derivatives are not bounded: without simplification the terms keep
    // growing along this family.
    #[test]
    fn iterated_derivatives_grow() {
        let mut e = re("(a + b)* a (a + b)*");
        let mut last = e.size();
        for step in 0..5 {
            let a = if step % 2 == 0 { sym("a") } else { sym("b") };
            e = derive(&e, &a);
            assert!(e.size() >= last, "size shrank at step {step}");
            last = e.size();
        }
        assert!(last > re("(a + b)* a (a + b)*").size() * 4);
    }
}
