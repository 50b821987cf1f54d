use std::collections::BTreeSet;

use proptest::prelude::*;

use pderiv::automaton::build_nfa;
use pderiv::bounds::{check_height_invariant, check_size_invariant, delta_max, eta_max};
use pderiv::derivative::{accepts_by_derivative, derive};
use pderiv::monitor::{run_trace, MonitorSession, Verdict};
use pderiv::oracle::{lang_up_to, membership_oracle, shuffle_words};
use pderiv::partial::{
    accepts_by_partial, closure, partial_derivatives, partial_derivatives_word, Frontier,
};
use pderiv::syntax::EpsFlag;
use pderiv::{Regex, Symbol, Trace};

const ALPHABET: [&str; 3] = ["a", "b", "c"];

fn alphabet() -> Vec<Symbol> {
    ALPHABET.iter().map(|s| Symbol::new(s).unwrap()).collect()
}

fn symbol() -> impl Strategy<Value = Symbol> {
    prop::sample::select(alphabet())
}

fn leaf() -> impl Strategy<Value = Regex> {
    prop_oneof![
        1 => Just(Regex::Empty),
        2 => Just(Regex::Eps),
        8 => symbol().prop_map(Regex::Sym),
    ]
}

fn regex_with(shuffle: bool) -> BoxedStrategy<Regex> {
    leaf()
        .prop_recursive(4, 15, 2, move |inner| {
            let binary = (inner.clone(), inner.clone());
            let shuffle_weight = if shuffle { 3 } else { 0 };
            prop_oneof![
                4 => binary.clone().prop_map(|(l, r)| Regex::cat(l, r)),
                3 => binary.clone().prop_map(|(l, r)| Regex::or(l, r)),
                2 => inner.prop_map(Regex::star),
                shuffle_weight => binary.prop_map(|(l, r)| Regex::shuffle(l, r)),
            ]
        })
        .prop_filter("size at most 15", |e| e.size() <= 15)
        .boxed()
}

fn regex() -> BoxedStrategy<Regex> {
    regex_with(true)
}

fn word(max_len: usize) -> impl Strategy<Value = Trace> {
    prop::collection::vec(symbol(), 0..=max_len).prop_map(Trace::from)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // syntax

    #[test]
    fn format_then_parse_round_trips(e in regex()) {
        prop_assert_eq!(Regex::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn height_is_below_size(e in regex()) {
        prop_assert!(e.height() < e.size());
    }

    #[test]
    fn nullability_matches_oracle(e in regex()) {
        let nullable = e.has_eps() == EpsFlag::Eps;
        prop_assert_eq!(nullable, membership_oracle(&e, &Trace::empty()).unwrap());
    }

    // oracle

    #[test]
    fn shuffle_words_is_commutative(u in word(4), v in word(4)) {
        prop_assert_eq!(shuffle_words(&u, &v), shuffle_words(&v, &u));
    }

    #[test]
    fn shuffle_words_cardinality(u in word(4), v in word(4)) {
        let bound = binomial(u.len() + v.len(), u.len());
        prop_assert!(shuffle_words(&u, &v).len() <= bound);

        let renamed: Trace = v.iter().map(|s| Symbol::new(&format!("{s}2")).unwrap()).collect();
        prop_assert_eq!(shuffle_words(&u, &renamed).len(), bound);
    }

    #[test]
    fn bounded_language_is_monotone(e in regex(), k in 0usize..4) {
        let small = lang_up_to(&e, k).unwrap();
        let large = lang_up_to(&e, k + 1).unwrap();
        prop_assert!(small.words.is_subset(&large.words));
        prop_assert_eq!(large.truncate(k), small);
    }

    #[test]
    fn star_is_eps_or_one_more_iteration(e in regex(), k in 0usize..4) {
        let star = Regex::star(e.clone());
        let unrolled = Regex::or(Regex::Eps, Regex::cat(e, star.clone()));
        prop_assert_eq!(lang_up_to(&star, k).unwrap().words, lang_up_to(&unrolled, k).unwrap().words);
    }

    // derivative

    #[test]
    fn derivative_acceptance_matches_oracle(e in regex(), w in word(5)) {
        prop_assert_eq!(accepts_by_derivative(&e, &w), membership_oracle(&e, &w).unwrap());
    }

    #[test]
    fn derivative_language_is_the_left_quotient(e in regex(), a in symbol()) {
        let k = 3;
        let quotient: BTreeSet<Trace> = lang_up_to(&e, k + 1)
            .unwrap()
            .words
            .into_iter()
            .filter(|w| w.first() == Some(&a))
            .map(|w| w.tail())
            .collect();
        prop_assert_eq!(lang_up_to(&derive(&e, &a), k).unwrap().words, quotient);
    }

    // partial derivatives

    #[test]
    fn partial_derivatives_decompose_the_derivative(e in regex(), a in symbol()) {
        let k = 4;
        let mut union = BTreeSet::new();
        for d in partial_derivatives(&e, &a) {
            union.extend(lang_up_to(&d, k).unwrap().words);
        }
        prop_assert_eq!(union, lang_up_to(&derive(&e, &a), k).unwrap().words);
    }

    #[test]
    fn partial_acceptance_matches_derivative_and_oracle(e in regex(), w in word(5)) {
        let by_partial = accepts_by_partial(&e, &w);
        prop_assert_eq!(by_partial, accepts_by_derivative(&e, &w));
        prop_assert_eq!(by_partial, membership_oracle(&e, &w).unwrap());
    }

    #[test]
    fn word_step_decomposes(e in regex(), a in symbol(), w in word(3)) {
        let whole = partial_derivatives_word(&e, &Trace::from(vec![a.clone()]).concat(&w));
        let mut parts = Frontier::empty();
        for d in partial_derivatives(&e, &a) {
            for x in partial_derivatives_word(&d, &w) {
                parts.insert(x);
            }
        }
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn closure_is_finite(e in regex()) {
        prop_assert!(closure(&e).is_ok());
    }

    #[test]
    fn shuffle_free_closure_is_linear(e in regex_with(false)) {
        prop_assert!(closure(&e).unwrap().len() <= e.size() + 1);
    }

    // bounds

    #[test]
    fn budgets_are_in_range(e in regex()) {
        prop_assert!(delta_max(&e) <= 1);
        prop_assert!(eta_max(&e) <= e.size() * e.size());
    }

    #[test]
    fn one_step_invariants_hold(e in regex(), a in symbol()) {
        for r in check_height_invariant(&e, &a).iter().chain(&check_size_invariant(&e, &a)) {
            prop_assert!(r.holds(), "{}", r);
        }
    }

    #[test]
    fn shuffle_free_steps_have_no_height_budget(e in regex_with(false), a in symbol()) {
        for d in partial_derivatives(&e, &a) {
            prop_assert_eq!(delta_max(&d), 0, "{:?} -> {:?}", e, d);
        }
    }

    #[test]
    fn height_growth_spends_the_budget(e in regex(), a in symbol()) {
        for d in partial_derivatives(&e, &a) {
            if d.height() == e.height() + 1 {
                prop_assert_eq!(delta_max(&d), 0, "{:?} -> {:?}", e, d);
            }
            if d.height() == e.height() {
                prop_assert!(delta_max(&d) <= delta_max(&e), "{:?} -> {:?}", e, d);
            }
        }
    }

    // automaton

    #[test]
    fn nfa_agrees_with_partial_derivatives(e in regex(), w in word(4)) {
        let nfa = build_nfa(&e).unwrap();
        prop_assert_eq!(nfa.accepts(&w), accepts_by_partial(&e, &w));
    }

    #[test]
    fn nfa_states_respect_ceilings(e in regex()) {
        let nfa = build_nfa(&e).unwrap();
        for s in &nfa.states {
            prop_assert!(s.size() <= e.size() + e.size() * e.size());
            prop_assert!(s.height() <= e.height() + 1);
        }
    }

    // monitor

    #[test]
    fn monitor_verdict_matches_acceptance(e in regex(), w in word(5)) {
        let (verdict, stats) = run_trace(&e, &w);
        prop_assert_eq!(verdict == Verdict::Accepting, accepts_by_partial(&e, &w));
        prop_assert!(stats.within_budgets(), "{:?}", stats);
    }

    #[test]
    fn violation_is_absorbing(e in regex(), w in word(5), rest in word(3)) {
        let mut session = MonitorSession::new(e);
        let mut violated = false;
        for a in w.iter().chain(rest.iter()) {
            let verdict = session.step(a);
            if violated {
                prop_assert_eq!(verdict, Verdict::Violation);
            }
            violated |= verdict == Verdict::Violation;
        }
    }
}
