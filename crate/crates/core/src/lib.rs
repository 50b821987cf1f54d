//! Brzozowski derivatives and Antimirov partial derivatives for regular
//! expressions extended with the shuffle (interleaving) operator.
//!
//! The crate is organised around one expression type, [`Regex`], and the
//! two transition systems over it:
//!
//! * [`derivative`]: the deterministic derivative, total for every symbol;
//! * [`partial`]: the nondeterministic partial derivatives, whose reachable
//!   set is finite and becomes the state set of an [`automaton::Nfa`].
//!
//! [`bounds`] provides the height and size increment budgets that bound how
//! large any partial derivative can get, [`monitor`] uses partial
//! derivatives to check event traces online, and [`oracle`] is a
//! brute-force language enumerator used to validate all of the above.
//!
//! ```
//! use pderiv::{partial_derivatives_word, Regex, Trace};
//!
//! let spec = Regex::parse("o1 a1 c1 || o2 a2 c2").unwrap();
//! let trace = Trace::parse("o1 o2 a2").unwrap();
//! let frontier = partial_derivatives_word(&spec, &trace);
//! assert_eq!(frontier.len(), 1);
//! assert!(!frontier.is_accepting());
//! ```

pub mod automaton;
pub mod bounds;
pub mod corpus;
pub mod derivative;
pub mod error;
pub mod monitor;
pub mod oracle;
pub mod partial;
pub mod syntax;
pub mod trace;

pub use automaton::{build_nfa, nfa_accepts, state_growth_bench, Nfa};
pub use bounds::{delta_max, eta_max, geq, star_chain_growth, BoundReport};
pub use derivative::{accepts_by_derivative, derive, derive_word};
pub use error::{Error, Result};
pub use monitor::{run_trace, MonitorSession, Stats, Verdict};
pub use oracle::{lang_up_to, membership_oracle, shuffle_words, BoundedLanguage};
pub use partial::{
    accepts_by_partial, closure, partial_derivatives, partial_derivatives_word, Frontier,
};
pub use syntax::{parse, EpsFlag, Regex, Symbol};
pub use trace::Trace;

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/syntax.md")]
    mod syntax {}
    #[doc = include_str!("../../../book/src/derivatives.md")]
    mod derivatives {}
    #[doc = include_str!("../../../book/src/partial-derivatives.md")]
    mod partial_derivatives {}
    #[doc = include_str!("../../../book/src/shuffle.md")]
    mod shuffle {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/automata.md")]
    mod automata {}
    #[doc = include_str!("../../../book/src/monitoring.md")]
    mod monitoring {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
