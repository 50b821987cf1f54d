//! Random expression generation, the worked-example regression corpus, and
//! the cross-checking property suite used by the `fuzz` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::build_nfa;
use crate::bounds::{check_height_invariant, check_size_invariant, delta_max, eta_max};
use crate::derivative::{accepts_by_derivative, derive};
use crate::error::Result;
use crate::oracle::lang_up_to;
use crate::partial::{closure, partial_derivatives, partial_derivatives_word, Frontier};
use crate::syntax::{Regex, Symbol};
use crate::trace::Trace;

/// Relative weights of each constructor in generated trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weights {
    pub empty: u32,
    pub eps: u32,
    pub sym: u32,
    pub cat: u32,
    pub or: u32,
    pub star: u32,
    pub shuffle: u32,
}

impl Default for Weights {
    fn default() -> Self {
        Weights {
            empty: 1,
            eps: 3,
            sym: 12,
            cat: 6,
            or: 5,
            star: 3,
            shuffle: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    /// Upper bound on `size` of every generated expression.
    pub max_size: usize,
    /// Symbols are drawn from the first `alphabet_size` of `a, b, c, ...`.
    pub alphabet_size: usize,
    pub shuffle_enabled: bool,
    pub seed: u64,
    pub weights: Weights,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_size: 15,
            alphabet_size: 3,
            shuffle_enabled: true,
            seed: 0,
            weights: Weights::default(),
        }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> GenConfig {
        GenConfig {
            seed,
            ..GenConfig::default()
        }
    }

    pub fn alphabet(&self) -> Vec<Symbol> {
        alphabet(self.alphabet_size)
    }
}

/// `a, b, c, ..., z, s26, s27, ...`
pub fn alphabet(n: usize) -> Vec<Symbol> {
    (0..n)
        .map(|i| {
            let name = if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("s{i}")
            };
            Symbol::new(&name).expect("generated names are valid identifiers")
        })
        .collect()
}

/// A deterministic stream of random expressions.
pub struct RegexGenerator {
    cfg: GenConfig,
    alphabet: Vec<Symbol>,
    rng: ChaCha8Rng,
}

#[derive(Clone, Copy)]
enum Node {
    Empty,
    Eps,
    Sym,
    Cat,
    Or,
    Star,
    Shuffle,
}

impl RegexGenerator {
    pub fn new(cfg: GenConfig) -> RegexGenerator {
        assert!(cfg.max_size >= 1, "max_size must be at least 1");
        assert!(cfg.alphabet_size >= 1, "alphabet must be non-empty");
        RegexGenerator {
            alphabet: cfg.alphabet(),
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            cfg,
        }
    }

    pub fn next_regex(&mut self) -> Regex {
        let budget = self.rng.random_range(1..=self.cfg.max_size);
        self.gen(budget)
    }

    fn pick(&mut self, options: &[(Node, u32)]) -> Option<Node> {
        let total: u32 = options.iter().map(|(_, w)| w).sum();
        if total == 0 {
            return None;
        }
        let mut x = self.rng.random_range(0..total);
        for &(node, w) in options {
            if x < w {
                return Some(node);
            }
            x -= w;
        }
        unreachable!()
    }

    /// Builds a tree of size at most `budget`.
    fn gen(&mut self, budget: usize) -> Regex {
        let w = self.cfg.weights;
        let shuffle = if self.cfg.shuffle_enabled {
            w.shuffle
        } else {
            0
        };
        let mut options = vec![
            (Node::Empty, w.empty),
            (Node::Eps, w.eps),
            (Node::Sym, w.sym),
        ];
        if budget >= 2 {
            options.push((Node::Star, w.star));
        }
        if budget >= 3 {
            options.extend([
                (Node::Cat, w.cat),
                (Node::Or, w.or),
                (Node::Shuffle, shuffle),
            ]);
        }
        let node = self.pick(&options).unwrap_or(Node::Sym);
        match node {
            Node::Empty => Regex::Empty,
            Node::Eps => Regex::Eps,
            Node::Sym => {
                let i = self.rng.random_range(0..self.alphabet.len());
                Regex::Sym(self.alphabet[i].clone())
            }
            Node::Star => {
                let inner = self.gen(budget - 1);
                Regex::star(inner)
            }
            Node::Cat | Node::Or | Node::Shuffle => {
                let left_budget = self.rng.random_range(1..=budget - 2);
                let l = self.gen(left_budget);
                let r = self.gen(budget - 1 - left_budget);
                match node {
                    Node::Cat => Regex::cat(l, r),
                    Node::Or => Regex::or(l, r),
                    _ => Regex::shuffle(l, r),
                }
            }
        }
    }
}

impl Iterator for RegexGenerator {
    type Item = Regex;

    fn next(&mut self) -> Option<Regex> {
        Some(self.next_regex())
    }
}

/// The first expression of the stream for `cfg`.
pub fn gen_regex(cfg: GenConfig) -> Regex {
    RegexGenerator::new(cfg).next_regex()
}

// ---------------------------------------------------------------------------
// Worked examples
// ---------------------------------------------------------------------------

/// Values a worked example is expected to reproduce. Metric sequences start
/// with the expression itself and follow the unique partial derivative after
/// each event.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expected {
    /// Brzozowski derivative after the whole trace.
    pub derivative: Option<Regex>,
    /// Exact partial-derivative frontier after the whole trace.
    pub frontier: Option<Vec<Regex>>,
    /// An expression the frontier must contain after the whole trace.
    pub reaches: Option<Regex>,
    pub heights: Option<Vec<usize>>,
    pub sizes: Option<Vec<usize>>,
    pub eta_max: Option<Vec<usize>>,
    /// Whether the trace is in the language.
    pub accepts: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkedExample {
    pub name: &'static str,
    pub expr: Regex,
    pub trace: Trace,
    pub expected: Expected,
}

impl WorkedExample {
    /// Checks every expected value, returning a description of the first mismatch.
    pub fn check(&self) -> std::result::Result<(), String> {
        let mismatch = |what: &str, want: &dyn std::fmt::Debug, got: &dyn std::fmt::Debug| {
            Err(format!(
                "{}: {what}: expected {want:?}, got {got:?}",
                self.name
            ))
        };
        let x = &self.expected;
        if let Some(want) = &x.derivative {
            let got = crate::derivative::derive_word(&self.expr, &self.trace);
            if &got != want {
                return mismatch("derivative", want, &got);
            }
        }
        let frontier = partial_derivatives_word(&self.expr, &self.trace);
        if let Some(want) = &x.frontier {
            let want: Frontier = want.iter().cloned().collect();
            if frontier != want {
                return mismatch("frontier", &want, &frontier);
            }
        }
        if let Some(want) = &x.reaches {
            if !frontier.contains(want) {
                return mismatch("reached member", want, &frontier);
            }
        }
        if x.heights.is_some() || x.sizes.is_some() || x.eta_max.is_some() {
            let path = self.unique_path()?;
            let check = |what: &str, want: &Option<Vec<usize>>, f: fn(&Regex) -> usize| {
                if let Some(want) = want {
                    let got: Vec<usize> = path.iter().map(f).collect();
                    if &got != want {
                        return mismatch(what, want, &got);
                    }
                }
                Ok(())
            };
            check("heights", &x.heights, Regex::height)?;
            check("sizes", &x.sizes, Regex::size)?;
            check("eta_max", &x.eta_max, eta_max)?;
        }
        if let Some(want) = x.accepts {
            let got = frontier.is_accepting();
            if got != want {
                return mismatch("acceptance", &want, &got);
            }
        }
        Ok(())
    }

    fn unique_path(&self) -> std::result::Result<Vec<Regex>, String> {
        let mut path = vec![self.expr.clone()];
        for a in &self.trace {
            let pd = partial_derivatives(path.last().unwrap(), a);
            if pd.len() != 1 {
                return Err(format!(
                    "{}: expected a unique partial derivative on `{a}`, found {}",
                    self.name,
                    pd.len()
                ));
            }
            path.push(pd.into_iter().next().unwrap());
        }
        Ok(path)
    }
}

/// Every worked example with its published intermediate values.
pub fn worked_examples() -> Vec<WorkedExample> {
    let re = |s: &str| Regex::parse(s).expect("corpus expression parses");
    let tr = |s: &str| Trace::parse(s).expect("corpus trace parses");
    vec![
        WorkedExample {
            name: "derivative of a union of concatenations by a",
            expr: re("a b + a c"),
            trace: tr("a"),
            expected: Expected {
                derivative: Some(re("(eps b + 0 0) + (eps c + 0 0)")),
                frontier: Some(vec![re("eps b"), re("eps c")]),
                ..Expected::default()
            },
        },
        WorkedExample {
            name: "derivative of a union of concatenations by b",
            expr: re("a b + a c"),
            trace: tr("b"),
            expected: Expected {
                derivative: Some(re("(0 b + 0 eps) + (0 c + 0 0)")),
                frontier: Some(vec![]),
                ..Expected::default()
            },
        },
        WorkedExample {
            name: "height rises then falls along a b",
            expr: re("a* b*"),
            trace: tr("a b"),
            expected: Expected {
                heights: Some(vec![2, 3, 2]),
                frontier: Some(vec![re("eps b*")]),
                accepts: Some(true),
                ..Expected::default()
            },
        },
        WorkedExample {
            name: "height unchanged along b b",
            expr: re("a* b*"),
            trace: tr("b b"),
            expected: Expected {
                heights: Some(vec![2, 2, 2]),
                frontier: Some(vec![re("eps b*")]),
                accepts: Some(true),
                ..Expected::default()
            },
        },
        WorkedExample {
            name: "star chain of size 4",
            expr: re("((a*)*)*"),
            trace: tr("a a"),
            expected: Expected {
                sizes: Some(vec![4, 13, 13]),
                frontier: Some(vec![re("((eps a*)(a*)*)((a*)*)*")]),
                ..Expected::default()
            },
        },
        WorkedExample {
            name: "size stays then grows along a b",
            expr: re("a (b*)*"),
            trace: tr("a b"),
            expected: Expected {
                sizes: Some(vec![5, 5, 8]),
                frontier: Some(vec![re("(eps b*)(b*)*")]),
                ..Expected::default()
            },
        },
        WorkedExample {
            name: "shuffle of distinct symbols by a third symbol",
            expr: re("a0 || a1"),
            trace: tr("a2"),
            expected: Expected {
                derivative: Some(re("(0 || a1) + (a0 || 0)")),
                frontier: Some(vec![]),
                accepts: Some(false),
                ..Expected::default()
            },
        },
        WorkedExample {
            name: "shuffle height grows twice along a b a",
            expr: re("(eps || a*)(b || a*)"),
            trace: tr("a b a"),
            expected: Expected {
                reaches: Some(re("eps || eps a*")),
                ..Expected::default()
            },
        },
        WorkedExample {
            name: "shuffle size budget uses the sum",
            expr: re("a* || b*"),
            trace: tr("a"),
            expected: Expected {
                sizes: Some(vec![5, 7]),
                eta_max: Some(vec![4, 2]),
                frontier: Some(vec![re("eps a* || b*")]),
                ..Expected::default()
            },
        },
    ]
}

// ---------------------------------------------------------------------------
// Property suite
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Words up to this length are compared across all acceptance methods.
    pub max_word_len: usize,
    /// Language truncation used for the derivative decomposition check.
    pub decomposition_len: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_word_len: 4,
            decomposition_len: 3,
        }
    }
}

/// A property that failed for a specific expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyFailure {
    pub property: &'static str,
    pub detail: String,
}

impl std::fmt::Display for PropertyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.property, self.detail)
    }
}

fn oracle_failure(err: crate::error::Error) -> PropertyFailure {
    PropertyFailure {
        property: "oracle",
        detail: err.to_string(),
    }
}

fn fail(property: &'static str, detail: String) -> std::result::Result<(), PropertyFailure> {
    Err(PropertyFailure { property, detail })
}

/// Runs the semantic agreement and bound checks on one expression over `alphabet`.
pub fn check_properties(
    e: &Regex,
    alphabet: &[Symbol],
    cfg: &CheckConfig,
) -> std::result::Result<(), PropertyFailure> {
    let lang = lang_up_to(e, cfg.max_word_len).map_err(oracle_failure)?;
    let nfa = build_nfa(e).map_err(|err| PropertyFailure {
        property: "nfa",
        detail: err.to_string(),
    })?;
    for w in Trace::all_up_to(alphabet, cfg.max_word_len) {
        let oracle = lang.contains(&w);
        let by_derivative = accepts_by_derivative(e, &w);
        let by_partial = partial_derivatives_word(e, &w).is_accepting();
        let by_nfa = nfa.accepts(&w);
        if !(oracle == by_derivative && oracle == by_partial && oracle == by_nfa) {
            return fail(
                "acceptance agreement",
                format!(
                    "word [{w}]: oracle {oracle}, derivative {by_derivative}, partial {by_partial}, nfa {by_nfa}"
                ),
            );
        }
    }

    let k = cfg.decomposition_len;
    for a in alphabet {
        let brzozowski = lang_up_to(&derive(e, a), k).map_err(oracle_failure)?;
        let mut union = std::collections::BTreeSet::new();
        for d in partial_derivatives(e, a) {
            union.extend(lang_up_to(&d, k).map_err(oracle_failure)?.words);
        }
        if union != brzozowski.words {
            return fail("antimirov decomposition", format!("symbol {a}"));
        }
    }

    let (dm, em, n) = (delta_max(e), eta_max(e), e.size());
    if dm > 1 || em > n * n {
        return fail(
            "budget ranges",
            format!("delta_max {dm}, eta_max {em}, size {n}"),
        );
    }
    if let Err(detail) = check_walk_bounds(e, alphabet, cfg.max_word_len) {
        return fail("bound invariants", detail);
    }
    Ok(())
}

/// Checks the one-step budget invariants on every partial-derivative step
/// reachable within `depth` events, and the derived ceilings on every
/// reached expression.
pub fn check_walk_bounds(
    e: &Regex,
    alphabet: &[Symbol],
    depth: usize,
) -> std::result::Result<(), String> {
    let height_ceiling = e.height() + 1;
    let size_ceiling = e.size() + e.size() * e.size();
    let mut layer = Frontier::singleton(e.clone());
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..depth {
        let mut next = Frontier::empty();
        for x in &layer {
            if !seen.insert(x.clone()) {
                continue;
            }
            for a in alphabet {
                for r in check_height_invariant(x, a)
                    .iter()
                    .chain(&check_size_invariant(x, a))
                {
                    if !r.holds() {
                        return Err(format!("from `{x}`: {r}"));
                    }
                }
                for d in partial_derivatives(x, a) {
                    if d.height() > height_ceiling || d.size() > size_ceiling {
                        return Err(format!("`{d}` exceeds the ceilings of `{e}`"));
                    }
                    next.insert(d);
                }
            }
        }
        layer = next;
    }
    Ok(())
}

/// Shuffle-free strengthening: every one-step partial derivative has
/// `delta_max = 0`, and the closure has at most `size + 1` members.
pub fn check_shuffle_free(e: &Regex) -> Result<std::result::Result<(), String>> {
    let states = closure(e)?;
    if states.len() > e.size() + 1 {
        return Ok(Err(format!("closure of `{e}` has {} states", states.len())));
    }
    for x in &states {
        for a in e.symbols() {
            for d in partial_derivatives(x, &a) {
                if delta_max(&d) != 0 {
                    return Ok(Err(format!("`{x}` --{a}--> `{d}` has delta_max 1")));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Greedily shrinks `e` while `still_fails` holds, trying subterms first and
/// then simplified rebuilds of each child.
pub fn shrink(e: &Regex, still_fails: &mut dyn FnMut(&Regex) -> bool) -> Regex {
    let mut current = e.clone();
    'outer: loop {
        for candidate in shrink_candidates(&current) {
            if candidate.size() < current.size() && still_fails(&candidate) {
                current = candidate;
                continue 'outer;
            }
        }
        return current;
    }
}

fn shrink_candidates(e: &Regex) -> Vec<Regex> {
    let mut out = vec![Regex::Empty, Regex::Eps];
    match e {
        Regex::Empty | Regex::Eps => {}
        Regex::Sym(_) => {}
        Regex::Star(inner) => {
            out.push((**inner).clone());
            out.extend(shrink_candidates(inner).into_iter().map(Regex::star));
        }
        Regex::Cat(l, r) | Regex::Or(l, r) | Regex::Shuffle(l, r) => {
            out.push((**l).clone());
            out.push((**r).clone());
            let rebuild = |l: Regex, r: Regex| match e {
                Regex::Cat(..) => Regex::cat(l, r),
                Regex::Or(..) => Regex::or(l, r),
                _ => Regex::shuffle(l, r),
            };
            for l2 in shrink_candidates(l) {
                out.push(rebuild(l2, (**r).clone()));
            }
            for r2 in shrink_candidates(r) {
                out.push(rebuild((**l).clone(), r2));
            }
        }
    }
    out
}

/// Summary of a fuzzing run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub checked: usize,
    pub failures: usize,
    /// The first failure, shrunk.
    pub counterexample: Option<(Regex, PropertyFailure)>,
}

/// Checks `count` random expressions drawn from `cfg`.
pub fn fuzz(cfg: GenConfig, count: usize, check: &CheckConfig) -> FuzzReport {
    let alphabet = cfg.alphabet();
    let mut report = FuzzReport {
        checked: 0,
        failures: 0,
        counterexample: None,
    };
    for e in RegexGenerator::new(cfg).take(count) {
        report.checked += 1;
        if let Err(failure) = check_properties(&e, &alphabet, check) {
            report.failures += 1;
            if report.counterexample.is_none() {
                let small = shrink(&e, &mut |c| check_properties(c, &alphabet, check).is_err());
                let failure = check_properties(&small, &alphabet, check)
                    .err()
                    .unwrap_or(failure);
                report.counterexample = Some((small, failure));
            }
        }
    }
    report
}
