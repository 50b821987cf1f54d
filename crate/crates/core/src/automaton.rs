//! NFA construction from the partial-derivative closure.
//!
//! States are the syntactically distinct partial derivatives reachable from
//! the initial expression; no states are merged. Numbering is breadth-first
//! with symbols in name order and, for each symbol, targets in order of
//! their printed form, so the output is stable across runs.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partial::{partial_derivatives, DEFAULT_STATE_CAP};
use crate::syntax::{Regex, Symbol};
use crate::trace::Trace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    pub states: Vec<Regex>,
    pub initial: usize,
    /// `(from, symbol, to)` in discovery order.
    pub transitions: Vec<(usize, Symbol, usize)>,
    /// Sorted state indices whose expression accepts the empty word.
    pub finals: Vec<usize>,
    pub alphabet: Vec<Symbol>,
}

/// The JSON form written by the `nfa` command.
#[derive(Debug, Clone, Serialize)]
pub struct NfaJson {
    pub states: Vec<String>,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub transitions: Vec<(usize, String, usize)>,
}

pub fn build_nfa(e: &Regex) -> Result<Nfa> {
    build_nfa_with_cap(e, DEFAULT_STATE_CAP)
}

pub fn build_nfa_with_cap(e: &Regex, cap: usize) -> Result<Nfa> {
    let alphabet: Vec<Symbol> = e.symbols().into_iter().collect();
    let mut states = vec![e.clone()];
    let mut index = HashMap::from([(e.clone(), 0usize)]);
    let mut transitions = Vec::new();
    let mut queue = VecDeque::from([0usize]);

    while let Some(from) = queue.pop_front() {
        let source = states[from].clone();
        for a in &alphabet {
            let pd = partial_derivatives(&source, a);
            for target in pd.sorted_by_text() {
                let to = match index.get(target) {
                    Some(&i) => i,
                    None => {
                        if states.len() >= cap {
                            return Err(Error::ResourceLimit {
                                what: "NFA state count",
                                limit: cap,
                            });
                        }
                        let i = states.len();
                        states.push(target.clone());
                        index.insert(target.clone(), i);
                        queue.push_back(i);
                        i
                    }
                };
                transitions.push((from, a.clone(), to));
            }
        }
    }

    let finals = (0..states.len())
        .filter(|&i| states[i].is_nullable())
        .collect();
    Ok(Nfa {
        states,
        initial: 0,
        transitions,
        finals,
        alphabet,
    })
}

impl Nfa {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    fn successors(&self) -> HashMap<(usize, &Symbol), Vec<usize>> {
        let mut succ: HashMap<(usize, &Symbol), Vec<usize>> = HashMap::new();
        for (from, a, to) in &self.transitions {
            succ.entry((*from, a)).or_default().push(*to);
        }
        succ
    }

    /// Subset simulation. Symbols outside the alphabet have no transitions.
    pub fn accepts(&self, w: &Trace) -> bool {
        let succ = self.successors();
        let mut current = BTreeSet::from([self.initial]);
        for a in w {
            current = current
                .iter()
                .flat_map(|&s| succ.get(&(s, a)).into_iter().flatten().copied())
                .collect();
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|s| self.finals.binary_search(s).is_ok())
    }

    pub fn to_json(&self) -> NfaJson {
        NfaJson {
            states: self.states.iter().map(Regex::to_string).collect(),
            initial: self.initial,
            finals: self.finals.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|(f, a, t)| (*f, a.to_string(), *t))
                .collect(),
        }
    }

    /// Graphviz rendering; final states are drawn as double circles.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph nfa {\n  rankdir=LR;\n  start [shape=point];\n");
        for (i, e) in self.states.iter().enumerate() {
            let shape = if self.finals.binary_search(&i).is_ok() {
                "doublecircle"
            } else {
                "circle"
            };
            let label = e.to_string().replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "  s{i} [shape={shape}, label=\"{label}\"];");
        }
        let _ = writeln!(out, "  start -> s{};", self.initial);
        for (from, a, to) in &self.transitions {
            let _ = writeln!(out, "  s{from} -> s{to} [label=\"{a}\"];");
        }
        out.push_str("}\n");
        out
    }
}

pub fn nfa_accepts(nfa: &Nfa, w: &Trace) -> bool {
    nfa.accepts(w)
}

/// `o1 a1 c1 || ... || on an cn`: `n` independent open/access/close sequences.
pub fn file_descriptor_spec(n: usize) -> Result<Regex> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one file".into()));
    }
    let text = (1..=n)
        .map(|i| format!("o{i} a{i} c{i}"))
        .collect::<Vec<_>>()
        .join(" || ");
    Regex::parse(&text)
}

/// State count of the NFA built for [`file_descriptor_spec`]`(n)`, `1 <= n <= 8`.
pub fn state_growth_bench(n: usize) -> Result<usize> {
    if !(1..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "n must be in 1..=8, got {n}"
        )));
    }
    Ok(build_nfa(&file_descriptor_spec(n)?)?.state_count())
}
