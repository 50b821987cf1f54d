//! Online trace monitoring by partial-derivative rewriting.
//!
//! A session keeps the set of partial derivatives reached by the events seen
//! so far. The verdict is three-valued:
//!
//! * `VIOLATION` once the set is empty, which is permanent;
//! * `ACCEPTING` when some member accepts the empty word;
//! * `PENDING` otherwise.
//!
//! `PENDING` does not promise that the trace can still be completed: a spec
//! such as `a 0` reaches `{eps 0}` after `a`, whose language is empty.

use std::fmt;

use serde::Serialize;

use crate::partial::Frontier;
use crate::syntax::{Regex, Symbol};
use crate::trace::Trace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Accepting,
    Pending,
    Violation,
}

impl Verdict {
    /// Process exit code used by the `monitor` command.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Accepting => 0,
            Verdict::Pending => 1,
            Verdict::Violation => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accepting => "ACCEPTING",
            Verdict::Pending => "PENDING",
            Verdict::Violation => "VIOLATION",
        })
    }
}

/// Monitoring state for one specification. Not meant to be stepped from
/// several threads at once; distinct sessions are independent.
#[derive(Debug, Clone)]
pub struct MonitorSession {
    spec: Regex,
    frontier: Frontier,
    events_seen: usize,
    max_size_seen: usize,
    max_height_seen: usize,
    frontier_history: Vec<usize>,
    violation_at: Option<usize>,
}

impl MonitorSession {
    pub fn new(spec: Regex) -> MonitorSession {
        MonitorSession {
            frontier: Frontier::singleton(spec.clone()),
            events_seen: 0,
            max_size_seen: spec.size(),
            max_height_seen: spec.height(),
            frontier_history: vec![1],
            violation_at: None,
            spec,
        }
    }

    pub fn spec(&self) -> &Regex {
        &self.spec
    }

    pub fn frontier(&self) -> &Frontier {
        &self.frontier
    }

    pub fn events_seen(&self) -> usize {
        self.events_seen
    }

    pub fn max_size_seen(&self) -> usize {
        self.max_size_seen
    }

    pub fn max_height_seen(&self) -> usize {
        self.max_height_seen
    }

    /// Frontier cardinality before any event, then after each event.
    pub fn frontier_history(&self) -> &[usize] {
        &self.frontier_history
    }

    /// 1-based index of the event that emptied the frontier, if any.
    pub fn violation_at(&self) -> Option<usize> {
        self.violation_at
    }

    /// `size(spec) + size(spec)^2`, the ceiling for any frontier member's size.
    pub fn size_budget(&self) -> usize {
        let n = self.spec.size();
        n + n * n
    }

    /// `height(spec) + 1`, the ceiling for any frontier member's height.
    pub fn height_budget(&self) -> usize {
        self.spec.height() + 1
    }

    /// Consumes one event.
    pub fn step(&mut self, a: &Symbol) -> Verdict {
        self.frontier = self.frontier.step(a);
        self.events_seen += 1;
        for e in &self.frontier {
            self.max_size_seen = self.max_size_seen.max(e.size());
            self.max_height_seen = self.max_height_seen.max(e.height());
        }
        self.frontier_history.push(self.frontier.len());
        if self.frontier.is_empty() && self.violation_at.is_none() {
            self.violation_at = Some(self.events_seen);
        }
        self.current_verdict()
    }

    pub fn current_verdict(&self) -> Verdict {
        if self.frontier.is_empty() {
            Verdict::Violation
        } else if self.frontier.is_accepting() {
            Verdict::Accepting
        } else {
            Verdict::Pending
        }
    }

    pub fn stats(&self) -> Stats {
        Stats {
            events: self.events_seen,
            verdict: self.current_verdict(),
            max_size: self.max_size_seen,
            max_height: self.max_height_seen,
            size_budget: self.size_budget(),
            height_budget: self.height_budget(),
            frontier_history: self.frontier_history.clone(),
        }
    }
}

/// End-of-trace record written by `monitor --stats`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Stats {
    pub events: usize,
    pub verdict: Verdict,
    pub max_size: usize,
    pub max_height: usize,
    pub size_budget: usize,
    pub height_budget: usize,
    pub frontier_history: Vec<usize>,
}

impl Stats {
    pub fn within_budgets(&self) -> bool {
        self.max_size <= self.size_budget && self.max_height <= self.height_budget
    }
}

pub fn new_session(spec: Regex) -> MonitorSession {
    MonitorSession::new(spec)
}

pub fn current_verdict(s: &MonitorSession) -> Verdict {
    s.current_verdict()
}

/// Runs a whole trace through a fresh session.
pub fn run_trace(spec: &Regex, trace: &Trace) -> (Verdict, Stats) {
    let mut session = MonitorSession::new(spec.clone());
    for a in trace {
        session.step(a);
    }
    (session.current_verdict(), session.stats())
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
    fn initial_verdicts() {
        assert_eq!(
            MonitorSession::new(re("a*")).current_verdict(),
            Verdict::Accepting
        );
        assert_eq!(
            MonitorSession::new(re("a")).current_verdict(),
            Verdict::Pending
        );
        let s = MonitorSession::new(re("0"));
        assert_eq!(s.frontier().len(), 1);
        assert_eq!(s.current_verdict(), Verdict::Pending);
    }

    #[test]
    fn stepping() {
        let mut s = MonitorSession::new(re("a* b*"));
        s.step(&sym("a"));
        assert_eq!(s.frontier(), &Frontier::singleton(re("(eps a*) b*")));
        assert_eq!(s.max_height_seen(), 3);

        let mut s = MonitorSession::new(re("o1 a1 c1 || o2 a2 c2"));
        assert_eq!(s.step(&sym("o2")), Verdict::Pending);
        assert_eq!(
            s.frontier(),
            &Frontier::singleton(re("o1 a1 c1 || eps a2 c2"))
        );
    }

    #[test]
    fn violation_is_absorbing() {
        let mut s = MonitorSession::new(re("a b"));
        assert_eq!(s.step(&sym("b")), Verdict::Violation);
        assert_eq!(s.step(&sym("a")), Verdict::Violation);
        assert_eq!(s.violation_at(), Some(1));
        assert_eq!(s.frontier_history(), &[1, 0, 0]);
    }

    #[test]
    fn verdicts_after_traces() {
        assert_eq!(run_trace(&re("a* b*"), &w("a b")).0, Verdict::Accepting);
        assert_eq!(run_trace(&re("a0 || a1"), &w("a2")).0, Verdict::Violation);
        assert_eq!(run_trace(&re("a b"), &w("a")).0, Verdict::Pending);
        assert_eq!(run_trace(&re("a 0"), &w("a")).0, Verdict::Pending);
    }

    #[test]
    fn file_descriptor_traces() {
        let spec = re("o1 a1 c1 || o2 a2 c2");
        let (v, stats) = run_trace(&spec, &w("o1 o2 a2 a1 c1 c2"));
        assert_eq!(v, Verdict::Accepting);
        assert!(stats.within_budgets());
        assert_eq!(stats.events, 6);

        let mut s = MonitorSession::new(spec);
        s.step(&sym("o1"));
        assert_eq!(s.step(&sym("c1")), Verdict::Violation);
        assert_eq!(s.violation_at(), Some(2));
    }

    #[test]
    fn empty_trace_keeps_initial_verdict() {
        let spec = re("a*");
        assert_eq!(
            run_trace(&spec, &Trace::empty()).0,
            new_session(spec).current_verdict()
        );
    }

    #[test]
    fn stats_json_shape() {
        let (_, stats) = run_trace(&re("a b"), &w("a b"));
        let json = serde_json::to_string(&stats).unwrap();
        assert_eq!(
            json,
            r#"{"events":2,"verdict":"ACCEPTING","maxSize":3,"maxHeight":1,"sizeBudget":12,"heightBudget":2,"frontierHistory":[1,1,1]}"#
        );
    }
}
