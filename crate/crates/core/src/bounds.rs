//! Increment budgets for the height and size of partial derivatives.
//!
//! `delta_max(e)` bounds how much taller than `e` any partial derivative of
//! `e` (over any word) can be, and `eta_max(e)` does the same for size. Both
//! satisfy a one-step invariant: if `e --a--> e'` then
//!
//! ```text
//! height(e') + delta_max(e') <= height(e) + delta_max(e)
//! size(e')   + eta_max(e')   <= size(e)   + eta_max(e)
//! ```
//!
//! Chaining the invariant along a word, together with `delta_max <= 1` and
//! `eta_max <= size^2`, gives `height(e') <= height(e) + 1` and
//! `size(e') <= size(e) + size(e)^2` for every partial derivative `e'`.

use std::fmt;

use crate::error::{Error, Result};
use crate::partial::{partial_derivatives, Frontier};
use crate::syntax::{Regex, Symbol};
use crate::trace::Trace;

/// 1 when `e0` is at least as tall as `e1`, else 0.
pub fn geq(e0: &Regex, e1: &Regex) -> usize {
    usize::from(e0.height() >= e1.height())
}

/// Height-increment budget. Always 0 or 1.
pub fn delta_max(e: &Regex) -> usize {
    match e {
        Regex::Empty | Regex::Eps | Regex::Sym(_) | Regex::Or(..) => 0,
        Regex::Star(_) => 1,
        Regex::Cat(l, r) => geq(l, r) * delta_max(l),
        Regex::Shuffle(l, r) => (geq(l, r) * delta_max(l)).max(geq(r, l) * delta_max(r)),
    }
}

/// How the size budget of a shuffle combines the budgets of its operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShuffleSizeRule {
    /// `eta_max(e0 || e1) = eta_max(e0) + eta_max(e1)`; the sound definition.
    #[default]
    Sum,
    /// `max(eta_max(e0), eta_max(e1))`. Bounds a single step but breaks the
    /// invariant; kept to demonstrate the failure.
    Max,
}

/// Size-increment budget. Always between 0 and `size(e)^2`.
pub fn eta_max(e: &Regex) -> usize {
    eta_max_with(e, ShuffleSizeRule::Sum)
}

pub fn eta_max_with(e: &Regex, rule: ShuffleSizeRule) -> usize {
    let v = eta(e, rule);
    debug_assert!(v >= 0);
    v as usize
}

// Signed on purpose: the union and concatenation cases subtract sizes
// before the outer max.
fn eta(e: &Regex, rule: ShuffleSizeRule) -> i64 {
    let size = |e: &Regex| e.size() as i64;
    match e {
        Regex::Empty | Regex::Eps | Regex::Sym(_) => 0,
        Regex::Cat(l, r) => eta(l, rule).max(eta(r, rule) - size(l) - 1),
        Regex::Or(l, r) => (eta(l, rule) - size(r) - 1)
            .max(eta(r, rule) - size(l) - 1)
            .max(0),
        Regex::Star(inner) => size(inner) + eta(inner, rule) + 1,
        Regex::Shuffle(l, r) => match rule {
            ShuffleSizeRule::Sum => eta(l, rule) + eta(r, rule),
            ShuffleSizeRule::Max => eta(l, rule).max(eta(r, rule)),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Height,
    Size,
}

/// One partial-derivative step checked against the budget invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub metric: Metric,
    /// The partial derivative reached by the step.
    pub expr: Regex,
    pub metric_before: usize,
    pub metric_after: usize,
    pub bound_before: usize,
    pub bound_after: usize,
    /// `None` for the empty word.
    pub step_label: Option<Symbol>,
}

impl BoundReport {
    pub fn budget_before(&self) -> usize {
        self.metric_before + self.bound_before
    }

    pub fn budget_after(&self) -> usize {
        self.metric_after + self.bound_after
    }

    /// `metric_after + bound_after <= metric_before + bound_before`.
    pub fn holds(&self) -> bool {
        self.budget_after() <= self.budget_before()
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = self.step_label.as_ref().map_or("λ", |s| s.as_str());
        write!(
            f,
            "--{}--> {:?}: {:?} {} -> {}, bound {} -> {} ({})",
            label,
            self.expr,
            self.metric,
            self.metric_before,
            self.metric_after,
            self.bound_before,
            self.bound_after,
            if self.holds() { "ok" } else { "VIOLATED" }
        )
    }
}

fn reports(
    e: &Regex,
    a: &Symbol,
    metric: Metric,
    measure: impl Fn(&Regex) -> usize,
    bound: impl Fn(&Regex) -> usize,
) -> Vec<BoundReport> {
    let (m0, b0) = (measure(e), bound(e));
    partial_derivatives(e, a)
        .into_iter()
        .map(|d| BoundReport {
            metric,
            metric_before: m0,
            metric_after: measure(&d),
            bound_before: b0,
            bound_after: bound(&d),
            step_label: Some(a.clone()),
            expr: d,
        })
        .collect()
}

/// One report per partial derivative of `e` w.r.t. `a`, for height.
pub fn check_height_invariant(e: &Regex, a: &Symbol) -> Vec<BoundReport> {
    reports(e, a, Metric::Height, Regex::height, delta_max)
}

/// One report per partial derivative of `e` w.r.t. `a`, for size.
pub fn check_size_invariant(e: &Regex, a: &Symbol) -> Vec<BoundReport> {
    check_size_invariant_with(e, a, ShuffleSizeRule::Sum)
}

pub fn check_size_invariant_with(e: &Regex, a: &Symbol, rule: ShuffleSizeRule) -> Vec<BoundReport> {
    reports(e, a, Metric::Size, Regex::size, |x| eta_max_with(x, rule))
}

/// `a` under `n - 1` nested stars, so that its size is `n`.
pub fn star_chain(n: usize) -> Result<Regex> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "a star chain has size at least 1".into(),
        ));
    }
    let mut e = Regex::sym("a")?;
    for _ in 1..n {
        e = Regex::star(e);
    }
    Ok(e)
}

/// Size growth of a star chain of size `n` after one `a` step:
/// `(observed, predicted)` where the prediction is `n + (n^2 + n)/2 - 1`.
pub fn star_chain_growth(n: usize) -> Result<(usize, usize)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "star chain growth needs n >= 2, got {n}"
        )));
    }
    let e = star_chain(n)?;
    let a = Symbol::new("a")?;
    let pd = partial_derivatives(&e, &a);
    let d = match pd.len() {
        1 => pd.into_iter().next().unwrap(),
        k => {
            return Err(Error::InvalidArgument(format!(
                "expected a unique partial derivative, found {k}"
            )))
        }
    };
    Ok((d.size(), e.size() + (n * n + n) / 2 - 1))
}

/// The per-expression metrics printed by `bounds`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metrics {
    pub height: usize,
    pub size: usize,
    pub delta_max: usize,
    pub eta_max: usize,
}

impl Metrics {
    pub fn of(e: &Regex) -> Metrics {
        Metrics {
            height: e.height(),
            size: e.size(),
            delta_max: delta_max(e),
            eta_max: eta_max(e),
        }
    }

    pub fn height_budget(&self) -> usize {
        self.height + self.delta_max
    }

    pub fn size_budget(&self) -> usize {
        self.size + self.eta_max
    }
}

/// One row of a traced bounds table: a frontier member after `step` events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    pub step: usize,
    pub symbol: Option<Symbol>,
    pub expr: Regex,
    pub metrics: Metrics,
}

/// Metrics of every frontier member along `w`, starting with `e` itself at
/// step 0. Members of one step are ordered by printed form.
pub fn trace_metrics(e: &Regex, w: &Trace) -> Vec<TraceRow> {
    let mut rows = vec![TraceRow {
        step: 0,
        symbol: None,
        expr: e.clone(),
        metrics: Metrics::of(e),
    }];
    let mut frontier = Frontier::singleton(e.clone());
    for (i, a) in w.iter().enumerate() {
        frontier = frontier.step(a);
        rows.extend(frontier.sorted_by_text().into_iter().map(|d| TraceRow {
            step: i + 1,
            symbol: Some(a.clone()),
            expr: d.clone(),
            metrics: Metrics::of(d),
        }));
    }
    rows
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

    #[test]
    fn geq_cases() {
        assert_eq!(geq(&re("a*"), &re("b")), 1);
        assert_eq!(geq(&re("a"), &re("b*")), 0);
        assert_eq!(geq(&re("a"), &re("b")), 1);
    }

    #[test]
    fn delta_max_cases() {
        assert_eq!(delta_max(&re("a*")), 1);
        assert_eq!(delta_max(&re("a + b")), 0);
        assert_eq!(delta_max(&re("a* b*")), 1);
        assert_eq!(delta_max(&re("a b*")), 0);
        assert_eq!(delta_max(&re("0")), 0);
        assert_eq!(delta_max(&re("eps || a*")), 1);
        assert_eq!(delta_max(&re("a* || (b c) d")), 0);
    }

    #[test]
    fn eta_max_cases() {
        assert_eq!(eta_max(&re("a*")), 2);
        assert_eq!(eta_max(&re("a* || b*")), 4);
        assert_eq!(eta_max_with(&re("a* || b*"), ShuffleSizeRule::Max), 2);
        assert_eq!(eta_max(&re("eps")), 0);
        assert_eq!(eta_max(&re("0")), 0);
        // Or subtracts before clamping.
        assert_eq!(eta_max(&re("a* + b")), 0);
        assert_eq!(eta_max(&re("(a b)* + c")), 2);
    }

    #[test]
    fn height_reports() {
        let r = check_height_invariant(&re("a* b*"), &sym("a"));
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].metric_before, r[0].metric_after), (2, 3));
        assert_eq!((r[0].bound_before, r[0].bound_after), (1, 0));
        assert!(r[0].holds());

        let e = re("(eps || a*)(b || a*)");
        let r = check_height_invariant(&e, &sym("a"));
        let grown = r
            .iter()
            .find(|r| r.expr == re("(eps || eps a*)(b || a*)"))
            .unwrap();
        assert_eq!(grown.metric_after, e.height() + 1);
        assert_eq!(grown.bound_after, 0);
        assert!(r.iter().all(BoundReport::holds));

        assert!(check_height_invariant(&re("0"), &sym("a")).is_empty());
    }

    #[test]
    fn size_reports() {
        let r = check_size_invariant(&re("((a*)*)*"), &sym("a"));
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].metric_before, r[0].metric_after), (4, 13));
        assert!(r[0].holds());

        let r = check_size_invariant(&re("a* || b*"), &sym("a"));
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].metric_before, r[0].metric_after), (5, 7));
        assert_eq!((r[0].bound_before, r[0].bound_after), (4, 2));
        assert!(r[0].holds());

        assert!(check_size_invariant(&re("eps"), &sym("a")).is_empty());
    }

    #[test]
    fn max_rule_breaks_the_invariant() {
        let r = check_size_invariant_with(&re("a* || b*"), &sym("a"), ShuffleSizeRule::Max);
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].budget_before(), r[0].budget_after()), (7, 9));
        assert!(!r[0].holds());
    }

    #[test]
    fn star_chains() {
        assert_eq!(star_chain_growth(2).unwrap(), (4, 4));
        assert_eq!(star_chain_growth(3).unwrap(), (8, 8));
        assert_eq!(star_chain_growth(4).unwrap(), (13, 13));
        assert!(star_chain_growth(1).is_err());
    }

    #[test]
    fn traced_metrics() {
        let rows = trace_metrics(&re("a* b*"), &Trace::parse("a b").unwrap());
        let heights: Vec<usize> = rows.iter().map(|r| r.metrics.height).collect();
        assert_eq!(heights, [2, 3, 2]);
        assert_eq!(rows[1].symbol, Some(sym("a")));
    }
}
