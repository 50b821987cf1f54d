//! Abstract syntax of regular expressions with shuffle, the concrete
//! grammar, and the structural metrics `height`, `size` and `has_eps`.
//!
//! Expressions are never normalized: two values are the same state exactly
//! when they are structurally equal. Subtrees are reference counted so the
//! large amount of sharing produced by derivatives stays cheap.
//!
//! Concrete grammar, loosest to tightest binding:
//!
//! ```text
//! expr    := shuffle
//! shuffle := union ("||" union)*        left-assoc
//! union   := concat ("+" concat)*       left-assoc
//! concat  := postfix postfix*           left-assoc
//! postfix := atom "*"*
//! atom    := "0" | "eps" | IDENT | "(" expr ")"
//! IDENT   := [A-Za-z][A-Za-z0-9_]*
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Keyword for the empty-word constant. It cannot be used as a symbol name.
pub const EPS_KEYWORD: &str = "eps";

/// An alphabet symbol such as `a`, `o1` or `open_file`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Result<Self> {
        if is_ident(name) && name != EPS_KEYWORD {
            Ok(Symbol(Arc::from(name)))
        } else {
            Err(Error::InvalidSymbol(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl std::str::FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Symbol::new(s)
    }
}

/// A regular expression extended with the shuffle operator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regex {
    /// The empty language, written `0`.
    Empty,
    /// The language containing only the empty word, written `eps`.
    Eps,
    Sym(Symbol),
    Cat(Arc<Regex>, Arc<Regex>),
    Or(Arc<Regex>, Arc<Regex>),
    Star(Arc<Regex>),
    Shuffle(Arc<Regex>, Arc<Regex>),
}

impl Regex {
    pub fn sym(name: &str) -> Result<Regex> {
        Symbol::new(name).map(Regex::Sym)
    }

    pub fn cat(left: Regex, right: Regex) -> Regex {
        Regex::Cat(Arc::new(left), Arc::new(right))
    }

    pub fn or(left: Regex, right: Regex) -> Regex {
        Regex::Or(Arc::new(left), Arc::new(right))
    }

    pub fn star(inner: Regex) -> Regex {
        Regex::Star(Arc::new(inner))
    }

    pub fn shuffle(left: Regex, right: Regex) -> Regex {
        Regex::Shuffle(Arc::new(left), Arc::new(right))
    }

    /// Parses an expression in the concrete grammar.
    pub fn parse(text: &str) -> Result<Regex> {
        parse(text)
    }

    /// Tree height: leaves are 0, every operator adds one to its tallest child.
    pub fn height(&self) -> usize {
        match self {
            Regex::Empty | Regex::Eps | Regex::Sym(_) => 0,
            Regex::Star(e) => e.height() + 1,
            Regex::Cat(l, r) | Regex::Or(l, r) | Regex::Shuffle(l, r) => {
                l.height().max(r.height()) + 1
            }
        }
    }

    /// Number of nodes of the tree.
    pub fn size(&self) -> usize {
        match self {
            Regex::Empty | Regex::Eps | Regex::Sym(_) => 1,
            Regex::Star(e) => e.size() + 1,
            Regex::Cat(l, r) | Regex::Or(l, r) | Regex::Shuffle(l, r) => l.size() + r.size() + 1,
        }
    }

    /// Whether the empty word belongs to the language, as an [`EpsFlag`].
    pub fn has_eps(&self) -> EpsFlag {
        match self {
            Regex::Eps | Regex::Star(_) => EpsFlag::Eps,
            Regex::Empty | Regex::Sym(_) => EpsFlag::Zero,
            Regex::Cat(l, r) | Regex::Shuffle(l, r) => l.has_eps().and(r.has_eps()),
            Regex::Or(l, r) => l.has_eps().or(r.has_eps()),
        }
    }

    pub fn is_nullable(&self) -> bool {
        self.has_eps() == EpsFlag::Eps
    }

    /// The set of symbols occurring in the expression.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        fn walk(e: &Regex, out: &mut BTreeSet<Symbol>) {
            match e {
                Regex::Empty | Regex::Eps => {}
                Regex::Sym(s) => {
                    out.insert(s.clone());
                }
                Regex::Star(e) => walk(e, out),
                Regex::Cat(l, r) | Regex::Or(l, r) | Regex::Shuffle(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut out);
        out
    }

    pub fn is_shuffle_free(&self) -> bool {
        match self {
            Regex::Empty | Regex::Eps | Regex::Sym(_) => true,
            Regex::Star(e) => e.is_shuffle_free(),
            Regex::Cat(l, r) | Regex::Or(l, r) => l.is_shuffle_free() && r.is_shuffle_free(),
            Regex::Shuffle(..) => false,
        }
    }

    /// Binding strength used by the printer; higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            Regex::Shuffle(..) => 0,
            Regex::Or(..) => 1,
            Regex::Cat(..) => 2,
            Regex::Star(_) => 3,
            Regex::Empty | Regex::Eps | Regex::Sym(_) => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.fmt_prec(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Regex::Empty => f.write_str("0"),
            Regex::Eps => f.write_str(EPS_KEYWORD),
            Regex::Sym(s) => f.write_str(s.as_str()),
            // Star only ever wraps an atom without parentheses, so nested
            // stars print as `((a*)*)*`.
            Regex::Star(e) => {
                e.fmt_prec(f, 4)?;
                f.write_str("*")
            }
            Regex::Cat(l, r) => self.fmt_binary(f, l, " ", r),
            Regex::Or(l, r) => self.fmt_binary(f, l, " + ", r),
            Regex::Shuffle(l, r) => self.fmt_binary(f, l, " || ", r),
        }
    }

    fn fmt_binary(
        &self,
        f: &mut fmt::Formatter<'_>,
        l: &Regex,
        op: &str,
        r: &Regex,
    ) -> fmt::Result {
        let p = self.precedence();
        l.fmt_prec(f, p)?;
        f.write_str(op)?;
        r.fmt_prec(f, p + 1)
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Debug for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl std::str::FromStr for Regex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl From<EpsFlag> for Regex {
    fn from(flag: EpsFlag) -> Regex {
        match flag {
            EpsFlag::Eps => Regex::Eps,
            EpsFlag::Zero => Regex::Empty,
        }
    }
}

/// Two-valued nullability flag, the codomain of [`Regex::has_eps`].
///
/// `Eps` behaves as true and `Zero` as false in [`EpsFlag::and`] and
/// [`EpsFlag::or`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EpsFlag {
    Eps,
    Zero,
}

impl EpsFlag {
    #[allow(clippy::should_implement_trait)]
    pub fn and(self, other: EpsFlag) -> EpsFlag {
        match (self, other) {
            (EpsFlag::Eps, EpsFlag::Eps) => EpsFlag::Eps,
            _ => EpsFlag::Zero,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn or(self, other: EpsFlag) -> EpsFlag {
        match (self, other) {
            (EpsFlag::Zero, EpsFlag::Zero) => EpsFlag::Zero,
            _ => EpsFlag::Eps,
        }
    }
}

impl fmt::Display for EpsFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsFlag::Eps => "EPS",
            EpsFlag::Zero => "ZERO",
        })
    }
}

/// Convenience accessor matching the metric-function style of the rest of
/// the crate.
pub fn height(e: &Regex) -> usize {
    e.height()
}

pub fn size(e: &Regex) -> usize {
    e.size()
}

pub fn has_eps(e: &Regex) -> EpsFlag {
    e.has_eps()
}

/// Renders an expression with the minimal number of parentheses.
pub fn format(e: &Regex) -> String {
    e.to_string()
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    Eps,
    Star,
    Plus,
    Bar2,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("symbol `{s}`"),
            Tok::Zero => "`0`".into(),
            Tok::Eps => "`eps`".into(),
            Tok::Star => "`*`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Bar2 => "`||`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self, Tok::Ident(_) | Tok::Zero | Tok::Eps | Tok::LParen)
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax_error(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = match c {
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0' => Tok::Zero,
            '|' => {
                chars.next();
                column += 1;
                if chars.peek() != Some(&'|') {
                    return Err(syntax_error(pos, "expected `||`"));
                }
                Tok::Bar2
            }
            c if c.is_ascii_alphabetic() => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                let tok = if ident == EPS_KEYWORD {
                    Tok::Eps
                } else {
                    Tok::Ident(ident)
                };
                out.push((tok, pos));
                continue;
            }
            other => return Err(syntax_error(pos, format!("unexpected character {other:?}"))),
        };
        chars.next();
        column += 1;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.at].0.clone();
        if tok != Tok::End {
            self.at += 1;
        }
        tok
    }

    fn expr(&mut self) -> Result<Regex> {
        let mut e = self.union()?;
        while *self.peek() == Tok::Bar2 {
            self.bump();
            e = Regex::shuffle(e, self.union()?);
        }
        Ok(e)
    }

    fn union(&mut self) -> Result<Regex> {
        let mut e = self.concat()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            e = Regex::or(e, self.concat()?);
        }
        Ok(e)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut e = self.postfix()?;
        while self.peek().starts_atom() {
            e = Regex::cat(e, self.postfix()?);
        }
        Ok(e)
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut e = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            e = Regex::star(e);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Regex> {
        let pos = self.pos();
        match self.bump() {
            Tok::Zero => Ok(Regex::Empty),
            Tok::Eps => Ok(Regex::Eps),
            Tok::Ident(name) => Regex::sym(&name),
            Tok::LParen => {
                let e = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Tok::RParen => Ok(e),
                    other => Err(syntax_error(
                        close,
                        format!("expected `)`, found {}", other.describe()),
                    )),
                }
            }
            other => Err(syntax_error(
                pos,
                format!("expected an expression, found {}", other.describe()),
            )),
        }
    }
}

/// Parses an expression in the concrete grammar.
pub fn parse(text: &str) -> Result<Regex> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    if *p.peek() == Tok::End {
        return Err(syntax_error(p.pos(), "empty input"));
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax_error(
            p.pos(),
            format!("unexpected {}", p.peek().describe()),
        ));
    }
    Ok(e)
}
