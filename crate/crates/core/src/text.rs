//! The line-oriented problem format.
//!
//! ```text
//! % comment
//! gen: a <-> -b.
//! pref[2]: a > b :- top.
//! ```
//!
//! Connectives, tightest first: `-`/`not`, `&`, `|`, `->`, `<->`. `&` and `|`
//! associate to the left, `->` and `<->` to the right. Rendering is canonical:
//! generator formulas, then rules, each in sorted order, ranks and bodies
//! always printed.

use std::fmt;

use thiserror::Error;

use crate::logic::{Atom, Formula};
use crate::models::Theory;
use crate::preference::{PreferenceRule, Selector};
use crate::problem::Problem;

/// 1-based position of a token in the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("rank must be a positive integer")]
    BadRank,
    #[error("a preference rule needs at least one head formula")]
    EmptyHead,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {kind}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Bot,
    Top,
    Not,
    And,
    Or,
    Arrow,
    Iff,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Gt,
    If,
    Colon,
    Dot,
    Minus,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Bot => f.write_str("`bot`"),
            Tok::Top => f.write_str("`top`"),
            Tok::Not => f.write_str("`not`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Gt => f.write_str("`>`"),
            Tok::If => f.write_str("`:-`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let span = SourceSpan {
                line: ln + 1,
                column: k + 1,
            };
            let c = chars[k];
            if c == '%' {
                break;
            }
            if c.is_whitespace() {
                k += 1;
                continue;
            }
            let rest: String = chars[k..chars.len().min(k + 3)].iter().collect();
            let (tok, len) = if rest.starts_with("<->") {
                (Tok::Iff, 3)
            } else if rest.starts_with("->") {
                (Tok::Arrow, 2)
            } else if rest.starts_with(":-") {
                (Tok::If, 2)
            } else if c.is_ascii_alphabetic() || c == '_' {
                let end = (k..chars.len())
                    .find(|&e| !(chars[e].is_ascii_alphanumeric() || chars[e] == '_'))
                    .unwrap_or(chars.len());
                let word: String = chars[k..end].iter().collect();
                let tok = match word.as_str() {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    "not" => Tok::Not,
                    w if crate::logic::is_atom_name(w) => Tok::Ident(word.clone()),
                    _ => {
                        return Err(ParseError {
                            span,
                            kind: ParseErrorKind::UnknownToken(word),
                        })
                    }
                };
                (tok, end - k)
            } else if c.is_ascii_digit() {
                let end = (k..chars.len())
                    .find(|&e| !chars[e].is_ascii_digit())
                    .unwrap_or(chars.len());
                (Tok::Int(chars[k..end].iter().collect()), end - k)
            } else {
                let tok = match c {
                    '&' => Tok::And,
                    '|' => Tok::Or,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '>' => Tok::Gt,
                    ':' => Tok::Colon,
                    '.' => Tok::Dot,
                    '-' => Tok::Minus,
                    other => {
                        return Err(ParseError {
                            span,
                            kind: ParseErrorKind::UnknownToken(other.to_string()),
                        })
                    }
                };
                (tok, 1)
            };
            out.push((tok, span));
            k += len;
        }
    }
    let end = SourceSpan {
        line: text.lines().count().max(1),
        column: text.lines().last().map_or(0, |l| l.chars().count()) + 1,
    };
    out.push((Tok::Eof, end));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    /// Spans of currently open parentheses.
    open: Vec<SourceSpan>,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            open: Vec::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        let found = self.peek();
        let kind = match found {
            Tok::RParen if self.open.is_empty() => ParseErrorKind::Unbalanced,
            Tok::Eof | Tok::Dot if !self.open.is_empty() => {
                return Err(ParseError {
                    span: *self.open.last().expect("open paren"),
                    kind: ParseErrorKind::Unbalanced,
                })
            }
            _ => ParseErrorKind::Unexpected {
                expected: expected.to_string(),
                found: found.to_string(),
            },
        };
        Err(ParseError {
            span: self.span(),
            kind,
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.fail(&t.to_string())
        }
    }

    // iff := imp ("<->" iff)?
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Or) {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Minus | Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(Atom::new(&name).expect("lexer checked name")))
            }
            Tok::LParen => {
                let (_, span) = self.bump();
                self.open.push(span);
                let f = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return self.fail("`)`");
                }
                self.open.pop();
                Ok(f)
            }
            _ => self.fail("a formula"),
        }
    }

    fn rank(&mut self) -> Result<u32, ParseError> {
        let span = self.span();
        let bad = || ParseError {
            span,
            kind: ParseErrorKind::BadRank,
        };
        match self.peek().clone() {
            Tok::Minus => Err(bad()),
            Tok::Int(digits) => {
                self.bump();
                match digits.parse::<u32>() {
                    Ok(0) | Err(_) => Err(bad()),
                    Ok(k) => Ok(k),
                }
            }
            _ => self.fail("a rank"),
        }
    }

    fn rule(&mut self) -> Result<PreferenceRule, ParseError> {
        let mut rank = 1;
        if self.eat(&Tok::LBracket) {
            rank = self.rank()?;
            self.expect(Tok::RBracket)?;
        }
        self.expect(Tok::Colon)?;
        if matches!(self.peek(), Tok::If | Tok::Dot) {
            return Err(ParseError {
                span: self.span(),
                kind: ParseErrorKind::EmptyHead,
            });
        }
        let mut heads = vec![self.formula()?];
        while self.eat(&Tok::Gt) {
            heads.push(self.formula()?);
        }
        let body = if self.eat(&Tok::If) {
            self.formula()?
        } else {
            Formula::top()
        };
        self.expect(Tok::Dot)?;
        Ok(PreferenceRule::new(heads, body, rank).expect("heads nonempty, rank positive"))
    }

    fn problem(&mut self) -> Result<Problem, ParseError> {
        let mut generator = Theory::empty();
        let mut selector = Selector::empty();
        loop {
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(kw) if kw == "gen" => {
                    self.bump();
                    self.expect(Tok::Colon)?;
                    generator.insert(self.formula()?);
                    self.expect(Tok::Dot)?;
                }
                Tok::Ident(kw) if kw == "pref" => {
                    self.bump();
                    selector.insert(self.rule()?);
                }
                _ => return self.fail("`gen` or `pref`"),
            }
        }
        Ok(Problem::new(generator, selector))
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.fail("end of formula");
    }
    Ok(f)
}

pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    Parser::new(text)?.problem()
}

// Binding strength, loosest first.
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

fn write_formula(f: &Formula, min: u8, out: &mut String) {
    let (prec, text) = formula_parts(f);
    if prec < min {
        out.push('(');
        out.push_str(&text);
        out.push(')');
    } else {
        out.push_str(&text);
    }
}

fn sub(f: &Formula, min: u8) -> String {
    let mut s = String::new();
    write_formula(f, min, &mut s);
    s
}

fn formula_parts(f: &Formula) -> (u8, String) {
    if f.is_top() {
        return (UNARY, "top".into());
    }
    if let Some((l, r)) = f.biconditional() {
        return (IFF, format!("{} <-> {}", sub(l, IFF + 1), sub(r, IFF)));
    }
    if let Some(inner) = f.negated() {
        return (UNARY, format!("-{}", sub(inner, UNARY)));
    }
    match f {
        Formula::Bottom => (UNARY, "bot".into()),
        Formula::Atom(a) => (UNARY, a.to_string()),
        Formula::And(l, r) => (AND, format!("{} & {}", sub(l, AND), sub(r, AND + 1))),
        Formula::Or(l, r) => (OR, format!("{} | {}", sub(l, OR), sub(r, OR + 1))),
        Formula::Implies(l, r) => (IMP, format!("{} -> {}", sub(l, IMP + 1), sub(r, IMP))),
    }
}

pub fn render_formula(f: &Formula) -> String {
    formula_parts(f).1
}

/// `a > b :- top` (no prefix, no final dot).
pub fn render_rule_body(r: &PreferenceRule) -> String {
    let heads: Vec<String> = r.heads().iter().map(|h| sub(h, IFF)).collect();
    format!("{} :- {}", heads.join(" > "), render_formula(r.body()))
}

pub fn render_rule(r: &PreferenceRule) -> String {
    format!("pref[{}]: {}.", r.rank(), render_rule_body(r))
}

pub fn render_problem(p: &Problem) -> String {
    let mut out = String::new();
    for f in p.generator.formulas() {
        out.push_str("gen: ");
        out.push_str(&render_formula(f));
        out.push_str(".\n");
    }
    for r in p.selector.rules() {
        out.push_str(&render_rule(r));
        out.push('\n');
    }
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

impl fmt::Display for PreferenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_rule(self))
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_problem(self))
    }
}
