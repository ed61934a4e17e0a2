//! Terms, formulas, and the concrete syntax.
//!
//! Grammar (normative for this tool):
//!   - atoms `P(t1,...,tn)` or bare `P`; constants `T`, `F`, `1`, `0`
//!   - prefix operators `!`, `?`, `negl`, `negr` bind tightest and stack to
//!     the right
//!   - `&` (left-associative) binds over `|` (left-associative) binds over
//!     `->l` / `->r` (right-associative, weakest)
//!   - `forall v.` and `exists v.` scope to the end of the enclosing
//!     parenthesis or input
//!   - parentheses freely
//!
//! `negl φ` and `negr φ` are surface syntax only: they desugar to
//! `φ ->l 0` / `φ ->r 0` at parse time and never appear in the AST.

use rand::rngs::StdRng;
use rand::Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("predicate `{pred}` expects {expected} arguments, got {got}")]
    Arity { pred: String, expected: usize, got: usize },
    #[error("unknown predicate `{0}`")]
    UnknownSymbol(String),
    #[error("free variable `{0}` in a context requiring a sentence")]
    FreeVariable(String),
    #[error("unknown term `{0}`: not a constant or universe member")]
    UnknownTerm(String),
    #[error("bad model: {0}")]
    BadModel(String),
    #[error(transparent)]
    Cover(#[from] crate::cover::CoverError),
}

/// A term: a variable or a constant. Substitution instances over a model's
/// universe use the universe members as constants of the extended signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(s) | Term::Const(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Top,
    Bot,
    One,
    Zero,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    ImpL(Box<Formula>, Box<Formula>),
    ImpR(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    Bang(Box<Formula>),
    Quest(Box<Formula>),
}

impl Formula {
    /// ¬l φ desugars to φ →l 0.
    pub fn negl(phi: Formula) -> Formula {
        Formula::ImpL(Box::new(phi), Box::new(Formula::Zero))
    }

    /// ¬r φ desugars to φ →r 0.
    pub fn negr(phi: Formula) -> Formula {
        Formula::ImpR(Box::new(phi), Box::new(Formula::Zero))
    }

    /// Capture-free substitution φ(c/v): every free occurrence of the
    /// variable `v` becomes the constant `c`.
    pub fn substitute(&self, v: &str, c: &str) -> Formula {
        let sub = |f: &Formula| Box::new(f.substitute(v, c));
        match self {
            Formula::Atom(p, args) => Formula::Atom(
                p.clone(),
                args.iter()
                    .map(|t| match t {
                        Term::Var(w) if w == v => Term::Const(c.to_string()),
                        other => other.clone(),
                    })
                    .collect(),
            ),
            Formula::Top | Formula::Bot | Formula::One | Formula::Zero => self.clone(),
            Formula::And(a, b) => Formula::And(sub(a), sub(b)),
            Formula::Or(a, b) => Formula::Or(sub(a), sub(b)),
            Formula::ImpL(a, b) => Formula::ImpL(sub(a), sub(b)),
            Formula::ImpR(a, b) => Formula::ImpR(sub(a), sub(b)),
            Formula::Forall(w, _) | Formula::Exists(w, _) if w == v => self.clone(),
            Formula::Forall(w, b) => Formula::Forall(w.clone(), sub(b)),
            Formula::Exists(w, b) => Formula::Exists(w.clone(), sub(b)),
            Formula::Bang(a) => Formula::Bang(sub(a)),
            Formula::Quest(a) => Formula::Quest(sub(a)),
        }
    }

    /// Free variables, in first-occurrence order.
    pub fn free_vars(&self) -> Vec<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match f {
                Formula::Atom(_, args) => {
                    for t in args {
                        if let Term::Var(v) = t {
                            if !bound.contains(v) && !out.contains(v) {
                                out.push(v.clone());
                            }
                        }
                    }
                }
                Formula::Top | Formula::Bot | Formula::One | Formula::Zero => {}
                Formula::And(a, b)
                | Formula::Or(a, b)
                | Formula::ImpL(a, b)
                | Formula::ImpR(a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                Formula::Forall(v, b) | Formula::Exists(v, b) => {
                    bound.push(v.clone());
                    walk(b, bound, out);
                    bound.pop();
                }
                Formula::Bang(a) | Formula::Quest(a) => walk(a, bound, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// AST height; atoms and constants have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Top | Formula::Bot | Formula::One | Formula::Zero => 1,
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::ImpL(a, b)
            | Formula::ImpR(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Forall(_, b)
            | Formula::Exists(_, b)
            | Formula::Bang(b)
            | Formula::Quest(b) => 1 + b.depth(),
        }
    }
}

/// The printer parenthesizes every binary and quantified subformula, so
/// `parse(print(φ)) = φ` regardless of context.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p, args) if args.is_empty() => write!(f, "{p}"),
            Formula::Atom(p, args) => {
                let inner: Vec<String> = args.iter().map(|t| t.to_string()).collect();
                write!(f, "{p}({})", inner.join(","))
            }
            Formula::Top => write!(f, "T"),
            Formula::Bot => write!(f, "F"),
            Formula::One => write!(f, "1"),
            Formula::Zero => write!(f, "0"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::ImpL(a, b) => write!(f, "({a} ->l {b})"),
            Formula::ImpR(a, b) => write!(f, "({a} ->r {b})"),
            Formula::Forall(v, b) => write!(f, "(forall {v}. {b})"),
            Formula::Exists(v, b) => write!(f, "(exists {v}. {b})"),
            Formula::Bang(a) => write!(f, "!{a}"),
            Formula::Quest(a) => write!(f, "?{a}"),
        }
    }
}

/// A first-order signature: individual constants and predicates with arities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub constants: Vec<String>,
    pub predicates: Vec<(String, usize)>,
}

impl Signature {
    pub fn arity_of(&self, p: &str) -> Option<usize> {
        self.predicates.iter().find(|(q, _)| q == p).map(|&(_, n)| n)
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.iter().any(|c| c == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Amp,
    Pipe,
    Bang,
    Quest,
    ImpL,
    ImpR,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, LogicError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '&' => Tok::Amp,
            '|' => Tok::Pipe,
            '!' => Tok::Bang,
            '?' => Tok::Quest,
            '-' => {
                if chars.get(i + 1) != Some(&'>') {
                    return Err(LogicError::Parse { pos: i, msg: "expected `->l` or `->r`".into() });
                }
                match chars.get(i + 2) {
                    Some('l') => {
                        out.push((i, Tok::ImpL));
                        i += 3;
                        continue;
                    }
                    Some('r') => {
                        out.push((i, Tok::ImpR));
                        i += 3;
                        continue;
                    }
                    _ => {
                        return Err(LogicError::Parse {
                            pos: i,
                            msg: "expected `->l` or `->r`".into(),
                        })
                    }
                }
            }
            c if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                if word != "0" && word != "1" && word.starts_with(|d: char| d.is_ascii_digit()) {
                    return Err(LogicError::Parse {
                        pos: start,
                        msg: format!("bad token `{word}`"),
                    });
                }
                out.push((start, Tok::Ident(word)));
                continue;
            }
            other => {
                return Err(LogicError::Parse { pos: i, msg: format!("unexpected `{other}`") })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    sig: &'a Signature,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|&(p, _)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, LogicError> {
        Err(LogicError::Parse { pos: self.here(), msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), LogicError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.disj()?;
        match self.peek() {
            Some(Tok::ImpL) => {
                self.pos += 1;
                Ok(Formula::ImpL(Box::new(lhs), Box::new(self.formula()?)))
            }
            Some(Tok::ImpR) => {
                self.pos += 1;
                Ok(Formula::ImpR(Box::new(lhs), Box::new(self.formula()?)))
            }
            _ => Ok(lhs),
        }
    }

    fn disj(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.conj()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            lhs = Formula::Or(Box::new(lhs), Box::new(self.conj()?));
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.prefix()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            lhs = Formula::And(Box::new(lhs), Box::new(self.prefix()?));
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Formula, LogicError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.pos += 1;
                Ok(Formula::Bang(Box::new(self.prefix()?)))
            }
            Some(Tok::Quest) => {
                self.pos += 1;
                Ok(Formula::Quest(Box::new(self.prefix()?)))
            }
            Some(Tok::Ident(w)) if w == "negl" => {
                self.pos += 1;
                Ok(Formula::negl(self.prefix()?))
            }
            Some(Tok::Ident(w)) if w == "negr" => {
                self.pos += 1;
                Ok(Formula::negr(self.prefix()?))
            }
            Some(Tok::Ident(w)) if w == "forall" || w == "exists" => self.quantifier(),
            _ => self.primary(),
        }
    }

    fn quantifier(&mut self) -> Result<Formula, LogicError> {
        let kind = match self.bump() {
            Some(Tok::Ident(w)) => w,
            _ => unreachable!("caller peeked a quantifier keyword"),
        };
        let var = match self.bump() {
            Some(Tok::Ident(v)) => v,
            _ => return self.err("expected a variable after quantifier"),
        };
        self.expect(Tok::Dot, "`.` after quantified variable")?;
        // scope extends to the end of the enclosing parenthesis or input
        let body = Box::new(self.formula()?);
        Ok(if kind == "forall" { Formula::Forall(var, body) } else { Formula::Exists(var, body) })
    }

    fn primary(&mut self) -> Result<Formula, LogicError> {
        match self.bump() {
            Some(Tok::LParen) => {
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(w)) => match w.as_str() {
                "T" => Ok(Formula::Top),
                "F" => Ok(Formula::Bot),
                "1" => Ok(Formula::One),
                "0" => Ok(Formula::Zero),
                _ => self.atom(w),
            },
            _ => self.err("expected a formula"),
        }
    }

    fn atom(&mut self, pred: String) -> Result<Formula, LogicError> {
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            loop {
                match self.bump() {
                    Some(Tok::Ident(name)) => args.push(self.term(name)),
                    _ => return self.err("expected a term"),
                }
                match self.bump() {
                    Some(Tok::Comma) => continue,
                    Some(Tok::RParen) => break,
                    _ => return self.err("expected `,` or `)`"),
                }
            }
        }
        match self.sig.arity_of(&pred) {
            None => Err(LogicError::UnknownSymbol(pred)),
            Some(n) if n != args.len() => {
                Err(LogicError::Arity { pred, expected: n, got: args.len() })
            }
            Some(_) => Ok(Formula::Atom(pred, args)),
        }
    }

    fn term(&self, name: String) -> Term {
        if self.sig.is_constant(&name) {
            Term::Const(name)
        } else {
            Term::Var(name)
        }
    }
}

/// Parse a formula against a signature. Identifiers in term position are
/// constants when the signature declares them, variables otherwise.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, LogicError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, sig, end: text.chars().count() };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// A random AST over the given signature, used for round-trip testing and
/// semantic spot-checks. Leaves are constants and well-formed atoms; bound
/// variables may appear in atoms below their quantifier.
pub fn random_formula(rng: &mut StdRng, sig: &Signature, depth: usize) -> Formula {
    fn go(rng: &mut StdRng, sig: &Signature, depth: usize, bound: &mut Vec<String>) -> Formula {
        if depth <= 1 {
            return match rng.gen_range(0..5) {
                0 => Formula::Top,
                1 => Formula::Bot,
                2 => Formula::One,
                3 => Formula::Zero,
                _ => {
                    if sig.predicates.is_empty() {
                        return Formula::Top;
                    }
                    let (p, n) = sig.predicates[rng.gen_range(0..sig.predicates.len())].clone();
                    let args = (0..n)
                        .map(|_| {
                            let vars = !bound.is_empty() && rng.gen_bool(0.5);
                            if vars {
                                Term::Var(bound[rng.gen_range(0..bound.len())].clone())
                            } else if sig.constants.is_empty() {
                                Term::Var("v0".into())
                            } else {
                                Term::Const(
                                    sig.constants[rng.gen_range(0..sig.constants.len())].clone(),
                                )
                            }
                        })
                        .collect();
                    Formula::Atom(p, args)
                }
            };
        }
        let sub = |rng: &mut StdRng, bound: &mut Vec<String>| {
            Box::new(go(rng, sig, depth - 1, bound))
        };
        match rng.gen_range(0..8) {
            0 => Formula::And(sub(rng, bound), sub(rng, bound)),
            1 => Formula::Or(sub(rng, bound), sub(rng, bound)),
            2 => Formula::ImpL(sub(rng, bound), sub(rng, bound)),
            3 => Formula::ImpR(sub(rng, bound), sub(rng, bound)),
            4 => Formula::Bang(sub(rng, bound)),
            5 => Formula::Quest(sub(rng, bound)),
            k => {
                let v = format!("v{}", bound.len());
                bound.push(v.clone());
                let body = sub(rng, bound);
                bound.pop();
                if k == 6 {
                    Formula::Forall(v, body)
                } else {
                    Formula::Exists(v, body)
                }
            }
        }
    }
    go(rng, sig, depth, &mut Vec::new())
}
