//! Recursive-descent parser with sort checking.
//!
//! Precedence, loosest first: `<->`, `->` (right associative), `|`, `&`,
//! the infix temporal operators `U R S T` (right associative), then the
//! prefix operators `! X wX Y Z wY`. A quantifier body extends as far right
//! as possible.

use std::collections::BTreeMap;

use super::{Formula as F, Formula, Term, Var};
use crate::error::{Error, Result};
use crate::names;
use crate::signature::{Signature, SymbolKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseMode {
    /// Only plain identifiers; reserved decorations are rejected.
    User,
    /// Generated names (`c'`, `xs#12ab`) are accepted as well.
    Automaton,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    Eq,
    Neq,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Bang => "`!`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Pipe => "`|`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::DArrow => "`<->`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Neq => "`!=`".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(text: &str, mode: ParseMode) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b',' => out.push((Tok::Comma, start)),
            b':' => out.push((Tok::Colon, start)),
            b'.' => out.push((Tok::Dot, start)),
            b'&' => out.push((Tok::Amp, start)),
            b'|' => out.push((Tok::Pipe, start)),
            b'=' => out.push((Tok::Eq, start)),
            b'!' => {
                if bytes.get(i + 1) == Some(&b'=') {
                    i += 1;
                    out.push((Tok::Neq, start));
                } else {
                    out.push((Tok::Bang, start));
                }
            }
            b'-' => {
                if bytes.get(i + 1) != Some(&b'>') {
                    return Err(err(start, "expected `->`"));
                }
                i += 1;
                out.push((Tok::Arrow, start));
            }
            b'<' => {
                if !text[i..].starts_with("<->") {
                    return Err(err(start, "expected `<->`"));
                }
                i += 2;
                out.push((Tok::DArrow, start));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i + 1;
                while j < bytes.len() {
                    let d = bytes[j];
                    if d.is_ascii_alphanumeric() || d == b'_' || d == b'#' {
                        j += 1;
                    } else {
                        break;
                    }
                }
                while j < bytes.len() && bytes[j] == b'\'' {
                    j += 1;
                }
                let ident = &text[i..j];
                let valid = match mode {
                    ParseMode::User => names::is_user_identifier(ident),
                    ParseMode::Automaton => names::is_identifier(ident),
                };
                if !valid {
                    return Err(err(start, &format!("`{ident}` uses a reserved name decoration")));
                }
                out.push((Tok::Ident(ident.to_string()), start));
                i = j;
                continue;
            }
            _ => return Err(err(start, &format!("unexpected character `{}`", text[i..].chars().next().unwrap()))),
        }
        i += 1;
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

const PREFIX_KEYWORDS: [&str; 5] = ["X", "wX", "Y", "Z", "wY"];

pub struct Parser<'a> {
    sig: &'a Signature,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    bound: Vec<Var>,
    free: BTreeMap<String, Var>,
}

impl<'a> Parser<'a> {
    pub fn new(text: &str, sig: &'a Signature, mode: ParseMode) -> Result<Self> {
        Ok(Parser {
            sig,
            toks: lex(text, mode)?,
            pos: 0,
            bound: Vec::new(),
            free: BTreeMap::new(),
        })
    }

    /// Allows `vars` to occur free.
    pub fn with_free_vars(mut self, vars: &[Var]) -> Self {
        for v in vars {
            self.free.insert(v.name.clone(), v.clone());
        }
        self
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", describe(&t), describe(self.peek())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(s) => Ok(s),
                _ => unreachable!(),
            },
            t => self.error(format!("expected identifier, found {}", describe(t))),
        }
    }

    pub fn parse_formula(mut self) -> Result<Formula> {
        let f = self.iff()?;
        if *self.peek() != Tok::Eof {
            return self.error(format!("unexpected {}", describe(self.peek())));
        }
        Ok(f)
    }

    pub fn parse_term(mut self) -> Result<(Term, String)> {
        let t = self.term()?;
        if *self.peek() != Tok::Eof {
            return self.error(format!("unexpected {}", describe(self.peek())));
        }
        Ok(t)
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut left = self.implies()?;
        while *self.peek() == Tok::DArrow {
            self.bump();
            let right = self.implies()?;
            left = F::iff(left, right);
        }
        Ok(left)
    }

    fn implies(&mut self) -> Result<Formula> {
        let left = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.implies()?;
            return Ok(F::implies(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut items = vec![self.and()?];
        while *self.peek() == Tok::Pipe {
            self.bump();
            items.push(self.and()?);
        }
        Ok(F::or(items))
    }

    fn and(&mut self) -> Result<Formula> {
        let mut items = vec![self.temporal()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            items.push(self.temporal()?);
        }
        Ok(F::and(items))
    }

    fn temporal(&mut self) -> Result<Formula> {
        let left = self.unary()?;
        let op = match self.peek() {
            Tok::Ident(s) if matches!(s.as_str(), "U" | "R" | "S" | "T") => s.clone(),
            _ => return Ok(left),
        };
        self.bump();
        let right = self.temporal()?;
        Ok(match op.as_str() {
            "U" => F::until(left, right),
            "R" => F::release(left, right),
            "S" => F::since(left, right),
            _ => F::triggered(left, right),
        })
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(F::not(self.unary()?))
            }
            Tok::Ident(s) if PREFIX_KEYWORDS.contains(&s.as_str()) && !self.sig.contains(&s) => {
                self.bump();
                let body = self.unary()?;
                Ok(match s.as_str() {
                    "X" => F::next(body),
                    "wX" => F::weak_next(body),
                    "Y" => F::yesterday(body),
                    _ => F::weak_yesterday(body),
                })
            }
            Tok::Ident(s) if s == "exists" || s == "forall" => self.quantifier(s == "exists"),
            _ => self.primary(),
        }
    }

    fn quantifier(&mut self, existential: bool) -> Result<Formula> {
        self.bump();
        let mut vars = Vec::new();
        loop {
            let name = self.ident()?;
            self.expect(Tok::Colon)?;
            let sort = self.ident()?;
            if !self.sig.has_sort(&sort) {
                self.pos -= 1;
                return self.error(format!("unknown sort `{sort}`"));
            }
            vars.push(Var::new(name, sort));
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::Dot)?;
        let depth = self.bound.len();
        self.bound.extend(vars.iter().cloned());
        let body = self.iff();
        self.bound.truncate(depth);
        let body = body?;
        Ok(if existential {
            F::exists_all(&vars, body)
        } else {
            F::forall_all(&vars, body)
        })
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(F::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(F::False)
            }
            Tok::Ident(s) if !self.is_variable(&s) && self.sig.get(&s).is_some_and(|x| x.is_predicate()) => {
                self.atom()
            }
            Tok::Ident(_) => {
                let start = self.offset();
                let (left, ls) = self.term()?;
                let negated = match self.peek() {
                    Tok::Eq => false,
                    Tok::Neq => true,
                    t => return self.error(format!("expected `=` or `!=` after term, found {}", describe(t))),
                };
                self.bump();
                let (right, rs) = self.term()?;
                if ls != rs {
                    return Err(Error::SortMismatch {
                        context: format!("equality at offset {start}"),
                        expected: ls,
                        found: rs,
                    });
                }
                let eq = F::eq(left, right);
                Ok(if negated { F::not(eq) } else { eq })
            }
            t => self.error(format!("expected formula, found {}", describe(&t))),
        }
    }

    fn is_variable(&self, name: &str) -> bool {
        self.bound.iter().any(|v| v.name == name) || self.free.contains_key(name)
    }

    fn atom(&mut self) -> Result<Formula> {
        let name = self.ident()?;
        let sym = self.sig.get(&name).expect("checked by caller").clone();
        let args = self.arguments(&name, sym.arg_sorts())?;
        Ok(F::Atom(name, args))
    }

    fn arguments(&mut self, name: &str, sorts: &[String]) -> Result<Vec<Term>> {
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.bump();
            if *self.peek() != Tok::RParen {
                loop {
                    args.push(self.term()?);
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
            self.expect(Tok::RParen)?;
        }
        if args.len() != sorts.len() {
            return self.error(format!(
                "`{name}` expects {} arguments, found {}",
                sorts.len(),
                args.len()
            ));
        }
        let mut out = Vec::with_capacity(args.len());
        for (i, ((t, s), expected)) in args.into_iter().zip(sorts).enumerate() {
            if s != *expected {
                return Err(Error::SortMismatch {
                    context: format!("argument {} of `{name}`", i + 1),
                    expected: expected.clone(),
                    found: s,
                });
            }
            out.push(t);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Term, String)> {
        let name = self.ident()?;
        if let Some(v) = self.bound.iter().rev().find(|v| v.name == name) {
            return Ok((Term::Var(v.clone()), v.sort.clone()));
        }
        if let Some(v) = self.free.get(&name) {
            return Ok((Term::Var(v.clone()), v.sort.clone()));
        }
        let Some(sym) = self.sig.get(&name).cloned() else {
            self.pos -= 1;
            if self.toks.get(self.pos + 1).map(|t| &t.0) == Some(&Tok::LParen) {
                return Err(Error::UnknownSymbol(name));
            }
            return Err(Error::UnboundVariable(name));
        };
        match &sym.kind {
            SymbolKind::Constant { sort } => Ok((Term::App(name, vec![]), sort.clone())),
            SymbolKind::Function { args, result } => {
                let terms = self.arguments(&name, args)?;
                Ok((Term::App(name, terms), result.clone()))
            }
            SymbolKind::Predicate { .. } => {
                self.pos -= 1;
                self.error(format!("predicate `{name}` used as a term"))
            }
        }
    }
}

/// Parses a sentence in user mode.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    Parser::new(text, sig, ParseMode::User)?.parse_formula()
}

/// Parses a formula whose free variables are among `vars`.
pub fn parse_formula_with_vars(text: &str, sig: &Signature, vars: &[Var], mode: ParseMode) -> Result<Formula> {
    Parser::new(text, sig, mode)?.with_free_vars(vars).parse_formula()
}

/// Parses a term and returns it with its sort.
pub fn parse_term(text: &str, sig: &Signature, vars: &[Var], mode: ParseMode) -> Result<(Term, String)> {
    Parser::new(text, sig, mode)?.with_free_vars(vars).parse_term()
}
