//! Reader for terms and clauses in the Prover9 dialect written by
//! [`super::display`].

use thiserror::Error;

use super::clause::{Atom, Clause, Literal, Provenance};
use super::symbol::{SymbolKind, VocabError, Vocabulary};
use super::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown symbol `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Vocab(#[from] VocabError),
}

/// How identifiers that are not symbols become variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarStyle {
    /// Prover9 convention: names starting with `u`..`z` are variables,
    /// numbered in order of first occurrence.
    Named,
    /// `v<k>` is variable `k`.
    Indexed,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Star,
    Prime,
    Eq,
    Neq,
    Minus,
    Bar,
    Amp,
    Arrow,
    Dot,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_alphanumeric() || c == '_' || c == '$' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '$') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let (tok, len) = match (c, two.as_str()) {
            (_, "!=") => (Tok::Neq, 2),
            (_, "->") => (Tok::Arrow, 2),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            (',', _) => (Tok::Comma, 1),
            ('*', _) => (Tok::Star, 1),
            ('\'', _) => (Tok::Prime, 1),
            ('=', _) => (Tok::Eq, 1),
            ('-', _) => (Tok::Minus, 1),
            ('|', _) => (Tok::Bar, 1),
            ('&', _) => (Tok::Amp, 1),
            ('.', _) => (Tok::Dot, 1),
            _ => {
                return Err(ParseError::Syntax {
                    column: col,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((tok, col));
        i += len;
    }
    Ok(out)
}

/// Parses one clause. With `extend`, unknown constants become generators
/// and unknown predicates are declared with the arity they are used at.
pub struct ClauseReader<'v> {
    pub vocab: &'v mut Vocabulary,
    pub style: VarStyle,
    pub extend: bool,
}

struct P<'a, 'v> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    reader: &'a mut ClauseReader<'v>,
    names: Vec<String>,
}

impl ClauseReader<'_> {
    pub fn clause(&mut self, text: &str, provenance: Provenance) -> Result<Clause, ParseError> {
        let toks = lex(text)?;
        let mut p = P {
            toks: &toks,
            pos: 0,
            reader: self,
            names: Vec::new(),
        };
        let lits = p.formula()?;
        if p.peek() == Some(&Tok::Dot) {
            p.pos += 1;
        }
        p.end()?;
        Ok(Clause::new(lits, provenance))
    }

    pub fn term(&mut self, text: &str) -> Result<Term, ParseError> {
        let toks = lex(text)?;
        let mut p = P {
            toks: &toks,
            pos: 0,
            reader: self,
            names: Vec::new(),
        };
        let t = p.term()?;
        p.end()?;
        Ok(t)
    }
}

impl P<'_, '_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or_else(|| self.toks.last().map_or(1, |t| t.1 + 1), |t| t.1)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected {tok:?}"))
        }
    }

    fn end(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            self.fail("trailing input")
        }
    }

    fn formula(&mut self) -> Result<Vec<Literal>, ParseError> {
        if let Some(Tok::Ident(s)) = self.peek() {
            if s == "$F" {
                self.pos += 1;
                return Ok(Vec::new());
            }
        }
        let mut first = vec![self.literal()?];
        let mut conj = false;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            conj = true;
            first.push(self.literal()?);
        }
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let mut lits: Vec<Literal> = first.iter().map(Literal::negated).collect();
            lits.extend(self.disjunction()?);
            return Ok(lits);
        }
        if conj {
            return self.fail("a conjunction must be followed by `->`");
        }
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            first.push(self.literal()?);
        }
        Ok(first)
    }

    fn disjunction(&mut self) -> Result<Vec<Literal>, ParseError> {
        if let Some(Tok::Ident(s)) = self.peek() {
            if s == "$F" {
                self.pos += 1;
                return Ok(Vec::new());
            }
        }
        let mut lits = vec![self.literal()?];
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            lits.push(self.literal()?);
        }
        Ok(lits)
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.literal()?.negated());
        }
        let start = self.pos;
        let names = self.names.len();
        match self.atom() {
            Ok(l) => Ok(l),
            Err(e) => {
                if self.toks.get(start).map(|t| &t.0) != Some(&Tok::LParen) {
                    return Err(e);
                }
                self.pos = start + 1;
                self.names.truncate(names);
                let l = self.literal()?;
                self.expect(Tok::RParen)?;
                Ok(l)
            }
        }
    }

    fn atom(&mut self) -> Result<Literal, ParseError> {
        if let (Some(Tok::Ident(name)), Some((Tok::LParen, _))) = (self.peek().cloned(), self.toks.get(self.pos + 1)) {
            self.pos += 2;
            let mut args = vec![self.term()?];
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                args.push(self.term()?);
            }
            self.expect(Tok::RParen)?;
            let sym = match self.reader.vocab.lookup(&name) {
                Some(s) => s,
                None if self.reader.extend => self.reader.vocab.add_predicate(&name, args.len())?,
                None => return Err(ParseError::Unknown(name)),
            };
            self.reader.vocab.check_arity(sym, args.len())?;
            if !self.reader.vocab.kind(sym).is_predicate() {
                return Err(ParseError::Unknown(name));
            }
            return Ok(Literal::pred(sym, args));
        }
        let lhs = self.term()?;
        let positive = match self.peek() {
            Some(Tok::Eq) => true,
            Some(Tok::Neq) => false,
            _ => return self.fail("expected `=` or `!=`"),
        };
        self.pos += 1;
        let rhs = self.term()?;
        Ok(Literal::new(positive, Atom::Eq(lhs, rhs)))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            t = Term::product(t, self.factor()?);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        let mut t = self.primary()?;
        while self.peek() == Some(&Tok::Prime) {
            self.pos += 1;
            t = Term::inverse(t);
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.identifier(name)
            }
            _ => self.fail("expected a term"),
        }
    }

    fn identifier(&mut self, name: String) -> Result<Term, ParseError> {
        if let Some(sym) = self.reader.vocab.lookup(&name) {
            return match self.reader.vocab.kind(sym) {
                SymbolKind::Identity | SymbolKind::Generator => Ok(Term::constant(sym)),
                _ => Err(ParseError::Unknown(name)),
            };
        }
        match self.reader.style {
            VarStyle::Indexed => {
                if let Some(k) = name.strip_prefix('v').and_then(|d| d.parse::<u32>().ok()) {
                    return Ok(Term::var(k));
                }
            }
            VarStyle::Named => {
                if name.starts_with(|c: char| ('u'..='z').contains(&c)) {
                    let k = match self.names.iter().position(|n| *n == name) {
                        Some(k) => k,
                        None => {
                            self.names.push(name);
                            self.names.len() - 1
                        }
                    };
                    return Ok(Term::var(k as u32));
                }
            }
        }
        if self.reader.extend && name.chars().next().is_some_and(|c| c.is_alphabetic()) {
            return Ok(Term::constant(self.reader.vocab.add_generator(&name)?));
        }
        Err(ParseError::Unknown(name))
    }
}
