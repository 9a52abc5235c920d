//! Group presentations `< gens | rels >`, their words, and the encoding of
//! words and relations as ground terms and unit equations.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::symbol::RESERVED_NAMES;
use crate::kernel::{Clause, ClauseSet, Literal, Provenance, Term, VocabError, Vocabulary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(generator: usize, inverse: bool) -> Self {
        Word {
            letters: vec![Letter { generator, inverse }],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    /// `self` repeated `n` times; negative `n` repeats the inverse.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown generator `{name}`")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("generator `{0}` is declared twice")]
    DuplicateGenerator(String),
    #[error("`{0}` is reserved and cannot name a generator")]
    Reserved(String),
    #[error(transparent)]
    Vocab(#[from] VocabError),
}

impl Presentation {
    pub fn new(generators: Vec<String>, relations: Vec<Relation>) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if RESERVED_NAMES.contains(&g.as_str()) {
                return Err(PresentationError::Reserved(g.clone()));
            }
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let n = generators.len();
        for r in &relations {
            if let Some(l) = r.lhs.letters.iter().chain(&r.rhs.letters).find(|l| l.generator >= n) {
                return Err(PresentationError::UnknownGenerator {
                    name: format!("#{}", l.generator),
                    line: 0,
                    column: 0,
                });
            }
        }
        Ok(Presentation { generators, relations })
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// The group vocabulary extended with one constant per generator.
    pub fn vocabulary(&self) -> Vocabulary {
        let mut v = Vocabulary::group();
        self.extend_vocabulary(&mut v).expect("generator names validated on construction");
        v
    }

    pub fn extend_vocabulary(&self, vocab: &mut Vocabulary) -> Result<(), VocabError> {
        for g in &self.generators {
            vocab.add_generator(g)?;
        }
        Ok(())
    }

    /// Left-nested product of the letters; `g^-1` becomes `g'`, the empty word `e`.
    pub fn word_to_term(&self, w: &Word, vocab: &Vocabulary) -> Result<Term, VocabError> {
        let mut acc: Option<Term> = None;
        for l in &w.letters {
            let name = self
                .generators
                .get(l.generator)
                .ok_or(VocabError::UnknownId(l.generator as u32))?;
            let sym = vocab.lookup(name).ok_or_else(|| VocabError::UnknownSymbol(name.clone()))?;
            let mut t = Term::constant(sym);
            if l.inverse {
                t = Term::inverse(t);
            }
            acc = Some(match acc {
                None => t,
                Some(a) => Term::product(a, t),
            });
        }
        Ok(acc.unwrap_or_else(Term::identity))
    }

    /// Parses a single word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let mut p = Parser::new(text);
        let w = p.word(&self.generators)?;
        p.expect_end()?;
        Ok(w)
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < w.letters.len() {
            let l = w.letters[i];
            let mut j = i;
            while j < w.letters.len() && w.letters[j] == l {
                j += 1;
            }
            let n = (j - i) as i64;
            let name = &self.generators[l.generator];
            let exp = if l.inverse { -n } else { n };
            parts.push(if exp == 1 { name.clone() } else { format!("{name}^{exp}") });
            i = j;
        }
        parts.join(" ")
    }

    pub fn render(&self) -> String {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{} = {}", self.render_word(&r.lhs), self.render_word(&r.rhs)))
            .collect();
        if rels.is_empty() {
            format!("< {} | >", self.generators.join(", "))
        } else {
            format!("< {} | {} >", self.generators.join(", "), rels.join(", "))
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Which lifting a statement set is meant for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StatementKind {
    /// Ground disequations.
    Inequalities,
    /// `s < t` or `(s < t) | (t < s)`.
    Order,
    /// `C(r,s,t)` or `C(r,s,t) | C(r,t,s)`.
    Circular,
    /// `P(s'*t)` or `P(s'*t) | P(t'*s)`.
    Cone,
    /// `P(r'*s,r'*t)` or `P(r'*s,r'*t) | P(r'*t,r'*s)`.
    ConeBinary,
}

impl StatementKind {
    /// Number of terms per item.
    pub fn arity(self) -> usize {
        match self {
            StatementKind::Inequalities | StatementKind::Order | StatementKind::Cone => 2,
            StatementKind::Circular | StatementKind::ConeBinary => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StatementKind::Inequalities => "inequalities",
            StatementKind::Order => "order",
            StatementKind::Circular => "circular",
            StatementKind::Cone => "cone",
            StatementKind::ConeBinary => "cone-binary",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "inequalities" => StatementKind::Inequalities,
            "order" => StatementKind::Order,
            "circular" => StatementKind::Circular,
            "cone" => StatementKind::Cone,
            "cone-binary" => StatementKind::ConeBinary,
            _ => return None,
        })
    }
}

/// One tuple of ground terms; `strict` marks the single strengthened item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatementItem {
    pub terms: Vec<Term>,
    pub strict: bool,
}

impl StatementItem {
    pub fn new(terms: Vec<Term>, strict: bool) -> Self {
        StatementItem { terms, strict }
    }
}

/// True statements about a group, to be lifted into clauses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatementSet {
    pub kind: StatementKind,
    pub items: Vec<StatementItem>,
}

impl StatementSet {
    pub fn new(kind: StatementKind) -> Self {
        StatementSet { kind, items: Vec::new() }
    }

    pub fn inequalities(pairs: impl IntoIterator<Item = (Term, Term)>) -> Self {
        StatementSet {
            kind: StatementKind::Inequalities,
            items: pairs.into_iter().map(|(s, t)| StatementItem::new(vec![s, t], false)).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn strict_count(&self) -> usize {
        self.items.iter().filter(|i| i.strict).count()
    }
}

/// Parses `< gens | rels >`. Words are juxtaposed factors; a factor is a
/// generator, `e`, a parenthesised word, or a factor raised to `^n`.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut p = Parser::new(text);
    p.expect('<')?;
    let mut generators = Vec::new();
    p.skip_ws();
    if p.peek() != Some('|') {
        loop {
            let (name, line, column) = p.ident()?;
            if RESERVED_NAMES.contains(&name.as_str()) {
                return Err(PresentationError::Syntax {
                    line,
                    column,
                    message: format!("`{name}` is reserved and cannot name a generator"),
                });
            }
            if generators.contains(&name) {
                return Err(PresentationError::DuplicateGenerator(name));
            }
            generators.push(name);
            p.skip_ws();
            if p.peek() == Some(',') {
                p.bump();
            } else {
                break;
            }
        }
    }
    p.expect('|')?;
    let mut relations = Vec::new();
    p.skip_ws();
    if p.peek() != Some('>') {
        loop {
            let lhs = p.word(&generators)?;
            p.skip_ws();
            let rhs = if p.peek() == Some('=') {
                p.bump();
                p.word(&generators)?
            } else {
                Word::empty()
            };
            relations.push(Relation { lhs, rhs });
            p.skip_ws();
            if p.peek() == Some(',') {
                p.bump();
            } else {
                break;
            }
        }
    }
    p.expect('>')?;
    p.expect_end()?;
    Presentation::new(generators, relations)
}

/// One unit equation per relation, labelled `axr`.
pub fn relations_to_axioms(p: &Presentation) -> ClauseSet {
    let vocab = p.vocabulary();
    let mut cs = ClauseSet::new(vocab);
    for (i, r) in p.relations.iter().enumerate() {
        let l = p.word_to_term(&r.lhs, &cs.vocab).expect("vocabulary built from presentation");
        let rt = p.word_to_term(&r.rhs, &cs.vocab).expect("vocabulary built from presentation");
        let c = Clause::unit(Literal::eq(l, rt), Provenance::new("axr", i as u32 + 1));
        cs.push(c).expect("relation clause is well formed");
    }
    cs
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    _text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            _text: text,
        }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error(&self, message: impl Into<String>) -> PresentationError {
        let (line, column) = self.location(self.pos);
        PresentationError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += 1;
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expect(&mut self, c: char) -> Result<(), PresentationError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(match self.peek() {
                Some(found) => format!("expected `{c}`, found `{found}`"),
                None => format!("expected `{c}`, found end of input"),
            }))
        }
    }

    fn expect_end(&mut self) -> Result<(), PresentationError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}` after end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), PresentationError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => {}
            Some(c) => return Err(self.error(format!("expected identifier, found `{c}`"))),
            None => return Err(self.error("expected identifier, found end of input")),
        }
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' {
                self.bump();
            } else {
                break;
            }
        }
        let (line, column) = self.location(start);
        Ok((self.chars[start..self.pos].iter().collect(), line, column))
    }

    fn word(&mut self, gens: &[String]) -> Result<Word, PresentationError> {
        let mut w = Word::empty();
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_alphabetic() || c == '_' || c == '(' => {
                    let f = self.factor(gens)?;
                    w = w.concat(&f);
                    any = true;
                }
                Some('*') if any => self.bump(),
                _ => break,
            }
        }
        if !any {
            return Err(self.error("expected a word"));
        }
        Ok(w)
    }

    fn factor(&mut self, gens: &[String]) -> Result<Word, PresentationError> {
        self.skip_ws();
        let mut base = if self.peek() == Some('(') {
            self.bump();
            let w = self.word(gens)?;
            self.expect(')')?;
            w
        } else {
            let (name, line, column) = self.ident()?;
            if name == "e" {
                Word::empty()
            } else {
                match gens.iter().position(|g| *g == name) {
                    Some(i) => Word::letter(i, false),
                    None => return Err(PresentationError::UnknownGenerator { name, line, column }),
                }
            }
        };
        loop {
            self.skip_ws();
            if self.peek() != Some('^') {
                break;
            }
            self.bump();
            base = base.pow(self.integer()?);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected an integer exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let n: i64 = digits.parse().map_err(|_| self.error("exponent out of range"))?;
        if n > 1_000_000 {
            return Err(self.error("exponent out of range"));
        }
        Ok(if neg { -n } else { n })
    }
}
