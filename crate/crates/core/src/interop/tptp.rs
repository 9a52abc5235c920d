//! TPTP CNF emission and a reader for the emitted subset.

use std::collections::HashSet;
use std::fmt::Write;

use super::InteropError;
use crate::kernel::{Atom, Clause, ClauseSet, Literal, Provenance, SymbolKind, Term, Vocabulary};

fn var_name(v: u32) -> String {
    const LETTERS: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];
    LETTERS.get(v as usize).map_or_else(|| format!("X{v}"), |s| s.to_string())
}

fn is_lower_word(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_lowercase()) && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn functor(name: &str) -> String {
    if is_lower_word(name) {
        name.to_string()
    } else {
        format!("'{name}'")
    }
}

fn write_term(out: &mut String, t: &Term, vocab: &Vocabulary) {
    match t {
        Term::Var(v) => out.push_str(&var_name(*v)),
        _ => {
            let h = t.head().unwrap();
            match vocab.kind(h) {
                SymbolKind::Product => out.push_str("mul("),
                SymbolKind::Inverse => out.push_str("inv("),
                _ => out.push_str(&functor(vocab.name(h))),
            }
            if !t.args().is_empty() {
                if !matches!(vocab.kind(h), SymbolKind::Product | SymbolKind::Inverse) {
                    out.push('(');
                }
                for (i, a) in t.args().iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_term(out, a, vocab);
                }
                out.push(')');
            }
        }
    }
}

fn write_literal(out: &mut String, l: &Literal, vocab: &Vocabulary) {
    match &l.atom {
        Atom::Eq(a, b) => {
            write_term(out, a, vocab);
            out.push_str(if l.positive { " = " } else { " != " });
            write_term(out, b, vocab);
        }
        Atom::Pred(p, args) => {
            if !l.positive {
                out.push('~');
            }
            out.push_str(&functor(&vocab.name(*p).to_lowercase()));
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_term(out, a, vocab);
            }
            out.push(')');
        }
    }
}

/// One `cnf(ax_<label>_<k>, axiom, ...)` line per clause, named after the
/// clause's provenance. Predicate names are lower-cased; product and
/// inverse become `mul` and `inv`.
pub fn emit_tptp(cs: &ClauseSet) -> Result<String, InteropError> {
    let mut lowered = HashSet::new();
    for p in cs.vocab.predicates() {
        let low = cs.vocab.name(p).to_lowercase();
        if !lowered.insert(low.clone()) || cs.vocab.lookup(&low).is_some_and(|s| s != p) {
            return Err(InteropError::Unsupported(format!("predicate name clash on `{low}`")));
        }
    }
    for g in cs.vocab.generators() {
        if matches!(cs.vocab.name(g), "mul" | "inv") {
            return Err(InteropError::Unsupported(cs.vocab.name(g).to_string()));
        }
    }
    let mut out = format!("% {} clauses\n", cs.len());
    let mut names = HashSet::new();
    for c in cs {
        let base = format!("ax_{}_{}", c.provenance.label, c.provenance.index);
        let mut name = base.clone();
        let mut k = 1;
        while !names.insert(name.clone()) {
            k += 1;
            name = format!("{base}_{k}");
        }
        let mut body = String::new();
        if c.is_empty() {
            body.push_str("$false");
        }
        for (i, l) in c.literals().iter().enumerate() {
            if i > 0 {
                body.push_str(" | ");
            }
            write_literal(&mut body, l, &cs.vocab);
        }
        let _ = writeln!(out, "cnf({name}, axiom, {body}).");
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Var(String),
    Quoted(String),
    Punct(char),
    Neq,
}

fn lex(line: &str, n: usize) -> Result<Vec<Tok>, InteropError> {
    let cs: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '!' && cs.get(i + 1) == Some(&'=') {
            out.push(Tok::Neq);
            i += 2;
        } else if c == '\'' {
            let end = cs[i + 1..].iter().position(|&d| d == '\'').ok_or(InteropError::Parse {
                line: n,
                message: "unclosed quote".into(),
            })?;
            out.push(Tok::Quoted(cs[i + 1..i + 1 + end].iter().collect()));
            i += end + 2;
        } else if c.is_ascii_alphanumeric() || c == '_' || c == '$' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_' || cs[i] == '$') {
                i += 1;
            }
            let w: String = cs[start..i].iter().collect();
            out.push(if w.starts_with(|c: char| c.is_ascii_uppercase()) {
                Tok::Var(w)
            } else {
                Tok::Word(w)
            });
        } else {
            out.push(Tok::Punct(c));
            i += 1;
        }
    }
    Ok(out)
}

struct Reader<'a> {
    toks: Vec<Tok>,
    pos: usize,
    line: usize,
    vocab: &'a mut Vocabulary,
    vars: Vec<String>,
}

impl Reader<'_> {
    fn fail<T>(&self, m: impl Into<String>) -> Result<T, InteropError> {
        Err(InteropError::Parse {
            line: self.line,
            message: m.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn punct(&mut self, c: char) -> Result<(), InteropError> {
        match self.next() {
            Some(Tok::Punct(d)) if d == c => Ok(()),
            _ => self.fail(format!("expected `{c}`")),
        }
    }

    fn is_punct(&self, c: char) -> bool {
        self.toks.get(self.pos) == Some(&Tok::Punct(c))
    }

    fn args(&mut self) -> Result<Vec<Term>, InteropError> {
        let mut out = Vec::new();
        if self.is_punct('(') {
            self.pos += 1;
            loop {
                out.push(self.term()?);
                if self.is_punct(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            self.punct(')')?;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Term, InteropError> {
        match self.next() {
            Some(Tok::Var(v)) => {
                let k = match self.vars.iter().position(|x| *x == v) {
                    Some(k) => k,
                    None => {
                        self.vars.push(v);
                        self.vars.len() - 1
                    }
                };
                Ok(Term::var(k as u32))
            }
            Some(Tok::Word(w)) | Some(Tok::Quoted(w)) => {
                let args = self.args()?;
                match (w.as_str(), args.len()) {
                    ("mul", 2) => {
                        let mut it = args.into_iter();
                        Ok(Term::product(it.next().unwrap(), it.next().unwrap()))
                    }
                    ("inv", 1) => Ok(Term::inverse(args.into_iter().next().unwrap())),
                    (name, 0) => {
                        let sym = match self.vocab.lookup(name) {
                            Some(s) => s,
                            None => self.vocab.add_generator(name).or_else(|e| self.fail(e.to_string()))?,
                        };
                        match self.vocab.kind(sym) {
                            SymbolKind::Identity | SymbolKind::Generator => Ok(Term::constant(sym)),
                            _ => self.fail(format!("`{name}` is not a constant")),
                        }
                    }
                    (name, _) => self.fail(format!("unknown function `{name}`")),
                }
            }
            _ => self.fail("expected a term"),
        }
    }

    fn literal(&mut self) -> Result<Literal, InteropError> {
        let negated = self.is_punct('~');
        if negated {
            self.pos += 1;
        }
        let save = self.pos;
        if let Some(Tok::Word(w)) | Some(Tok::Quoted(w)) = self.toks.get(self.pos).cloned() {
            let upper = w.to_uppercase();
            let is_pred = self.vocab.lookup(&upper).is_some_and(|s| self.vocab.kind(s).is_predicate());
            if is_pred && self.toks.get(self.pos + 1) == Some(&Tok::Punct('(')) {
                self.pos += 1;
                let args = self.args()?;
                let p = self.vocab.lookup(&upper).unwrap();
                self.vocab.check_arity(p, args.len()).or_else(|e| self.fail(e.to_string()))?;
                return Ok(Literal::new(!negated, Atom::Pred(p, args)));
            }
        }
        self.pos = save;
        let l = self.term()?;
        let positive = match self.next() {
            Some(Tok::Punct('=')) => true,
            Some(Tok::Neq) => false,
            _ => return self.fail("expected `=` or `!=`"),
        };
        let r = self.term()?;
        Ok(Literal::new(positive != negated, Atom::Eq(l, r)))
    }
}

/// Reads `cnf(name, role, clause).` lines. Predicates must already be in
/// `vocab` (matched case-insensitively); unknown constants become generators.
pub fn parse_tptp(text: &str, vocab: Vocabulary) -> Result<ClauseSet, InteropError> {
    let mut vocab = vocab;
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let mut r = Reader {
            toks: lex(line, i + 1)?,
            pos: 0,
            line: i + 1,
            vocab: &mut vocab,
            vars: Vec::new(),
        };
        match r.next() {
            Some(Tok::Word(w)) if w == "cnf" => {}
            _ => return r.fail("expected `cnf(`"),
        }
        r.punct('(')?;
        let name = match r.next() {
            Some(Tok::Word(w)) | Some(Tok::Quoted(w)) => w,
            _ => return r.fail("expected a clause name"),
        };
        r.punct(',')?;
        r.next();
        r.punct(',')?;
        let mut lits = Vec::new();
        if r.toks.get(r.pos) == Some(&Tok::Word("$false".into())) {
            r.pos += 1;
        } else {
            loop {
                lits.push(r.literal()?);
                if r.is_punct('|') {
                    r.pos += 1;
                } else {
                    break;
                }
            }
        }
        r.punct(')')?;
        r.punct('.')?;
        if r.pos != r.toks.len() {
            return r.fail("trailing input");
        }
        let prov = name
            .strip_prefix("ax_")
            .and_then(|rest| rest.rsplit_once('_'))
            .and_then(|(label, k)| Some(Provenance::new(label, k.parse().ok()?)))
            .unwrap_or_else(|| Provenance::new(name.clone(), 0));
        clauses.push(Clause::new(lits, prov));
    }
    let mut cs = ClauseSet::new(vocab);
    for c in clauses {
        cs.push(c).map_err(|e| InteropError::Parse {
            line: 0,
            message: e.to_string(),
        })?;
    }
    Ok(cs)
}
