//! The LADR dialect shared by Prover9 and Mace4: input files, the Prover9
//! result banner, and Mace4 interpretation blocks.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{check_ladr_vocabulary, InteropError};
use crate::kernel::display::{clause_to_formula, VarNames};
use crate::kernel::parse::{ClauseReader, VarStyle};
use crate::kernel::{ClauseSet, Provenance, SymbolKind, Vocabulary};
use crate::modelfinder::{FiniteModel, PredicateTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prover9Options {
    /// Emit `assign(order, kbo).`
    pub kbo: bool,
    pub max_seconds: Option<u32>,
}

impl Default for Prover9Options {
    fn default() -> Self {
        Prover9Options {
            kbo: true,
            max_seconds: None,
        }
    }
}

fn assumptions(cs: &ClauseSet, out: &mut String) -> Result<(), InteropError> {
    check_ladr_vocabulary(&cs.vocab)?;
    out.push_str("formulas(assumptions).\n");
    for c in cs {
        let _ = writeln!(out, "{}.", clause_to_formula(c, &cs.vocab, VarNames::Letters));
    }
    out.push_str("end_of_list.\n");
    Ok(())
}

pub fn emit_prover9(cs: &ClauseSet, opts: &Prover9Options) -> Result<String, InteropError> {
    let mut out = String::new();
    if opts.kbo {
        out.push_str("assign(order, kbo).\n");
    }
    if let Some(s) = opts.max_seconds {
        let _ = writeln!(out, "assign(max_seconds, {s}).");
    }
    if !out.is_empty() {
        out.push('\n');
    }
    assumptions(cs, &mut out)?;
    Ok(out)
}

/// Mace4 input searching domain sizes `min..=max`.
pub fn emit_mace4(cs: &ClauseSet, min: usize, max: usize) -> Result<String, InteropError> {
    if min == 0 || min > max {
        return Err(InteropError::Unsupported(format!("size range {min}..{max}")));
    }
    let mut out = format!("assign(start_size, {min}).\nassign(end_size, {max}).\n\n");
    assumptions(cs, &mut out)?;
    Ok(out)
}

/// Reads the assumptions of a LADR input file against `vocab`, declaring
/// unknown generators and predicates as they appear.
pub fn read_ladr_input(text: &str, vocab: Vocabulary) -> Result<ClauseSet, InteropError> {
    let mut vocab = vocab;
    let mut formulas = Vec::new();
    let mut inside = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('%').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match (inside, line) {
            (false, "formulas(assumptions).") | (false, "formulas(sos).") => inside = true,
            (true, "end_of_list.") => inside = false,
            (true, f) => formulas.push((i + 1, f.to_string())),
            (false, _) => {}
        }
    }
    if inside {
        return Err(InteropError::Truncated("missing end_of_list".into()));
    }
    let mut clauses = Vec::new();
    let mut reader = ClauseReader {
        vocab: &mut vocab,
        style: VarStyle::Named,
        extend: true,
    };
    for (k, (line, f)) in formulas.iter().enumerate() {
        let body = f.strip_suffix('.').ok_or_else(|| InteropError::Parse {
            line: *line,
            message: "formula must end with `.`".into(),
        })?;
        let c = reader
            .clause(body, Provenance::new("ladr", k as u32 + 1))
            .map_err(|e| InteropError::Parse {
                line: *line,
                message: e.to_string(),
            })?;
        clauses.push(c);
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

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExternalStatus {
    Proved,
    Saturated,
    ResourceOut,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prover9Result {
    pub status: ExternalStatus,
    pub user_seconds: Option<f64>,
    pub system_seconds: Option<f64>,
    /// The exit reason was not one this parser knows.
    pub unknown_banner: bool,
}

fn stat_value(text: &str, key: &str) -> Option<f64> {
    let at = text.find(key)? + key.len();
    let rest = &text[at..];
    let end = rest.find(|c: char| !(c.is_ascii_digit() || c == '.')).unwrap_or(rest.len());
    rest[..end].parse().ok()
}

/// Reads the outcome of a Prover9 run from its output. A file without the
/// final `exit (...)` line is treated as truncated.
pub fn parse_prover9_output(text: &str) -> Result<Prover9Result, InteropError> {
    let reason = text
        .lines()
        .rev()
        .find_map(|l| {
            let l = l.trim();
            let at = l.find(" exit (")?;
            let rest = &l[at + 7..];
            Some(rest[..rest.find(')')?].to_string())
        })
        .ok_or_else(|| InteropError::Truncated("no process exit line".into()))?;
    let proved = text.contains("THEOREM PROVED");
    let (status, unknown_banner) = match reason.as_str() {
        "max_proofs" if proved => (ExternalStatus::Proved, false),
        "sos_empty" => (ExternalStatus::Saturated, false),
        "max_seconds" | "max_megs" | "max_given" | "max_kept" | "max_generated" | "fatal_error" => {
            (ExternalStatus::ResourceOut, false)
        }
        _ => (ExternalStatus::ResourceOut, true),
    };
    Ok(Prover9Result {
        status,
        user_seconds: stat_value(text, "User_CPU="),
        system_seconds: stat_value(text, "System_CPU="),
        unknown_banner,
    })
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    line: usize,
}

impl Cursor<'_> {
    fn ws(&mut self) {
        while let Some(&c) = self.s.get(self.pos) {
            if !c.is_ascii_whitespace() {
                break;
            }
            if c == b'\n' {
                self.line += 1;
            }
            self.pos += 1;
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, InteropError> {
        Err(InteropError::Parse {
            line: self.line,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: u8) -> Result<(), InteropError> {
        self.ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else if self.pos >= self.s.len() {
            Err(InteropError::Truncated(format!("expected `{}`", c as char)))
        } else {
            self.fail(format!("expected `{}`", c as char))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64, InteropError> {
        self.ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected a number");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.fail("number out of range"))
    }

    fn word(&mut self) -> String {
        self.ws();
        let start = self.pos;
        while self
            .s
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_' || *c == b'$')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    /// Skips a bracketed group starting at the current `[`.
    fn skip_group(&mut self) -> Result<(), InteropError> {
        self.eat(b'[')?;
        let mut depth = 1;
        while depth > 0 {
            match self.s.get(self.pos) {
                None => return Err(InteropError::Truncated("unclosed `[`".into())),
                Some(b'[') => depth += 1,
                Some(b']') => depth -= 1,
                Some(b'\n') => self.line += 1,
                _ => {}
            }
            self.pos += 1;
        }
        Ok(())
    }
}

/// Reads the first `interpretation(...)` block of Mace4 output into a model
/// over `vocab`.
pub fn parse_mace4_model(text: &str, vocab: &Vocabulary) -> Result<FiniteModel, InteropError> {
    let start = text
        .find("interpretation(")
        .ok_or_else(|| InteropError::Truncated("no interpretation block".into()))?;
    let mut c = Cursor {
        s: text.as_bytes(),
        pos: start + "interpretation(".len(),
        line: text[..start].lines().count() + 1,
    };
    let n = c.number()? as usize;
    if n == 0 || n > crate::modelfinder::MAX_SIZE {
        return c.fail(format!("unsupported domain size {n}"));
    }
    c.eat(b',')?;
    c.skip_group()?;
    c.eat(b',')?;
    c.eat(b'[')?;
    let mut functions: BTreeMap<String, Vec<u32>> = BTreeMap::new();
    let mut relations: BTreeMap<String, (usize, Vec<u32>)> = BTreeMap::new();
    loop {
        if c.peek() == Some(b']') {
            c.pos += 1;
            break;
        }
        let kind = c.word();
        if kind != "function" && kind != "relation" {
            return c.fail(format!("expected `function` or `relation`, found `{kind}`"));
        }
        c.eat(b'(')?;
        let name = match c.peek() {
            Some(b'*') => {
                c.pos += 1;
                "*".to_string()
            }
            Some(b'\'') => {
                c.pos += 1;
                "'".to_string()
            }
            _ => c.word(),
        };
        if name.is_empty() {
            return c.fail("expected a symbol name");
        }
        let mut arity = 0;
        if c.peek() == Some(b'(') {
            c.pos += 1;
            loop {
                c.eat(b'_')?;
                arity += 1;
                if c.peek() == Some(b',') {
                    c.pos += 1;
                } else {
                    break;
                }
            }
            c.eat(b')')?;
        }
        c.eat(b',')?;
        c.eat(b'[')?;
        let mut values = Vec::new();
        loop {
            let v = c.number()?;
            if v >= n as u64 || (kind == "relation" && v > 1) {
                return c.fail(format!("entry {v} out of range in `{name}`"));
            }
            values.push(v as u32);
            if c.peek() == Some(b',') {
                c.pos += 1;
            } else {
                break;
            }
        }
        c.eat(b']')?;
        c.eat(b')')?;
        let expected = n.pow(arity as u32);
        if values.len() != expected {
            return c.fail(format!("`{name}` has {} entries, expected {expected}", values.len()));
        }
        if kind == "function" {
            functions.insert(name, values);
        } else {
            relations.insert(name, (arity, values));
        }
        if c.peek() == Some(b',') {
            c.pos += 1;
        }
    }
    c.eat(b')')?;
    build_model(n, functions, relations, vocab)
}

fn build_model(
    n: usize,
    mut functions: BTreeMap<String, Vec<u32>>,
    relations: BTreeMap<String, (usize, Vec<u32>)>,
    vocab: &Vocabulary,
) -> Result<FiniteModel, InteropError> {
    let mut take = |name: &str| {
        functions
            .remove(name)
            .ok_or_else(|| InteropError::Model(format!("no table for `{name}`")))
    };
    let product = take("*")?;
    let inverse = take("'")?;
    let identity = take("e")?[0];
    let mut constants = BTreeMap::new();
    for g in vocab.generators() {
        let name = vocab.name(g);
        constants.insert(name.to_string(), take(name)?[0]);
    }
    let mut predicates = BTreeMap::new();
    for p in vocab.predicates() {
        let name = vocab.name(p);
        let arity = vocab.symbol(p).arity();
        let (a, values) = relations
            .get(name)
            .ok_or_else(|| InteropError::Model(format!("no table for predicate `{name}`")))?;
        if *a != arity {
            return Err(InteropError::Model(format!("`{name}` has arity {a}, expected {arity}")));
        }
        let mut t = PredicateTable::new(arity, n);
        t.table = values.iter().map(|&v| v == 1).collect();
        predicates.insert(name.to_string(), t);
    }
    for name in functions.keys().chain(relations.keys()) {
        match vocab.lookup(name).map(|s| vocab.kind(s)) {
            Some(SymbolKind::Generator) | Some(SymbolKind::Predicate(_)) => {}
            _ => return Err(InteropError::Model(format!("unknown symbol `{name}`"))),
        }
    }
    let m = FiniteModel {
        size: n,
        product,
        inverse,
        identity,
        constants,
        predicates,
    };
    m.validate().map_err(|e| InteropError::Model(e.to_string()))?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, relations_to_axioms};
    use crate::theories::{build_axiom_group, AxiomGroup};

    fn klein_bo() -> ClauseSet {
        let p = parse_presentation("< a, b | a^-1 b a = b^-1 >").unwrap();
        let mut cs = build_axiom_group(&AxiomGroup::Gr, &p.vocabulary()).unwrap();
        cs.extend(&relations_to_axioms(&p)).unwrap();
        for g in [AxiomGroup::AxL, AxiomGroup::OrdB] {
            let more = build_axiom_group(&g, &cs.vocab).unwrap();
            cs.extend(&more).unwrap();
        }
        cs
    }

    #[test]
    fn prover9_file_has_the_published_lines() {
        let cs = klein_bo();
        let text = emit_prover9(
            &cs,
            &Prover9Options {
                kbo: true,
                max_seconds: Some(60),
            },
        )
        .unwrap();
        let lines: Vec<&str> = text.lines().collect();
        for want in [
            "assign(order, kbo).",
            "assign(max_seconds, 60).",
            "formulas(assumptions).",
            "(x * y) * z = x * (y * z).",
            "(a' * b) * a = b'.",
            "- L(x,x).",
            "L(x,y) -> L((z*x)*u,(z*y)*u).",
            "end_of_list.",
        ] {
            assert!(lines.contains(&want), "missing {want}");
        }
        let back = read_ladr_input(&text, Vocabulary::group()).unwrap();
        assert_eq!(back.len(), cs.len());
        for (a, b) in cs.iter().zip(&back) {
            assert!(a.is_variant(b));
        }
    }

    #[test]
    fn variable_like_generators_are_refused() {
        let p = parse_presentation("< x1 | x1^2 = e >").unwrap();
        let cs = relations_to_axioms(&p);
        assert!(matches!(
            emit_prover9(&cs, &Prover9Options::default()),
            Err(InteropError::Unsupported(_))
        ));
    }

    #[test]
    fn mace4_file_has_size_directives() {
        let text = emit_mace4(&klein_bo(), 2, 10).unwrap();
        assert!(text.starts_with("assign(start_size, 2).\nassign(end_size, 10).\n"));
        assert!(emit_mace4(&klein_bo(), 3, 2).is_err());
    }

    const PROVED: &str = "\
============================== STATISTICS ============================

Given=12. Generated=84. Kept=40. proofs=1.
User_CPU=0.01, System_CPU=0.02, Wall_clock=0.

============================== end of statistics =====================

============================== end of search =========================

THEOREM PROVED

Exiting with 1 proof.

------ process 4242 exit (max_proofs) ------
";

    #[test]
    fn prover9_banners() {
        let r = parse_prover9_output(PROVED).unwrap();
        assert_eq!(r.status, ExternalStatus::Proved);
        assert_eq!(r.user_seconds, Some(0.01));
        assert_eq!(r.system_seconds, Some(0.02));
        let timeout = PROVED
            .replace("THEOREM PROVED", "SEARCH FAILED")
            .replace("max_proofs", "max_seconds");
        assert_eq!(parse_prover9_output(&timeout).unwrap().status, ExternalStatus::ResourceOut);
        let odd = PROVED.replace("max_proofs", "mystery");
        assert!(parse_prover9_output(&odd).unwrap().unknown_banner);
        let cut = &PROVED[..PROVED.find("------").unwrap()];
        assert!(matches!(parse_prover9_output(cut), Err(InteropError::Truncated(_))));
    }

    const KLEIN_MODEL: &str = "\
============================== MODEL =================================

interpretation( 2, [number=1, seconds=0], [

        function(e, [ 0 ]),

        function(a, [ 0 ]),

        function(b, [ 1 ]),

        function('(_), [ 0, 1 ]),

        function(*(_,_), [
			   0, 1,
			   1, 0 ])
]).

============================== end of model ==========================
";

    #[test]
    fn mace4_model_block() {
        let p = parse_presentation("< a, b | a^-1 b a = b^-1 >").unwrap();
        let m = parse_mace4_model(KLEIN_MODEL, &p.vocabulary()).unwrap();
        assert_eq!(m.size, 2);
        assert_eq!(m.constants["b"], 1);
        let bad = KLEIN_MODEL.replace("function(b, [ 1 ])", "function(b, [ 2 ])");
        assert!(matches!(parse_mace4_model(&bad, &p.vocabulary()), Err(InteropError::Parse { .. })));
        let cut = &KLEIN_MODEL[..KLEIN_MODEL.find("function(*").unwrap()];
        assert!(parse_mace4_model(cut, &p.vocabulary()).is_err());
    }
}
