use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{Atom, ClauseSet, SymbolKind, Term, Vocabulary};

/// Truth table of a predicate, indexed in mixed radix with the first
/// argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateTable {
    pub arity: usize,
    pub table: Vec<bool>,
}

impl PredicateTable {
    pub fn new(arity: usize, size: usize) -> Self {
        PredicateTable {
            arity,
            table: vec![false; size.pow(arity as u32)],
        }
    }

    pub fn index(&self, size: usize, args: &[u32]) -> usize {
        args.iter().fold(0, |acc, &a| acc * size + a as usize)
    }

    pub fn get(&self, size: usize, args: &[u32]) -> bool {
        self.table[self.index(size, args)]
    }

    pub fn set(&mut self, size: usize, args: &[u32], value: bool) {
        let i = self.index(size, args);
        self.table[i] = value;
    }

    /// True tuples in increasing index order.
    pub fn tuples(&self, size: usize) -> Vec<Vec<u32>> {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| decode(i, size, self.arity))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }
}

pub(crate) fn decode(mut index: usize, size: usize, arity: usize) -> Vec<u32> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = (index % size) as u32;
        index /= size;
    }
    out
}

/// An interpretation on the domain `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteModel {
    pub size: usize,
    /// Row-major: `product[x * size + y]` is `x * y`.
    pub product: Vec<u32>,
    pub inverse: Vec<u32>,
    pub identity: u32,
    pub constants: BTreeMap<String, u32>,
    pub predicates: BTreeMap<String, PredicateTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("clause {clause} is false under assignment {assignment:?}")]
    Falsified { clause: usize, assignment: Vec<u32> },
    #[error("vocabulary mismatch: {0}")]
    Vocabulary(String),
    #[error("malformed model: {0}")]
    Malformed(String),
    #[error("invalid search budget: {0}")]
    Budget(String),
}

impl FiniteModel {
    /// The cyclic group of order `n` with no constants or predicates.
    pub fn cyclic(n: usize) -> Self {
        let product = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let inverse = (0..n).map(|x| ((n - x) % n) as u32).collect();
        FiniteModel {
            size: n,
            product,
            inverse,
            identity: 0,
            constants: BTreeMap::new(),
            predicates: BTreeMap::new(),
        }
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.product[x as usize * self.size + y as usize]
    }

    pub fn inv(&self, x: u32) -> u32 {
        self.inverse[x as usize]
    }

    /// Checks table shapes and that every entry lies in the domain.
    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.size;
        if n == 0 {
            return Err(ModelError::Malformed("empty domain".into()));
        }
        if self.product.len() != n * n || self.inverse.len() != n {
            return Err(ModelError::Malformed("operation table has the wrong shape".into()));
        }
        let in_range = |v: u32| (v as usize) < n;
        if !self.product.iter().chain(&self.inverse).copied().all(in_range) || !in_range(self.identity) {
            return Err(ModelError::Malformed("table entry out of range".into()));
        }
        if let Some((name, _)) = self.constants.iter().find(|(_, &v)| !in_range(v)) {
            return Err(ModelError::Malformed(format!("constant {name} out of range")));
        }
        for (name, p) in &self.predicates {
            if p.table.len() != n.pow(p.arity as u32) {
                return Err(ModelError::Malformed(format!("predicate {name} has the wrong shape")));
            }
        }
        Ok(())
    }

    /// Evaluates a term; variables are read from `assignment`.
    pub fn eval(&self, t: &Term, vocab: &Vocabulary, assignment: &[u32]) -> Result<u32, ModelError> {
        match t {
            Term::Var(v) => assignment
                .get(*v as usize)
                .copied()
                .ok_or_else(|| ModelError::Vocabulary(format!("unassigned variable v{v}"))),
            Term::App(_) => {
                let sym = t.head().unwrap();
                let s = vocab
                    .get(sym)
                    .ok_or_else(|| ModelError::Vocabulary(format!("unknown symbol id {}", sym.0)))?;
                match s.kind {
                    SymbolKind::Product => {
                        let a = self.eval(&t.args()[0], vocab, assignment)?;
                        let b = self.eval(&t.args()[1], vocab, assignment)?;
                        Ok(self.mul(a, b))
                    }
                    SymbolKind::Inverse => Ok(self.inv(self.eval(&t.args()[0], vocab, assignment)?)),
                    SymbolKind::Identity => Ok(self.identity),
                    SymbolKind::Generator => self
                        .constants
                        .get(&s.name)
                        .copied()
                        .ok_or_else(|| ModelError::Vocabulary(format!("constant {} not interpreted", s.name))),
                    SymbolKind::Predicate(_) => Err(ModelError::Vocabulary(format!("predicate {} used as a term", s.name))),
                }
            }
        }
    }

    pub fn eval_ground(&self, t: &Term, vocab: &Vocabulary) -> Result<u32, ModelError> {
        self.eval(t, vocab, &[])
    }

    pub fn predicate(&self, name: &str) -> Option<&PredicateTable> {
        self.predicates.get(name)
    }

    /// Text form: `size`, `op` rows, `inv` row, `const` lines, `pred` blocks.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let n = self.size;
        let _ = writeln!(out, "size {n}");
        out.push_str("op\n");
        for x in 0..n {
            let row: Vec<String> = self.product[x * n..(x + 1) * n].iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        let inv: Vec<String> = self.inverse.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "inv {}", inv.join(" "));
        let _ = writeln!(out, "const e={}", self.identity);
        for (name, v) in &self.constants {
            let _ = writeln!(out, "const {name}={v}");
        }
        for (name, p) in &self.predicates {
            let _ = writeln!(out, "pred {name} {}", p.arity);
            for t in p.tuples(n) {
                let t: Vec<String> = t.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{}", t.join(" "));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ModelError> {
        let bad = |m: &str| ModelError::Malformed(m.to_string());
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty()).peekable();
        let size: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("size "))
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| bad("expected `size n`"))?;
        if size == 0 {
            return Err(bad("empty domain"));
        }
        if lines.next() != Some("op") {
            return Err(bad("expected `op`"));
        }
        let parse_row = |l: &str| -> Result<Vec<u32>, ModelError> {
            l.split_whitespace()
                .map(|w| w.parse::<u32>().map_err(|_| bad("expected a number")))
                .collect()
        };
        let mut product = Vec::with_capacity(size * size);
        for _ in 0..size {
            let row = parse_row(lines.next().ok_or_else(|| bad("truncated op table"))?)?;
            if row.len() != size {
                return Err(bad("op row has the wrong length"));
            }
            product.extend(row);
        }
        let inverse = parse_row(
            lines
                .next()
                .and_then(|l| l.strip_prefix("inv"))
                .ok_or_else(|| bad("expected `inv` row"))?,
        )?;
        let mut model = FiniteModel {
            size,
            product,
            inverse,
            identity: 0,
            constants: BTreeMap::new(),
            predicates: BTreeMap::new(),
        };
        let mut seen_identity = false;
        while let Some(line) = lines.next() {
            if let Some(rest) = line.strip_prefix("const ") {
                let (name, value) = rest.split_once('=').ok_or_else(|| bad("expected `const name=index`"))?;
                let value: u32 = value.trim().parse().map_err(|_| bad("bad constant value"))?;
                if name.trim() == "e" {
                    model.identity = value;
                    seen_identity = true;
                } else {
                    model.constants.insert(name.trim().to_string(), value);
                }
            } else if let Some(rest) = line.strip_prefix("pred ") {
                let mut parts = rest.split_whitespace();
                let name = parts.next().ok_or_else(|| bad("expected predicate name"))?;
                let arity: usize = parts
                    .next()
                    .and_then(|a| a.parse().ok())
                    .ok_or_else(|| bad("expected predicate arity"))?;
                let mut table = PredicateTable::new(arity, size);
                while let Some(next) = lines.peek() {
                    if next.starts_with("pred ") || next.starts_with("const ") {
                        break;
                    }
                    let tuple = parse_row(lines.next().unwrap())?;
                    if tuple.len() != arity || tuple.iter().any(|&v| v as usize >= size) {
                        return Err(bad("predicate tuple out of range"));
                    }
                    table.set(size, &tuple, true);
                }
                model.predicates.insert(name.to_string(), table);
            } else {
                return Err(bad(&format!("unexpected line `{line}`")));
            }
        }
        if !seen_identity {
            return Err(bad("missing `const e=...`"));
        }
        model.validate()?;
        Ok(model)
    }
}

/// Resolution of a vocabulary symbol against a model, prepared once per check.
enum Interp<'a> {
    Product,
    Inverse,
    Value(u32),
    Pred(&'a PredicateTable),
}

fn resolve<'a>(m: &'a FiniteModel, vocab: &Vocabulary, cs: &ClauseSet) -> Result<Vec<Option<Interp<'a>>>, ModelError> {
    let mut used = vec![false; vocab.len()];
    for c in cs {
        for l in c.literals() {
            if let Atom::Pred(p, _) = &l.atom {
                used[p.index()] = true;
            }
            for t in l.atom.terms() {
                t.for_each_app(&mut |_, s| used[s.head().unwrap().index()] = true);
            }
        }
    }
    vocab
        .symbols()
        .map(|(id, s)| {
            if !used[id.index()] {
                return Ok(None);
            }
            Ok(Some(match s.kind {
                SymbolKind::Product => Interp::Product,
                SymbolKind::Inverse => Interp::Inverse,
                SymbolKind::Identity => Interp::Value(m.identity),
                SymbolKind::Generator => Interp::Value(
                    *m.constants
                        .get(&s.name)
                        .ok_or_else(|| ModelError::Vocabulary(format!("constant {} not interpreted", s.name)))?,
                ),
                SymbolKind::Predicate(n) => {
                    let table = m
                        .predicates
                        .get(&s.name)
                        .ok_or_else(|| ModelError::Vocabulary(format!("predicate {} not interpreted", s.name)))?;
                    if table.arity != n as usize {
                        return Err(ModelError::Vocabulary(format!(
                            "predicate {} has arity {} in the model but {} in the clauses",
                            s.name, table.arity, n
                        )));
                    }
                    Interp::Pred(table)
                }
            }))
        })
        .collect()
}

fn eval_fast(m: &FiniteModel, interp: &[Option<Interp>], t: &Term, asg: &[u32]) -> u32 {
    match t {
        Term::Var(v) => asg[*v as usize],
        Term::App(_) => match interp[t.head().unwrap().index()].as_ref().unwrap() {
            Interp::Product => {
                let a = eval_fast(m, interp, &t.args()[0], asg);
                let b = eval_fast(m, interp, &t.args()[1], asg);
                m.mul(a, b)
            }
            Interp::Inverse => m.inv(eval_fast(m, interp, &t.args()[0], asg)),
            Interp::Value(v) => *v,
            Interp::Pred(_) => unreachable!("predicate inside a term"),
        },
    }
}

/// Exhaustively checks every clause under every variable assignment.
pub fn check_model(m: &FiniteModel, cs: &ClauseSet) -> Result<(), ModelError> {
    m.validate()?;
    let vocab = &cs.vocab;
    for c in cs {
        c.validate(vocab).map_err(|e| ModelError::Vocabulary(e.to_string()))?;
    }
    let interp = resolve(m, vocab, cs)?;
    let n = m.size as u32;
    let mut args = Vec::new();
    for (ci, c) in cs.iter().enumerate() {
        let k = c.num_vars() as usize;
        let mut asg = vec![0u32; k];
        'assignments: loop {
            let holds = c.literals().iter().any(|l| {
                let truth = match &l.atom {
                    Atom::Eq(a, b) => eval_fast(m, &interp, a, &asg) == eval_fast(m, &interp, b, &asg),
                    Atom::Pred(p, ts) => {
                        args.clear();
                        args.extend(ts.iter().map(|t| eval_fast(m, &interp, t, &asg)));
                        match interp[p.index()].as_ref().unwrap() {
                            Interp::Pred(table) => table.get(m.size, &args),
                            _ => unreachable!("function symbol used as a predicate"),
                        }
                    }
                };
                truth == l.positive
            });
            if !holds {
                return Err(ModelError::Falsified {
                    clause: ci,
                    assignment: asg,
                });
            }
            for slot in asg.iter_mut().rev() {
                *slot += 1;
                if *slot < n {
                    continue 'assignments;
                }
                *slot = 0;
            }
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Clause, Literal, Provenance};

    #[test]
    fn text_round_trip() {
        let mut m = FiniteModel::cyclic(3);
        m.constants.insert("a".into(), 1);
        let mut p = PredicateTable::new(1, 3);
        p.set(3, &[2], true);
        m.predicates.insert("P".into(), p);
        let back = FiniteModel::from_text(&m.to_text()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn out_of_range_entries_are_rejected() {
        let text = "size 2\nop\n0 1\n1 2\ninv 0 1\nconst e=0\n";
        assert!(FiniteModel::from_text(text).is_err());
    }

    #[test]
    fn trivial_model_falsifies_disequation() {
        let mut vocab = Vocabulary::group();
        let b = Term::constant(vocab.add_generator("b").unwrap());
        let mut cs = ClauseSet::new(vocab);
        cs.push(Clause::unit(Literal::neq(b, Term::identity()), Provenance::new("stmt", 1))).unwrap();
        let mut m = FiniteModel::cyclic(1);
        m.constants.insert("b".into(), 0);
        assert_eq!(
            check_model(&m, &cs),
            Err(ModelError::Falsified {
                clause: 0,
                assignment: vec![]
            })
        );
        let mut m2 = FiniteModel::cyclic(2);
        m2.constants.insert("b".into(), 1);
        assert_eq!(check_model(&m2, &cs), Ok(()));
    }

    #[test]
    fn missing_constant_is_a_vocabulary_error() {
        let mut vocab = Vocabulary::group();
        let b = Term::constant(vocab.add_generator("b").unwrap());
        let mut cs = ClauseSet::new(vocab);
        cs.push(Clause::unit(Literal::neq(b, Term::identity()), Provenance::default())).unwrap();
        assert!(matches!(check_model(&FiniteModel::cyclic(2), &cs), Err(ModelError::Vocabulary(_))));
    }
}
