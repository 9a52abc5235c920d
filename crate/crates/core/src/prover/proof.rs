//! Proof objects, their text form, and an independent checker.
//!
//! Every step records the premises, literal positions and substitution it
//! used. The checker rebuilds each conclusion from that record alone:
//! premise `0` keeps its variables, premise `1` has them shifted past the
//! largest variable of premise `0`, the substitution is applied, and the
//! listed simplifications are replayed in order. No unification or search
//! happens during checking.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::display::{literal_to_string, term_to_string, Spacing, VarNames};
use crate::kernel::parse::{ClauseReader, ParseError, VarStyle};
use crate::kernel::{Atom, Clause, ClauseSet, Literal, Provenance, Subst, Term, Vocabulary};

pub type Bindings = Vec<(u32, Term)>;

/// The inference that produced a step, before simplification.
#[derive(Clone, Debug, PartialEq)]
pub enum Rule {
    Input {
        index: usize,
    },
    Resolution {
        left: usize,
        left_lit: usize,
        right: usize,
        right_lit: usize,
    },
    /// Replaces the subterm of `into` at `path` (first element: argument
    /// index in the atom) by the other side of the equation `from_lit`.
    Paramodulation {
        from: usize,
        from_lit: usize,
        flip: bool,
        into: usize,
        into_lit: usize,
        path: Vec<u32>,
    },
    Factoring {
        parent: usize,
        keep: usize,
        drop: usize,
    },
    EqualityResolution {
        parent: usize,
        lit: usize,
    },
    /// From `s = t | s2 = t2 | C` with `s` and `s2` unified, derives
    /// `t != t2 | s2 = t2 | C`; the first literal is replaced in place.
    EqualityFactoring {
        parent: usize,
        lit: usize,
        flip: bool,
        other: usize,
        other_flip: bool,
    },
    /// The parent clause, simplified further.
    Rewrite {
        parent: usize,
    },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Input { .. } => "input",
            Rule::Resolution { .. } => "binary-resolution",
            Rule::Paramodulation { .. } => "paramodulation",
            Rule::Factoring { .. } => "factoring",
            Rule::EqualityResolution { .. } => "equality-resolution",
            Rule::EqualityFactoring { .. } => "equality-factoring",
            Rule::Rewrite { .. } => "demodulation-rewrite",
        }
    }

    pub fn premises(&self) -> Vec<usize> {
        match self {
            Rule::Input { .. } => vec![],
            Rule::Resolution { left, right, .. } => vec![*left, *right],
            Rule::Paramodulation { from, into, .. } => vec![*from, *into],
            Rule::Factoring { parent, .. }
            | Rule::EqualityResolution { parent, .. }
            | Rule::EqualityFactoring { parent, .. }
            | Rule::Rewrite { parent } => vec![*parent],
        }
    }
}

/// A simplification replayed on the clause after its inference.
#[derive(Clone, Debug, PartialEq)]
pub enum Simplification {
    /// Rewrites the subterm at `path` of literal `lit` with the unit
    /// equation `unit` instantiated by `subst` (left to right unless `flip`).
    Demodulation {
        unit: usize,
        flip: bool,
        lit: usize,
        path: Vec<u32>,
        subst: Bindings,
    },
    /// Removes literal `lit`, whose complement is an instance of `unit`.
    UnitDeletion { unit: usize, lit: usize, subst: Bindings },
    /// Removes literal `lit`, a copy of literal `keep`.
    Merge { lit: usize, keep: usize },
    /// Removes a literal of the form `t != t`.
    Trivial { lit: usize },
}

impl Simplification {
    pub fn premise(&self) -> Option<usize> {
        match self {
            Simplification::Demodulation { unit, .. } | Simplification::UnitDeletion { unit, .. } => Some(*unit),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProofStep {
    pub id: usize,
    pub rule: Rule,
    pub subst: Bindings,
    pub simplifications: Vec<Simplification>,
    pub clause: Clause,
}

impl ProofStep {
    pub fn premises(&self) -> Vec<usize> {
        let mut p = self.rule.premises();
        p.extend(self.simplifications.iter().filter_map(Simplification::premise));
        p.sort_unstable();
        p.dedup();
        p
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("step {step}: {reason}")]
pub struct ProofRejection {
    pub step: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: {source}")]
    Clause { line: usize, source: ParseError },
}

fn subst_of(b: &Bindings) -> Subst {
    let mut s = Subst::new();
    for (v, t) in b {
        s.bind(*v, t.clone());
    }
    s
}

fn inst(s: &Subst, t: &Term) -> Term {
    s.apply(t)
}

/// Atom equality with equations taken as unordered pairs.
fn same_atom(a: &Atom, b: &Atom) -> bool {
    match (a, b) {
        (Atom::Eq(l1, r1), Atom::Eq(l2, r2)) => (l1 == l2 && r1 == r2) || (l1 == r2 && r1 == l2),
        _ => a == b,
    }
}

fn inst_lit(s: &Subst, l: &Literal) -> Literal {
    l.map_terms(&mut |t| inst(s, t))
}

fn shift(c: &Clause, by: u32) -> Vec<Literal> {
    c.literals().iter().map(|l| l.map_terms(&mut |t| t.shift_vars(by))).collect()
}

fn atom_term(a: &Atom, i: usize) -> Option<&Term> {
    match a {
        Atom::Eq(l, r) => [l, r].get(i).copied(),
        Atom::Pred(_, args) => args.get(i),
    }
}

fn sub_at<'a>(a: &'a Atom, path: &[u32]) -> Option<&'a Term> {
    let (&first, rest) = path.split_first()?;
    atom_term(a, first as usize)?.subterm(rest)
}

fn replace_in_atom(a: &Atom, path: &[u32], by: Term) -> Atom {
    let first = path[0] as usize;
    let rest = &path[1..];
    match a {
        Atom::Eq(l, r) => {
            if first == 0 {
                Atom::Eq(l.replace_at(rest, by), r.clone())
            } else {
                Atom::Eq(l.clone(), r.replace_at(rest, by))
            }
        }
        Atom::Pred(p, args) => {
            let mut args = args.clone();
            args[first] = args[first].replace_at(rest, by);
            Atom::Pred(*p, args)
        }
    }
}

fn eq_sides(l: &Literal, flip: bool) -> Option<(&Term, &Term)> {
    match &l.atom {
        Atom::Eq(a, b) if flip => Some((b, a)),
        Atom::Eq(a, b) => Some((a, b)),
        Atom::Pred(..) => None,
    }
}

/// Rebuilds the conclusion of one step from its premises.
fn replay(step: &ProofStep, lookup: &dyn Fn(usize) -> Option<Clause>, inputs: &ClauseSet) -> Result<Vec<Literal>, String> {
    let get = |id: usize| -> Result<Clause, String> {
        if id >= step.id {
            return Err(format!("premise {id} does not precede the step"));
        }
        lookup(id).ok_or_else(|| format!("premise {id} is not in the proof"))
    };
    let sigma = subst_of(&step.subst);
    let lit_of = |c: &[Literal], i: usize| -> Result<Literal, String> {
        c.get(i).cloned().ok_or_else(|| format!("literal {i} out of range"))
    };
    let mut lits: Vec<Literal> = match &step.rule {
        Rule::Input { index } => {
            let c = inputs.clauses().get(*index).ok_or("input index out of range")?;
            c.literals().to_vec()
        }
        Rule::Resolution {
            left,
            left_lit,
            right,
            right_lit,
        } => {
            let p0 = get(*left)?;
            let p1 = get(*right)?;
            let a = p0.literals().to_vec();
            let b = shift(&p1, p0.num_vars());
            let la = inst_lit(&sigma, &lit_of(&a, *left_lit)?);
            let lb = inst_lit(&sigma, &lit_of(&b, *right_lit)?);
            if la.positive == lb.positive || !same_atom(&la.atom, &lb.atom) {
                return Err("resolved literals are not complementary under the substitution".into());
            }
            let mut out: Vec<Literal> = a
                .iter()
                .enumerate()
                .filter(|(i, _)| i != left_lit)
                .map(|(_, l)| inst_lit(&sigma, l))
                .collect();
            out.extend(b.iter().enumerate().filter(|(i, _)| i != right_lit).map(|(_, l)| inst_lit(&sigma, l)));
            out
        }
        Rule::Paramodulation {
            from,
            from_lit,
            flip,
            into,
            into_lit,
            path,
        } => {
            let p0 = get(*from)?;
            let p1 = get(*into)?;
            let a = p0.literals().to_vec();
            let b = shift(&p1, p0.num_vars());
            let eq = lit_of(&a, *from_lit)?;
            if !eq.positive {
                return Err("paramodulation from a negative literal".into());
            }
            let (s, t) = eq_sides(&eq, *flip).ok_or("paramodulation from a non-equation")?;
            let (s, t) = (inst(&sigma, s), inst(&sigma, t));
            let target = inst_lit(&sigma, &lit_of(&b, *into_lit)?);
            if path.is_empty() {
                return Err("empty paramodulation path".into());
            }
            let u = sub_at(&target.atom, path).ok_or("paramodulation path out of range")?;
            if *u != s {
                return Err("paramodulated subterm does not match the equation side".into());
            }
            let replaced = Literal::new(target.positive, replace_in_atom(&target.atom, path, t));
            let mut out: Vec<Literal> = a
                .iter()
                .enumerate()
                .filter(|(i, _)| i != from_lit)
                .map(|(_, l)| inst_lit(&sigma, l))
                .collect();
            for (i, l) in b.iter().enumerate() {
                out.push(if i == *into_lit { replaced.clone() } else { inst_lit(&sigma, l) });
            }
            out
        }
        Rule::Factoring { parent, keep, drop } => {
            let c = get(*parent)?;
            let all: Vec<Literal> = c.literals().iter().map(|l| inst_lit(&sigma, l)).collect();
            let (k, d) = (lit_of(&all, *keep)?, lit_of(&all, *drop)?);
            if keep == drop || k.positive != d.positive || !same_atom(&k.atom, &d.atom) {
                return Err("factored literals differ under the substitution".into());
            }
            all.into_iter().enumerate().filter(|(i, _)| i != drop).map(|(_, l)| l).collect()
        }
        Rule::EqualityResolution { parent, lit } => {
            let c = get(*parent)?;
            let all: Vec<Literal> = c.literals().iter().map(|l| inst_lit(&sigma, l)).collect();
            let l = lit_of(&all, *lit)?;
            match (&l.atom, l.positive) {
                (Atom::Eq(a, b), false) if a == b => {}
                _ => return Err("equality resolution on a literal that is not t != t".into()),
            }
            all.into_iter().enumerate().filter(|(i, _)| i != lit).map(|(_, l)| l).collect()
        }
        Rule::EqualityFactoring {
            parent,
            lit,
            flip,
            other,
            other_flip,
        } => {
            let c = get(*parent)?;
            let all: Vec<Literal> = c.literals().iter().map(|l| inst_lit(&sigma, l)).collect();
            let (l1, l2) = (lit_of(&all, *lit)?, lit_of(&all, *other)?);
            if lit == other || !l1.positive || !l2.positive {
                return Err("equality factoring needs two positive equations".into());
            }
            let (s1, t1) = eq_sides(&l1, *flip).ok_or("equality factoring on a non-equation")?;
            let (s2, t2) = eq_sides(&l2, *other_flip).ok_or("equality factoring on a non-equation")?;
            if s1 != s2 {
                return Err("equality factoring sides differ under the substitution".into());
            }
            let new = Literal::neq(t1.clone(), t2.clone());
            all.iter()
                .enumerate()
                .map(|(i, l)| if i == *lit { new.clone() } else { l.clone() })
                .collect()
        }
        Rule::Rewrite { parent } => get(*parent)?.literals().to_vec(),
    };
    for (k, simp) in step.simplifications.iter().enumerate() {
        let here = |m: &str| format!("simplification {k}: {m}");
        match simp {
            Simplification::Demodulation {
                unit,
                flip,
                lit,
                path,
                subst,
            } => {
                let u = get(*unit)?;
                let [eq] = u.literals() else {
                    return Err(here("demodulator is not a unit"));
                };
                if !eq.positive {
                    return Err(here("demodulator is not a positive equation"));
                }
                let (l, r) = eq_sides(eq, *flip).ok_or_else(|| here("demodulator is not an equation"))?;
                let theta = subst_of(subst);
                let (l, r) = (inst(&theta, l), inst(&theta, r));
                let target = lits.get(*lit).ok_or_else(|| here("literal out of range"))?;
                if path.is_empty() || sub_at(&target.atom, path) != Some(&l) {
                    return Err(here("rewritten subterm does not match the demodulator"));
                }
                lits[*lit] = Literal::new(target.positive, replace_in_atom(&target.atom, path, r));
            }
            Simplification::UnitDeletion { unit, lit, subst } => {
                let u = get(*unit)?;
                let [ul] = u.literals() else {
                    return Err(here("deleting clause is not a unit"));
                };
                let ul = inst_lit(&subst_of(subst), ul);
                let target = lits.get(*lit).ok_or_else(|| here("literal out of range"))?;
                if ul.positive == target.positive || !same_atom(&ul.atom, &target.atom) {
                    return Err(here("unit is not the complement of the deleted literal"));
                }
                lits.remove(*lit);
            }
            Simplification::Merge { lit, keep } => {
                let (a, b) = (lits.get(*lit), lits.get(*keep));
                match (a, b) {
                    (Some(a), Some(b)) if lit != keep && a.positive == b.positive && a.atom == b.atom => {}
                    _ => return Err(here("merged literals differ")),
                }
                lits.remove(*lit);
            }
            Simplification::Trivial { lit } => {
                match lits.get(*lit) {
                    Some(Literal {
                        positive: false,
                        atom: Atom::Eq(a, b),
                    }) if a == b => {}
                    _ => return Err(here("removed literal is not t != t")),
                }
                lits.remove(*lit);
            }
        }
    }
    Ok(lits)
}

/// Checks every step; returns the first rejected step.
pub fn verify_proof(proof: &Proof, inputs: &ClauseSet) -> Result<(), ProofRejection> {
    let mut seen: std::collections::BTreeMap<usize, Clause> = std::collections::BTreeMap::new();
    let reject = |step: usize, reason: String| Err(ProofRejection { step, reason });
    let Some(last) = proof.steps.last() else {
        return reject(0, "empty proof".into());
    };
    for step in &proof.steps {
        if seen.contains_key(&step.id) {
            return reject(step.id, "duplicate step id".into());
        }
        let lookup = |id: usize| seen.get(&id).cloned();
        let lits = match replay(step, &lookup, inputs) {
            Ok(l) => l,
            Err(m) => return reject(step.id, m),
        };
        if let Rule::Input { .. } = step.rule {
            if !step.subst.is_empty() {
                return reject(step.id, "input steps carry no substitution".into());
            }
        }
        let rebuilt = Clause::new(lits, Provenance::new("check", step.id as u32));
        if !rebuilt.is_variant(&step.clause) {
            return reject(step.id, "recorded clause differs from the rebuilt conclusion".into());
        }
        seen.insert(step.id, step.clause.clone());
    }
    if !last.clause.is_empty() {
        return reject(last.id, "the last step is not the empty clause".into());
    }
    Ok(())
}

fn clause_text(c: &Clause, vocab: &Vocabulary) -> String {
    if c.is_empty() {
        return "$F".into();
    }
    c.literals()
        .iter()
        .map(|l| literal_to_string(l, vocab, VarNames::Indexed, false))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn term_text(t: &Term, vocab: &Vocabulary) -> String {
    term_to_string(t, vocab, VarNames::Indexed, Spacing::Compact)
}

fn bindings_text(b: &Bindings, vocab: &Vocabulary) -> String {
    let parts: Vec<String> = b.iter().map(|(v, t)| format!("v{v}:={}", term_text(t, vocab))).collect();
    format!("{{{}}}", parts.join(";"))
}

fn path_text(p: &[u32]) -> String {
    p.iter().map(u32::to_string).collect::<Vec<_>>().join(".")
}

impl Proof {
    /// One line per step: `id. rule premises clause ## details`.
    pub fn to_text(&self, vocab: &Vocabulary) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let premises = s.rule.premises();
            let premises = if premises.is_empty() {
                "-".to_string()
            } else {
                premises.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            };
            let _ = write!(out, "{}. {} {} {} ##", s.id, s.rule.name(), premises, clause_text(&s.clause, vocab));
            let b = |x: bool| if x { 1 } else { 0 };
            match &s.rule {
                Rule::Input { index } => {
                    let _ = write!(out, " index={index}");
                }
                Rule::Resolution { left_lit, right_lit, .. } => {
                    let _ = write!(out, " lits={left_lit},{right_lit}");
                }
                Rule::Paramodulation {
                    from_lit,
                    flip,
                    into_lit,
                    path,
                    ..
                } => {
                    let _ = write!(out, " from_lit={from_lit} flip={} into_lit={into_lit} path={}", b(*flip), path_text(path));
                }
                Rule::Factoring { keep, drop, .. } => {
                    let _ = write!(out, " keep={keep} drop={drop}");
                }
                Rule::EqualityResolution { lit, .. } => {
                    let _ = write!(out, " lit={lit}");
                }
                Rule::EqualityFactoring {
                    lit,
                    flip,
                    other,
                    other_flip,
                    ..
                } => {
                    let _ = write!(out, " lit={lit} flip={} other={other} other_flip={}", b(*flip), b(*other_flip));
                }
                Rule::Rewrite { .. } => {}
            }
            if !s.subst.is_empty() {
                let _ = write!(out, " subst={}", bindings_text(&s.subst, vocab));
            }
            for simp in &s.simplifications {
                let _ = match simp {
                    Simplification::Demodulation {
                        unit,
                        flip,
                        lit,
                        path,
                        subst,
                    } => write!(
                        out,
                        " demod={unit},{},{lit},{},{}",
                        b(*flip),
                        path_text(path),
                        bindings_text(subst, vocab)
                    ),
                    Simplification::UnitDeletion { unit, lit, subst } => {
                        write!(out, " unitdel={unit},{lit},{}", bindings_text(subst, vocab))
                    }
                    Simplification::Merge { lit, keep } => write!(out, " merge={lit},{keep}"),
                    Simplification::Trivial { lit } => write!(out, " trivial={lit}"),
                };
            }
            out.push('\n');
        }
        out
    }

    /// Reads the text form back; symbols are resolved against `vocab`.
    pub fn parse(text: &str, vocab: &Vocabulary) -> Result<Proof, ProofParseError> {
        let mut steps = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| ProofParseError::Line {
                line: line_no,
                message: m.to_string(),
            };
            let (head, details) = line.split_once(" ##").ok_or_else(|| err("missing `##`"))?;
            let (id, rest) = head.split_once(". ").ok_or_else(|| err("missing step id"))?;
            let id: usize = id.trim().parse().map_err(|_| err("bad step id"))?;
            let mut parts = rest.splitn(3, ' ');
            let rule = parts.next().ok_or_else(|| err("missing rule"))?;
            let premises_text = parts.next().ok_or_else(|| err("missing premises"))?;
            let clause_src = parts.next().ok_or_else(|| err("missing clause"))?;
            let premises: Vec<usize> = if premises_text == "-" {
                Vec::new()
            } else {
                premises_text
                    .split(',')
                    .map(|p| p.parse().map_err(|_| err("bad premise id")))
                    .collect::<Result<_, _>>()?
            };
            let mut v = vocab.clone();
            let mut reader = ClauseReader {
                vocab: &mut v,
                style: VarStyle::Indexed,
                extend: false,
            };
            let clause = reader
                .clause(clause_src, Provenance::new("proof", id as u32))
                .map_err(|source| ProofParseError::Clause { line: line_no, source })?;
            let mut fields: Vec<(String, String)> = Vec::new();
            for tok in details.split_whitespace() {
                let (k, v) = tok.split_once('=').ok_or_else(|| err("detail without `=`"))?;
                fields.push((k.to_string(), v.to_string()));
            }
            let field = |k: &str| -> Result<&str, ProofParseError> {
                fields
                    .iter()
                    .find(|(key, _)| key == k)
                    .map(|(_, v)| v.as_str())
                    .ok_or_else(|| err(&format!("missing detail `{k}`")))
            };
            let num = |k: &str| -> Result<usize, ProofParseError> { field(k)?.parse().map_err(|_| err("bad number")) };
            let flag = |k: &str| -> Result<bool, ProofParseError> { Ok(num(k)? == 1) };
            let premise = |i: usize| premises.get(i).copied().ok_or_else(|| err("too few premises"));
            let term_reader = |s: &str| -> Result<Term, ProofParseError> {
                let mut v = vocab.clone();
                ClauseReader {
                    vocab: &mut v,
                    style: VarStyle::Indexed,
                    extend: false,
                }
                .term(s)
                .map_err(|source| ProofParseError::Clause { line: line_no, source })
            };
            let bindings = |s: &str| -> Result<Bindings, ProofParseError> {
                let inner = s
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| err("bad substitution"))?;
                let mut out = Vec::new();
                for part in inner.split(';').filter(|p| !p.is_empty()) {
                    let (var, t) = part.split_once(":=").ok_or_else(|| err("bad binding"))?;
                    let var: u32 = var
                        .strip_prefix('v')
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| err("bad bound variable"))?;
                    out.push((var, term_reader(t)?));
                }
                Ok(out)
            };
            let parse_path = |s: &str| -> Result<Vec<u32>, ProofParseError> {
                s.split('.').map(|x| x.parse().map_err(|_| err("bad path"))).collect()
            };
            let rule = match rule {
                "input" => Rule::Input { index: num("index")? },
                "binary-resolution" => {
                    let (a, b) = field("lits")?.split_once(',').ok_or_else(|| err("bad lits"))?;
                    Rule::Resolution {
                        left: premise(0)?,
                        left_lit: a.parse().map_err(|_| err("bad lits"))?,
                        right: premise(1).or_else(|_| premise(0))?,
                        right_lit: b.parse().map_err(|_| err("bad lits"))?,
                    }
                }
                "paramodulation" => Rule::Paramodulation {
                    from: premise(0)?,
                    from_lit: num("from_lit")?,
                    flip: flag("flip")?,
                    into: premise(1).or_else(|_| premise(0))?,
                    into_lit: num("into_lit")?,
                    path: parse_path(field("path")?)?,
                },
                "factoring" => Rule::Factoring {
                    parent: premise(0)?,
                    keep: num("keep")?,
                    drop: num("drop")?,
                },
                "equality-resolution" => Rule::EqualityResolution {
                    parent: premise(0)?,
                    lit: num("lit")?,
                },
                "equality-factoring" => Rule::EqualityFactoring {
                    parent: premise(0)?,
                    lit: num("lit")?,
                    flip: flag("flip")?,
                    other: num("other")?,
                    other_flip: flag("other_flip")?,
                },
                "demodulation-rewrite" => Rule::Rewrite { parent: premise(0)? },
                other => return Err(err(&format!("unknown rule `{other}`"))),
            };
            let subst = match fields.iter().find(|(k, _)| k == "subst") {
                Some((_, v)) => bindings(v)?,
                None => Vec::new(),
            };
            let mut simplifications = Vec::new();
            for (k, v) in &fields {
                let parts: Vec<&str> = v.splitn(5, ',').collect();
                let n = |i: usize| -> Result<usize, ProofParseError> {
                    parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(|| err("bad simplification"))
                };
                match k.as_str() {
                    "demod" => simplifications.push(Simplification::Demodulation {
                        unit: n(0)?,
                        flip: n(1)? == 1,
                        lit: n(2)?,
                        path: parse_path(parts.get(3).ok_or_else(|| err("bad demod"))?)?,
                        subst: bindings(parts.get(4).ok_or_else(|| err("bad demod"))?)?,
                    }),
                    "unitdel" => {
                        let parts: Vec<&str> = v.splitn(3, ',').collect();
                        simplifications.push(Simplification::UnitDeletion {
                            unit: parts[0].parse().map_err(|_| err("bad unitdel"))?,
                            lit: parts.get(1).and_then(|p| p.parse().ok()).ok_or_else(|| err("bad unitdel"))?,
                            subst: bindings(parts.get(2).ok_or_else(|| err("bad unitdel"))?)?,
                        })
                    }
                    "merge" => simplifications.push(Simplification::Merge { lit: n(0)?, keep: n(1)? }),
                    "trivial" => simplifications.push(Simplification::Trivial { lit: n(0)? }),
                    _ => {}
                }
            }
            steps.push(ProofStep {
                id,
                rule,
                subst,
                simplifications,
                clause,
            });
        }
        Ok(Proof { steps })
    }
}
