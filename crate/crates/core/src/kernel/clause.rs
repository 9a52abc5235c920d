use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use super::symbol::{SymbolId, VocabError, Vocabulary};
use super::term::Term;
use super::unify::{match_term, Subst};

#[derive(Clone, Debug)]
pub enum Atom {
    Eq(Term, Term),
    Pred(SymbolId, Vec<Term>),
}

impl Atom {
    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Eq(l, r) => vec![l, r],
            Atom::Pred(_, args) => args.iter().collect(),
        }
    }

    pub fn terms_mut(&mut self) -> Vec<&mut Term> {
        match self {
            Atom::Eq(l, r) => vec![l, r],
            Atom::Pred(_, args) => args.iter_mut().collect(),
        }
    }

    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Atom {
        match self {
            Atom::Eq(l, r) => Atom::Eq(f(l), f(r)),
            Atom::Pred(p, args) => Atom::Pred(*p, args.iter().map(|t| f(t)).collect()),
        }
    }

    pub fn is_eq(&self) -> bool {
        matches!(self, Atom::Eq(..))
    }

    pub fn predicate(&self) -> Option<SymbolId> {
        match self {
            Atom::Eq(..) => None,
            Atom::Pred(p, _) => Some(*p),
        }
    }

    pub fn size(&self) -> u32 {
        match self {
            Atom::Eq(l, r) => 1 + l.size() + r.size(),
            Atom::Pred(_, args) => 1 + args.iter().map(Term::size).sum::<u32>(),
        }
    }

    /// Exact structural identity, sides of equations in order.
    pub fn identical(&self, other: &Atom) -> bool {
        match (self, other) {
            (Atom::Eq(a, b), Atom::Eq(c, d)) => a == c && b == d,
            (Atom::Pred(p, xs), Atom::Pred(q, ys)) => p == q && xs == ys,
            _ => false,
        }
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Atom::Eq(a, b), Atom::Eq(c, d)) => (a == c && b == d) || (a == d && b == c),
            (Atom::Pred(p, xs), Atom::Pred(q, ys)) => p == q && xs == ys,
            _ => false,
        }
    }
}

impl Eq for Atom {}

impl Hash for Atom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Atom::Eq(a, b) => {
                0u8.hash(state);
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                lo.hash(state);
                hi.hash(state);
            }
            Atom::Pred(p, args) => {
                1u8.hash(state);
                p.hash(state);
                args.hash(state);
            }
        }
    }
}

/// A signed atom. Equality of literals treats equations as unordered pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn new(positive: bool, atom: Atom) -> Self {
        Literal { positive, atom }
    }

    pub fn eq(l: Term, r: Term) -> Self {
        Literal::new(true, Atom::Eq(l, r))
    }

    pub fn neq(l: Term, r: Term) -> Self {
        Literal::new(false, Atom::Eq(l, r))
    }

    pub fn pred(p: SymbolId, args: Vec<Term>) -> Self {
        Literal::new(true, Atom::Pred(p, args))
    }

    pub fn not_pred(p: SymbolId, args: Vec<Term>) -> Self {
        Literal::new(false, Atom::Pred(p, args))
    }

    pub fn negated(&self) -> Self {
        Literal::new(!self.positive, self.atom.clone())
    }

    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Literal {
        Literal::new(self.positive, self.atom.map_terms(f))
    }

    pub fn identical(&self, other: &Literal) -> bool {
        self.positive == other.positive && self.atom.identical(&other.atom)
    }

    pub fn size(&self) -> u32 {
        self.atom.size()
    }

    pub fn is_ground(&self) -> bool {
        self.atom.terms().iter().all(|t| t.is_ground())
    }

    pub fn collect_vars(&self, out: &mut Vec<u32>) {
        for t in self.atom.terms() {
            t.collect_vars(out);
        }
    }

    pub fn validate(&self, vocab: &Vocabulary) -> Result<(), VocabError> {
        if let Atom::Pred(p, args) = &self.atom {
            vocab.check_arity(*p, args.len())?;
            if !vocab.kind(*p).is_predicate() {
                return Err(VocabError::KindClash(vocab.name(*p).to_string()));
            }
        }
        self.atom.terms().iter().try_for_each(|t| t.validate(vocab))
    }
}

/// Where a clause came from: an axiom group label with a 1-based index, or
/// an inference name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Provenance {
    pub label: String,
    pub index: u32,
}

impl Provenance {
    pub fn new(label: impl Into<String>, index: u32) -> Self {
        Provenance {
            label: label.into(),
            index,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.label, self.index)
    }
}

/// A disjunction of literals with variables renumbered 0..k by first occurrence.
#[derive(Clone, Debug)]
pub struct Clause {
    literals: Vec<Literal>,
    pub provenance: Provenance,
}

impl PartialEq for Clause {
    fn eq(&self, other: &Self) -> bool {
        self.literals.len() == other.literals.len()
            && self
                .literals
                .iter()
                .zip(&other.literals)
                .all(|(a, b)| a.identical(b))
    }
}

impl Eq for Clause {}

impl Clause {
    pub fn new(literals: Vec<Literal>, provenance: Provenance) -> Self {
        let mut c = Clause {
            literals,
            provenance,
        };
        c.renumber();
        c
    }

    pub fn empty(provenance: Provenance) -> Self {
        Clause {
            literals: Vec::new(),
            provenance,
        }
    }

    pub fn unit(lit: Literal, provenance: Provenance) -> Self {
        Clause::new(vec![lit], provenance)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn into_literals(self) -> Vec<Literal> {
        self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.literals.len() == 1
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(Literal::is_ground)
    }

    pub fn size(&self) -> u32 {
        self.literals.iter().map(Literal::size).sum()
    }

    pub fn num_vars(&self) -> u32 {
        let mut vs = Vec::new();
        for l in &self.literals {
            l.collect_vars(&mut vs);
        }
        vs.into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn var_occurrences(&self) -> Vec<u32> {
        let mut vs = Vec::new();
        for l in &self.literals {
            l.collect_vars(&mut vs);
        }
        vs
    }

    /// Renumbers variables 0..k in order of first occurrence.
    fn renumber(&mut self) {
        let occ = self.var_occurrences();
        let mut map: Vec<(u32, u32)> = Vec::new();
        let mut identity = true;
        for v in occ {
            if !map.iter().any(|&(old, _)| old == v) {
                let new = map.len() as u32;
                identity &= new == v;
                map.push((v, new));
            }
        }
        if identity {
            return;
        }
        let mut f = |v: u32| {
            let new = map.iter().find(|&&(old, _)| old == v).unwrap().1;
            Term::Var(new)
        };
        self.literals = self.literals.iter().map(|l| l.map_terms(&mut |t| t.map_vars(&mut f))).collect();
    }

    /// Canonical form: equations oriented and literals sorted by a
    /// variable-blind key, then variables renumbered. Idempotent.
    pub fn normalize(&self) -> Clause {
        let mut lits: Vec<Literal> = self
            .literals
            .iter()
            .map(|l| match &l.atom {
                Atom::Eq(a, b) if erase(b) < erase(a) => Literal::new(l.positive, Atom::Eq(b.clone(), a.clone())),
                _ => l.clone(),
            })
            .collect();
        lits.sort_by_cached_key(literal_key);
        Clause::new(lits, self.provenance.clone())
    }

    pub fn validate(&self, vocab: &Vocabulary) -> Result<(), VocabError> {
        self.literals.iter().try_for_each(|l| l.validate(vocab))
    }

    pub fn remap_symbols(&self, map: &[SymbolId]) -> Clause {
        let lits = self
            .literals
            .iter()
            .map(|l| {
                let atom = match &l.atom {
                    Atom::Eq(a, b) => Atom::Eq(a.remap_symbols(map), b.remap_symbols(map)),
                    Atom::Pred(p, args) => Atom::Pred(map[p.index()], args.iter().map(|t| t.remap_symbols(map)).collect()),
                };
                Literal::new(l.positive, atom)
            })
            .collect();
        Clause::new(lits, self.provenance.clone())
    }

    /// Same clause up to variable renaming, literal order and equation symmetry.
    pub fn is_variant(&self, other: &Clause) -> bool {
        self.len() == other.len() && subsumes_impl(&self.literals, &other.literals, true)
    }

    /// Whether some instance of `self` is a sub-multiset-free subset of `other`
    /// (standard clause subsumption, restricted to `|self| <= |other|`).
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.len() <= other.len() && subsumes_impl(&self.literals, &other.literals, false)
    }
}

fn erase(t: &Term) -> Term {
    t.map_vars(&mut |_| Term::Var(0))
}

fn literal_key(l: &Literal) -> (bool, u8, Option<SymbolId>, Vec<Term>) {
    let kind = if l.atom.is_eq() { 0 } else { 1 };
    (
        l.positive,
        kind,
        l.atom.predicate(),
        l.atom.terms().into_iter().map(erase).collect(),
    )
}

/// Backtracking literal matcher. In `renaming` mode the substitution must be
/// an injective variable renaming and literals are matched one-to-one.
fn subsumes_impl(a: &[Literal], b: &[Literal], renaming: bool) -> bool {
    let mut used = vec![false; b.len()];
    search(a, b, 0, &mut Subst::new(), &mut used, renaming)
}

fn search(a: &[Literal], b: &[Literal], i: usize, sub: &mut Subst, used: &mut [bool], renaming: bool) -> bool {
    if i == a.len() {
        return true;
    }
    let la = &a[i];
    for (j, lb) in b.iter().enumerate() {
        if la.positive != lb.positive || (renaming && used[j]) {
            continue;
        }
        for candidate in match_literal(la, lb, sub) {
            if renaming && !is_injective_renaming(&candidate) {
                continue;
            }
            let mut next = candidate;
            used[j] = true;
            let ok = search(a, b, i + 1, &mut next, used, renaming);
            used[j] = false;
            if ok {
                *sub = next;
                return true;
            }
        }
    }
    false
}

/// All extensions of `sub` matching `la` onto `lb` (two for equations).
pub(crate) fn match_literal(la: &Literal, lb: &Literal, sub: &Subst) -> Vec<Subst> {
    let mut out = Vec::new();
    match (&la.atom, &lb.atom) {
        (Atom::Eq(l1, r1), Atom::Eq(l2, r2)) => {
            let mut s = sub.clone();
            if match_term(l1, l2, &mut s) && match_term(r1, r2, &mut s) {
                out.push(s);
            }
            let mut s = sub.clone();
            if match_term(l1, r2, &mut s) && match_term(r1, l2, &mut s) && !out.contains(&s) {
                out.push(s);
            }
        }
        (Atom::Pred(p, xs), Atom::Pred(q, ys)) if p == q => {
            let mut s = sub.clone();
            if xs.iter().zip(ys).all(|(x, y)| match_term(x, y, &mut s)) {
                out.push(s);
            }
        }
        _ => {}
    }
    out
}

fn is_injective_renaming(s: &Subst) -> bool {
    let mut targets = Vec::new();
    for (_, t) in s.iter() {
        match t.as_var() {
            Some(v) if !targets.contains(&v) => targets.push(v),
            _ => return false,
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClauseSetError {
    #[error(transparent)]
    Vocab(#[from] VocabError),
}

/// An ordered, duplicate-free list of clauses over one vocabulary.
#[derive(Clone, Debug, Default)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
    pub vocab: Vocabulary,
}

impl ClauseSet {
    pub fn new(vocab: Vocabulary) -> Self {
        ClauseSet {
            clauses: Vec::new(),
            vocab,
        }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.clauses.iter()
    }

    /// Inserts `c` unless a variant is already present. Returns whether it was added.
    pub fn push(&mut self, c: Clause) -> Result<bool, ClauseSetError> {
        c.validate(&self.vocab)?;
        if self.clauses.iter().any(|d| d.is_variant(&c)) {
            return Ok(false);
        }
        self.clauses.push(c);
        Ok(true)
    }

    /// Appends the clauses of `other`, translating its symbols by name.
    pub fn extend(&mut self, other: &ClauseSet) -> Result<(), ClauseSetError> {
        let map = self.vocab.absorb(&other.vocab)?;
        for c in &other.clauses {
            self.push(c.remap_symbols(&map))?;
        }
        Ok(())
    }

    /// Clauses carrying the given provenance label.
    pub fn with_label<'a>(&'a self, label: &'a str) -> impl Iterator<Item = &'a Clause> + 'a {
        self.clauses.iter().filter(move |c| c.provenance.label == label)
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::slice::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Vocabulary, SymbolId, Term) {
        let mut v = Vocabulary::group();
        let l = v.add_predicate("L", 2).unwrap();
        let a = Term::constant(v.add_generator("a").unwrap());
        (v, l, a)
    }

    #[test]
    fn variables_are_renumbered_by_first_occurrence() {
        let (_, l, _) = setup();
        let c = Clause::new(
            vec![Literal::not_pred(l, vec![Term::var(5), Term::var(2)]), Literal::pred(l, vec![Term::var(2), Term::var(5)])],
            Provenance::default(),
        );
        assert_eq!(c.literals()[0].atom, Atom::Pred(l, vec![Term::var(0), Term::var(1)]));
        assert_eq!(c.num_vars(), 2);
    }

    #[test]
    fn equations_compare_unordered() {
        let (_, _, a) = setup();
        assert_eq!(Literal::eq(a.clone(), Term::identity()), Literal::eq(Term::identity(), a.clone()));
        assert!(!Literal::eq(a.clone(), Term::identity()).identical(&Literal::eq(Term::identity(), a)));
    }

    #[test]
    fn variants_ignore_order_and_symmetry() {
        let (_, l, a) = setup();
        let c1 = Clause::new(
            vec![Literal::eq(Term::var(0), a.clone()), Literal::pred(l, vec![Term::var(1), Term::var(0)])],
            Provenance::default(),
        );
        let c2 = Clause::new(
            vec![Literal::pred(l, vec![Term::var(0), Term::var(1)]), Literal::eq(a.clone(), Term::var(1))],
            Provenance::default(),
        );
        assert!(c1.is_variant(&c2));
        let c3 = Clause::new(
            vec![Literal::pred(l, vec![Term::var(0), Term::var(0)]), Literal::eq(a, Term::var(0))],
            Provenance::default(),
        );
        assert!(!c1.is_variant(&c3));
        assert!(c1.subsumes(&c3));
    }

    #[test]
    fn clause_set_drops_duplicates() {
        let (v, l, _) = setup();
        let mut cs = ClauseSet::new(v);
        let c = Clause::unit(Literal::not_pred(l, vec![Term::var(0), Term::var(0)]), Provenance::new("axl", 1));
        assert!(cs.push(c.clone()).unwrap());
        assert!(!cs.push(c).unwrap());
        assert_eq!(cs.len(), 1);
    }

    #[test]
    fn normalize_is_idempotent_on_example() {
        let (_, l, a) = setup();
        let c = Clause::new(
            vec![
                Literal::pred(l, vec![Term::var(3), Term::var(1)]),
                Literal::eq(a.clone(), Term::var(1)),
                Literal::neq(Term::var(3), Term::product(a, Term::var(3))),
            ],
            Provenance::default(),
        );
        let n = c.normalize();
        assert_eq!(n.normalize(), n);
        assert!(n.is_variant(&c));
    }
}
