use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::symbol::{SymbolId, VocabError, Vocabulary};

/// A first-order term. Variables are plain indices; clauses renumber them
/// canonically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(u32),
    App(Arc<App>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct App {
    sym: SymbolId,
    args: Box<[Term]>,
    size: u32,
    ground: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("power exponent must be at least 1")]
    ZeroPower,
    #[error(transparent)]
    Vocab(#[from] VocabError),
}

impl Term {
    pub fn var(v: u32) -> Term {
        Term::Var(v)
    }

    /// Builds an application without consulting a vocabulary.
    pub fn app(sym: SymbolId, args: Vec<Term>) -> Term {
        let size = 1 + args.iter().map(Term::size).sum::<u32>();
        let ground = args.iter().all(Term::is_ground);
        Term::App(Arc::new(App {
            sym,
            args: args.into_boxed_slice(),
            size,
            ground,
        }))
    }

    /// Builds an application after checking the symbol's arity.
    pub fn checked_app(vocab: &Vocabulary, sym: SymbolId, args: Vec<Term>) -> Result<Term, VocabError> {
        vocab.check_arity(sym, args.len())?;
        if vocab.kind(sym).is_predicate() {
            return Err(VocabError::KindClash(vocab.name(sym).to_string()));
        }
        Ok(Term::app(sym, args))
    }

    pub fn constant(sym: SymbolId) -> Term {
        Term::app(sym, Vec::new())
    }

    pub fn identity() -> Term {
        Term::constant(Vocabulary::IDENTITY)
    }

    pub fn product(a: Term, b: Term) -> Term {
        Term::app(Vocabulary::PRODUCT, vec![a, b])
    }

    pub fn inverse(a: Term) -> Term {
        Term::app(Vocabulary::INVERSE, vec![a])
    }

    /// Left-nested power: `t^1 = t`, `t^m = t^(m-1) * t`.
    pub fn power(&self, m: u32) -> Result<Term, TermError> {
        if m == 0 {
            return Err(TermError::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = Term::product(acc, self.clone());
        }
        Ok(acc)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<u32> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(_) => None,
        }
    }

    pub fn head(&self) -> Option<SymbolId> {
        match self {
            Term::Var(_) => None,
            Term::App(a) => Some(a.sym),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(a) => &a.args,
        }
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> u32 {
        match self {
            Term::Var(_) => 1,
            Term::App(a) => a.size,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(a) => a.ground,
        }
    }

    /// KBO weight under the vocabulary's symbol weights.
    pub fn weight(&self, vocab: &Vocabulary) -> u32 {
        if vocab.uniform_weights() {
            return self.size();
        }
        match self {
            Term::Var(_) => vocab.var_weight(),
            Term::App(a) => vocab.weight(a.sym) + a.args.iter().map(|t| t.weight(vocab)).sum::<u32>(),
        }
    }

    pub fn contains_var(&self, v: u32) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(a) => !a.ground && a.args.iter().any(|t| t.contains_var(v)),
        }
    }

    /// Appends variable occurrences in left-to-right order (with repeats).
    pub fn collect_vars(&self, out: &mut Vec<u32>) {
        match self {
            Term::Var(v) => out.push(*v),
            Term::App(a) => {
                if !a.ground {
                    for t in a.args.iter() {
                        t.collect_vars(out);
                    }
                }
            }
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(a) if a.ground => None,
            Term::App(a) => a.args.iter().filter_map(Term::max_var).max(),
        }
    }

    pub fn contains_symbol(&self, sym: SymbolId) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(a) => a.sym == sym || a.args.iter().any(|t| t.contains_symbol(sym)),
        }
    }

    pub fn subterm(&self, path: &[u32]) -> Option<&Term> {
        let mut cur = self;
        for &i in path {
            cur = cur.args().get(i as usize)?;
        }
        Some(cur)
    }

    /// Copy of `self` with the subterm at `path` replaced by `by`.
    pub fn replace_at(&self, path: &[u32], by: Term) -> Term {
        match path.split_first() {
            None => by,
            Some((&i, rest)) => match self {
                Term::Var(_) => panic!("replace_at: path runs through a variable"),
                Term::App(a) => {
                    let mut args = a.args.to_vec();
                    args[i as usize] = args[i as usize].replace_at(rest, by);
                    Term::app(a.sym, args)
                }
            },
        }
    }

    pub fn map_vars(&self, f: &mut impl FnMut(u32) -> Term) -> Term {
        match self {
            Term::Var(v) => f(*v),
            Term::App(a) if a.ground => self.clone(),
            Term::App(a) => Term::app(a.sym, a.args.iter().map(|t| t.map_vars(f)).collect()),
        }
    }

    pub fn shift_vars(&self, offset: u32) -> Term {
        if offset == 0 {
            return self.clone();
        }
        self.map_vars(&mut |v| Term::Var(v + offset))
    }

    /// Visits every non-variable subterm with its path, outermost first.
    pub fn for_each_app(&self, f: &mut impl FnMut(&[u32], &Term)) {
        let mut path = Vec::new();
        self.walk_apps(&mut path, f);
    }

    fn walk_apps(&self, path: &mut Vec<u32>, f: &mut impl FnMut(&[u32], &Term)) {
        if let Term::App(a) = self {
            f(path, self);
            for (i, t) in a.args.iter().enumerate() {
                path.push(i as u32);
                t.walk_apps(path, f);
                path.pop();
            }
        }
    }

    /// Checks arities against `vocab` and that no predicate appears inside a term.
    pub fn validate(&self, vocab: &Vocabulary) -> Result<(), VocabError> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(a) => {
                vocab.check_arity(a.sym, a.args.len())?;
                if vocab.kind(a.sym).is_predicate() {
                    return Err(VocabError::KindClash(vocab.name(a.sym).to_string()));
                }
                a.args.iter().try_for_each(|t| t.validate(vocab))
            }
        }
    }

    pub fn remap_symbols(&self, map: &[SymbolId]) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::App(a) => Term::app(
                map[a.sym.index()],
                a.args.iter().map(|t| t.remap_symbols(map)).collect(),
            ),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "v{v}"),
            Term::App(a) if a.args.is_empty() => write!(f, "#{}", a.sym.0),
            Term::App(a) => {
                write!(f, "#{}(", a.sym.0)?;
                for (i, t) in a.args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t:?}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Left-nested power of a ground term.
pub fn encode_power(t: &Term, m: u32) -> Result<Term, TermError> {
    t.power(m)
}
