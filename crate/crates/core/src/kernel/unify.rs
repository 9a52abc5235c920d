use std::fmt;

use super::term::Term;

/// A substitution from variable indices to terms.
///
/// Substitutions produced by [`unify`] are idempotent, so a single pass of
/// [`Subst::apply`] yields the fully instantiated term.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Subst {
    bindings: Vec<Option<Term>>,
}

impl Subst {
    pub fn new() -> Self {
        Subst::default()
    }

    pub fn get(&self, v: u32) -> Option<&Term> {
        self.bindings.get(v as usize).and_then(Option::as_ref)
    }

    pub fn bind(&mut self, v: u32, t: Term) {
        let i = v as usize;
        if self.bindings.len() <= i {
            self.bindings.resize(i + 1, None);
        }
        self.bindings[i] = Some(t);
    }

    pub fn unbind(&mut self, v: u32) {
        if let Some(slot) = self.bindings.get_mut(v as usize) {
            *slot = None;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.iter().all(Option::is_none)
    }

    pub fn len(&self) -> usize {
        self.bindings.iter().filter(|b| b.is_some()).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Term)> + '_ {
        self.bindings
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.as_ref().map(|t| (i as u32, t)))
    }

    /// Single-pass instantiation.
    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.get(*v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(_) if t.is_ground() || self.bindings.is_empty() => t.clone(),
            Term::App(_) => Term::app(t.head().unwrap(), t.args().iter().map(|a| self.apply(a)).collect()),
        }
    }

    fn walk<'a>(&'a self, mut t: &'a Term) -> &'a Term {
        while let Term::Var(v) = t {
            match self.get(*v) {
                Some(b) => t = b,
                None => break,
            }
        }
        t
    }

    fn resolve(&self, t: &Term) -> Term {
        match self.walk(t) {
            t @ Term::Var(_) => t.clone(),
            t if t.is_ground() => t.clone(),
            t => Term::app(t.head().unwrap(), t.args().iter().map(|a| self.resolve(a)).collect()),
        }
    }

    fn occurs(&self, v: u32, t: &Term) -> bool {
        match self.walk(t) {
            Term::Var(w) => *w == v,
            t => !t.is_ground() && t.args().iter().any(|a| self.occurs(v, a)),
        }
    }

    fn make_idempotent(&mut self) {
        let resolved: Vec<Option<Term>> = self
            .bindings
            .iter()
            .map(|b| b.as_ref().map(|t| self.resolve(t)))
            .collect();
        self.bindings = resolved;
    }
}

impl fmt::Debug for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

/// Most general unifier of `s` and `t`, or `None` on clash or occurs-check failure.
pub fn unify(s: &Term, t: &Term) -> Option<Subst> {
    let mut sub = Subst::new();
    if unify_with(s, t, &mut sub) {
        Some(sub)
    } else {
        None
    }
}

/// Extends an idempotent substitution `sub` to unify `s` and `t`.
///
/// On failure `sub` is left in an unspecified state; callers that need to
/// retry should clone it first. On success `sub` is idempotent again.
pub fn unify_with(s: &Term, t: &Term, sub: &mut Subst) -> bool {
    let ok = unify_rec(s, t, sub);
    if ok {
        sub.make_idempotent();
    }
    ok
}

/// Unifies pairwise; used for predicate arguments.
pub fn unify_all(pairs: &[(&Term, &Term)], sub: &mut Subst) -> bool {
    for (s, t) in pairs {
        if !unify_rec(s, t, sub) {
            return false;
        }
    }
    sub.make_idempotent();
    true
}

fn unify_rec(s: &Term, t: &Term, sub: &mut Subst) -> bool {
    let s = sub.walk(s).clone();
    let t = sub.walk(t).clone();
    match (&s, &t) {
        (Term::Var(a), Term::Var(b)) if a == b => true,
        (Term::Var(a), _) => {
            if sub.occurs(*a, &t) {
                return false;
            }
            sub.bind(*a, t.clone());
            true
        }
        (_, Term::Var(b)) => {
            if sub.occurs(*b, &s) {
                return false;
            }
            sub.bind(*b, s.clone());
            true
        }
        _ => {
            if s.head() != t.head() {
                return false;
            }
            if s == t {
                return true;
            }
            s.args()
                .iter()
                .zip(t.args())
                .all(|(a, b)| unify_rec(a, b, sub))
        }
    }
}

/// One-way matching: extends `sub` so that `sub(pattern) == target`.
///
/// Variables of `target` are treated as constants, so pattern and target may
/// share variable indices. On failure `sub` may hold partial bindings.
pub fn match_term(pattern: &Term, target: &Term, sub: &mut Subst) -> bool {
    match pattern {
        Term::Var(v) => match sub.get(*v) {
            Some(b) => b == target,
            None => {
                sub.bind(*v, target.clone());
                true
            }
        },
        Term::App(_) => {
            if pattern.head() != target.head() {
                return false;
            }
            if pattern.is_ground() {
                return pattern == target;
            }
            if pattern.size() > target.size() {
                return false;
            }
            pattern
                .args()
                .iter()
                .zip(target.args())
                .all(|(p, t)| match_term(p, t, sub))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::symbol::Vocabulary;

    fn consts() -> (Term, Term) {
        let mut v = Vocabulary::group();
        (
            Term::constant(v.add_generator("a").unwrap()),
            Term::constant(v.add_generator("b").unwrap()),
        )
    }

    #[test]
    fn unify_binds_variable() {
        let (a, _) = consts();
        let s = unify(&Term::var(0), &a).unwrap();
        assert_eq!(s.get(0), Some(&a));
    }

    #[test]
    fn unify_products() {
        let (a, b) = consts();
        let l = Term::product(Term::var(0), Term::var(1));
        let r = Term::product(a.clone(), b.clone());
        let s = unify(&l, &r).unwrap();
        assert_eq!(s.get(0), Some(&a));
        assert_eq!(s.get(1), Some(&b));
        assert_eq!(s.apply(&l), r);
    }

    #[test]
    fn occurs_check_fails() {
        let (a, _) = consts();
        assert!(unify(&Term::var(0), &Term::product(Term::var(0), a)).is_none());
    }

    #[test]
    fn chained_bindings_are_resolved() {
        let (a, _) = consts();
        let l = Term::product(Term::var(0), Term::var(1));
        let r = Term::product(Term::var(1), a.clone());
        let s = unify(&l, &r).unwrap();
        assert_eq!(s.apply(&l), s.apply(&r));
        assert_eq!(s.apply(&Term::var(0)), a);
    }

    #[test]
    fn matching_is_one_way() {
        let (a, _) = consts();
        let mut s = Subst::new();
        assert!(match_term(&Term::var(0), &Term::product(Term::var(0), a.clone()), &mut s));
        let mut s = Subst::new();
        assert!(!match_term(&a, &Term::var(0), &mut s));
        let mut s = Subst::new();
        let p = Term::product(Term::var(0), Term::var(0));
        assert!(!match_term(&p, &Term::product(a.clone(), Term::var(3)), &mut s));
    }
}
