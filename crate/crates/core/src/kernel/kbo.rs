use std::cmp::Ordering;

use super::symbol::{VocabError, Vocabulary};
use super::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KboOrdering {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl KboOrdering {
    pub fn reverse(self) -> Self {
        match self {
            KboOrdering::Greater => KboOrdering::Less,
            KboOrdering::Less => KboOrdering::Greater,
            other => other,
        }
    }
}

/// Knuth-Bendix comparison after checking both terms against `vocab`.
pub fn kbo_compare(s: &Term, t: &Term, vocab: &Vocabulary) -> Result<KboOrdering, VocabError> {
    s.validate(vocab)?;
    t.validate(vocab)?;
    Ok(kbo(s, t, vocab))
}

/// Knuth-Bendix comparison for terms already known to be well formed.
///
/// All symbol weights are positive, so the special case for weight-zero
/// unary symbols never arises.
pub fn kbo(s: &Term, t: &Term, vocab: &Vocabulary) -> KboOrdering {
    if s == t {
        return KboOrdering::Equal;
    }
    match (s, t) {
        (Term::Var(_), Term::Var(_)) => KboOrdering::Incomparable,
        (Term::Var(x), _) => {
            if t.contains_var(*x) {
                KboOrdering::Less
            } else {
                KboOrdering::Incomparable
            }
        }
        (_, Term::Var(y)) => {
            if s.contains_var(*y) {
                KboOrdering::Greater
            } else {
                KboOrdering::Incomparable
            }
        }
        _ => {
            let (s_dom, t_dom) = var_domination(s, t);
            if !s_dom && !t_dom {
                return KboOrdering::Incomparable;
            }
            match compare_apps(s, t, vocab) {
                Ordering::Greater if s_dom => KboOrdering::Greater,
                Ordering::Less if t_dom => KboOrdering::Less,
                _ => KboOrdering::Incomparable,
            }
        }
    }
}

/// Weight, then precedence, then lexicographic comparison of arguments.
/// Variable conditions are checked by the caller.
fn compare_apps(s: &Term, t: &Term, vocab: &Vocabulary) -> Ordering {
    let ws = s.weight(vocab);
    let wt = t.weight(vocab);
    if ws != wt {
        return ws.cmp(&wt);
    }
    let (f, g) = (s.head().unwrap(), t.head().unwrap());
    if f != g {
        return vocab.precedence(f).cmp(&vocab.precedence(g));
    }
    for (a, b) in s.args().iter().zip(t.args()) {
        if a == b {
            continue;
        }
        return match kbo(a, b, vocab) {
            KboOrdering::Greater => Ordering::Greater,
            KboOrdering::Less => Ordering::Less,
            _ => Ordering::Equal,
        };
    }
    Ordering::Equal
}

/// Returns (every variable occurs in `s` at least as often as in `t`, and vice versa).
fn var_domination(s: &Term, t: &Term) -> (bool, bool) {
    if s.is_ground() && t.is_ground() {
        return (true, true);
    }
    let mut balance: Vec<(u32, i32)> = Vec::new();
    let mut vs = Vec::new();
    s.collect_vars(&mut vs);
    for v in vs.drain(..) {
        bump(&mut balance, v, 1);
    }
    t.collect_vars(&mut vs);
    for v in vs {
        bump(&mut balance, v, -1);
    }
    (
        balance.iter().all(|&(_, c)| c >= 0),
        balance.iter().all(|&(_, c)| c <= 0),
    )
}

fn bump(balance: &mut Vec<(u32, i32)>, v: u32, d: i32) {
    match balance.iter_mut().find(|(w, _)| *w == v) {
        Some((_, c)) => *c += d,
        None => balance.push((v, d)),
    }
}
