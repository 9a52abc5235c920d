use super::TheoryError;
use crate::kernel::{Clause, ClauseSet, Literal, Provenance, Term, Vocabulary};
use crate::presentation::{StatementKind, StatementSet};

/// Lifts a statement set into clauses for the given target form.
///
/// Disequation targets accept pairs (`s != t`) and triples (the three
/// pairwise disequations). The other targets take one clause per item: a
/// unit for the strict item, a two-literal disjunction otherwise. Terms are
/// emitted unsimplified, so `(e, b)` in cone form yields `P(e'*b)`.
pub fn lift_statements(s: &StatementSet, target: StatementKind, vocab: &Vocabulary) -> Result<ClauseSet, TheoryError> {
    if s.strict_count() > 1 {
        return Err(TheoryError::Statements("at most one item may be strict".into()));
    }
    let mut vocab = vocab.clone();
    let pred = match target {
        StatementKind::Inequalities => None,
        StatementKind::Order => Some(vocab.add_predicate("L", 2)?),
        StatementKind::Circular => Some(vocab.add_predicate("C", 3)?),
        StatementKind::Cone => Some(vocab.add_predicate("P", 1)?),
        StatementKind::ConeBinary => Some(vocab.add_predicate("P", 2)?),
    };
    let mut cs = ClauseSet::new(vocab);
    let mut index = 0;
    let mut push = |cs: &mut ClauseSet, lits: Vec<Literal>| -> Result<(), TheoryError> {
        index += 1;
        cs.push(Clause::new(lits, Provenance::new("stmt", index)))?;
        Ok(())
    };
    for item in &s.items {
        for t in &item.terms {
            if !t.is_ground() {
                return Err(TheoryError::Statements("statement terms must be ground".into()));
            }
            t.validate(&cs.vocab)?;
        }
        let n = item.terms.len();
        let arity_ok = match target {
            StatementKind::Inequalities => n == 2 || n == 3,
            k => n == k.arity(),
        };
        if !arity_ok {
            return Err(TheoryError::Statements(format!(
                "{} statements need {} terms per item, found {n}",
                target.name(),
                target.arity()
            )));
        }
        let t = &item.terms;
        let inv = |a: &Term| Term::inverse(a.clone());
        let mul = |a: Term, b: &Term| Term::product(a, b.clone());
        match target {
            StatementKind::Inequalities => {
                if n == 2 {
                    push(&mut cs, vec![Literal::neq(t[0].clone(), t[1].clone())])?;
                } else {
                    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
                        push(&mut cs, vec![Literal::neq(t[a].clone(), t[b].clone())])?;
                    }
                }
            }
            StatementKind::Order => {
                let l = pred.unwrap();
                let fwd = Literal::pred(l, vec![t[0].clone(), t[1].clone()]);
                if item.strict {
                    push(&mut cs, vec![fwd])?;
                } else {
                    push(&mut cs, vec![fwd, Literal::pred(l, vec![t[1].clone(), t[0].clone()])])?;
                }
            }
            StatementKind::Circular => {
                let c = pred.unwrap();
                let fwd = Literal::pred(c, vec![t[0].clone(), t[1].clone(), t[2].clone()]);
                if item.strict {
                    push(&mut cs, vec![fwd])?;
                } else {
                    let back = Literal::pred(c, vec![t[0].clone(), t[2].clone(), t[1].clone()]);
                    push(&mut cs, vec![fwd, back])?;
                }
            }
            StatementKind::Cone => {
                let p = pred.unwrap();
                let fwd = Literal::pred(p, vec![mul(inv(&t[0]), &t[1])]);
                if item.strict {
                    push(&mut cs, vec![fwd])?;
                } else {
                    push(&mut cs, vec![fwd, Literal::pred(p, vec![mul(inv(&t[1]), &t[0])])])?;
                }
            }
            StatementKind::ConeBinary => {
                let p = pred.unwrap();
                let r = inv(&t[0]);
                let fwd = Literal::pred(p, vec![mul(r.clone(), &t[1]), mul(r.clone(), &t[2])]);
                if item.strict {
                    push(&mut cs, vec![fwd])?;
                } else {
                    let back = Literal::pred(p, vec![mul(r.clone(), &t[2]), mul(r, &t[1])]);
                    push(&mut cs, vec![fwd, back])?;
                }
            }
        }
    }
    Ok(cs)
}
