use std::collections::HashMap;

use ordo::kernel::{kbo, unify, Atom, Clause, KboOrdering, Literal, Provenance, Subst, Term, Vocabulary};
use proptest::prelude::*;

/// Every term of size <= `max` over {e, a, x, y} with inverse and product.
fn enumerate_terms(atoms: &[Term], max: u32) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max as usize + 1];
    by_size[1] = atoms.to_vec();
    for n in 2..=max as usize {
        let mut layer: Vec<Term> = by_size[n - 1].iter().map(|t| Term::inverse(t.clone())).collect();
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for l in &by_size[left] {
                for r in &by_size[right] {
                    layer.push(Term::product(l.clone(), r.clone()));
                }
            }
        }
        by_size[n] = layer;
    }
    by_size.into_iter().flatten().collect()
}

fn fixture() -> (Vocabulary, Vec<Term>, Vec<Term>) {
    let mut v = Vocabulary::group();
    let a = Term::constant(v.add_generator("a").unwrap());
    let ground = enumerate_terms(&[Term::identity(), a.clone()], 4);
    let open = enumerate_terms(&[Term::identity(), a, Term::var(0), Term::var(1)], 4);
    (v, ground, open)
}

/// Reference KBO written from the textbook definition: variable multisets
/// counted in hash maps, weights and precedences looked up by name.
fn reference_kbo(s: &Term, t: &Term, v: &Vocabulary) -> KboOrdering {
    if s == t {
        return KboOrdering::Equal;
    }
    if ref_greater(s, t, v) {
        KboOrdering::Greater
    } else if ref_greater(t, s, v) {
        KboOrdering::Less
    } else {
        KboOrdering::Incomparable
    }
}

fn counts(t: &Term, m: &mut HashMap<u32, i64>) {
    match t {
        Term::Var(x) => *m.entry(*x).or_default() += 1,
        _ => t.args().iter().for_each(|a| counts(a, m)),
    }
}

fn ref_weight(t: &Term, v: &Vocabulary) -> u64 {
    match t {
        Term::Var(_) => v.var_weight() as u64,
        _ => v.weight(t.head().unwrap()) as u64 + t.args().iter().map(|a| ref_weight(a, v)).sum::<u64>(),
    }
}

fn ref_greater(s: &Term, t: &Term, v: &Vocabulary) -> bool {
    let (mut cs, mut ct) = (HashMap::new(), HashMap::new());
    counts(s, &mut cs);
    counts(t, &mut ct);
    if ct.iter().any(|(x, n)| cs.get(x).copied().unwrap_or(0) < *n) {
        return false;
    }
    if let Term::Var(x) = t {
        return s != t && cs.contains_key(x);
    }
    if s.is_var() {
        return false;
    }
    let (ws, wt) = (ref_weight(s, v), ref_weight(t, v));
    if ws != wt {
        return ws > wt;
    }
    let (f, g) = (s.head().unwrap(), t.head().unwrap());
    let (pf, pg) = (v.symbol(f).precedence, v.symbol(g).precedence);
    if pf != pg {
        return pf > pg;
    }
    for (a, b) in s.args().iter().zip(t.args()) {
        if a != b {
            return ref_greater(a, b, v);
        }
    }
    false
}

#[test]
fn kbo_matches_reference_on_small_terms() {
    let (v, _, open) = fixture();
    for s in &open {
        for t in &open {
            assert_eq!(kbo(s, t, &v), reference_kbo(s, t, &v), "{s:?} vs {t:?}");
        }
    }
}

#[test]
fn kbo_is_total_on_ground_terms() {
    let (v, ground, _) = fixture();
    for s in &ground {
        for t in &ground {
            let r = kbo(s, t, &v);
            assert_ne!(r, KboOrdering::Incomparable);
            assert_eq!(r == KboOrdering::Equal, s == t);
            assert_eq!(kbo(t, s, &v), r.reverse());
        }
    }
}

#[test]
fn kbo_is_compatible_with_contexts() {
    let (v, _, open) = fixture();
    let small: Vec<&Term> = open.iter().filter(|t| t.size() <= 3).collect();
    for s in &small {
        for t in &small {
            if kbo(s, t, &v) != KboOrdering::Greater {
                continue;
            }
            for c in &small {
                let pairs = [
                    (Term::inverse((*s).clone()), Term::inverse((*t).clone())),
                    (Term::product((*s).clone(), (*c).clone()), Term::product((*t).clone(), (*c).clone())),
                    (Term::product((*c).clone(), (*s).clone()), Term::product((*c).clone(), (*t).clone())),
                ];
                for (l, r) in pairs {
                    assert_eq!(kbo(&l, &r, &v), KboOrdering::Greater, "{l:?} > {r:?}");
                }
            }
        }
    }
}

#[test]
fn kbo_has_subterm_property_on_ground_terms() {
    let (v, ground, _) = fixture();
    for t in &ground {
        t.for_each_app(&mut |path, sub| {
            if !path.is_empty() {
                assert_eq!(kbo(t, sub, &v), KboOrdering::Greater);
            }
        });
    }
}

#[test]
fn unifiers_are_most_general_on_small_pairs() {
    let (_, ground, open) = fixture();
    let small: Vec<&Term> = open.iter().filter(|t| t.size() <= 3).collect();
    let instances: Vec<&Term> = ground.iter().filter(|t| t.size() <= 2).collect();
    for s in &small {
        for t in &small {
            let mgu = unify(s, t);
            if let Some(sigma) = &mgu {
                assert_eq!(sigma.apply(s), sigma.apply(t));
            }
            // Every ground unifier over x, y must factor through the mgu.
            for gx in &instances {
                for gy in &instances {
                    let mut theta = Subst::new();
                    theta.bind(0, (*gx).clone());
                    theta.bind(1, (*gy).clone());
                    if theta.apply(s) != theta.apply(t) {
                        continue;
                    }
                    let sigma = mgu.as_ref().unwrap_or_else(|| panic!("missed unifier for {s:?}, {t:?}"));
                    for x in 0..2 {
                        let composed = theta.apply(&sigma.apply(&Term::var(x)));
                        assert_eq!(composed, theta.apply(&Term::var(x)));
                    }
                }
            }
        }
    }
}

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::identity()),
        (0u32..4).prop_map(Term::var),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::inverse),
            (inner.clone(), inner).prop_map(|(a, b)| Term::product(a, b)),
        ]
    })
}

fn arb_literal() -> impl Strategy<Value = Literal> {
    (any::<bool>(), arb_term(), arb_term(), any::<bool>()).prop_map(|(pos, a, b, eq)| {
        let atom = if eq {
            Atom::Eq(a, b)
        } else {
            Atom::Pred(ordo::SymbolId(3), vec![a, b])
        };
        Literal::new(pos, atom)
    })
}

proptest! {
    #[test]
    fn normalize_is_idempotent(lits in proptest::collection::vec(arb_literal(), 0..5)) {
        let c = Clause::new(lits, Provenance::default());
        let n = c.normalize();
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert!(n.is_variant(&c));
    }

    #[test]
    fn variables_are_canonical(lits in proptest::collection::vec(arb_literal(), 0..5)) {
        let c = Clause::new(lits, Provenance::default());
        let occ = c.var_occurrences();
        let mut next = 0;
        for v in occ {
            prop_assert!(v <= next);
            if v == next {
                next += 1;
            }
        }
    }
}
