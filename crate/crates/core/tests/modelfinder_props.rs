use ordo::kernel::{Clause, Literal, Provenance, Vocabulary};
use ordo::modelfinder::{check_model, enumerate_models, find_model, FiniteModel, SearchBudget};
use ordo::presentation::{parse_presentation, relations_to_axioms};
use ordo::theories::{build_axiom_group, AxiomGroup};
use ordo::ClauseSet;

fn group_theory() -> ClauseSet {
    build_axiom_group(&AxiomGroup::Gr, &Vocabulary::group()).unwrap()
}

fn next_perm(p: &mut [u32]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn isomorphic(a: &FiniteModel, b: &FiniteModel) -> bool {
    let n = a.size;
    let mut perm: Vec<u32> = (0..n as u32).collect();
    loop {
        let ok = (0..n as u32).all(|x| {
            (0..n as u32).all(|y| perm[a.mul(x, y) as usize] == b.mul(perm[x as usize], perm[y as usize]))
        });
        if ok {
            return true;
        }
        if !next_perm(&mut perm) {
            return false;
        }
    }
}

// Number of groups of order 1..=8 up to isomorphism.
const GROUP_COUNTS: [usize; 8] = [1, 1, 1, 2, 1, 2, 1, 5];

#[test]
fn enumeration_covers_every_group_of_small_order() {
    let cs = group_theory();
    for n in 1..=8 {
        let models = enumerate_models(&cs, n, 100_000, None).unwrap().unwrap();
        let mut reps: Vec<FiniteModel> = Vec::new();
        for m in &models {
            check_model(m, &cs).unwrap();
            if !reps.iter().any(|r| isomorphic(r, m)) {
                reps.push(m.clone());
            }
        }
        assert_eq!(reps.len(), GROUP_COUNTS[n - 1], "order {n}");
    }
}

fn with_disequations(text: &str, pairs: &[(&str, &str)]) -> ClauseSet {
    let p = parse_presentation(text).unwrap();
    let mut cs = build_axiom_group(&AxiomGroup::Gr, &p.vocabulary()).unwrap();
    cs.extend(&relations_to_axioms(&p)).unwrap();
    let v = cs.vocab.clone();
    for (i, (a, b)) in pairs.iter().enumerate() {
        let t = |s: &str| p.word_to_term(&p.parse_word(s).unwrap(), &v).unwrap();
        cs.push(Clause::new(vec![Literal::neq(t(a), t(b))], Provenance::new("stmt", i as u32 + 1)))
            .unwrap();
    }
    cs
}

// In the last case `a` needs order 6 and `b` order 4 in an abelian quotient,
// which first happens in the cyclic group of order 12.
#[test]
fn minimum_sizes_match_hand_computed_quotients() {
    let cases: [(&str, &[(&str, &str)], usize); 4] = [
        ("< a | a^6 = e >", &[("a^2", "e"), ("a^3", "e")], 6),
        ("< a, b | a b = b a, a^2 = e, b^2 = e >", &[("a", "e"), ("b", "e"), ("a", "b")], 4),
        ("< a, b | a^3 = e, b^2 = e, b a b = a^-1 >", &[("a b", "b a")], 6),
        ("< a, b | a b = b a, a^6 = e, b^4 = e >", &[("a^2", "e"), ("a^3", "e"), ("b^2", "e")], 12),
    ];
    for (text, pairs, expected) in cases {
        let cs = with_disequations(text, pairs);
        let r = find_model(&cs, &SearchBudget::new(1, expected + 2).unwrap()).unwrap();
        assert_eq!(r.model.map(|m| m.size), Some(expected), "{text}");
    }
}

#[test]
fn evaluation_is_a_homomorphism_on_words() {
    let cs = with_disequations("< a, b | a^3 = e, b^2 = e, b a b = a^-1 >", &[("a b", "b a")]);
    let p = parse_presentation("< a, b | a^3 = e, b^2 = e, b a b = a^-1 >").unwrap();
    let m = find_model(&cs, &SearchBudget::new(6, 6).unwrap()).unwrap().model.unwrap();
    let words = ["a", "b", "a b", "b^-1 a^2", "e", "a b a^-1 b"];
    for w1 in words {
        for w2 in words {
            let (x, y) = (p.parse_word(w1).unwrap(), p.parse_word(w2).unwrap());
            let v = &cs.vocab;
            let joined = m.eval_ground(&p.word_to_term(&x.concat(&y), v).unwrap(), v).unwrap();
            let parts = m.mul(
                m.eval_ground(&p.word_to_term(&x, v).unwrap(), v).unwrap(),
                m.eval_ground(&p.word_to_term(&y, v).unwrap(), v).unwrap(),
            );
            assert_eq!(joined, parts, "{w1} . {w2}");
        }
    }
}
