//! Axiom systems, statement liftings, the compilation of orderability
//! questions into clause sets, and model translations between order and
//! cone forms.

mod axioms;
mod statements;
pub mod translate;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use axioms::{build_axiom_group, AxiomGroup};
pub use statements::lift_statements;
pub use translate::{cone_to_circular, cone_to_order, circular_to_cone, order_to_cone, reverse_order};

use crate::kernel::{Clause, ClauseSet, ClauseSetError, Literal, Provenance, Term, VocabError};
use crate::presentation::{relations_to_axioms, Presentation, StatementKind, StatementSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("unknown axiom group `{0}`")]
    UnknownGroup(String),
    #[error("missing parameter: {0}")]
    MissingParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("statements: {0}")]
    Statements(String),
    #[error("theory does not fit the question: {0}")]
    Shape(String),
    #[error(transparent)]
    Vocab(#[from] VocabError),
    #[error(transparent)]
    ClauseSet(#[from] ClauseSetError),
}

/// What a theory is meant to decide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Question {
    LeftOrder,
    BiOrder,
    CircularOrder,
    BiCircularOrder,
    Torsion(Term),
    GeneralisedTorsion(Term),
    /// `P((t2*t1)*t2', t1)` against the barred circular cone axioms.
    MonoidMembership(Term, Term),
    ClosureMembership { target: Term, generators: Vec<Term> },
    /// No nontrivial left-orderable quotient, from cofinal cyclic subgroups.
    FixedPoint { cofinal: Vec<Term>, isolated: Vec<u32> },
    /// Plain consistency of `Gr ∪ Ax_R ∪ S`, settled by a finite model.
    Statements,
}

impl Question {
    pub fn name(&self) -> &'static str {
        match self {
            Question::LeftOrder => "LO",
            Question::BiOrder => "BO",
            Question::CircularOrder => "CO",
            Question::BiCircularOrder => "CBO",
            Question::Torsion(_) => "torsion",
            Question::GeneralisedTorsion(_) => "gen-torsion",
            Question::MonoidMembership(..) => "monoid",
            Question::ClosureMembership { .. } => "closure",
            Question::FixedPoint { .. } => "fixed-point",
            Question::Statements => "statements",
        }
    }
}

/// Which criterion licenses conclusions drawn from a theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// Order axioms with connectedness plus ground disequations.
    FirstPrinciples,
    /// Connectedness dropped, disequations replaced by order disjunctions.
    Weakened,
    /// Full cone axioms plus disequations; equiconsistent with first principles.
    Cone,
    /// Cone axioms without connectedness plus cone-form statements.
    WeakenedCone,
    Torsion,
    GeneralisedTorsion,
    CentraliserMonoid,
    Closure,
    FixedPoint,
    Consistency,
}

impl Criterion {
    pub fn describe(self) -> &'static str {
        match self {
            Criterion::FirstPrinciples => "first-principles criterion: an ordered group models its order axioms together with any true statements",
            Criterion::Weakened => "weakened-theory criterion: connectedness replaced by order disjunctions of true inequalities",
            Criterion::Cone => "positive-cone equiconsistency with the first-principles theory",
            Criterion::WeakenedCone => "positive-cone equiconsistency with the weakened theory",
            Criterion::Torsion => "torsion criterion: the weakened cone theory with P(t) is inconsistent exactly when t is a torsion",
            Criterion::GeneralisedTorsion => "generalised-torsion criterion: adding conjugacy invariance detects generalised torsion",
            Criterion::CentraliserMonoid => "centraliser-monoid criterion for the barred circular cone theory",
            Criterion::Closure => "relatively-convex-closure criterion: closure axioms with P(g), P(g') and not P(t)",
            Criterion::FixedPoint => "fixed-point criterion: cofinal cyclic subgroups with isolation axioms",
            Criterion::Consistency => "finite model of the group axioms, relations and statements",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

/// A presentation, the axiom groups beyond `Gr ∪ Ax_R`, lifted statements,
/// the question, and optional user-declared case clauses.
#[derive(Clone, Debug)]
pub struct TheorySpec {
    pub presentation: Presentation,
    pub groups: Vec<AxiomGroup>,
    pub statements: StatementSet,
    pub question: Question,
    /// Extra clauses for one branch of a user case split.
    pub case: Option<ClauseSet>,
}

impl TheorySpec {
    pub fn new(presentation: Presentation, groups: Vec<AxiomGroup>, statements: StatementSet, question: Question) -> Self {
        TheorySpec {
            presentation,
            groups,
            statements,
            question,
            case: None,
        }
    }
}

fn group_set(groups: &[AxiomGroup]) -> BTreeSet<String> {
    groups
        .iter()
        .filter(|g| !matches!(g, AxiomGroup::Gr | AxiomGroup::AxR))
        .map(|g| match g {
            AxiomGroup::Isolated(_) => "Isolated".to_string(),
            g => g.to_string(),
        })
        .collect()
}

fn set_of(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Checks that the groups and statements have the shape the question's
/// criterion requires, and returns that criterion.
pub fn classify(spec: &TheorySpec) -> Result<Criterion, TheoryError> {
    let groups = group_set(&spec.groups);
    let kind = spec.statements.kind;
    let no_statements = spec.statements.is_empty();
    let shape = |msg: String| Err(TheoryError::Shape(msg));
    if spec.statements.strict_count() > 1 {
        return Err(TheoryError::Statements("at most one item may be strict".into()));
    }
    let order_family = |fp: &[&str], weak: &[&str], cone: &[&str], weak_cone: &[&str], weak_kind, cone_kind| {
        let fits = |names: &[&str], k: StatementKind| groups == set_of(names) && (no_statements || kind == k);
        if fits(fp, StatementKind::Inequalities) {
            Ok(Criterion::FirstPrinciples)
        } else if fits(weak, weak_kind) {
            Ok(Criterion::Weakened)
        } else if fits(cone, StatementKind::Inequalities) {
            Ok(Criterion::Cone)
        } else if fits(weak_cone, cone_kind) {
            Ok(Criterion::WeakenedCone)
        } else {
            Err(TheoryError::Shape(format!(
                "groups {:?} with {} statements do not match any {} criterion",
                groups,
                kind.name(),
                spec.question.name()
            )))
        }
    };
    let crit = match &spec.question {
        Question::LeftOrder => order_family(
            &["AxL", "OrdL"],
            &["AxL'", "OrdL"],
            &["AxPL"],
            &["AxPL'"],
            StatementKind::Order,
            StatementKind::Cone,
        )?,
        Question::BiOrder => order_family(
            &["AxL", "OrdB"],
            &["AxL'", "OrdB"],
            &["AxPL", "PB"],
            &["AxPL'", "PB"],
            StatementKind::Order,
            StatementKind::Cone,
        )?,
        Question::CircularOrder => order_family(
            &["AxC", "OrdCL"],
            &["AxC'", "OrdCL"],
            &["AxPCL"],
            &["AxPCL'"],
            StatementKind::Circular,
            StatementKind::ConeBinary,
        )?,
        Question::BiCircularOrder => order_family(
            &["AxC", "OrdCB"],
            &["AxC'", "OrdCB"],
            &["AxPCL", "PCB"],
            &["AxPCL'", "PCB"],
            StatementKind::Circular,
            StatementKind::ConeBinary,
        )?,
        Question::Torsion(_) | Question::GeneralisedTorsion(_) => {
            let want = if matches!(spec.question, Question::Torsion(_)) {
                set_of(&["AxPL'"])
            } else {
                set_of(&["AxPL'", "PB"])
            };
            if groups != want || !no_statements {
                return shape(format!("{} needs exactly {:?} and no statements", spec.question.name(), want));
            }
            if matches!(spec.question, Question::Torsion(_)) {
                Criterion::Torsion
            } else {
                Criterion::GeneralisedTorsion
            }
        }
        Question::MonoidMembership(..) => {
            if groups != set_of(&["AxPCLbar'", "PCB"]) || !no_statements {
                return shape("monoid membership needs exactly AxPCLbar' and PCB and no statements".into());
            }
            Criterion::CentraliserMonoid
        }
        Question::ClosureMembership { generators, .. } => {
            if groups != set_of(&["CC"]) || !no_statements {
                return shape("closure membership needs exactly CC and no statements".into());
            }
            if generators.is_empty() {
                return shape("closure membership needs at least one generator".into());
            }
            Criterion::Closure
        }
        Question::FixedPoint { cofinal, isolated } => {
            let mut want = set_of(&["AxPL'", "PB"]);
            if !isolated.is_empty() {
                want.insert("Isolated".into());
            }
            if groups != want {
                return shape(format!("fixed-point needs exactly {want:?}"));
            }
            let listed = spec.groups.iter().find_map(|g| match g {
                AxiomGroup::Isolated(m) => Some(m),
                _ => None,
            });
            if let Some(m) = listed {
                let (mut a, mut b) = (m.clone(), isolated.clone());
                a.sort_unstable();
                b.sort_unstable();
                a.dedup();
                b.dedup();
                if a != b {
                    return shape("Isolated exponents differ from the question's".into());
                }
            }
            if kind != StatementKind::Cone || spec.statements.items.len() != cofinal.len() || cofinal.is_empty() {
                return shape("fixed-point needs one cone statement (e, t) per cofinal element".into());
            }
            for (i, (item, t)) in spec.statements.items.iter().zip(cofinal).enumerate() {
                if item.terms[0] != Term::identity() || item.terms[1] != *t {
                    return shape(format!("statement {} must be (e, t{i}) for the cofinal element t{i}", i + 1));
                }
                if item.strict != (i == 0) {
                    return shape("exactly the first cone statement must be strict".into());
                }
            }
            Criterion::FixedPoint
        }
        Question::Statements => {
            if !groups.is_empty() || kind != StatementKind::Inequalities {
                return shape("a statements check takes no axiom groups and disequations only".into());
            }
            Criterion::Consistency
        }
    };
    Ok(crit)
}

/// Builds `Gr ∪ Ax_R ∪ groups ∪ statements ∪ question clauses ∪ case`, in that order.
pub fn compile(spec: &TheorySpec) -> Result<ClauseSet, TheoryError> {
    classify(spec)?;
    let p = &spec.presentation;
    let mut cs = ClauseSet::new(p.vocabulary());
    cs.extend(&build_axiom_group(&AxiomGroup::Gr, &cs.vocab)?)?;
    cs.extend(&relations_to_axioms(p))?;
    for g in &spec.groups {
        if matches!(g, AxiomGroup::Gr | AxiomGroup::AxR) {
            continue;
        }
        let part = build_axiom_group(g, &cs.vocab)?;
        cs.extend(&part)?;
    }
    if !spec.statements.is_empty() {
        let part = lift_statements(&spec.statements, spec.statements.kind, &cs.vocab)?;
        cs.extend(&part)?;
    }
    let question_clauses = question_clauses(&spec.question, &mut cs)?;
    for (i, lits) in question_clauses.into_iter().enumerate() {
        cs.push(Clause::new(lits, Provenance::new("question", i as u32 + 1)))?;
    }
    if let Some(case) = &spec.case {
        let mut relabelled = ClauseSet::new(case.vocab.clone());
        for (i, c) in case.iter().enumerate() {
            relabelled.push(Clause::new(c.literals().to_vec(), Provenance::new("case", i as u32 + 1)))?;
        }
        cs.extend(&relabelled)?;
    }
    Ok(cs)
}

fn question_clauses(q: &Question, cs: &mut ClauseSet) -> Result<Vec<Vec<Literal>>, TheoryError> {
    let check = |t: &Term, cs: &ClauseSet| -> Result<(), TheoryError> {
        if !t.is_ground() {
            return Err(TheoryError::Domain("question terms must be ground".into()));
        }
        t.validate(&cs.vocab)?;
        Ok(())
    };
    let out = match q {
        Question::Torsion(t) | Question::GeneralisedTorsion(t) => {
            check(t, cs)?;
            let p = cs.vocab.add_predicate("P", 1)?;
            vec![vec![Literal::pred(p, vec![t.clone()])]]
        }
        Question::MonoidMembership(t1, t2) => {
            check(t1, cs)?;
            check(t2, cs)?;
            let p = cs.vocab.add_predicate("P", 2)?;
            let conj = Term::product(Term::product(t2.clone(), t1.clone()), Term::inverse(t2.clone()));
            vec![vec![Literal::pred(p, vec![conj, t1.clone()])]]
        }
        Question::ClosureMembership { target, generators } => {
            check(target, cs)?;
            let p = cs.vocab.add_predicate("P", 1)?;
            let mut out = Vec::new();
            for g in generators {
                check(g, cs)?;
                out.push(vec![Literal::pred(p, vec![g.clone()])]);
                out.push(vec![Literal::pred(p, vec![Term::inverse(g.clone())])]);
            }
            out.push(vec![Literal::not_pred(p, vec![target.clone()])]);
            out
        }
        _ => Vec::new(),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::display::{clause_to_formula, VarNames};
    use crate::kernel::Vocabulary;
    use crate::presentation::{parse_presentation, StatementItem};

    fn formulas(cs: &ClauseSet) -> Vec<String> {
        cs.iter().map(|c| clause_to_formula(c, &cs.vocab, VarNames::Letters)).collect()
    }

    #[test]
    fn group_counts() {
        let v = Vocabulary::group();
        let counts = [
            (AxiomGroup::Gr, 5),
            (AxiomGroup::AxL, 3),
            (AxiomGroup::AxLPrime, 2),
            (AxiomGroup::OrdL, 1),
            (AxiomGroup::OrdB, 1),
            (AxiomGroup::AxC, 4),
            (AxiomGroup::AxCPrime, 3),
            (AxiomGroup::OrdCL, 1),
            (AxiomGroup::OrdCB, 1),
            (AxiomGroup::AxPL, 3),
            (AxiomGroup::AxPLPrime, 2),
            (AxiomGroup::PB, 1),
            (AxiomGroup::AxPCL, 4),
            (AxiomGroup::AxPCLPrime, 3),
            (AxiomGroup::AxPCLBar, 3),
            (AxiomGroup::AxPCLBarPrime, 2),
            (AxiomGroup::PCB, 1),
            (AxiomGroup::CC, 2),
            (AxiomGroup::Isolated(vec![2]), 1),
            (AxiomGroup::Isolated(vec![3, 2]), 2),
        ];
        for (g, n) in counts {
            assert_eq!(build_axiom_group(&g, &v).unwrap().len(), n, "{g}");
        }
        assert!(matches!(build_axiom_group(&AxiomGroup::Isolated(vec![]), &v), Err(TheoryError::Domain(_))));
    }

    #[test]
    fn cone_listing() {
        let cs = build_axiom_group(&AxiomGroup::AxPL, &Vocabulary::group()).unwrap();
        assert_eq!(formulas(&cs), vec!["- P(e)", "P(x) & P(y) -> P(x*y)", "(x=e) | P(x) | P(x')"]);
        let iso = build_axiom_group(&AxiomGroup::Isolated(vec![2]), &Vocabulary::group()).unwrap();
        assert_eq!(formulas(&iso), vec!["P(x*x) -> P(x)"]);
    }

    #[test]
    fn group_names_parse_back() {
        for name in ["Gr", "AxL'", "AxPCLbar'", "PCB", "Isolated{2,3}"] {
            assert_eq!(name.parse::<AxiomGroup>().unwrap().to_string(), name);
        }
        assert!("Nope".parse::<AxiomGroup>().is_err());
    }

    fn klein() -> Presentation {
        parse_presentation("< a, b | a^-1 b a = b^-1 >").unwrap()
    }

    #[test]
    fn liftings_follow_definitions() {
        let p = klein();
        let v = p.vocabulary();
        let a = Term::constant(v.lookup("a").unwrap());
        let b = Term::constant(v.lookup("b").unwrap());
        let e = Term::identity();
        let cone = StatementSet {
            kind: StatementKind::Cone,
            items: vec![StatementItem::new(vec![e.clone(), b.clone()], true)],
        };
        assert_eq!(formulas(&lift_statements(&cone, StatementKind::Cone, &v).unwrap()), vec!["P(e'*b)"]);
        let order = StatementSet {
            kind: StatementKind::Order,
            items: vec![
                StatementItem::new(vec![e.clone(), a.clone()], true),
                StatementItem::new(vec![e.clone(), b.clone()], false),
            ],
        };
        assert_eq!(
            formulas(&lift_statements(&order, StatementKind::Order, &v).unwrap()),
            vec!["L(e,a)", "L(e,b) | L(b,e)"]
        );
        let ab = Term::product(a.clone(), b.clone());
        let ba = Term::product(b.clone(), a.clone());
        let tri = StatementSet {
            kind: StatementKind::ConeBinary,
            items: vec![StatementItem::new(vec![e.clone(), ab, ba], true)],
        };
        assert_eq!(
            formulas(&lift_statements(&tri, StatementKind::ConeBinary, &v).unwrap()),
            vec!["P(e'*(a*b),e'*(b*a))"]
        );
        let two_strict = StatementSet {
            kind: StatementKind::Order,
            items: vec![StatementItem::new(vec![e.clone(), a], true), StatementItem::new(vec![e, b], true)],
        };
        assert!(lift_statements(&two_strict, StatementKind::Order, &v).is_err());
    }

    #[test]
    fn torsion_compiles_to_cone_theory() {
        let p = parse_presentation("< a | a^4 = e >").unwrap();
        let a = Term::constant(p.vocabulary().lookup("a").unwrap());
        let spec = TheorySpec::new(
            p,
            vec![AxiomGroup::AxPLPrime],
            StatementSet::new(StatementKind::Inequalities),
            Question::Torsion(a),
        );
        assert_eq!(classify(&spec).unwrap(), Criterion::Torsion);
        let cs = compile(&spec).unwrap();
        let f = formulas(&cs);
        assert_eq!(f.len(), 5 + 1 + 2 + 1);
        assert_eq!(f[5], "((a * a) * a) * a = e");
        assert_eq!(f.last().unwrap(), "P(a)");
    }

    #[test]
    fn shape_mismatch_is_refused() {
        let p = parse_presentation("< a | a^4 = e >").unwrap();
        let a = Term::constant(p.vocabulary().lookup("a").unwrap());
        let spec = TheorySpec::new(
            p,
            vec![AxiomGroup::AxPL],
            StatementSet::new(StatementKind::Inequalities),
            Question::Torsion(a),
        );
        assert!(matches!(compile(&spec), Err(TheoryError::Shape(_))));
    }

    #[test]
    fn closure_question_clauses() {
        let p = klein();
        let v = p.vocabulary();
        let a = Term::constant(v.lookup("a").unwrap());
        let b = Term::constant(v.lookup("b").unwrap());
        let spec = TheorySpec::new(
            p,
            vec![AxiomGroup::CC],
            StatementSet::new(StatementKind::Inequalities),
            Question::ClosureMembership {
                target: b,
                generators: vec![a],
            },
        );
        let f = formulas(&compile(&spec).unwrap());
        assert_eq!(&f[f.len() - 3..], &["P(a)", "P(a')", "- P(b)"]);
    }
}
