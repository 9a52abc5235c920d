//! Mapping verified engine outcomes to group-theoretic conclusions.

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::kernel::display::{term_to_string, Spacing, VarNames};
use crate::kernel::{Term, Vocabulary};
use crate::theories::{classify, Criterion, Question, TheorySpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Conclusion {
    NotLeftOrderable,
    NotBiOrderable,
    NotCircularlyOrderable,
    NoBiInvariantCircularOrder,
    IsTorsion { term: String },
    IsGeneralisedTorsion { term: String },
    /// `t2'` lies in the monoid generated by `t2` and the centraliser of `t1`.
    MonoidMembership { t1: String, t2: String },
    InClosure { target: String, generators: Vec<String> },
    NoNontrivialLeftOrderableQuotient,
    /// The statements cannot all hold in the group.
    StatementsInconsistent,
    /// One branch of a user case split is inconsistent.
    CaseRefuted,
    ConsistentAtSize { size: usize, confirmed: Vec<String> },
    Unknown,
}

impl Conclusion {
    pub fn is_unknown(&self) -> bool {
        matches!(self, Conclusion::Unknown)
    }
}

/// What an engine produced, after local checking.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    Proof {
        steps: usize,
        verified: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rejection: Option<String>,
    },
    Model {
        size: usize,
        verified: bool,
        /// Statements true in the model, rendered as formulas.
        confirmed: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rejection: Option<String>,
    },
    /// No inference applies; this settles nothing about the group.
    Saturated,
    ResourceOut { reason: String },
    /// Every size in range was searched without finding a model.
    NoModelInRange { min: usize, max: usize },
    Skipped { reason: String },
    /// An external tool claims a result that could not be checked here.
    Unverified { claim: String },
}

impl Evidence {
    pub fn summary(&self) -> String {
        match self {
            Evidence::Proof { steps, verified: true, .. } => format!("verified proof with {steps} steps"),
            Evidence::Proof { rejection, .. } => {
                format!("proof rejected by the checker: {}", rejection.as_deref().unwrap_or("unknown reason"))
            }
            Evidence::Model { size, verified: true, .. } => format!("verified model of size {size}"),
            Evidence::Model { rejection, .. } => {
                format!("model rejected by the checker: {}", rejection.as_deref().unwrap_or("unknown reason"))
            }
            Evidence::Saturated => {
                "no refutation found, set closed under implemented rules".to_string()
            }
            Evidence::ResourceOut { reason } => format!("resource limit reached: {reason}"),
            Evidence::NoModelInRange { min, max } => format!("no model of size {min}..{max}"),
            Evidence::Skipped { reason } => format!("skipped: {reason}"),
            Evidence::Unverified { claim } => format!("unverified external claim: {claim}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub conclusion: Conclusion,
    /// The criterion licensing the conclusion, with the evidence used.
    pub justification: String,
    pub evidence: Evidence,
    pub caveats: Vec<String>,
}

impl Verdict {
    pub fn unknown(evidence: Evidence) -> Self {
        Verdict {
            conclusion: Conclusion::Unknown,
            justification: evidence.summary(),
            evidence,
            caveats: Vec::new(),
        }
    }

    pub fn is_unknown(&self) -> bool {
        self.conclusion.is_unknown()
    }

    /// 0 when a verdict was obtained, 2 for `Unknown`.
    pub fn exit_code(&self) -> i32 {
        if self.is_unknown() {
            2
        } else {
            0
        }
    }
}

fn show(t: &Term, vocab: &Vocabulary) -> String {
    term_to_string(t, vocab, VarNames::Letters, Spacing::Compact)
}

/// The conclusion a refutation licenses for this theory, ignoring case
/// splits.
pub fn refutation_conclusion(theory: &TheorySpec) -> Conclusion {
    let vocab = theory.presentation.vocabulary();
    match &theory.question {
        Question::LeftOrder => Conclusion::NotLeftOrderable,
        Question::BiOrder => Conclusion::NotBiOrderable,
        Question::CircularOrder => Conclusion::NotCircularlyOrderable,
        Question::BiCircularOrder => Conclusion::NoBiInvariantCircularOrder,
        Question::Torsion(t) => Conclusion::IsTorsion { term: show(t, &vocab) },
        Question::GeneralisedTorsion(t) => Conclusion::IsGeneralisedTorsion { term: show(t, &vocab) },
        Question::MonoidMembership(t1, t2) => Conclusion::MonoidMembership {
            t1: show(t1, &vocab),
            t2: show(t2, &vocab),
        },
        Question::ClosureMembership { target, generators } => Conclusion::InClosure {
            target: show(target, &vocab),
            generators: generators.iter().map(|g| show(g, &vocab)).collect(),
        },
        Question::FixedPoint { .. } => Conclusion::NoNontrivialLeftOrderableQuotient,
        Question::Statements => Conclusion::StatementsInconsistent,
    }
}

/// Maps a theory and its checked evidence to a verdict. Refuses theories
/// whose shape fits no criterion for their question. Dependency and
/// cofinality premises are the caller's responsibility.
pub fn interpret(theory: &TheorySpec, evidence: &Evidence) -> Result<Verdict, HarnessError> {
    let criterion = classify(theory).map_err(|e| HarnessError::Shape(e.to_string()))?;
    let mut caveats = Vec::new();
    let conclusion = match evidence {
        Evidence::Proof { verified: true, .. } => {
            if theory.case.is_some() {
                caveats.push("refutes one branch of a case split only".to_string());
                Conclusion::CaseRefuted
            } else {
                refutation_conclusion(theory)
            }
        }
        Evidence::Model {
            size,
            verified: true,
            confirmed,
            ..
        } => Conclusion::ConsistentAtSize {
            size: *size,
            confirmed: confirmed.clone(),
        },
        _ => return Ok(Verdict::unknown(evidence.clone())),
    };
    let mut justification = match (&conclusion, criterion) {
        (Conclusion::ConsistentAtSize { .. }, _) => Criterion::Consistency.describe().to_string(),
        (_, c) => c.describe().to_string(),
    };
    if matches!(evidence, Evidence::Proof { .. }) && theory.statements.strict_count() == 1 {
        justification.push_str("; one statement strengthened by the order-reversal symmetry");
    }
    justification.push_str("; evidence: ");
    justification.push_str(&evidence.summary());
    Ok(Verdict {
        conclusion,
        justification,
        evidence: evidence.clone(),
        caveats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, StatementKind, StatementSet};
    use crate::theories::AxiomGroup;

    fn torsion_spec(groups: Vec<AxiomGroup>) -> TheorySpec {
        let p = parse_presentation("< a | a^4 = e >").unwrap();
        let a = Term::constant(p.vocabulary().lookup("a").unwrap());
        TheorySpec::new(p, groups, StatementSet::new(StatementKind::Inequalities), Question::Torsion(a))
    }

    fn proof() -> Evidence {
        Evidence::Proof {
            steps: 7,
            verified: true,
            rejection: None,
        }
    }

    #[test]
    fn torsion_refutation_names_the_criterion() {
        let v = interpret(&torsion_spec(vec![AxiomGroup::AxPLPrime]), &proof()).unwrap();
        assert_eq!(v.conclusion, Conclusion::IsTorsion { term: "a".into() });
        assert!(v.justification.starts_with("torsion criterion"));
        assert_eq!(v.exit_code(), 0);
    }

    #[test]
    fn shape_mismatch_is_refused() {
        assert!(matches!(
            interpret(&torsion_spec(vec![AxiomGroup::AxPL]), &proof()),
            Err(HarnessError::Shape(_))
        ));
    }

    #[test]
    fn unverified_or_open_outcomes_are_unknown() {
        let spec = torsion_spec(vec![AxiomGroup::AxPLPrime]);
        for e in [
            Evidence::Saturated,
            Evidence::ResourceOut { reason: "time".into() },
            Evidence::Proof {
                steps: 3,
                verified: false,
                rejection: Some("bad".into()),
            },
            Evidence::Unverified { claim: "THEOREM PROVED".into() },
        ] {
            let v = interpret(&spec, &e).unwrap();
            assert!(v.is_unknown());
            assert_eq!(v.exit_code(), 2);
        }
    }

    #[test]
    fn interpretation_is_deterministic() {
        let spec = torsion_spec(vec![AxiomGroup::AxPLPrime]);
        assert_eq!(interpret(&spec, &proof()).unwrap(), interpret(&spec, &proof()).unwrap());
    }
}
