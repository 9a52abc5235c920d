//! Refutational saturation prover with checkable proof output.

mod engine;
pub mod proof;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use proof::{verify_proof, Proof, ProofParseError, ProofRejection, ProofStep, Rule, Simplification};

use crate::kernel::ClauseSet;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProverError {
    #[error("invalid limits: {0}")]
    Limits(String),
    #[error("invalid input clause: {0}")]
    Input(String),
}

/// Resource limits for one saturation run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaturationLimits {
    pub max_seconds: f64,
    /// Kept clauses, inputs included.
    pub max_clauses: usize,
    /// Derived clauses heavier than this are discarded.
    pub max_weight: u32,
    /// Given clauses picked by age and by weight, per cycle.
    pub pick_ratio: (u32, u32),
}

impl Default for SaturationLimits {
    fn default() -> Self {
        SaturationLimits {
            max_seconds: 60.0,
            max_clauses: 2_000_000,
            max_weight: 100,
            pick_ratio: (1, 4),
        }
    }
}

impl SaturationLimits {
    pub fn with_seconds(seconds: f64) -> Self {
        SaturationLimits {
            max_seconds: seconds,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ProverError> {
        if !(self.max_seconds.is_finite() && self.max_seconds > 0.0) {
            return Err(ProverError::Limits(format!("max_seconds must be positive, got {}", self.max_seconds)));
        }
        if self.max_clauses == 0 || self.max_weight == 0 {
            return Err(ProverError::Limits("max_clauses and max_weight must be positive".into()));
        }
        if self.pick_ratio.0 + self.pick_ratio.1 == 0 {
            return Err(ProverError::Limits("pick ratio must not be 0:0".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    /// The empty clause was derived.
    Refutation,
    /// No inference applies and nothing was discarded: the input is satisfiable.
    Saturated,
    /// A limit was reached; the reason says which.
    ResourceOut(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProverStats {
    pub given: u64,
    pub generated: u64,
    pub kept: usize,
}

#[derive(Clone, Debug)]
pub struct ProverOutcome {
    pub status: Status,
    pub proof: Option<Proof>,
    pub stats: ProverStats,
    pub seconds: f64,
    /// Clauses were discarded for weight, so saturation proves nothing.
    pub incomplete: bool,
}

/// Runs the given-clause loop until refutation, saturation or a limit.
pub fn saturate(cs: &ClauseSet, limits: &SaturationLimits) -> Result<ProverOutcome, ProverError> {
    limits.validate()?;
    for c in cs {
        c.validate(&cs.vocab).map_err(|e| ProverError::Input(e.to_string()))?;
    }
    let start = Instant::now();
    let mut engine = engine::Engine::new(cs, *limits);
    let (status, proof) = engine.run();
    Ok(ProverOutcome {
        status,
        proof,
        stats: engine.stats,
        seconds: start.elapsed().as_secs_f64(),
        incomplete: engine.incomplete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Clause, Literal, Provenance, Term};
    use crate::presentation::{parse_presentation, relations_to_axioms};
    use crate::theories::{build_axiom_group, AxiomGroup};

    fn theory(presentation: &str, groups: &[AxiomGroup]) -> ClauseSet {
        let p = parse_presentation(presentation).unwrap();
        let mut cs = build_axiom_group(&AxiomGroup::Gr, &p.vocabulary()).unwrap();
        cs.extend(&relations_to_axioms(&p)).unwrap();
        for g in groups {
            let more = build_axiom_group(g, &cs.vocab).unwrap();
            cs.extend(&more).unwrap();
        }
        cs
    }

    fn refute(cs: &ClauseSet, seconds: f64) -> Proof {
        let out = saturate(cs, &SaturationLimits::with_seconds(seconds)).unwrap();
        assert_eq!(out.status, Status::Refutation, "{:?}", out.stats);
        let proof = out.proof.unwrap();
        verify_proof(&proof, cs).unwrap();
        proof
    }

    #[test]
    fn klein_bottle_group_is_not_biorderable() {
        let mut cs = theory("< a, b | a^-1 b a = b^-1 >", &[AxiomGroup::AxL, AxiomGroup::OrdB]);
        let b = Term::constant(cs.vocab.lookup("b").unwrap());
        cs.push(Clause::unit(Literal::neq(b, Term::identity()), Provenance::new("stmt", 1)))
            .unwrap();
        let proof = refute(&cs, 20.0);
        let text = proof.to_text(&cs.vocab);
        let back = Proof::parse(&text, &cs.vocab).unwrap();
        assert_eq!(back.to_text(&cs.vocab), text);
        verify_proof(&back, &cs).unwrap();
    }

    #[test]
    fn torsion_element_refutes_positive_cone() {
        let mut cs = theory("< a | a^4 = e >", &[AxiomGroup::AxPLPrime]);
        let p = cs.vocab.lookup("P").unwrap();
        let a = Term::constant(cs.vocab.lookup("a").unwrap());
        cs.push(Clause::unit(Literal::pred(p, vec![a]), Provenance::new("question", 1)))
            .unwrap();
        refute(&cs, 20.0);
    }

    #[test]
    fn group_axioms_alone_are_consistent() {
        let cs = theory("< a | >", &[]);
        let out = saturate(
            &cs,
            &SaturationLimits {
                max_seconds: 2.0,
                max_clauses: 20_000,
                ..SaturationLimits::default()
            },
        )
        .unwrap();
        assert_ne!(out.status, Status::Refutation);
    }

    #[test]
    fn tampered_proofs_are_rejected() {
        let mut cs = theory("< a | a^4 = e >", &[AxiomGroup::AxPLPrime]);
        let p = cs.vocab.lookup("P").unwrap();
        let a = Term::constant(cs.vocab.lookup("a").unwrap());
        cs.push(Clause::unit(Literal::pred(p, vec![a]), Provenance::new("question", 1)))
            .unwrap();
        let proof = refute(&cs, 20.0);

        let mut forward = proof.clone();
        let last = forward.steps.len() - 1;
        if let Some(s) = forward.steps[last].rule.premises().first().copied() {
            let bumped = forward.steps[last].id;
            for step in &mut forward.steps {
                if step.id == s {
                    step.id = bumped + 1;
                }
            }
            assert!(verify_proof(&forward, &cs).is_err());
        }

        let mut truncated = proof.clone();
        truncated.steps.pop();
        assert!(verify_proof(&truncated, &cs).is_err());

        let mut wrong = proof;
        let k = wrong.steps.iter().position(|s| !s.clause.is_empty() && s.rule.premises().len() == 2);
        if let Some(k) = k {
            let c = &wrong.steps[k].clause;
            let mut lits = c.literals().to_vec();
            lits[0] = lits[0].negated();
            wrong.steps[k].clause = Clause::new(lits, c.provenance.clone());
            assert!(verify_proof(&wrong, &cs).is_err());
        }
    }

    #[test]
    fn bad_limits_are_refused() {
        let cs = theory("< a | >", &[]);
        let bad = SaturationLimits {
            max_seconds: 0.0,
            ..SaturationLimits::default()
        };
        assert!(saturate(&cs, &bad).is_err());
    }
}
