use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TheoryError;
use crate::kernel::{Clause, ClauseSet, Literal, Provenance, SymbolId, Term, Vocabulary};

/// A named axiom system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxiomGroup {
    Gr,
    AxR,
    AxL,
    AxLPrime,
    OrdL,
    OrdB,
    AxC,
    AxCPrime,
    OrdCL,
    OrdCB,
    AxPL,
    AxPLPrime,
    PB,
    AxPCL,
    AxPCLPrime,
    /// Cone axioms for circular orders without cyclicity.
    AxPCLBar,
    /// Cone axioms for circular orders without cyclicity and connectedness.
    AxPCLBarPrime,
    PCB,
    CC,
    Isolated(Vec<u32>),
}

impl AxiomGroup {
    /// Label used in clause provenance and TPTP names.
    pub fn label(&self) -> &'static str {
        match self {
            AxiomGroup::Gr => "gr",
            AxiomGroup::AxR => "axr",
            AxiomGroup::AxL | AxiomGroup::AxLPrime => "axl",
            AxiomGroup::OrdL => "ordl",
            AxiomGroup::OrdB => "ordb",
            AxiomGroup::AxC | AxiomGroup::AxCPrime => "axc",
            AxiomGroup::OrdCL => "ordcl",
            AxiomGroup::OrdCB => "ordcb",
            AxiomGroup::AxPL | AxiomGroup::AxPLPrime => "axpl",
            AxiomGroup::PB => "pb",
            AxiomGroup::AxPCL | AxiomGroup::AxPCLPrime | AxiomGroup::AxPCLBar | AxiomGroup::AxPCLBarPrime => "axpcl",
            AxiomGroup::PCB => "pcb",
            AxiomGroup::CC => "cc",
            AxiomGroup::Isolated(_) => "isolated",
        }
    }

    /// Predicate name and arity used by the group, if any.
    pub fn predicate(&self) -> Option<(&'static str, usize)> {
        match self {
            AxiomGroup::Gr | AxiomGroup::AxR => None,
            AxiomGroup::AxL | AxiomGroup::AxLPrime | AxiomGroup::OrdL | AxiomGroup::OrdB => Some(("L", 2)),
            AxiomGroup::AxC | AxiomGroup::AxCPrime | AxiomGroup::OrdCL | AxiomGroup::OrdCB => Some(("C", 3)),
            AxiomGroup::AxPL | AxiomGroup::AxPLPrime | AxiomGroup::PB | AxiomGroup::CC | AxiomGroup::Isolated(_) => {
                Some(("P", 1))
            }
            AxiomGroup::AxPCL
            | AxiomGroup::AxPCLPrime
            | AxiomGroup::AxPCLBar
            | AxiomGroup::AxPCLBarPrime
            | AxiomGroup::PCB => Some(("P", 2)),
        }
    }
}

impl fmt::Display for AxiomGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxiomGroup::Gr => "Gr",
            AxiomGroup::AxR => "AxR",
            AxiomGroup::AxL => "AxL",
            AxiomGroup::AxLPrime => "AxL'",
            AxiomGroup::OrdL => "OrdL",
            AxiomGroup::OrdB => "OrdB",
            AxiomGroup::AxC => "AxC",
            AxiomGroup::AxCPrime => "AxC'",
            AxiomGroup::OrdCL => "OrdCL",
            AxiomGroup::OrdCB => "OrdCB",
            AxiomGroup::AxPL => "AxPL",
            AxiomGroup::AxPLPrime => "AxPL'",
            AxiomGroup::PB => "PB",
            AxiomGroup::AxPCL => "AxPCL",
            AxiomGroup::AxPCLPrime => "AxPCL'",
            AxiomGroup::AxPCLBar => "AxPCLbar",
            AxiomGroup::AxPCLBarPrime => "AxPCLbar'",
            AxiomGroup::PCB => "PCB",
            AxiomGroup::CC => "CC",
            AxiomGroup::Isolated(m) => {
                let ms: Vec<String> = m.iter().map(u32::to_string).collect();
                return write!(f, "Isolated{{{}}}", ms.join(","));
            }
        };
        f.write_str(s)
    }
}

impl FromStr for AxiomGroup {
    type Err = TheoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let g = match s {
            "Gr" => AxiomGroup::Gr,
            "AxR" | "Ax_R" => AxiomGroup::AxR,
            "AxL" => AxiomGroup::AxL,
            "AxL'" => AxiomGroup::AxLPrime,
            "OrdL" => AxiomGroup::OrdL,
            "OrdB" => AxiomGroup::OrdB,
            "AxC" => AxiomGroup::AxC,
            "AxC'" => AxiomGroup::AxCPrime,
            "OrdCL" => AxiomGroup::OrdCL,
            "OrdCB" => AxiomGroup::OrdCB,
            "AxPL" => AxiomGroup::AxPL,
            "AxPL'" => AxiomGroup::AxPLPrime,
            "PB" => AxiomGroup::PB,
            "AxPCL" => AxiomGroup::AxPCL,
            "AxPCL'" => AxiomGroup::AxPCLPrime,
            "AxPCLbar" => AxiomGroup::AxPCLBar,
            "AxPCLbar'" => AxiomGroup::AxPCLBarPrime,
            "PCB" => AxiomGroup::PCB,
            "CC" => AxiomGroup::CC,
            _ => {
                let inner = s
                    .strip_prefix("Isolated")
                    .map(str::trim)
                    .and_then(|r| r.strip_prefix('{').or_else(|| r.strip_prefix('(')))
                    .and_then(|r| r.strip_suffix('}').or_else(|| r.strip_suffix(')')))
                    .ok_or_else(|| TheoryError::UnknownGroup(s.to_string()))?;
                let mut ms = Vec::new();
                for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    let m: u32 = part.parse().map_err(|_| TheoryError::UnknownGroup(s.to_string()))?;
                    ms.push(m);
                }
                AxiomGroup::Isolated(ms)
            }
        };
        Ok(g)
    }
}

fn x(i: u32) -> Term {
    Term::var(i)
}

fn mul(a: Term, b: Term) -> Term {
    Term::product(a, b)
}

fn inv(a: Term) -> Term {
    Term::inverse(a)
}

fn e() -> Term {
    Term::identity()
}

/// The clauses of `g`, labelled with the group label and their 1-based
/// position in the full (unprimed) listing.
pub fn build_axiom_group(g: &AxiomGroup, vocab: &Vocabulary) -> Result<ClauseSet, TheoryError> {
    let mut vocab = vocab.clone();
    let pred = match g.predicate() {
        Some((name, arity)) => Some(vocab.add_predicate(name, arity)?),
        None => None,
    };
    let listing: Vec<(u32, Vec<Literal>)> = match g {
        AxiomGroup::Gr => group_axioms(),
        AxiomGroup::AxR => return Err(TheoryError::MissingParameter("AxR needs a presentation".into())),
        AxiomGroup::AxL => order_axioms(pred.unwrap(), true),
        AxiomGroup::AxLPrime => order_axioms(pred.unwrap(), false),
        AxiomGroup::OrdL => {
            let l = pred.unwrap();
            vec![(
                1,
                vec![
                    Literal::not_pred(l, vec![x(0), x(1)]),
                    Literal::pred(l, vec![mul(x(2), x(0)), mul(x(2), x(1))]),
                ],
            )]
        }
        AxiomGroup::OrdB => {
            let l = pred.unwrap();
            vec![(
                1,
                vec![
                    Literal::not_pred(l, vec![x(0), x(1)]),
                    Literal::pred(l, vec![mul(mul(x(2), x(0)), x(3)), mul(mul(x(2), x(1)), x(3))]),
                ],
            )]
        }
        AxiomGroup::AxC => cyclic_axioms(pred.unwrap(), true),
        AxiomGroup::AxCPrime => cyclic_axioms(pred.unwrap(), false),
        AxiomGroup::OrdCL => {
            let c = pred.unwrap();
            vec![(
                1,
                vec![
                    Literal::not_pred(c, vec![x(0), x(1), x(2)]),
                    Literal::pred(c, vec![mul(x(3), x(0)), mul(x(3), x(1)), mul(x(3), x(2))]),
                ],
            )]
        }
        AxiomGroup::OrdCB => {
            let c = pred.unwrap();
            let conj = |t: Term| mul(mul(x(3), t), x(4));
            vec![(
                1,
                vec![
                    Literal::not_pred(c, vec![x(0), x(1), x(2)]),
                    Literal::pred(c, vec![conj(x(0)), conj(x(1)), conj(x(2))]),
                ],
            )]
        }
        AxiomGroup::AxPL => cone_axioms(pred.unwrap(), true),
        AxiomGroup::AxPLPrime => cone_axioms(pred.unwrap(), false),
        AxiomGroup::PB => {
            let p = pred.unwrap();
            vec![(
                1,
                vec![
                    Literal::not_pred(p, vec![x(0)]),
                    Literal::pred(p, vec![mul(mul(x(1), x(0)), inv(x(1)))]),
                ],
            )]
        }
        AxiomGroup::AxPCL => circular_cone_axioms(pred.unwrap(), true, true),
        AxiomGroup::AxPCLPrime => circular_cone_axioms(pred.unwrap(), true, false),
        AxiomGroup::AxPCLBar => circular_cone_axioms(pred.unwrap(), false, true),
        AxiomGroup::AxPCLBarPrime => circular_cone_axioms(pred.unwrap(), false, false),
        AxiomGroup::PCB => {
            let p = pred.unwrap();
            let conj = |t: Term| mul(mul(x(2), t), inv(x(2)));
            vec![(
                1,
                vec![
                    Literal::not_pred(p, vec![x(0), x(1)]),
                    Literal::pred(p, vec![conj(x(0)), conj(x(1))]),
                ],
            )]
        }
        AxiomGroup::CC => {
            let p = pred.unwrap();
            vec![
                (
                    1,
                    vec![
                        Literal::not_pred(p, vec![x(0)]),
                        Literal::not_pred(p, vec![x(1)]),
                        Literal::pred(p, vec![mul(x(0), x(1))]),
                    ],
                ),
                (2, vec![Literal::pred(p, vec![x(0)]), Literal::pred(p, vec![inv(x(0))])]),
            ]
        }
        AxiomGroup::Isolated(ms) => {
            if ms.is_empty() {
                return Err(TheoryError::Domain("Isolated needs a nonempty set of exponents".into()));
            }
            let p = pred.unwrap();
            let mut ms = ms.clone();
            ms.sort_unstable();
            ms.dedup();
            let mut out = Vec::new();
            for (i, &m) in ms.iter().enumerate() {
                let power = x(0).power(m).map_err(|_| TheoryError::Domain("isolation exponent must be positive".into()))?;
                out.push((
                    i as u32 + 1,
                    vec![Literal::not_pred(p, vec![power]), Literal::pred(p, vec![x(0)])],
                ));
            }
            out
        }
    };
    let label = g.label();
    let mut cs = ClauseSet::new(vocab);
    for (index, lits) in listing {
        cs.push(Clause::new(lits, Provenance::new(label, index)))?;
    }
    Ok(cs)
}

fn group_axioms() -> Vec<(u32, Vec<Literal>)> {
    vec![
        (1, vec![Literal::eq(mul(mul(x(0), x(1)), x(2)), mul(x(0), mul(x(1), x(2))))]),
        (2, vec![Literal::eq(mul(x(0), e()), x(0))]),
        (3, vec![Literal::eq(mul(e(), x(0)), x(0))]),
        (4, vec![Literal::eq(mul(inv(x(0)), x(0)), e())]),
        (5, vec![Literal::eq(mul(x(0), inv(x(0))), e())]),
    ]
}

fn order_axioms(l: SymbolId, connected: bool) -> Vec<(u32, Vec<Literal>)> {
    let mut out = vec![
        (1, vec![Literal::not_pred(l, vec![x(0), x(0)])]),
        (
            2,
            vec![
                Literal::not_pred(l, vec![x(0), x(1)]),
                Literal::not_pred(l, vec![x(1), x(2)]),
                Literal::pred(l, vec![x(0), x(2)]),
            ],
        ),
    ];
    if connected {
        out.push((
            3,
            vec![
                Literal::eq(x(0), x(1)),
                Literal::pred(l, vec![x(0), x(1)]),
                Literal::pred(l, vec![x(1), x(0)]),
            ],
        ));
    }
    out
}

fn cyclic_axioms(c: SymbolId, connected: bool) -> Vec<(u32, Vec<Literal>)> {
    let mut out = vec![
        (
            1,
            vec![
                Literal::not_pred(c, vec![x(0), x(1), x(2)]),
                Literal::pred(c, vec![x(1), x(2), x(0)]),
            ],
        ),
        (2, vec![Literal::not_pred(c, vec![x(0), x(1), x(1)])]),
        (
            3,
            vec![
                Literal::not_pred(c, vec![x(0), x(1), x(2)]),
                Literal::not_pred(c, vec![x(0), x(2), x(3)]),
                Literal::pred(c, vec![x(0), x(1), x(3)]),
            ],
        ),
    ];
    if connected {
        out.push((
            4,
            vec![
                Literal::eq(x(0), x(1)),
                Literal::eq(x(1), x(2)),
                Literal::eq(x(2), x(0)),
                Literal::pred(c, vec![x(0), x(1), x(2)]),
                Literal::pred(c, vec![x(0), x(2), x(1)]),
            ],
        ));
    }
    out
}

fn cone_axioms(p: SymbolId, connected: bool) -> Vec<(u32, Vec<Literal>)> {
    let mut out = vec![
        (1, vec![Literal::not_pred(p, vec![e()])]),
        (
            2,
            vec![
                Literal::not_pred(p, vec![x(0)]),
                Literal::not_pred(p, vec![x(1)]),
                Literal::pred(p, vec![mul(x(0), x(1))]),
            ],
        ),
    ];
    if connected {
        out.push((
            3,
            vec![
                Literal::eq(x(0), e()),
                Literal::pred(p, vec![x(0)]),
                Literal::pred(p, vec![inv(x(0))]),
            ],
        ));
    }
    out
}

fn circular_cone_axioms(p: SymbolId, cyclic: bool, connected: bool) -> Vec<(u32, Vec<Literal>)> {
    let mut out = Vec::new();
    if cyclic {
        out.push((
            1,
            vec![
                Literal::not_pred(p, vec![x(0), x(1)]),
                Literal::pred(p, vec![mul(inv(x(0)), x(1)), inv(x(0))]),
            ],
        ));
    }
    out.push((2, vec![Literal::not_pred(p, vec![x(0), x(0)])]));
    out.push((
        3,
        vec![
            Literal::not_pred(p, vec![x(0), x(1)]),
            Literal::not_pred(p, vec![x(1), x(2)]),
            Literal::pred(p, vec![x(0), x(2)]),
        ],
    ));
    if connected {
        out.push((
            4,
            vec![
                Literal::eq(e(), x(0)),
                Literal::eq(e(), x(1)),
                Literal::eq(x(0), x(1)),
                Literal::pred(p, vec![x(0), x(1)]),
                Literal::pred(p, vec![x(1), x(0)]),
            ],
        ));
    }
    out
}
