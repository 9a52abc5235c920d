//! Text rendering of terms and clauses in the Prover9 dialect.

use std::fmt::Write;

use super::clause::{Atom, Clause, Literal};
use super::symbol::{SymbolKind, Vocabulary};
use super::term::Term;

/// How variables are named in rendered text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarNames {
    /// `x, y, z, u, v, w, v6, v7, ...` as in hand-written Prover9 input.
    Letters,
    /// `v0, v1, ...`, used in proof files.
    Indexed,
}

impl VarNames {
    pub fn name(self, v: u32) -> String {
        const LETTERS: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
        match self {
            VarNames::Letters if (v as usize) < LETTERS.len() => LETTERS[v as usize].to_string(),
            _ => format!("v{v}"),
        }
    }
}

/// Product spacing: `a * b` for top-level equations, `a*b` inside atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Spaced,
    Compact,
}

pub fn term_to_string(t: &Term, vocab: &Vocabulary, vars: VarNames, spacing: Spacing) -> String {
    let mut out = String::new();
    write_term(&mut out, t, vocab, vars, spacing);
    out
}

pub fn write_term(out: &mut String, t: &Term, vocab: &Vocabulary, vars: VarNames, spacing: Spacing) {
    match t {
        Term::Var(v) => out.push_str(&vars.name(*v)),
        Term::App(_) => {
            let sym = t.head().unwrap();
            let args = t.args();
            match vocab.kind(sym) {
                SymbolKind::Product => {
                    write_operand(out, &args[0], vocab, vars, spacing);
                    out.push_str(if spacing == Spacing::Spaced { " * " } else { "*" });
                    write_operand(out, &args[1], vocab, vars, spacing);
                }
                SymbolKind::Inverse => {
                    write_operand(out, &args[0], vocab, vars, spacing);
                    out.push('\'');
                }
                _ => {
                    out.push_str(vocab.name(sym));
                    if !args.is_empty() {
                        out.push('(');
                        for (i, a) in args.iter().enumerate() {
                            if i > 0 {
                                out.push(',');
                            }
                            write_term(out, a, vocab, vars, spacing);
                        }
                        out.push(')');
                    }
                }
            }
        }
    }
}

fn write_operand(out: &mut String, t: &Term, vocab: &Vocabulary, vars: VarNames, spacing: Spacing) {
    if t.head() == Some(Vocabulary::PRODUCT) {
        out.push('(');
        write_term(out, t, vocab, vars, spacing);
        out.push(')');
    } else {
        write_term(out, t, vocab, vars, spacing);
    }
}

/// Renders an atom. Equations are wrapped in parentheses when `in_formula`.
pub fn atom_to_string(a: &Atom, positive: bool, vocab: &Vocabulary, vars: VarNames, in_formula: bool) -> String {
    let mut out = String::new();
    match a {
        Atom::Eq(l, r) => {
            let op = if positive { "=" } else { "!=" };
            if in_formula {
                out.push('(');
                write_term(&mut out, l, vocab, vars, Spacing::Compact);
                out.push_str(op);
                write_term(&mut out, r, vocab, vars, Spacing::Compact);
                out.push(')');
            } else {
                write_term(&mut out, l, vocab, vars, Spacing::Spaced);
                let _ = write!(out, " {op} ");
                write_term(&mut out, r, vocab, vars, Spacing::Spaced);
            }
        }
        Atom::Pred(p, args) => {
            out.push_str(vocab.name(*p));
            out.push('(');
            for (i, t) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_term(&mut out, t, vocab, vars, Spacing::Compact);
            }
            out.push(')');
        }
    }
    out
}

pub fn literal_to_string(l: &Literal, vocab: &Vocabulary, vars: VarNames, in_formula: bool) -> String {
    match (&l.atom, l.positive) {
        (Atom::Eq(..), _) => atom_to_string(&l.atom, l.positive, vocab, vars, in_formula),
        (Atom::Pred(..), true) => atom_to_string(&l.atom, true, vocab, vars, in_formula),
        (Atom::Pred(..), false) => format!("- {}", atom_to_string(&l.atom, true, vocab, vars, in_formula)),
    }
}

/// Renders a clause as a Prover9 formula without the final period.
///
/// Units are written plainly; clauses mixing signs become implications whose
/// antecedent holds the negative atoms; all-positive clauses become
/// disjunctions. The empty clause renders as `$F`.
pub fn clause_to_formula(c: &Clause, vocab: &Vocabulary, vars: VarNames) -> String {
    let lits = c.literals();
    match lits {
        [] => "$F".to_string(),
        [l] => literal_to_string(l, vocab, vars, false),
        _ => {
            let neg: Vec<&Literal> = lits.iter().filter(|l| !l.positive).collect();
            let pos: Vec<&Literal> = lits.iter().filter(|l| l.positive).collect();
            if neg.is_empty() || pos.is_empty() {
                lits.iter()
                    .map(|l| literal_to_string(l, vocab, vars, true))
                    .collect::<Vec<_>>()
                    .join(" | ")
            } else {
                let ante = neg
                    .iter()
                    .map(|l| atom_to_string(&l.atom, true, vocab, vars, true))
                    .collect::<Vec<_>>()
                    .join(" & ");
                let cons = pos
                    .iter()
                    .map(|l| atom_to_string(&l.atom, true, vocab, vars, true))
                    .collect::<Vec<_>>()
                    .join(" | ");
                format!("{ante} -> {cons}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::clause::Provenance;

    #[test]
    fn spaced_and_compact_products() {
        let v = Vocabulary::group();
        let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));
        let l = Term::product(Term::product(x.clone(), y.clone()), z.clone());
        assert_eq!(term_to_string(&l, &v, VarNames::Letters, Spacing::Spaced), "(x * y) * z");
        assert_eq!(term_to_string(&l, &v, VarNames::Letters, Spacing::Compact), "(x*y)*z");
        let inv = Term::inverse(Term::product(x, y));
        assert_eq!(term_to_string(&inv, &v, VarNames::Indexed, Spacing::Compact), "(v0*v1)'");
    }

    #[test]
    fn implication_form() {
        let mut v = Vocabulary::group();
        let l = v.add_predicate("L", 2).unwrap();
        let c = Clause::new(
            vec![
                Literal::not_pred(l, vec![Term::var(0), Term::var(1)]),
                Literal::not_pred(l, vec![Term::var(1), Term::var(2)]),
                Literal::pred(l, vec![Term::var(0), Term::var(2)]),
            ],
            Provenance::default(),
        );
        assert_eq!(clause_to_formula(&c, &v, VarNames::Letters), "L(x,y) & L(y,z) -> L(x,z)");
    }
}
