//! Transcriptions of finite models between order and positive-cone forms.

use crate::modelfinder::{FiniteModel, ModelError, PredicateTable};

fn table<'a>(m: &'a FiniteModel, name: &str, arity: usize) -> Result<&'a PredicateTable, ModelError> {
    match m.predicate(name) {
        Some(t) if t.arity == arity => Ok(t),
        _ => Err(ModelError::Vocabulary(format!("model has no {arity}-ary predicate {name}"))),
    }
}

fn replace(m: &FiniteModel, drop: &str, name: &str, t: PredicateTable) -> FiniteModel {
    let mut out = m.clone();
    out.predicates.remove(drop);
    out.predicates.insert(name.to_string(), t);
    out
}

/// `P(x)` iff `e < x`.
pub fn order_to_cone(m: &FiniteModel) -> Result<FiniteModel, ModelError> {
    let l = table(m, "L", 2)?;
    let n = m.size;
    let mut p = PredicateTable::new(1, n);
    for x in 0..n as u32 {
        p.set(n, &[x], l.get(n, &[m.identity, x]));
    }
    Ok(replace(m, "L", "P", p))
}

/// `x < y` iff `P(x' * y)`.
pub fn cone_to_order(m: &FiniteModel) -> Result<FiniteModel, ModelError> {
    let p = table(m, "P", 1)?;
    let n = m.size;
    let mut l = PredicateTable::new(2, n);
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            l.set(n, &[x, y], p.get(n, &[m.mul(m.inv(x), y)]));
        }
    }
    Ok(replace(m, "P", "L", l))
}

/// `P(x, y)` iff `C(e, x, y)`.
pub fn circular_to_cone(m: &FiniteModel) -> Result<FiniteModel, ModelError> {
    let c = table(m, "C", 3)?;
    let n = m.size;
    let mut p = PredicateTable::new(2, n);
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            p.set(n, &[x, y], c.get(n, &[m.identity, x, y]));
        }
    }
    Ok(replace(m, "C", "P", p))
}

/// `C(x, y, z)` iff `P(x' * y, x' * z)`.
pub fn cone_to_circular(m: &FiniteModel) -> Result<FiniteModel, ModelError> {
    let p = table(m, "P", 2)?;
    let n = m.size;
    let mut c = PredicateTable::new(3, n);
    for x in 0..n as u32 {
        let xi = m.inv(x);
        for y in 0..n as u32 {
            for z in 0..n as u32 {
                c.set(n, &[x, y, z], p.get(n, &[m.mul(xi, y), m.mul(xi, z)]));
            }
        }
    }
    Ok(replace(m, "P", "C", c))
}

/// The opposite order: `x <op y` iff `y < x`, and `Cop(x, y, z)` iff
/// `C(x, z, y)`. Models without `L` or `C` pass through unchanged.
pub fn reverse_order(m: &FiniteModel) -> FiniteModel {
    let n = m.size;
    let mut out = m.clone();
    if let Ok(l) = table(m, "L", 2) {
        let mut r = PredicateTable::new(2, n);
        for t in l.tuples(n) {
            r.set(n, &[t[1], t[0]], true);
        }
        out.predicates.insert("L".into(), r);
    }
    if let Ok(c) = table(m, "C", 3) {
        let mut r = PredicateTable::new(3, n);
        for t in c.tuples(n) {
            r.set(n, &[t[0], t[2], t[1]], true);
        }
        out.predicates.insert("C".into(), r);
    }
    out
}
