use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a symbol inside a [`Vocabulary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolId(pub u32);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolKind {
    Product,
    Inverse,
    Identity,
    Generator,
    Predicate(u8),
}

impl SymbolKind {
    pub fn arity(self) -> usize {
        match self {
            SymbolKind::Product => 2,
            SymbolKind::Inverse => 1,
            SymbolKind::Identity | SymbolKind::Generator => 0,
            SymbolKind::Predicate(n) => n as usize,
        }
    }

    pub fn is_predicate(self) -> bool {
        matches!(self, SymbolKind::Predicate(_))
    }

    pub fn is_function(self) -> bool {
        !self.is_predicate()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
    pub precedence: u32,
    pub weight: u32,
}

impl Symbol {
    pub fn arity(&self) -> usize {
        self.kind.arity()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown symbol id {0}")]
    UnknownId(u32),
    #[error("name `{0}` is reserved")]
    Reserved(String),
    #[error("symbol `{0}` is already declared with a different kind")]
    KindClash(String),
    #[error("symbol `{name}` expects {expected} arguments, found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("symbol weights must be positive and at least the variable weight ({0})")]
    Weight(u32),
    #[error("precedence list must name every function symbol exactly once")]
    Precedence,
}

/// Names that can never be generators.
pub const RESERVED_NAMES: &[&str] = &["e", "*", "'", "L", "C", "P"];

const PREDICATE_PRECEDENCE_BASE: u32 = 1 << 20;

/// Symbol table shared by terms and clauses.
///
/// The three group symbols always occupy ids 0..3, so group terms can be
/// built without a vocabulary at hand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vocabulary {
    symbols: Vec<Symbol>,
    #[serde(skip)]
    index: HashMap<String, SymbolId>,
    var_weight: u32,
    uniform_weights: bool,
}

impl Default for Vocabulary {
    fn default() -> Self {
        Self::group()
    }
}

impl Vocabulary {
    pub const PRODUCT: SymbolId = SymbolId(0);
    pub const INVERSE: SymbolId = SymbolId(1);
    pub const IDENTITY: SymbolId = SymbolId(2);

    /// Vocabulary holding only product, inverse and identity.
    pub fn group() -> Self {
        let mut v = Vocabulary {
            symbols: Vec::new(),
            index: HashMap::new(),
            var_weight: 1,
            uniform_weights: true,
        };
        v.push("*", SymbolKind::Product, 2);
        v.push("'", SymbolKind::Inverse, 1);
        v.push("e", SymbolKind::Identity, 0);
        v
    }

    fn push(&mut self, name: &str, kind: SymbolKind, precedence: u32) -> SymbolId {
        let id = SymbolId(self.symbols.len() as u32);
        self.symbols.push(Symbol {
            name: name.to_string(),
            kind,
            precedence,
            weight: 1,
        });
        self.index.insert(name.to_string(), id);
        id
    }

    /// Rebuilds the name index, e.g. after deserialisation.
    pub fn reindex(&mut self) {
        self.index = self
            .symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.name.clone(), SymbolId(i as u32)))
            .collect();
    }

    /// Declares a generator constant. Redeclaring an existing generator
    /// returns its id.
    pub fn add_generator(&mut self, name: &str) -> Result<SymbolId, VocabError> {
        if RESERVED_NAMES.contains(&name) {
            return Err(VocabError::Reserved(name.to_string()));
        }
        if let Some(&id) = self.index.get(name) {
            return match self.symbols[id.index()].kind {
                SymbolKind::Generator => Ok(id),
                _ => Err(VocabError::KindClash(name.to_string())),
            };
        }
        let prec = 3 + self.generators().count() as u32;
        Ok(self.push(name, SymbolKind::Generator, prec))
    }

    /// Declares a predicate; predicates rank above every function symbol.
    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<SymbolId, VocabError> {
        if !(1..=3).contains(&arity) {
            return Err(VocabError::Arity {
                name: name.to_string(),
                expected: 3,
                found: arity,
            });
        }
        if let Some(&id) = self.index.get(name) {
            let kind = self.symbols[id.index()].kind;
            return if kind == SymbolKind::Predicate(arity as u8) {
                Ok(id)
            } else {
                Err(VocabError::KindClash(name.to_string()))
            };
        }
        if matches!(name, "e" | "*" | "'") {
            return Err(VocabError::Reserved(name.to_string()));
        }
        let prec = PREDICATE_PRECEDENCE_BASE + self.predicates().count() as u32;
        Ok(self.push(name, SymbolKind::Predicate(arity as u8), prec))
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.index.get(name).copied()
    }

    pub fn get(&self, id: SymbolId) -> Option<&Symbol> {
        self.symbols.get(id.index())
    }

    /// Panics on an id from another vocabulary; use [`Vocabulary::get`] when unsure.
    pub fn symbol(&self, id: SymbolId) -> &Symbol {
        &self.symbols[id.index()]
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id.index()].name
    }

    pub fn kind(&self, id: SymbolId) -> SymbolKind {
        self.symbols[id.index()].kind
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = SymbolId> + '_ {
        (0..self.symbols.len() as u32).map(SymbolId)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (SymbolId, &Symbol)> + '_ {
        self.symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (SymbolId(i as u32), s))
    }

    pub fn generators(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.symbols()
            .filter(|(_, s)| s.kind == SymbolKind::Generator)
            .map(|(id, _)| id)
    }

    pub fn predicates(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.symbols()
            .filter(|(_, s)| s.kind.is_predicate())
            .map(|(id, _)| id)
    }

    pub fn var_weight(&self) -> u32 {
        self.var_weight
    }

    /// True when every symbol and variable weighs 1, so term size equals KBO weight.
    pub fn uniform_weights(&self) -> bool {
        self.uniform_weights
    }

    pub fn weight(&self, id: SymbolId) -> u32 {
        self.symbols[id.index()].weight
    }

    pub fn precedence(&self, id: SymbolId) -> u32 {
        self.symbols[id.index()].precedence
    }

    pub fn set_weight(&mut self, name: &str, weight: u32) -> Result<(), VocabError> {
        let id = self
            .lookup(name)
            .ok_or_else(|| VocabError::UnknownSymbol(name.to_string()))?;
        if weight == 0 || weight < self.var_weight {
            return Err(VocabError::Weight(self.var_weight));
        }
        self.symbols[id.index()].weight = weight;
        self.refresh_uniform();
        Ok(())
    }

    pub fn set_var_weight(&mut self, weight: u32) -> Result<(), VocabError> {
        if weight == 0 || self.symbols.iter().any(|s| s.weight < weight) {
            return Err(VocabError::Weight(weight));
        }
        self.var_weight = weight;
        self.refresh_uniform();
        Ok(())
    }

    fn refresh_uniform(&mut self) {
        self.uniform_weights = self.var_weight == 1 && self.symbols.iter().all(|s| s.weight == 1);
    }

    /// Replaces the function-symbol precedence with the given order, lowest first.
    pub fn set_precedence(&mut self, lowest_first: &[&str]) -> Result<(), VocabError> {
        let functions: Vec<SymbolId> = self
            .symbols()
            .filter(|(_, s)| s.kind.is_function())
            .map(|(id, _)| id)
            .collect();
        if lowest_first.len() != functions.len() {
            return Err(VocabError::Precedence);
        }
        let mut seen = vec![false; self.symbols.len()];
        let mut ranks = Vec::with_capacity(lowest_first.len());
        for (rank, name) in lowest_first.iter().enumerate() {
            let id = self
                .lookup(name)
                .ok_or_else(|| VocabError::UnknownSymbol(name.to_string()))?;
            if !self.kind(id).is_function() || seen[id.index()] {
                return Err(VocabError::Precedence);
            }
            seen[id.index()] = true;
            ranks.push((id, rank as u32));
        }
        for (id, rank) in ranks {
            self.symbols[id.index()].precedence = rank;
        }
        Ok(())
    }

    /// Checks that `id` exists and takes `found` arguments.
    pub fn check_arity(&self, id: SymbolId, found: usize) -> Result<(), VocabError> {
        let sym = self.get(id).ok_or(VocabError::UnknownId(id.0))?;
        if sym.arity() != found {
            return Err(VocabError::Arity {
                name: sym.name.clone(),
                expected: sym.arity(),
                found,
            });
        }
        Ok(())
    }

    /// Adds every symbol of `other` that is missing here and returns the id
    /// translation from `other` to `self`.
    pub fn absorb(&mut self, other: &Vocabulary) -> Result<Vec<SymbolId>, VocabError> {
        let mut map = Vec::with_capacity(other.len());
        for (_, sym) in other.symbols() {
            let id = match sym.kind {
                SymbolKind::Generator => self.add_generator(&sym.name)?,
                SymbolKind::Predicate(n) => self.add_predicate(&sym.name, n as usize)?,
                kind => {
                    let id = self
                        .lookup(&sym.name)
                        .ok_or_else(|| VocabError::UnknownSymbol(sym.name.clone()))?;
                    if self.kind(id) != kind {
                        return Err(VocabError::KindClash(sym.name.clone()));
                    }
                    id
                }
            };
            map.push(id);
        }
        Ok(map)
    }
}

impl fmt::Display for Vocabulary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.symbols.iter().map(|s| s.name.as_str()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_symbols_have_fixed_ids() {
        let v = Vocabulary::group();
        assert_eq!(v.lookup("*"), Some(Vocabulary::PRODUCT));
        assert_eq!(v.lookup("'"), Some(Vocabulary::INVERSE));
        assert_eq!(v.lookup("e"), Some(Vocabulary::IDENTITY));
    }

    #[test]
    fn default_precedence_orders_identity_inverse_product_generators() {
        let mut v = Vocabulary::group();
        let a = v.add_generator("a").unwrap();
        let b = v.add_generator("b").unwrap();
        let p = v.add_predicate("L", 2).unwrap();
        let prec = |id| v.precedence(id);
        assert!(prec(Vocabulary::IDENTITY) < prec(Vocabulary::INVERSE));
        assert!(prec(Vocabulary::INVERSE) < prec(Vocabulary::PRODUCT));
        assert!(prec(Vocabulary::PRODUCT) < prec(a));
        assert!(prec(a) < prec(b));
        assert!(prec(b) < prec(p));
    }

    #[test]
    fn reserved_and_clashing_names_are_rejected() {
        let mut v = Vocabulary::group();
        assert_eq!(v.add_generator("e"), Err(VocabError::Reserved("e".into())));
        assert!(v.add_generator("L").is_err());
        v.add_predicate("P", 1).unwrap();
        assert_eq!(v.add_predicate("P", 2), Err(VocabError::KindClash("P".into())));
        assert_eq!(v.add_generator("a"), v.add_generator("a"));
    }

    #[test]
    fn weights_respect_variable_weight() {
        let mut v = Vocabulary::group();
        v.add_generator("a").unwrap();
        assert!(v.uniform_weights());
        v.set_weight("a", 3).unwrap();
        assert!(!v.uniform_weights());
        assert!(v.set_weight("a", 0).is_err());
        assert!(v.set_var_weight(2).is_err());
    }

    #[test]
    fn absorb_maps_ids_by_name() {
        let mut a = Vocabulary::group();
        a.add_generator("x1").unwrap();
        let mut b = Vocabulary::group();
        b.add_generator("y1").unwrap();
        b.add_generator("x1").unwrap();
        let map = a.absorb(&b).unwrap();
        assert_eq!(map[3], a.lookup("y1").unwrap());
        assert_eq!(map[4], a.lookup("x1").unwrap());
    }
}
