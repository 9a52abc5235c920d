//! Given-clause saturation with superposition, resolution and demodulation.

use std::cmp::Reverse;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BinaryHeap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::time::Instant;

use super::proof::{Bindings, Proof, ProofStep, Rule, Simplification};
use super::{ProverStats, SaturationLimits, Status};
use crate::kernel::clause::match_literal;
use crate::kernel::{kbo, match_term, unify, unify_with, Atom, Clause, ClauseSet, KboOrdering, Literal, Provenance, Subst, Term, Vocabulary};

struct Stored {
    clause: Clause,
    rule: Rule,
    subst: Bindings,
    simps: Vec<Simplification>,
}

struct Active {
    id: usize,
    alive: bool,
    eligible: Vec<bool>,
    /// For equations: which sides are not smaller than the other.
    side_ok: Vec<[bool; 2]>,
    nvars: u32,
    mask: u64,
}

/// A literal-kind slot: the predicate index, or one past the last symbol
/// for equations.
fn slot(l: &Literal, eq_slot: usize) -> usize {
    l.atom.predicate().map_or(eq_slot, |p| p.index())
}

fn bindings(s: &Subst) -> Bindings {
    s.iter().map(|(v, t)| (v, t.clone())).collect()
}

fn weight(lits: &[Literal]) -> u32 {
    lits.iter().map(Literal::size).sum()
}

fn inst_lit(s: &Subst, l: &Literal) -> Literal {
    l.map_terms(&mut |t| s.apply(t))
}

fn shifted(c: &Clause, by: u32) -> Vec<Literal> {
    c.literals().iter().map(|l| l.map_terms(&mut |t| t.shift_vars(by))).collect()
}

fn atom_terms(a: &Atom) -> Vec<&Term> {
    a.terms()
}

fn sub_at<'a>(a: &'a Atom, path: &[u32]) -> &'a Term {
    atom_terms(a)[path[0] as usize].subterm(&path[1..]).expect("valid path")
}

fn replace_in_atom(a: &Atom, path: &[u32], by: Term) -> Atom {
    let first = path[0] as usize;
    let rest = &path[1..];
    match a {
        Atom::Eq(l, r) if first == 0 => Atom::Eq(l.replace_at(rest, by), r.clone()),
        Atom::Eq(l, r) => Atom::Eq(l.clone(), r.replace_at(rest, by)),
        Atom::Pred(p, args) => {
            let mut args = args.clone();
            args[first] = args[first].replace_at(rest, by);
            Atom::Pred(*p, args)
        }
    }
}

/// Multiset element for literal comparison; `None` is the minimal `true`.
type MTerm = Option<Term>;

fn literal_multiset(l: &Literal) -> Vec<MTerm> {
    let base: Vec<MTerm> = match &l.atom {
        Atom::Eq(a, b) => vec![Some(a.clone()), Some(b.clone())],
        Atom::Pred(p, args) => vec![Some(Term::app(*p, args.clone())), None],
    };
    if l.positive {
        base
    } else {
        base.iter().chain(base.iter()).cloned().collect()
    }
}

fn mterm_greater(a: &MTerm, b: &MTerm, vocab: &Vocabulary) -> bool {
    match (a, b) {
        (Some(_), None) => true,
        (None, _) => false,
        (Some(x), Some(y)) => kbo(x, y, vocab) == KboOrdering::Greater,
    }
}

fn multiset_greater(m: &[MTerm], n: &[MTerm], vocab: &Vocabulary) -> bool {
    let mut m: Vec<&MTerm> = m.iter().collect();
    let mut n: Vec<&MTerm> = n.iter().collect();
    let mut i = 0;
    while i < m.len() {
        if let Some(j) = n.iter().position(|x| *x == m[i]) {
            n.remove(j);
            m.remove(i);
        } else {
            i += 1;
        }
    }
    if m.is_empty() {
        return false;
    }
    n.iter().all(|y| m.iter().any(|x| mterm_greater(x, y, vocab)))
}

pub(super) struct Engine<'a> {
    inputs: &'a ClauseSet,
    vocab: &'a Vocabulary,
    limits: SaturationLimits,
    start: Instant,
    store: Vec<Stored>,
    active: Vec<Active>,
    active_of: Vec<Option<usize>>,
    eq_slot: usize,
    from_idx: Vec<Vec<(usize, usize, u8)>>,
    into_idx: Vec<Vec<(usize, usize, Vec<u32>)>>,
    res_idx: Vec<[Vec<(usize, usize)>; 2]>,
    demods: Vec<Vec<(usize, bool, bool)>>,
    units: Vec<[Vec<usize>; 2]>,
    nonunits: Vec<usize>,
    passive_weight: BinaryHeap<Reverse<(u32, usize)>>,
    passive_age: VecDeque<usize>,
    in_passive: Vec<bool>,
    seen: HashSet<u64>,
    picks: u64,
    pub(super) stats: ProverStats,
    pub(super) incomplete: bool,
}

enum Found {
    Empty(usize),
    Limit(String),
}

impl<'a> Engine<'a> {
    pub(super) fn new(inputs: &'a ClauseSet, limits: SaturationLimits) -> Self {
        let vocab = &inputs.vocab;
        let nsym = vocab.len() + 1;
        Engine {
            inputs,
            vocab,
            limits,
            start: Instant::now(),
            store: Vec::new(),
            active: Vec::new(),
            active_of: Vec::new(),
            eq_slot: vocab.len(),
            from_idx: vec![Vec::new(); nsym],
            into_idx: vec![Vec::new(); nsym],
            res_idx: vec![[Vec::new(), Vec::new()]; nsym],
            demods: vec![Vec::new(); nsym],
            units: vec![[Vec::new(), Vec::new()]; nsym],
            nonunits: Vec::new(),
            passive_weight: BinaryHeap::new(),
            passive_age: VecDeque::new(),
            in_passive: Vec::new(),
            seen: HashSet::new(),
            picks: 0,
            stats: ProverStats::default(),
            incomplete: false,
        }
    }

    fn push_store(&mut self, clause: Clause, rule: Rule, subst: Bindings, simps: Vec<Simplification>) -> usize {
        let id = self.store.len();
        self.store.push(Stored {
            clause,
            rule,
            subst,
            simps,
        });
        self.active_of.push(None);
        self.in_passive.push(false);
        self.stats.kept += 1;
        id
    }

    fn to_passive(&mut self, id: usize) {
        let w = weight(self.store[id].clause.literals());
        self.in_passive[id] = true;
        self.passive_weight.push(Reverse((w, id)));
        self.passive_age.push_back(id);
    }

    fn out_of_time(&self) -> bool {
        self.start.elapsed().as_secs_f64() >= self.limits.max_seconds
    }

    pub(super) fn run(&mut self) -> (Status, Option<Proof>) {
        for (i, c) in self.inputs.iter().enumerate() {
            let id = self.push_store(c.normalize(), Rule::Input { index: i }, Vec::new(), Vec::new());
            if c.is_empty() {
                return (Status::Refutation, Some(self.proof(id)));
            }
            self.to_passive(id);
        }
        loop {
            if self.out_of_time() {
                return (Status::ResourceOut("time limit".into()), None);
            }
            if self.stats.kept > self.limits.max_clauses {
                return (Status::ResourceOut("clause limit".into()), None);
            }
            let Some(id) = self.pick() else {
                if self.incomplete {
                    return (Status::ResourceOut("clauses above the weight limit were discarded".into()), None);
                }
                return (Status::Saturated, None);
            };
            match self.process_given(id) {
                Ok(()) => {}
                Err(Found::Empty(e)) => return (Status::Refutation, Some(self.proof(e))),
                Err(Found::Limit(why)) => return (Status::ResourceOut(why), None),
            }
        }
    }

    fn pick(&mut self) -> Option<usize> {
        let (age, w) = self.limits.pick_ratio;
        let cycle = (age + w).max(1) as u64;
        let by_age = (self.picks % cycle) < age as u64;
        self.picks += 1;
        let first = if by_age { self.pick_age() } else { self.pick_weight() };
        let id = first.or_else(|| if by_age { self.pick_weight() } else { self.pick_age() })?;
        self.in_passive[id] = false;
        Some(id)
    }

    fn pick_age(&mut self) -> Option<usize> {
        while let Some(id) = self.passive_age.pop_front() {
            if self.in_passive[id] {
                return Some(id);
            }
        }
        None
    }

    fn pick_weight(&mut self) -> Option<usize> {
        while let Some(Reverse((_, id))) = self.passive_weight.pop() {
            if self.in_passive[id] {
                return Some(id);
            }
        }
        None
    }

    fn process_given(&mut self, id: usize) -> Result<(), Found> {
        let lits = self.store[id].clause.literals().to_vec();
        let Some((lits, simps)) = self.simplify(lits) else {
            return Ok(());
        };
        let given = if simps.is_empty() {
            id
        } else {
            let clause = Clause::new(lits, Provenance::new("derived", 0)).normalize();
            if !clause.is_empty() && self.subsumed(&clause) {
                return Ok(());
            }
            self.push_store(clause, Rule::Rewrite { parent: id }, Vec::new(), simps)
        };
        if self.store[given].clause.is_empty() {
            return Err(Found::Empty(given));
        }
        if given == id && self.subsumed(&self.store[id].clause) {
            return Ok(());
        }
        self.stats.given += 1;
        let a = self.activate(given);
        let c = &self.store[given].clause;
        if c.is_unit() && c.literals()[0].positive && c.literals()[0].atom.is_eq() {
            self.back_demodulate(a)?;
        }
        self.generate(a)
    }

    fn subsumed(&self, c: &Clause) -> bool {
        let mask = self.mask_of(c);
        for l in c.literals() {
            let s = slot(l, self.eq_slot);
            for &a in &self.units[s][l.positive as usize] {
                let act = &self.active[a];
                if act.alive && self.store[act.id].clause.subsumes(c) {
                    return true;
                }
            }
        }
        self.nonunits.iter().any(|&a| {
            let act = &self.active[a];
            act.alive
                && act.mask & !mask == 0
                && self.store[act.id].clause.len() <= c.len()
                && self.store[act.id].clause.subsumes(c)
        })
    }

    fn mask_of(&self, c: &Clause) -> u64 {
        c.literals()
            .iter()
            .fold(0, |m, l| m | 1u64 << ((slot(l, self.eq_slot) * 2 + l.positive as usize) % 64))
    }

    fn activate(&mut self, id: usize) -> usize {
        let c = self.store[id].clause.clone();
        let lits = c.literals();
        let n = lits.len();
        let mut eligible = vec![false; n];
        let selected = lits
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.positive)
            .max_by_key(|(i, l)| (l.size(), Reverse(*i)))
            .map(|(i, _)| i);
        if let Some(s) = selected {
            eligible[s] = true;
        } else {
            let ms: Vec<Vec<MTerm>> = lits.iter().map(literal_multiset).collect();
            for i in 0..n {
                eligible[i] = !(0..n).any(|j| j != i && multiset_greater(&ms[j], &ms[i], self.vocab));
            }
        }
        let side_ok: Vec<[bool; 2]> = lits
            .iter()
            .map(|l| match &l.atom {
                Atom::Eq(a, b) => {
                    let o = kbo(a, b, self.vocab);
                    [o != KboOrdering::Less, o != KboOrdering::Greater]
                }
                Atom::Pred(..) => [true, true],
            })
            .collect();
        let a = self.active.len();
        let mask = self.mask_of(&c);
        self.active.push(Active {
            id,
            alive: true,
            eligible: eligible.clone(),
            side_ok: side_ok.clone(),
            nvars: c.num_vars(),
            mask,
        });
        self.active_of[id] = Some(a);
        for (i, l) in lits.iter().enumerate() {
            if !eligible[i] {
                continue;
            }
            match &l.atom {
                Atom::Pred(p, args) => {
                    self.res_idx[p.index()][l.positive as usize].push((a, i));
                    for (k, t) in args.iter().enumerate() {
                        self.index_into(a, i, k as u32, t);
                    }
                }
                Atom::Eq(x, y) => {
                    self.res_idx[self.eq_slot][l.positive as usize].push((a, i));
                    for (k, t) in [x, y].into_iter().enumerate() {
                        if !side_ok[i][k] {
                            continue;
                        }
                        self.index_into(a, i, k as u32, t);
                        if l.positive && selected.is_none() {
                            if let Some(h) = t.head() {
                                self.from_idx[h.index()].push((a, i, k as u8));
                            }
                        }
                    }
                }
            }
        }
        if n == 1 {
            let l = &lits[0];
            self.units[slot(l, self.eq_slot)][l.positive as usize].push(a);
            if let (true, Atom::Eq(x, y)) = (l.positive, &l.atom) {
                let o = kbo(x, y, self.vocab);
                if o != KboOrdering::Less {
                    if let Some(h) = x.head() {
                        self.demods[h.index()].push((a, false, o == KboOrdering::Greater));
                    }
                }
                if o != KboOrdering::Greater {
                    if let Some(h) = y.head() {
                        self.demods[h.index()].push((a, true, o == KboOrdering::Less));
                    }
                }
            }
        } else {
            self.nonunits.push(a);
        }
        a
    }

    fn index_into(&mut self, a: usize, lit: usize, k: u32, t: &Term) {
        let mut entries = Vec::new();
        t.for_each_app(&mut |path, sub| {
            let mut full = vec![k];
            full.extend_from_slice(path);
            entries.push((sub.head().unwrap().index(), full));
        });
        for (h, path) in entries {
            self.into_idx[h].push((a, lit, path));
        }
    }

    /// Rewrites `t` to normal form with the active demodulators, recording
    /// each step at `lit` and `path`.
    fn rewrite(&self, t: &Term, lit: usize, path: &mut Vec<u32>, simps: &mut Vec<Simplification>) -> Term {
        let mut cur = t.clone();
        loop {
            if cur.is_var() {
                return cur;
            }
            let args = cur.args();
            let mut new_args: Option<Vec<Term>> = None;
            for (i, a) in args.iter().enumerate() {
                path.push(i as u32);
                let r = self.rewrite(a, lit, path, simps);
                path.pop();
                if r != *a {
                    new_args.get_or_insert_with(|| args.to_vec())[i] = r;
                }
            }
            if let Some(na) = new_args {
                cur = Term::app(cur.head().unwrap(), na);
            }
            match self.find_demod(&cur) {
                Some((unit, flip, theta, r)) => {
                    simps.push(Simplification::Demodulation {
                        unit,
                        flip,
                        lit,
                        path: path.clone(),
                        subst: bindings(&theta),
                    });
                    cur = r;
                }
                None => return cur,
            }
        }
    }

    fn find_demod(&self, t: &Term) -> Option<(usize, bool, Subst, Term)> {
        let h = t.head()?;
        for &(a, flip, oriented) in &self.demods[h.index()] {
            let act = &self.active[a];
            if !act.alive {
                continue;
            }
            let Atom::Eq(x, y) = &self.store[act.id].clause.literals()[0].atom else {
                continue;
            };
            let (l, r) = if flip { (y, x) } else { (x, y) };
            let mut theta = Subst::new();
            if !match_term(l, t, &mut theta) {
                continue;
            }
            let rr = theta.apply(r);
            if !oriented && kbo(t, &rr, self.vocab) != KboOrdering::Greater {
                continue;
            }
            return Some((act.id, flip, theta, rr));
        }
        None
    }

    /// Forward simplification. `None` when the clause is a tautology.
    fn simplify(&self, mut lits: Vec<Literal>) -> Option<(Vec<Literal>, Vec<Simplification>)> {
        let mut simps = Vec::new();
        for i in 0..lits.len() {
            let l = lits[i].clone();
            let mut terms: Vec<Term> = atom_terms(&l.atom).into_iter().cloned().collect();
            for (k, t) in terms.iter_mut().enumerate() {
                let mut path = vec![k as u32];
                *t = self.rewrite(t, i, &mut path, &mut simps);
            }
            let atom = match &l.atom {
                Atom::Eq(..) => Atom::Eq(terms[0].clone(), terms[1].clone()),
                Atom::Pred(p, _) => Atom::Pred(*p, terms),
            };
            lits[i] = Literal::new(l.positive, atom);
        }
        let mut i = 0;
        while i < lits.len() {
            match (&lits[i].atom, lits[i].positive) {
                (Atom::Eq(a, b), false) if a == b => {
                    simps.push(Simplification::Trivial { lit: i });
                    lits.remove(i);
                }
                (Atom::Eq(a, b), true) if a == b => return None,
                _ => i += 1,
            }
        }
        for i in 0..lits.len() {
            for j in i + 1..lits.len() {
                if lits[i].positive != lits[j].positive && lits[i].atom == lits[j].atom {
                    return None;
                }
            }
        }
        let mut j = lits.len();
        while j > 0 {
            j -= 1;
            if let Some(keep) = (0..j).find(|&i| lits[i].positive == lits[j].positive && lits[i].atom == lits[j].atom) {
                simps.push(Simplification::Merge { lit: j, keep });
                lits.remove(j);
            }
        }
        let mut i = 0;
        while i < lits.len() {
            match self.unit_deleter(&lits[i]) {
                Some((unit, theta)) => {
                    simps.push(Simplification::UnitDeletion {
                        unit,
                        lit: i,
                        subst: bindings(&theta),
                    });
                    lits.remove(i);
                }
                None => i += 1,
            }
        }
        Some((lits, simps))
    }

    fn unit_deleter(&self, l: &Literal) -> Option<(usize, Subst)> {
        let s = slot(l, self.eq_slot);
        for &a in &self.units[s][!l.positive as usize] {
            let act = &self.active[a];
            if !act.alive {
                continue;
            }
            let u = &self.store[act.id].clause.literals()[0];
            if let Some(theta) = match_literal(u, l, &Subst::new()).into_iter().next() {
                return Some((act.id, theta));
            }
        }
        None
    }

    fn back_demodulate(&mut self, unit: usize) -> Result<(), Found> {
        let uid = self.active[unit].id;
        let Atom::Eq(x, y) = self.store[uid].clause.literals()[0].atom.clone() else {
            return Ok(());
        };
        let o = kbo(&x, &y, self.vocab);
        let mut victims = Vec::new();
        for a in 0..self.active.len() {
            if a == unit || !self.active[a].alive {
                continue;
            }
            let c = &self.store[self.active[a].id].clause;
            let hit = c.literals().iter().any(|l| {
                atom_terms(&l.atom).into_iter().any(|t| {
                    let mut found = false;
                    t.for_each_app(&mut |_, sub| {
                        if found {
                            return;
                        }
                        for (l, r, ok) in [(&x, &y, o != KboOrdering::Less), (&y, &x, o != KboOrdering::Greater)] {
                            if !ok {
                                continue;
                            }
                            let mut theta = Subst::new();
                            if match_term(l, sub, &mut theta)
                                && kbo(sub, &theta.apply(r), self.vocab) == KboOrdering::Greater
                            {
                                found = true;
                                return;
                            }
                        }
                    });
                    found
                })
            });
            if hit {
                victims.push(a);
            }
        }
        for a in victims {
            self.active[a].alive = false;
            let id = self.active[a].id;
            let lits = self.store[id].clause.literals().to_vec();
            if let Some((lits, simps)) = self.simplify(lits) {
                let clause = Clause::new(lits, Provenance::new("derived", 0)).normalize();
                let nid = self.push_store(clause, Rule::Rewrite { parent: id }, Vec::new(), simps);
                if self.store[nid].clause.is_empty() {
                    return Err(Found::Empty(nid));
                }
                self.to_passive(nid);
            }
        }
        Ok(())
    }

    /// Simplifies and keeps a freshly inferred clause.
    fn add(&mut self, raw: Vec<Literal>, rule: Rule, subst: &Subst) -> Result<(), Found> {
        self.stats.generated += 1;
        if self.stats.generated % 2048 == 0 && self.out_of_time() {
            return Err(Found::Limit("time limit".into()));
        }
        let Some((lits, simps)) = self.simplify(raw) else {
            return Ok(());
        };
        if weight(&lits) > self.limits.max_weight {
            self.incomplete = true;
            return Ok(());
        }
        let clause = Clause::new(lits, Provenance::new("derived", 0)).normalize();
        if clause.is_empty() {
            let id = self.push_store(clause, rule, bindings(subst), simps);
            return Err(Found::Empty(id));
        }
        let mut h = DefaultHasher::new();
        clause.literals().hash(&mut h);
        if !self.seen.insert(h.finish()) {
            return Ok(());
        }
        if self.subsumed(&clause) {
            return Ok(());
        }
        let id = self.push_store(clause, rule, bindings(subst), simps);
        self.to_passive(id);
        if self.stats.kept > self.limits.max_clauses {
            return Err(Found::Limit("clause limit".into()));
        }
        Ok(())
    }

    fn clause_of(&self, a: usize) -> Clause {
        self.store[self.active[a].id].clause.clone()
    }

    fn generate(&mut self, g: usize) -> Result<(), Found> {
        let gc = self.clause_of(g);
        let ginfo = (self.active[g].eligible.clone(), self.active[g].side_ok.clone(), self.active[g].nvars);
        let (eligible, side_ok, gvars) = ginfo;
        let has_selected = gc.literals().iter().any(|l| !l.positive);
        let gid = self.active[g].id;
        // Resolution, with G as premise 0.
        for (i, l) in gc.literals().iter().enumerate() {
            if !eligible[i] {
                continue;
            }
            let s = slot(l, self.eq_slot);
            let partners = self.res_idx[s][!l.positive as usize].clone();
            for (a, j) in partners {
                if !self.active[a].alive {
                    continue;
                }
                let ac = self.clause_of(a);
                if l.atom.is_eq() && !(gc.is_unit() || ac.is_unit()) {
                    continue;
                }
                let b = shifted(&ac, gvars);
                for sigma in unifiers(&l.atom, &b[j].atom) {
                    let mut out: Vec<Literal> = gc
                        .literals()
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i)
                        .map(|(_, x)| inst_lit(&sigma, x))
                        .collect();
                    out.extend(b.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| inst_lit(&sigma, x)));
                    let rule = Rule::Resolution {
                        left: gid,
                        left_lit: i,
                        right: self.active[a].id,
                        right_lit: j,
                    };
                    self.add(out, rule, &sigma)?;
                }
            }
        }
        // Superposition from G.
        if !has_selected {
            for (i, l) in gc.literals().iter().enumerate() {
                let Atom::Eq(x, y) = &l.atom else { continue };
                if !eligible[i] || !l.positive {
                    continue;
                }
                for (side, s) in [x, y].into_iter().enumerate() {
                    if !side_ok[i][side] || s.is_var() {
                        continue;
                    }
                    let targets = self.into_idx[s.head().unwrap().index()].clone();
                    for (a, j, path) in targets {
                        if !self.active[a].alive {
                            continue;
                        }
                        self.superpose(g, i, side == 1, a, j, &path)?;
                    }
                }
            }
        }
        // Superposition into G.
        for (i, l) in gc.literals().iter().enumerate() {
            if !eligible[i] {
                continue;
            }
            for (k, t) in atom_terms(&l.atom).into_iter().enumerate() {
                if l.atom.is_eq() && !side_ok[i][k] {
                    continue;
                }
                let mut positions = Vec::new();
                t.for_each_app(&mut |path, sub| {
                    let mut full = vec![k as u32];
                    full.extend_from_slice(path);
                    positions.push((sub.head().unwrap().index(), full));
                });
                for (h, path) in positions {
                    let froms = self.from_idx[h].clone();
                    for (a, fi, side) in froms {
                        if !self.active[a].alive || a == g {
                            continue;
                        }
                        self.superpose(a, fi, side == 1, g, i, &path)?;
                    }
                }
            }
        }
        // Unary inferences.
        for (i, l) in gc.literals().iter().enumerate() {
            if !eligible[i] {
                continue;
            }
            if let (false, Atom::Eq(x, y)) = (l.positive, &l.atom) {
                if let Some(sigma) = unify(x, y) {
                    let out = gc
                        .literals()
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i)
                        .map(|(_, m)| inst_lit(&sigma, m))
                        .collect();
                    self.add(out, Rule::EqualityResolution { parent: gid, lit: i }, &sigma)?;
                }
            }
            if has_selected || !l.positive {
                continue;
            }
            for (j, m) in gc.literals().iter().enumerate() {
                if j == i || !m.positive {
                    continue;
                }
                for sigma in unifiers(&l.atom, &m.atom) {
                    let out = gc
                        .literals()
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, x)| inst_lit(&sigma, x))
                        .collect();
                    self.add(
                        out,
                        Rule::Factoring {
                            parent: gid,
                            keep: i,
                            drop: j,
                        },
                        &sigma,
                    )?;
                }
                let (Atom::Eq(x1, y1), Atom::Eq(x2, y2)) = (&l.atom, &m.atom) else {
                    continue;
                };
                for (flip, s1, t1) in [(false, x1, y1), (true, y1, x1)] {
                    if !side_ok[i][flip as usize] || s1.is_var() {
                        continue;
                    }
                    for (oflip, s2, t2) in [(false, x2, y2), (true, y2, x2)] {
                        let Some(sigma) = unify(s1, s2) else { continue };
                        if kbo(&sigma.apply(t1), &sigma.apply(s1), self.vocab) == KboOrdering::Greater {
                            continue;
                        }
                        let new = Literal::neq(sigma.apply(t1), sigma.apply(t2));
                        let out = gc
                            .literals()
                            .iter()
                            .enumerate()
                            .map(|(k, x)| if k == i { new.clone() } else { inst_lit(&sigma, x) })
                            .collect();
                        self.add(
                            out,
                            Rule::EqualityFactoring {
                                parent: gid,
                                lit: i,
                                flip,
                                other: j,
                                other_flip: oflip,
                            },
                            &sigma,
                        )?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Paramodulates from literal `fi` of active `f` into literal `ii` of
    /// active `t` at `path`; `f` is premise 0.
    fn superpose(&mut self, f: usize, fi: usize, flip: bool, t: usize, ii: usize, path: &[u32]) -> Result<(), Found> {
        let fc = self.clause_of(f);
        let tc = self.clause_of(t);
        let b = shifted(&tc, self.active[f].nvars);
        let Atom::Eq(x, y) = &fc.literals()[fi].atom else {
            return Ok(());
        };
        let (s, r) = if flip { (y, x) } else { (x, y) };
        let u = sub_at(&b[ii].atom, path);
        let Some(sigma) = unify(s, u) else {
            return Ok(());
        };
        let (ss, rs) = (sigma.apply(s), sigma.apply(r));
        if ss == rs || kbo(&rs, &ss, self.vocab) == KboOrdering::Greater {
            return Ok(());
        }
        let target = inst_lit(&sigma, &b[ii]);
        if let Atom::Eq(p, q) = &target.atom {
            let (into_side, other) = if path[0] == 0 { (p, q) } else { (q, p) };
            if kbo(other, into_side, self.vocab) == KboOrdering::Greater {
                return Ok(());
            }
        }
        let replaced = Literal::new(target.positive, replace_in_atom(&target.atom, path, rs));
        let mut out: Vec<Literal> = fc
            .literals()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != fi)
            .map(|(_, l)| inst_lit(&sigma, l))
            .collect();
        for (k, l) in b.iter().enumerate() {
            out.push(if k == ii { replaced.clone() } else { inst_lit(&sigma, l) });
        }
        let rule = Rule::Paramodulation {
            from: self.active[f].id,
            from_lit: fi,
            flip,
            into: self.active[t].id,
            into_lit: ii,
            path: path.to_vec(),
        };
        self.add(out, rule, &sigma)
    }

    fn proof(&self, empty: usize) -> Proof {
        let mut needed = vec![false; self.store.len()];
        let mut stack = vec![empty];
        while let Some(id) = stack.pop() {
            if needed[id] {
                continue;
            }
            needed[id] = true;
            let s = &self.store[id];
            stack.extend(s.rule.premises());
            stack.extend(s.simps.iter().filter_map(Simplification::premise));
        }
        let ids: Vec<usize> = (0..self.store.len()).filter(|&i| needed[i]).collect();
        let mut renum = vec![0usize; self.store.len()];
        for (k, &id) in ids.iter().enumerate() {
            renum[id] = k + 1;
        }
        let m = |id: usize| renum[id];
        let steps = ids
            .iter()
            .map(|&id| {
                let s = &self.store[id];
                let rule = match &s.rule {
                    Rule::Input { index } => Rule::Input { index: *index },
                    Rule::Resolution {
                        left,
                        left_lit,
                        right,
                        right_lit,
                    } => Rule::Resolution {
                        left: m(*left),
                        left_lit: *left_lit,
                        right: m(*right),
                        right_lit: *right_lit,
                    },
                    Rule::Paramodulation {
                        from,
                        from_lit,
                        flip,
                        into,
                        into_lit,
                        path,
                    } => Rule::Paramodulation {
                        from: m(*from),
                        from_lit: *from_lit,
                        flip: *flip,
                        into: m(*into),
                        into_lit: *into_lit,
                        path: path.clone(),
                    },
                    Rule::Factoring { parent, keep, drop } => Rule::Factoring {
                        parent: m(*parent),
                        keep: *keep,
                        drop: *drop,
                    },
                    Rule::EqualityResolution { parent, lit } => Rule::EqualityResolution {
                        parent: m(*parent),
                        lit: *lit,
                    },
                    Rule::EqualityFactoring {
                        parent,
                        lit,
                        flip,
                        other,
                        other_flip,
                    } => Rule::EqualityFactoring {
                        parent: m(*parent),
                        lit: *lit,
                        flip: *flip,
                        other: *other,
                        other_flip: *other_flip,
                    },
                    Rule::Rewrite { parent } => Rule::Rewrite { parent: m(*parent) },
                };
                let simplifications = s
                    .simps
                    .iter()
                    .map(|x| match x {
                        Simplification::Demodulation {
                            unit,
                            flip,
                            lit,
                            path,
                            subst,
                        } => Simplification::Demodulation {
                            unit: m(*unit),
                            flip: *flip,
                            lit: *lit,
                            path: path.clone(),
                            subst: subst.clone(),
                        },
                        Simplification::UnitDeletion { unit, lit, subst } => Simplification::UnitDeletion {
                            unit: m(*unit),
                            lit: *lit,
                            subst: subst.clone(),
                        },
                        other => other.clone(),
                    })
                    .collect();
                ProofStep {
                    id: m(id),
                    rule,
                    subst: s.subst.clone(),
                    simplifications,
                    clause: s.clause.clone(),
                }
            })
            .collect();
        Proof { steps }
    }
}

/// Unifiers of two atoms; equations are tried in both orientations.
fn unifiers(a: &Atom, b: &Atom) -> Vec<Subst> {
    let mut out = Vec::new();
    match (a, b) {
        (Atom::Pred(p, xs), Atom::Pred(q, ys)) if p == q => {
            let mut s = Subst::new();
            if xs.iter().zip(ys).all(|(x, y)| unify_with(x, y, &mut s)) {
                out.push(s);
            }
        }
        (Atom::Eq(x1, y1), Atom::Eq(x2, y2)) => {
            for (u, v) in [(x2, y2), (y2, x2)] {
                let mut s = Subst::new();
                if unify_with(x1, u, &mut s) && unify_with(y1, v, &mut s) && !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        _ => {}
    }
    out
}
