//! Per-size backtracking over table cells with unit propagation of clause
//! instances and least-number symmetry breaking.

use std::time::Instant;

use super::model::{FiniteModel, PredicateTable};
use crate::kernel::{Atom, Clause, ClauseSet, SymbolKind, Term, Vocabulary};
use crate::theories::{build_axiom_group, AxiomGroup};

const NONE: u32 = u32::MAX;

/// Largest domain the bitset domains can represent.
pub const MAX_SIZE: usize = 128;

#[derive(Clone, Debug)]
struct Sym {
    kind: SymbolKind,
    arity: usize,
    base: usize,
}

#[derive(Clone, Debug)]
enum Node {
    Var(usize),
    App { sym: usize, args: Vec<usize> },
}

#[derive(Clone, Copy, Debug)]
enum Lit {
    Eq(usize, usize),
    Pred(usize),
}

#[derive(Clone, Debug)]
struct CClause {
    /// Post-order: arguments precede their parents.
    nodes: Vec<Node>,
    lits: Vec<(bool, Lit)>,
    nvars: usize,
}

/// The clause set compiled for one domain size.
struct Program {
    n: usize,
    syms: Vec<Sym>,
    sym_of_vocab: Vec<Option<usize>>,
    clauses: Vec<CClause>,
    /// Per symbol: the (clause, node) positions headed by it.
    triggers: Vec<Vec<(usize, usize)>>,
    cell_sym: Vec<u16>,
    cell_max_arg: Vec<i32>,
    ncells: usize,
    product: Option<usize>,
    inverse: Option<usize>,
    latin: bool,
}

impl Program {
    fn new(cs: &ClauseSet, n: usize, latin: bool) -> Program {
        let vocab = &cs.vocab;
        let mut used = vec![false; vocab.len()];
        for c in cs {
            for l in c.literals() {
                if let Atom::Pred(p, _) = &l.atom {
                    used[p.index()] = true;
                }
                for t in l.atom.terms() {
                    t.for_each_app(&mut |_, s| used[s.head().unwrap().index()] = true);
                }
            }
        }
        let mut syms = Vec::new();
        let mut sym_of_vocab = vec![None; vocab.len()];
        let mut base = 0;
        let mut product = None;
        let mut inverse = None;
        for (id, s) in vocab.symbols() {
            if !used[id.index()] {
                continue;
            }
            let arity = s.kind.arity();
            match s.kind {
                SymbolKind::Product => product = Some(syms.len()),
                SymbolKind::Inverse => inverse = Some(syms.len()),
                _ => {}
            }
            sym_of_vocab[id.index()] = Some(syms.len());
            syms.push(Sym {
                kind: s.kind,
                arity,
                base,
            });
            base += n.pow(arity as u32);
        }
        let ncells = base;
        let mut cell_sym = vec![0u16; ncells];
        let mut cell_max_arg = vec![-1i32; ncells];
        for (si, s) in syms.iter().enumerate() {
            for k in 0..n.pow(s.arity as u32) {
                cell_sym[s.base + k] = si as u16;
                let mut rest = k;
                let mut mx = -1i32;
                for _ in 0..s.arity {
                    mx = mx.max((rest % n) as i32);
                    rest /= n;
                }
                cell_max_arg[s.base + k] = mx;
            }
        }
        let mut triggers = vec![Vec::new(); syms.len()];
        let clauses: Vec<CClause> = cs.iter().map(|c| compile_clause(c, &sym_of_vocab)).collect();
        for (ci, c) in clauses.iter().enumerate() {
            for (ni, node) in c.nodes.iter().enumerate() {
                if let Node::App { sym, .. } = node {
                    triggers[*sym].push((ci, ni));
                }
            }
        }
        Program {
            n,
            syms,
            sym_of_vocab,
            clauses,
            triggers,
            cell_sym,
            cell_max_arg,
            ncells,
            product,
            inverse,
            latin: latin && product.is_some(),
        }
    }

    fn decode(&self, cell: usize, out: &mut Vec<u32>) -> usize {
        let sym = self.cell_sym[cell] as usize;
        let s = &self.syms[sym];
        let mut k = cell - s.base;
        out.clear();
        out.resize(s.arity, 0);
        for slot in out.iter_mut().rev() {
            *slot = (k % self.n) as u32;
            k /= self.n;
        }
        sym
    }

    fn is_pred_cell(&self, cell: usize) -> bool {
        self.syms[self.cell_sym[cell] as usize].kind.is_predicate()
    }
}

fn compile_clause(c: &Clause, sym_of_vocab: &[Option<usize>]) -> CClause {
    fn term(t: &Term, map: &[Option<usize>], nodes: &mut Vec<Node>) -> usize {
        match t {
            Term::Var(v) => nodes.push(Node::Var(*v as usize)),
            Term::App(_) => {
                let args = t.args().iter().map(|a| term(a, map, nodes)).collect();
                let sym = map[t.head().unwrap().index()].expect("symbol registered");
                nodes.push(Node::App { sym, args });
            }
        }
        nodes.len() - 1
    }
    let mut nodes = Vec::new();
    let mut lits = Vec::new();
    for l in c.literals() {
        let lit = match &l.atom {
            Atom::Eq(a, b) => {
                let x = term(a, sym_of_vocab, &mut nodes);
                let y = term(b, sym_of_vocab, &mut nodes);
                Lit::Eq(x, y)
            }
            Atom::Pred(p, args) => {
                let args = args.iter().map(|a| term(a, sym_of_vocab, &mut nodes)).collect();
                nodes.push(Node::App {
                    sym: sym_of_vocab[p.index()].expect("symbol registered"),
                    args,
                });
                Lit::Pred(nodes.len() - 1)
            }
        };
        lits.push((l.positive, lit));
    }
    CClause {
        nodes,
        lits,
        nvars: c.num_vars() as usize,
    }
}

enum Undo {
    Value(usize),
    Domain(usize, u128),
}

struct Frame {
    cell: usize,
    trail_len: usize,
    remaining: u128,
    max_used: i32,
}

/// Counters for one per-size search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

pub(crate) enum Stop {
    Exhausted,
    Deadline,
    Halted,
}

struct State<'p> {
    p: &'p Program,
    value: Vec<u32>,
    domain: Vec<u128>,
    trail: Vec<Undo>,
    queue: Vec<usize>,
    qhead: usize,
    vals: Vec<u32>,
    cells: Vec<u32>,
    asg: Vec<u32>,
    args: Vec<u32>,
    pinned: Vec<bool>,
    free: Vec<usize>,
    stats: SearchStats,
}

fn full_mask(k: usize) -> u128 {
    if k >= 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    }
}

impl<'p> State<'p> {
    fn new(p: &'p Program) -> Self {
        let mut domain = vec![full_mask(p.n); p.ncells];
        for (c, d) in domain.iter_mut().enumerate() {
            if p.is_pred_cell(c) {
                *d = 0b11;
            }
        }
        let max_nodes = p.clauses.iter().map(|c| c.nodes.len()).max().unwrap_or(0);
        let max_vars = p.clauses.iter().map(|c| c.nvars).max().unwrap_or(0);
        State {
            p,
            value: vec![NONE; p.ncells],
            domain,
            trail: Vec::new(),
            queue: Vec::new(),
            qhead: 0,
            vals: vec![NONE; max_nodes],
            cells: vec![NONE; max_nodes],
            asg: vec![0; max_vars],
            args: Vec::new(),
            pinned: Vec::new(),
            free: Vec::new(),
            stats: SearchStats::default(),
        }
    }

    fn assign(&mut self, cell: usize, v: u32) -> bool {
        let cur = self.value[cell];
        if cur != NONE {
            return cur == v;
        }
        let bit = 1u128 << v;
        if self.domain[cell] & bit == 0 {
            return false;
        }
        self.stats.propagations += 1;
        self.trail.push(Undo::Domain(cell, self.domain[cell]));
        self.trail.push(Undo::Value(cell));
        self.value[cell] = v;
        self.domain[cell] = bit;
        self.queue.push(cell);
        if self.p.latin {
            let sym = self.p.cell_sym[cell] as usize;
            let n = self.p.n;
            if Some(sym) == self.p.product {
                let k = cell - self.p.syms[sym].base;
                let (x, y) = (k / n, k % n);
                let base = self.p.syms[sym].base;
                for z in 0..n {
                    if z != y && !self.remove(base + x * n + z, v) {
                        return false;
                    }
                    if z != x && !self.remove(base + z * n + y, v) {
                        return false;
                    }
                }
            } else if Some(sym) == self.p.inverse {
                let base = self.p.syms[sym].base;
                let x = cell - base;
                for z in 0..n {
                    if z != x && !self.remove(base + z, v) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn remove(&mut self, cell: usize, v: u32) -> bool {
        let cur = self.value[cell];
        if cur != NONE {
            return cur != v;
        }
        let bit = 1u128 << v;
        let d = self.domain[cell];
        if d & bit == 0 {
            return true;
        }
        self.trail.push(Undo::Domain(cell, d));
        let nd = d & !bit;
        self.domain[cell] = nd;
        if nd == 0 {
            return false;
        }
        if nd.count_ones() == 1 {
            return self.assign(cell, nd.trailing_zeros());
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            match self.trail.pop().unwrap() {
                Undo::Value(c) => self.value[c] = NONE,
                Undo::Domain(c, d) => self.domain[c] = d,
            }
        }
        self.queue.clear();
        self.qhead = 0;
    }

    /// Evaluates the clause under `self.asg`; propagates when exactly one
    /// literal is open. Returns false on a falsified instance.
    fn examine(&mut self, ci: usize) -> bool {
        let c = &self.p.clauses[ci];
        let n = self.p.n;
        for (i, node) in c.nodes.iter().enumerate() {
            match node {
                Node::Var(v) => {
                    self.vals[i] = self.asg[*v];
                    self.cells[i] = NONE;
                }
                Node::App { sym, args } => {
                    let mut k = 0usize;
                    let mut known = true;
                    for &a in args {
                        let av = self.vals[a];
                        if av == NONE {
                            known = false;
                            break;
                        }
                        k = k * n + av as usize;
                    }
                    if known {
                        let cell = self.p.syms[*sym].base + k;
                        self.cells[i] = cell as u32;
                        self.vals[i] = self.value[cell];
                    } else {
                        self.cells[i] = NONE;
                        self.vals[i] = NONE;
                    }
                }
            }
        }
        let mut open = None;
        let mut open_count = 0;
        for &(positive, lit) in &c.lits {
            let truth = match lit {
                Lit::Eq(a, b) => {
                    let (x, y) = (self.vals[a], self.vals[b]);
                    if x == NONE || y == NONE {
                        None
                    } else {
                        Some(x == y)
                    }
                }
                Lit::Pred(a) => {
                    let x = self.vals[a];
                    if x == NONE {
                        None
                    } else {
                        Some(x == 1)
                    }
                }
            };
            match truth {
                Some(t) if t == positive => return true,
                Some(_) => {}
                None => {
                    open_count += 1;
                    if open_count > 1 {
                        return true;
                    }
                    open = Some((positive, lit));
                }
            }
        }
        let Some((positive, lit)) = open else {
            return false;
        };
        match lit {
            Lit::Eq(a, b) => {
                let (target, v) = if self.vals[a] != NONE && self.cells[b] != NONE {
                    (self.cells[b], self.vals[a])
                } else if self.vals[b] != NONE && self.cells[a] != NONE {
                    (self.cells[a], self.vals[b])
                } else {
                    return true;
                };
                if positive {
                    self.assign(target as usize, v)
                } else {
                    self.remove(target as usize, v)
                }
            }
            Lit::Pred(a) => {
                let cell = self.cells[a];
                if cell == NONE {
                    true
                } else {
                    self.assign(cell as usize, positive as u32)
                }
            }
        }
    }

    /// Examines every instance of clause `ci` whose variables agree with
    /// the fixed prefix in `fixed` (pairs of variable and value).
    fn examine_instances(&mut self, ci: usize, fixed: &[(usize, u32)]) -> bool {
        let nvars = self.p.clauses[ci].nvars;
        let n = self.p.n as u32;
        let mut pinned = std::mem::take(&mut self.pinned);
        pinned.clear();
        pinned.resize(nvars, false);
        for &(v, x) in fixed {
            if pinned[v] && self.asg[v] != x {
                self.pinned = pinned;
                return true;
            }
            pinned[v] = true;
            self.asg[v] = x;
        }
        let mut free = std::mem::take(&mut self.free);
        free.clear();
        free.extend((0..nvars).filter(|&v| !pinned[v]));
        self.pinned = pinned;
        for &v in &free {
            self.asg[v] = 0;
        }
        let ok = loop {
            if !self.examine(ci) {
                break false;
            }
            let mut advanced = false;
            for &v in free.iter().rev() {
                self.asg[v] += 1;
                if self.asg[v] < n {
                    advanced = true;
                    break;
                }
                self.asg[v] = 0;
            }
            if !advanced {
                break true;
            }
        };
        self.free = free;
        ok
    }

    fn propagate(&mut self) -> bool {
        while self.qhead < self.queue.len() {
            let cell = self.queue[self.qhead];
            self.qhead += 1;
            let mut args = std::mem::take(&mut self.args);
            let sym = self.p.decode(cell, &mut args);
            let p = self.p;
            for &(ci, ni) in &p.triggers[sym] {
                let Node::App { args: nargs, .. } = &p.clauses[ci].nodes[ni] else {
                    unreachable!()
                };
                let mut fixed = [(0usize, 0u32); 8];
                let mut nf = 0;
                for (j, &a) in nargs.iter().enumerate() {
                    if let Node::Var(v) = p.clauses[ci].nodes[a] {
                        fixed[nf] = (v, args[j]);
                        nf += 1;
                    }
                }
                if !self.examine_instances(ci, &fixed[..nf]) {
                    self.args = args;
                    return false;
                }
            }
            self.args = args;
        }
        true
    }

    fn initial(&mut self) -> bool {
        for ci in 0..self.p.clauses.len() {
            if !self.examine_instances(ci, &[]) {
                return false;
            }
        }
        self.propagate()
    }

    fn pick(&self) -> Option<usize> {
        let mut best: Option<(i32, u32, usize)> = None;
        for c in 0..self.p.ncells {
            if self.value[c] != NONE {
                continue;
            }
            let key = (self.p.cell_max_arg[c], self.domain[c].count_ones(), c);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        best.map(|b| b.2)
    }

    fn model(&self, cs: &ClauseSet) -> FiniteModel {
        let p = self.p;
        let n = p.n;
        let mut m = FiniteModel::cyclic(n);
        let vocab: &Vocabulary = &cs.vocab;
        for (id, s) in vocab.symbols() {
            let sym = p.sym_of_vocab[id.index()];
            let read = |k: usize| sym.map_or(0, |si| self.value[p.syms[si].base + k]);
            match s.kind {
                SymbolKind::Product => {
                    if sym.is_some() {
                        m.product = (0..n * n).map(read).collect();
                    }
                }
                SymbolKind::Inverse => {
                    if sym.is_some() {
                        m.inverse = (0..n).map(read).collect();
                    }
                }
                SymbolKind::Identity => m.identity = read(0),
                SymbolKind::Generator => {
                    m.constants.insert(s.name.clone(), read(0));
                }
                SymbolKind::Predicate(k) => {
                    let mut t = PredicateTable::new(k as usize, n);
                    if let Some(si) = sym {
                        for (i, slot) in t.table.iter_mut().enumerate() {
                            *slot = self.value[p.syms[si].base + i] == 1;
                        }
                    }
                    m.predicates.insert(s.name.clone(), t);
                }
            }
        }
        m
    }
}

/// Options for one per-size search.
pub(crate) struct SizeSearch<'a> {
    pub cs: &'a ClauseSet,
    pub size: usize,
    pub deadline: Option<Instant>,
}

/// True when the clause set contains the five group axioms, so every
/// model's product table is a Latin square and inversion a permutation.
pub(crate) fn has_group_axioms(cs: &ClauseSet) -> bool {
    let Ok(gr) = build_axiom_group(&AxiomGroup::Gr, &cs.vocab) else {
        return false;
    };
    gr.iter().all(|g| cs.iter().any(|c| c.is_variant(g)))
}

impl SizeSearch<'_> {
    /// Runs the search, calling `on_model` for each model found; the
    /// callback returns false to stop.
    pub fn run(&self, mut on_model: impl FnMut(FiniteModel) -> bool) -> (Stop, SearchStats) {
        let p = Program::new(self.cs, self.size, has_group_axioms(self.cs));
        let mut st = State::new(&p);
        if !st.initial() {
            st.stats.conflicts += 1;
            return (Stop::Exhausted, st.stats);
        }
        let mut stack: Vec<Frame> = Vec::new();
        let mut max_used: i32 = -1;
        // true: pick a new cell; false: retry the top frame.
        let mut descend = true;
        loop {
            if descend {
                match st.pick() {
                    None => {
                        if !on_model(st.model(self.cs)) {
                            return (Stop::Halted, st.stats);
                        }
                    }
                    Some(cell) => {
                        let is_pred = p.is_pred_cell(cell);
                        let mx = max_used.max(p.cell_max_arg[cell]);
                        let allowed = if is_pred {
                            st.domain[cell]
                        } else {
                            st.domain[cell] & full_mask((mx + 2) as usize)
                        };
                        stack.push(Frame {
                            cell,
                            trail_len: st.trail.len(),
                            remaining: allowed,
                            max_used,
                        });
                    }
                }
            }
            // Try the next value of the top frame, popping exhausted frames.
            loop {
                let Some(f) = stack.last_mut() else {
                    return (Stop::Exhausted, st.stats);
                };
                if f.remaining == 0 {
                    let f = stack.pop().unwrap();
                    st.undo_to(f.trail_len);
                    continue;
                }
                let v = f.remaining.trailing_zeros();
                f.remaining &= f.remaining - 1;
                let (cell, trail_len, saved) = (f.cell, f.trail_len, f.max_used);
                st.undo_to(trail_len);
                st.stats.decisions += 1;
                if st.stats.decisions % 512 == 0 {
                    if let Some(d) = self.deadline {
                        if Instant::now() >= d {
                            return (Stop::Deadline, st.stats);
                        }
                    }
                }
                max_used = saved.max(p.cell_max_arg[cell]);
                if !p.is_pred_cell(cell) {
                    max_used = max_used.max(v as i32);
                }
                if st.assign(cell, v) && st.propagate() {
                    descend = true;
                    break;
                }
                st.stats.conflicts += 1;
            }
        }
    }
}
