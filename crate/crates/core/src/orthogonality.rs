//! Orthogonal sets of operations, `Ort(S)`, quasigroup enumeration and the
//! correspondence between the two.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::hypercube::{
    all_operations, operation_count, table_len, CellSet, MultaryOperation, OperationIndex, Symbol,
};
use crate::superposition::{check_same_order, superpose};

/// `m` operations of arity `m` on a common carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperationSet {
    ops: Vec<MultaryOperation>,
}

impl OperationSet {
    pub fn new(ops: Vec<MultaryOperation>) -> Result<Self> {
        let m = ops.len();
        let first = ops.first().ok_or(Error::ArityMismatch {
            expected: 1,
            found: 0,
        })?;
        let order = first.order();
        for op in &ops {
            if op.arity() != m {
                return Err(Error::ArityMismatch {
                    expected: m,
                    found: op.arity(),
                });
            }
            check_same_order(order, op.order())?;
        }
        Ok(OperationSet { ops })
    }

    /// `(proj_1, …, proj_m)`.
    pub fn projections(arity: usize, order: usize) -> Result<Self> {
        let ops = (0..arity)
            .map(|i| MultaryOperation::projection(arity, order, i))
            .collect::<Result<_>>()?;
        OperationSet::new(ops)
    }

    pub fn ops(&self) -> &[MultaryOperation] {
        &self.ops
    }

    pub fn arity(&self) -> usize {
        self.ops.len()
    }

    pub fn order(&self) -> usize {
        self.ops[0].order()
    }

    fn check_member(&self, g: &MultaryOperation) -> Result<()> {
        if g.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: g.arity(),
            });
        }
        check_same_order(self.order(), g.order())
    }

    /// Flat index of `(g_1(ā), …, g_m(ā))` for every `ā` in flat order.
    fn codes(&self) -> Vec<usize> {
        let n = self.order();
        let mut codes = vec![0usize; self.ops[0].len()];
        for op in &self.ops {
            for (c, s) in codes.iter_mut().zip(op.table()) {
                *c = *c * n + s.index();
            }
        }
        codes
    }
}

fn is_permutation(codes: impl Iterator<Item = usize>, len: usize, seen: &mut Vec<bool>) -> bool {
    seen.clear();
    seen.resize(len, false);
    for c in codes {
        if seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

/// `ā ↦ (g_1(ā), …, g_m(ā))` is a bijection of `X^m`.
pub fn is_orthogonal_set(s: &OperationSet) -> bool {
    let codes = s.codes();
    is_permutation(codes.iter().copied(), codes.len(), &mut Vec::new())
}

struct OrtPredicate<'a> {
    set: &'a OperationSet,
    codes: Vec<usize>,
    weights: Vec<usize>,
}

impl<'a> OrtPredicate<'a> {
    fn new(set: &'a OperationSet) -> Result<Self> {
        if !is_orthogonal_set(set) {
            return Err(Error::NotOrthogonalBase);
        }
        let m = set.arity();
        let n = set.order();
        let weights = (0..m).map(|i| n.pow((m - 1 - i) as u32)).collect();
        Ok(OrtPredicate {
            set,
            codes: set.codes(),
            weights,
        })
    }

    fn accepts(&self, g: &[Symbol], seen: &mut Vec<bool>) -> bool {
        self.set.ops.iter().zip(&self.weights).all(|(member, &w)| {
            let codes = self
                .codes
                .iter()
                .zip(member.table())
                .zip(g)
                .map(|((&c, old), new)| c - old.index() * w + new.index() * w);
            is_permutation(codes, self.codes.len(), seen)
        })
    }
}

/// Replacing any single member of `s` by `g` leaves an orthogonal set.
pub fn ort_contains(s: &OperationSet, g: &MultaryOperation) -> Result<bool> {
    s.check_member(g)?;
    let pred = OrtPredicate::new(s)?;
    Ok(pred.accepts(g.table(), &mut Vec::new()))
}

/// Every member of `Ort(s)` in canonical-index order, by a full scan of
/// `Ω_m(X)` split across workers.
pub fn enumerate_ort(s: &OperationSet, config: &SearchConfig) -> Result<Vec<MultaryOperation>> {
    let pred = OrtPredicate::new(s)?;
    let (m, n) = (s.arity(), s.order());
    let total = operation_count(m, n);
    config.check_enumeration("Ort(S) scan", total)?;
    let total = total
        .and_then(|t| u64::try_from(t).ok())
        .ok_or_else(|| Error::capacity("Ort(S) scan range does not fit in 64 bits"))?;
    config.install(|| {
        (0..total)
            .into_par_iter()
            .map_init(Vec::new, |seen, idx| {
                let g = MultaryOperation::from_index(m, n, OperationIndex(idx as u128))
                    .expect("index below the operation count");
                pred.accepts(g.table(), seen).then_some(g)
            })
            .flatten()
            .collect()
    })
}

/// Sequential, unguarded stream of `Ort(s)` in canonical order.
pub fn ort_iter(s: &OperationSet) -> Result<impl Iterator<Item = MultaryOperation> + '_> {
    let pred = OrtPredicate::new(s)?;
    let mut seen = Vec::new();
    Ok(all_operations(s.arity(), s.order())?.filter(move |g| pred.accepts(g.table(), &mut seen)))
}

/// Sizes enumerated without `allow_long_runs`.
pub fn quasigroup_enumeration_feasible(arity: usize, order: usize) -> bool {
    match (arity, order) {
        (_, 1) => true,
        (1, n) => n <= 8,
        (2, n) => n <= 5,
        (3, n) => n <= 3,
        (_, n) => n <= 2,
    }
}

/// Cell-by-cell backtracking over a Latin hypercube with one bitmask of used
/// symbols per axis-parallel line.
struct LatinSearch {
    arity: usize,
    order: usize,
    len: usize,
    lines_per_axis: usize,
    /// `line_of[cell * arity + axis]`.
    line_of: Vec<u32>,
}

struct LatinState {
    table: Vec<Symbol>,
    used: Vec<u64>,
}

impl LatinSearch {
    fn new(arity: usize, order: usize) -> Result<Self> {
        let len = table_len(arity, order)?;
        if order > 64 {
            return Err(Error::capacity("quasigroup search supports at most 64 symbols"));
        }
        let lines_per_axis = len / order;
        let mut line_of = Vec::with_capacity(len * arity);
        for cell in 0..len {
            for axis in 0..arity {
                let stride = order.pow((arity - 1 - axis) as u32);
                let high = cell / (stride * order);
                let low = cell % stride;
                line_of.push((high * stride + low) as u32);
            }
        }
        Ok(LatinSearch {
            arity,
            order,
            len,
            lines_per_axis,
            line_of,
        })
    }

    fn slots(&self, cell: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arity).map(move |axis| axis * self.lines_per_axis + self.line_of[cell * self.arity + axis] as usize)
    }

    fn free(&self, state: &LatinState, cell: usize) -> u64 {
        let full = if self.order == 64 { u64::MAX } else { (1u64 << self.order) - 1 };
        self.slots(cell).fold(full, |acc, slot| acc & !state.used[slot])
    }

    fn place(&self, state: &mut LatinState, cell: usize, s: usize) {
        for slot in self.slots(cell) {
            state.used[slot] |= 1 << s;
        }
        state.table.push(Symbol::new(s));
    }

    fn unplace(&self, state: &mut LatinState, cell: usize) {
        let s = state.table.pop().expect("a placed cell").index();
        for slot in self.slots(cell) {
            state.used[slot] &= !(1 << s);
        }
    }

    fn state_from(&self, prefix: &[Symbol]) -> LatinState {
        let mut state = LatinState {
            table: Vec::with_capacity(self.len),
            used: vec![0; self.arity * self.lines_per_axis],
        };
        for (cell, s) in prefix.iter().enumerate() {
            self.place(&mut state, cell, s.index());
        }
        state
    }

    /// Visits every completion of `state` up to `depth` cells, smallest
    /// symbols first.
    fn run(&self, state: &mut LatinState, depth: usize, visit: &mut dyn FnMut(&[Symbol])) {
        let cell = state.table.len();
        if cell == depth {
            visit(&state.table);
            return;
        }
        let mut free = self.free(state, cell);
        while free != 0 {
            let s = free.trailing_zeros() as usize;
            free &= free - 1;
            self.place(state, cell, s);
            self.run(state, depth, visit);
            self.unplace(state, cell);
        }
    }

    /// Partial fills of the first row, the unit of parallel work.
    fn prefixes(&self) -> Vec<Vec<Symbol>> {
        let depth = self.order.min(self.len);
        let mut out = Vec::new();
        let mut state = self.state_from(&[]);
        self.run(&mut state, depth, &mut |t| out.push(t.to_vec()));
        out
    }

    fn complete(&self, prefix: &[Symbol], visit: &mut dyn FnMut(&[Symbol])) {
        let mut state = self.state_from(prefix);
        self.run(&mut state, self.len, visit);
    }
}

fn quasigroup_search(arity: usize, order: usize, config: &SearchConfig) -> Result<LatinSearch> {
    if !config.limits.allow_long_runs && !quasigroup_enumeration_feasible(arity, order) {
        return Err(Error::capacity(format!(
            "enumerating {arity}-ary quasigroups of order {order} needs allow_long_runs"
        )));
    }
    LatinSearch::new(arity, order)
}

/// Every `m`-ary quasigroup of order `n` in canonical-index order.
pub fn enumerate_quasigroups(arity: usize, order: usize, config: &SearchConfig) -> Result<Vec<MultaryOperation>> {
    let search = quasigroup_search(arity, order, config)?;
    let prefixes = search.prefixes();
    let chunks: Vec<Vec<MultaryOperation>> = config.install(|| {
        prefixes
            .par_iter()
            .map(|p| {
                let mut found = Vec::new();
                search.complete(p, &mut |t| {
                    found.push(MultaryOperation::from_parts_unchecked(arity, order, t.to_vec()))
                });
                found
            })
            .collect()
    })?;
    Ok(chunks.into_iter().flatten().collect())
}

/// `|Q_m(X)|` without materializing the tables.
pub fn count_quasigroups(arity: usize, order: usize, config: &SearchConfig) -> Result<u128> {
    let search = quasigroup_search(arity, order, config)?;
    let prefixes = search.prefixes();
    config.install(|| {
        prefixes
            .par_iter()
            .map(|p| {
                let mut count = 0u128;
                search.complete(p, &mut |_| count += 1);
                count
            })
            .sum()
    })
}

/// The unique `f` with `f(g_1(ā), …, g_m(ā)) = h(ā)` for all `ā`.
pub fn solve_for_f(h: &MultaryOperation, s: &OperationSet) -> Result<MultaryOperation> {
    s.check_member(h)?;
    if !is_orthogonal_set(s) {
        return Err(Error::NotOrthogonalBase);
    }
    let mut table = vec![Symbol::default(); h.len()];
    for (code, &v) in s.codes().into_iter().zip(h.table()) {
        table[code] = v;
    }
    MultaryOperation::from_table(s.arity(), s.order(), table)
}

/// A line of the component domain whose image cells are not a Latin
/// transversal of `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalWitness {
    /// Varying position, 0-based.
    pub axis: usize,
    /// The line's first point, varying coordinate set to the first symbol.
    pub start: Vec<Symbol>,
    pub cells: Vec<Vec<Symbol>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalVerdict {
    pub all_transversals: bool,
    pub witness: Option<TransversalWitness>,
}

/// Checks every line of the `n`-ary domain of `gs` for a Latin transversal
/// of `f`, axis by axis and in flat order within an axis.
pub fn transversal_family(f: &MultaryOperation, gs: &[MultaryOperation]) -> Result<TransversalVerdict> {
    if gs.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: gs.len(),
        });
    }
    if !f.is_quasigroup() {
        return Err(Error::PreconditionFailed("f is not a quasigroup".into()));
    }
    let k = gs[0].arity();
    for (i, g) in gs.iter().enumerate() {
        check_same_order(f.order(), g.order())?;
        if g.arity() != k {
            return Err(Error::ArityMismatch {
                expected: k,
                found: g.arity(),
            });
        }
        if !g.is_quasigroup() {
            return Err(Error::PreconditionFailed(format!("g_{} is not a quasigroup", i + 1)));
        }
    }
    let n = f.order();
    for axis in 0..k {
        let stride = gs[0].stride(axis);
        for start in 0..gs[0].len() {
            if (start % (stride * n)) / stride != 0 {
                continue;
            }
            let cells: Vec<Vec<Symbol>> = (0..n)
                .map(|x| gs.iter().map(|g| g.table()[start + x * stride]).collect())
                .collect();
            let cells = CellSet::new(cells);
            if !f.is_latin_transversal(&cells)? {
                return Ok(TransversalVerdict {
                    all_transversals: false,
                    witness: Some(TransversalWitness {
                        axis,
                        start: gs[0].decode(start),
                        cells: cells.cells().to_vec(),
                    }),
                });
            }
        }
    }
    Ok(TransversalVerdict {
        all_transversals: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub quasigroup_count: usize,
    pub ort_count: usize,
    pub injective: bool,
    pub all_in_ort: bool,
    pub surjective: bool,
    pub roundtrip_ok: bool,
    /// First failure found, if any.
    pub certificate: Option<String>,
}

impl BijectionReport {
    pub fn verified(&self) -> bool {
        self.injective
            && self.all_in_ort
            && self.surjective
            && self.roundtrip_ok
            && self.quasigroup_count == self.ort_count
    }
}

/// Maps every quasigroup `f` to `⊙_f(s)` and checks that this is a bijection
/// onto `Ort(s)` inverted by `solve_for_f`.
pub fn verify_bijection(s: &OperationSet, config: &SearchConfig) -> Result<BijectionReport> {
    let ort = enumerate_ort(s, config)?;
    let quasigroups = enumerate_quasigroups(s.arity(), s.order(), config)?;
    let pred = OrtPredicate::new(s)?;
    let rows: Vec<(OperationIndex, bool, bool)> = config.install(|| {
        quasigroups
            .par_iter()
            .map_init(Vec::new, |seen, f| -> Result<_> {
                let h = superpose(f, s.ops())?;
                let in_ort = pred.accepts(h.table(), seen);
                let back = solve_for_f(&h, s)? == *f;
                Ok((h.canonical_index()?, in_ort, back))
            })
            .collect::<Result<_>>()
    })??;

    let mut certificate = None;
    let mut note = |msg: String| {
        certificate.get_or_insert(msg);
    };
    let all_in_ort = match rows.iter().position(|r| !r.1) {
        Some(i) => {
            note(format!("image of {} lies outside Ort(S)", quasigroups[i].canonical_index()?));
            false
        }
        None => true,
    };
    let roundtrip_ok = match rows.iter().position(|r| !r.2) {
        Some(i) => {
            note(format!("solving back from the image of {} fails", quasigroups[i].canonical_index()?));
            false
        }
        None => true,
    };
    let mut images: Vec<OperationIndex> = rows.iter().map(|r| r.0).collect();
    images.sort();
    let injective = match images.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => {
            note(format!("{} is hit twice", w[0]));
            false
        }
        None => true,
    };
    let mut surjective = true;
    for g in &ort {
        let idx = g.canonical_index()?;
        if images.binary_search(&idx).is_err() {
            note(format!("{idx} in Ort(S) is not hit"));
            surjective = false;
            break;
        }
    }
    Ok(BijectionReport {
        quasigroup_count: quasigroups.len(),
        ort_count: ort.len(),
        injective,
        all_in_ort,
        surjective,
        roundtrip_ok,
        certificate,
    })
}

/// Binary operations `h` with `(g, h)` orthogonal, in canonical order.
pub fn orthogonal_mates(g: &MultaryOperation, config: &SearchConfig) -> Result<Vec<MultaryOperation>> {
    if g.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: g.arity(),
        });
    }
    let n = g.order();
    let total = operation_count(2, n);
    config.check_enumeration("orthogonal mate scan", total)?;
    let total = total
        .and_then(|t| u64::try_from(t).ok())
        .ok_or_else(|| Error::capacity("orthogonal mate scan range does not fit in 64 bits"))?;
    config.install(|| {
        (0..total)
            .into_par_iter()
            .map_init(Vec::new, |seen, idx| {
                let h = MultaryOperation::from_index(2, n, OperationIndex(idx as u128)).expect("in range");
                let codes = g.table().iter().zip(h.table()).map(|(a, b)| a.index() * n + b.index());
                is_permutation(codes, g.len(), seen).then_some(h)
            })
            .flatten()
            .collect()
    })
}
