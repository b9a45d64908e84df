//! The bottom-up Γ-table dynamic program with witness reconstruction.
//!
//! For a vertex `v`, the table key `(k', X, s)` asserts: there is a cut of
//! `k'` edges in the processed part of `T_v` such that the component still
//! containing `v` has size `s`, and the closed components can be assigned to
//! the `b` indistinguishable groups with load list `X` (a σ-representation).
//! Children are folded in one at a time; each fold takes the union of the
//! "edge cut" and "edge kept" extensions. Tables are sparse: only true keys
//! are stored, each with a witness that replays into an actual [`CutSolution`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{BudgetMode, CutSolution, Instance};
use crate::components::ComponentLabels;
use crate::partitions::{diamond_compositions, LambdaTable, Pairing, SigmaRep};
use crate::tree::VertexId;

/// DP state: cuts used, closed-component loads, open-component size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GammaKey {
    pub cuts: usize,
    pub rep: SigmaRep,
    pub open: u64,
}

/// Index of a table in the solver's arena.
pub type TableId = usize;

/// How a key was first produced. Pairings are oriented as
/// `X'(i) = child_rep(j) + prev_rep(k)` for `pairing[i] = (j, k)`.
#[derive(Clone, Debug)]
pub enum Witness {
    /// Bare vertex, no children processed.
    Base,
    /// Edge to the child was cut; the child's open component (size
    /// `child_key.open`) closed and was added at position `slot` of the
    /// composition of the two reps.
    Cut {
        edge: (VertexId, VertexId),
        prev: TableId,
        prev_key: GammaKey,
        child: TableId,
        child_key: GammaKey,
        slot: usize,
        pairing: Pairing,
    },
    /// Edge kept; the open components merged.
    Keep {
        prev: TableId,
        prev_key: GammaKey,
        child: TableId,
        child_key: GammaKey,
        pairing: Pairing,
    },
}

/// Sparse true-only Γ table, scoped to a processed subtree.
#[derive(Debug)]
pub struct GammaTable {
    pub entries: BTreeMap<GammaKey, Witness>,
    /// Number of vertices the table's scope covers; every key satisfies
    /// `mass(rep) + open == scope`.
    pub scope: u64,
}

impl GammaTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Search limits threaded through the combine steps.
///
/// Keys beyond the cut budget are never stored. Keys whose open component or
/// some closed load already exceeds the largest target are dead as well:
/// loads only ever grow along a derivation and every final load equals a
/// target, so such keys cannot reach an accepting root state.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub budget: usize,
    pub max_target: u64,
}

impl Limits {
    pub fn of(inst: &Instance) -> Limits {
        Limits {
            budget: inst.budget,
            max_target: inst.targets.iter().copied().max().unwrap_or(0),
        }
    }
}

/// Table for a bare vertex: no cuts, no closed components, open size 1.
pub fn init_vertex(groups: usize) -> GammaTable {
    let mut entries = BTreeMap::new();
    entries.insert(
        GammaKey { cuts: 0, rep: SigmaRep::zeros(groups), open: 1 },
        Witness::Base,
    );
    GammaTable { entries, scope: 1 }
}

fn insert_key(
    entries: &mut BTreeMap<GammaKey, Witness>,
    scope: u64,
    key: GammaKey,
    witness: impl FnOnce() -> Witness,
) {
    debug_assert_eq!(key.rep.mass() + key.open, scope, "state consistency");
    entries.entry(key).or_insert_with(witness);
}

/// Extensions where the fold edge is cut: the child's open component closes
/// and joins a group. Built forward: compose the two reps, then add the
/// closed size into each position.
pub fn combine_cut(
    prev: &GammaTable,
    prev_id: TableId,
    child: &GammaTable,
    child_id: TableId,
    edge: (VertexId, VertexId),
    limits: Limits,
    memo: &mut LambdaTable,
) -> GammaTable {
    let scope = prev.scope + child.scope;
    let mut entries = BTreeMap::new();
    for child_key in child.entries.keys() {
        for prev_key in prev.entries.keys() {
            let cuts = child_key.cuts + prev_key.cuts + 1;
            if cuts > limits.budget {
                continue;
            }
            let closed_size = child_key.open;
            let comps = diamond_compositions(&child_key.rep, &prev_key.rep, memo);
            for (composed, pairing) in comps.iter() {
                if composed.max_entry() > limits.max_target {
                    continue;
                }
                for j in 0..composed.len() {
                    let cs = composed.entries();
                    if j > 0 && cs[j] == cs[j - 1] {
                        continue; // same resulting rep
                    }
                    if cs[j] + closed_size > limits.max_target {
                        continue;
                    }
                    let rep = composed.add_at(j, closed_size);
                    let key = GammaKey { cuts, rep, open: prev_key.open };
                    insert_key(&mut entries, scope, key, || Witness::Cut {
                        edge,
                        prev: prev_id,
                        prev_key: prev_key.clone(),
                        child: child_id,
                        child_key: child_key.clone(),
                        slot: j,
                        pairing: pairing.clone(),
                    });
                }
            }
        }
    }
    GammaTable { entries, scope }
}

/// Extensions where the fold edge is kept: open components merge.
pub fn combine_keep(
    prev: &GammaTable,
    prev_id: TableId,
    child: &GammaTable,
    child_id: TableId,
    limits: Limits,
    memo: &mut LambdaTable,
) -> GammaTable {
    let scope = prev.scope + child.scope;
    let mut entries = BTreeMap::new();
    for child_key in child.entries.keys() {
        for prev_key in prev.entries.keys() {
            let cuts = child_key.cuts + prev_key.cuts;
            if cuts > limits.budget {
                continue;
            }
            let open = child_key.open + prev_key.open;
            if open > limits.max_target {
                continue;
            }
            let comps = diamond_compositions(&child_key.rep, &prev_key.rep, memo);
            for (composed, pairing) in comps.iter() {
                if composed.max_entry() > limits.max_target {
                    continue;
                }
                let key = GammaKey { cuts, rep: composed.clone(), open };
                insert_key(&mut entries, scope, key, || Witness::Keep {
                    prev: prev_id,
                    prev_key: prev_key.clone(),
                    child: child_id,
                    child_key: child_key.clone(),
                    pairing: pairing.clone(),
                });
            }
        }
    }
    GammaTable { entries, scope }
}

/// Key-wise union of the two fold cases; on a shared key the edge-kept
/// witness is retained.
pub fn merge_tables(cut_side: GammaTable, keep_side: GammaTable) -> GammaTable {
    debug_assert_eq!(cut_side.scope, keep_side.scope);
    let mut merged = keep_side;
    for (key, witness) in cut_side.entries {
        merged.entries.entry(key).or_insert(witness);
    }
    merged
}

/// Scans the root table for an accepting key: `k'` matching the budget
/// (mode-dependent) and a position whose entry, raised by the open size,
/// turns the rep into the sorted target list.
pub fn root_accepts(table: &GammaTable, inst: &Instance) -> Option<(GammaKey, usize)> {
    let sorted_targets = inst.sorted_targets();
    for key in table.entries.keys() {
        let fits = match inst.mode {
            BudgetMode::Exact => key.cuts == inst.budget,
            BudgetMode::AtMost => key.cuts <= inst.budget,
        };
        if !fits {
            continue;
        }
        let entries = key.rep.entries();
        for i in 0..entries.len() {
            if i > 0 && entries[i] == entries[i - 1] {
                continue;
            }
            if key.rep.add_at(i, key.open).entries() == sorted_targets.as_slice() {
                return Some((key.clone(), i));
            }
        }
    }
    None
}

/// Counters reported by [`solve_with_stats`].
#[derive(Clone, Copy, Debug, Default)]
pub struct SolveStats {
    pub max_table_entries: usize,
    pub tables_built: usize,
    pub memo_entries: usize,
    pub memo_hits: u64,
    pub memo_misses: u64,
}

/// Decides the instance and reconstructs a solution when one exists.
pub fn solve(inst: &Instance) -> Option<CutSolution> {
    solve_with_stats(inst).0
}

pub fn solve_with_stats(inst: &Instance) -> (Option<CutSolution>, SolveStats) {
    let tree = &inst.tree;
    let groups = inst.groups();
    let limits = Limits::of(inst);
    let csr = tree.children_table();
    let order = csr.post_order(tree.root());

    let mut memo = LambdaTable::new();
    let mut tables: Vec<GammaTable> = Vec::new();
    let mut table_of = vec![usize::MAX; tree.vertex_count()];
    let mut stats = SolveStats::default();

    for &v in &order {
        let mut cur = tables.len();
        tables.push(init_vertex(groups));
        stats.max_table_entries = stats.max_table_entries.max(1);
        for &u in csr.children(v) {
            let child = table_of[u as usize];
            let minus = combine_cut(
                &tables[cur],
                cur,
                &tables[child],
                child,
                (v, u),
                limits,
                &mut memo,
            );
            let plus = combine_keep(&tables[cur], cur, &tables[child], child, limits, &mut memo);
            let merged = merge_tables(minus, plus);
            stats.max_table_entries = stats.max_table_entries.max(merged.len());
            cur = tables.len();
            tables.push(merged);
        }
        table_of[v as usize] = cur;
    }
    stats.tables_built = tables.len();
    stats.memo_entries = memo.len();
    stats.memo_hits = memo.hits;
    stats.memo_misses = memo.misses;

    let root_table = table_of[tree.root() as usize];
    let solution = root_accepts(&tables[root_table], inst)
        .map(|(key, slot)| reconstruct(inst, &tables, root_table, &key, slot));
    (solution, stats)
}

#[derive(Default)]
struct Replayed {
    cuts: Vec<(VertexId, VertexId)>,
    /// (component top vertex, group slot in the current key's rep).
    closed: Vec<(VertexId, usize)>,
}

fn replay(tables: &[GammaTable], tid: TableId, key: &GammaKey, acc: &mut Replayed) {
    match &tables[tid].entries[key] {
        Witness::Base => {}
        Witness::Keep { prev, prev_key, child, child_key, pairing } => {
            let child_start = acc.closed.len();
            replay(tables, *child, child_key, acc);
            let prev_start = acc.closed.len();
            replay(tables, *prev, prev_key, acc);
            remap_through_pairing(acc, child_start, prev_start, pairing);
        }
        Witness::Cut { edge, prev, prev_key, child, child_key, slot, pairing } => {
            let child_start = acc.closed.len();
            replay(tables, *child, child_key, acc);
            let prev_start = acc.closed.len();
            replay(tables, *prev, prev_key, acc);
            remap_through_pairing(acc, child_start, prev_start, pairing);
            acc.cuts.push(*edge);
            acc.closed.push((edge.1, *slot));
            // Re-derive the composition the pairing encodes, then track how
            // adding the closed size at `slot` permuted the positions.
            let composed = SigmaRep::new(
                pairing
                    .iter()
                    .map(|&(j, k)| child_key.rep.entries()[j] + prev_key.rep.entries()[k])
                    .collect(),
            );
            let (after, perm) = composed.add_at_tracked(*slot, child_key.open);
            debug_assert_eq!(after, key.rep);
            for entry in &mut acc.closed[child_start..] {
                entry.1 = perm[entry.1];
            }
        }
    }
}

/// Closed slots produced for the child side index into the child's rep, the
/// prev side's into the prev rep; move both into composition coordinates.
fn remap_through_pairing(acc: &mut Replayed, child_start: usize, prev_start: usize, pairing: &Pairing) {
    let b = pairing.len();
    let mut from_child = vec![0usize; b];
    let mut from_prev = vec![0usize; b];
    for (i, &(j, k)) in pairing.iter().enumerate() {
        from_child[j] = i;
        from_prev[k] = i;
    }
    for entry in &mut acc.closed[child_start..prev_start] {
        entry.1 = from_child[entry.1];
    }
    for entry in &mut acc.closed[prev_start..] {
        entry.1 = from_prev[entry.1];
    }
}

fn reconstruct(
    inst: &Instance,
    tables: &[GammaTable],
    root_table: TableId,
    key: &GammaKey,
    slot: usize,
) -> CutSolution {
    let mut acc = Replayed::default();
    replay(tables, root_table, key, &mut acc);

    let (final_rep, perm) = key.rep.add_at_tracked(slot, key.open);
    debug_assert_eq!(final_rep.entries(), inst.sorted_targets().as_slice());
    let mut placed: Vec<(VertexId, usize)> = acc
        .closed
        .iter()
        .map(|&(top, s)| (top, perm[s]))
        .collect();
    placed.push((inst.tree.root(), perm[slot]));

    // Final slots follow the sorted target order; map each back to an actual
    // group index via a stable argsort of the target list.
    let mut group_of_slot: Vec<usize> = (0..inst.groups()).collect();
    group_of_slot.sort_by_key(|&g| inst.targets[g]);

    let tops: Vec<VertexId> = acc.cuts.iter().map(|&(_, v)| v).collect();
    let labels = ComponentLabels::compute(&inst.tree, &tops);
    let assignment = placed
        .into_iter()
        .map(|(top, s)| (labels.rep_of_top(top), group_of_slot[s]))
        .collect();
    CutSolution::new(acc.cuts, assignment)
}
