//! Brute-force reference solvers: ground truth for the property tests.
//!
//! [`brute_force_solve`] enumerates cut subsets directly and decides the
//! grouping by exact-cover backtracking; it is the oracle the Γ-table solver
//! is measured against. The module also carries desk-scale deciders for
//! 3-Partition and multicolored clique, the two source problems of the
//! hardness gadgets. Everything here refuses inputs beyond an explicit work
//! cap rather than silently dominating a test run.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::components::{ComponentLabels, DfsTables};
use crate::instance::{BudgetMode, CutSolution, Instance};
use crate::tree::VertexId;

/// Default ceiling on estimated elementary steps.
pub const DEFAULT_WORK_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    WorkCapExceeded { estimated: u64, cap: u64 },
    TooManyComponents { components: usize, max: usize },
    TooManyElements { elements: usize, max: usize },
    SearchSpaceTooLarge { tuples: u64, max: u64 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::WorkCapExceeded { estimated, cap } => {
                write!(f, "estimated work {estimated} exceeds the cap of {cap}")
            }
            OracleError::TooManyComponents { components, max } => {
                write!(f, "{components} components exceed the grouping cap of {max}")
            }
            OracleError::TooManyElements { elements, max } => {
                write!(f, "{elements} elements exceed the cap of {max}")
            }
            OracleError::SearchSpaceTooLarge { tuples, max } => {
                write!(f, "{tuples} candidate tuples exceed the cap of {max}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Exhaustive solver with the default work cap.
pub fn brute_force_solve(inst: &Instance) -> Result<Option<CutSolution>, OracleError> {
    brute_force_solve_capped(inst, DEFAULT_WORK_CAP)
}

/// Enumerates every edge subset of the budgeted size(s) in lexicographic
/// order over the child-sorted edge list, computes component sizes via the
/// stamped-DFS tables, and backtracks the component-to-group assignment.
/// Returns the first solution in that canonical order.
pub fn brute_force_solve_capped(
    inst: &Instance,
    cap: u64,
) -> Result<Option<CutSolution>, OracleError> {
    let edges: Vec<(VertexId, VertexId)> = inst.tree.edges().collect();
    let m = edges.len() as u64;
    let b = inst.groups() as u64;
    let subset_sizes: Vec<usize> = match inst.mode {
        BudgetMode::Exact => vec![inst.budget],
        BudgetMode::AtMost => (0..=inst.budget).collect(),
    };
    let mut estimated = 0u64;
    for &sz in &subset_sizes {
        let assignments = b.saturating_pow(sz as u32 + 1);
        estimated = estimated.saturating_add(binomial(m, sz as u64).saturating_mul(assignments));
    }
    if estimated > cap {
        return Err(OracleError::WorkCapExceeded { estimated, cap });
    }

    let tables = DfsTables::build(&inst.tree);
    let root = inst.tree.root();
    for &sz in &subset_sizes {
        let mut combo: Vec<usize> = (0..sz).collect();
        loop {
            let tops: Vec<VertexId> = combo.iter().map(|&i| edges[i].1).collect();
            let sizes = tables.component_sizes(root, &tops);
            if assignment_feasible(&sizes, &inst.targets)?.is_some() {
                let cut: Vec<(VertexId, VertexId)> = combo.iter().map(|&i| edges[i]).collect();
                let labels = ComponentLabels::compute(&inst.tree, &tops);
                let by_rep: Vec<(VertexId, u64)> =
                    labels.components().map(|(_, rep, size)| (rep, size)).collect();
                let rep_sizes: Vec<u64> = by_rep.iter().map(|&(_, s)| s).collect();
                let groups = assignment_feasible(&rep_sizes, &inst.targets)?
                    .expect("feasible on a permutation of the same sizes");
                let assignment: BTreeMap<VertexId, usize> = by_rep
                    .iter()
                    .zip(groups)
                    .map(|(&(rep, _), g)| (rep, g))
                    .collect();
                return Ok(Some(CutSolution::new(cut, assignment)));
            }
            if !next_combination(&mut combo, edges.len()) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `combo` to the next k-subset of `0..m` in lexicographic order.
fn next_combination(combo: &mut [usize], m: usize) -> bool {
    let k = combo.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] != i + m - k {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exact cover of `targets` by the component `sizes`: returns a group index
/// per size (input order), or `None` if impossible. Backtracking processes
/// the largest size first, skips groups with equal residual capacity, and
/// memoizes failed (depth, residual multiset) states.
pub fn assignment_feasible(
    sizes: &[u64],
    targets: &[u64],
) -> Result<Option<Vec<usize>>, OracleError> {
    const MAX_COMPONENTS: usize = 24;
    if sizes.len() > MAX_COMPONENTS {
        return Err(OracleError::TooManyComponents {
            components: sizes.len(),
            max: MAX_COMPONENTS,
        });
    }
    if sizes.iter().sum::<u64>() != targets.iter().sum::<u64>() {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by_key(|&i| core::cmp::Reverse(sizes[i]));
    let mut residual = targets.to_vec();
    let mut chosen = vec![usize::MAX; sizes.len()];
    let mut failed: BTreeSet<(usize, Vec<u64>)> = BTreeSet::new();
    if place(sizes, &order, 0, &mut residual, &mut chosen, &mut failed) {
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn place(
    sizes: &[u64],
    order: &[usize],
    depth: usize,
    residual: &mut [u64],
    chosen: &mut [usize],
    failed: &mut BTreeSet<(usize, Vec<u64>)>,
) -> bool {
    if depth == order.len() {
        // Total sizes equal total targets, so all residuals are zero here.
        return true;
    }
    let mut key = residual.to_vec();
    key.sort_unstable();
    if failed.contains(&(depth, key.clone())) {
        return false;
    }
    let size = sizes[order[depth]];
    let mut tried: BTreeSet<u64> = BTreeSet::new();
    for g in 0..residual.len() {
        if residual[g] < size || !tried.insert(residual[g]) {
            continue;
        }
        residual[g] -= size;
        chosen[order[depth]] = g;
        if place(sizes, order, depth + 1, residual, chosen, failed) {
            return true;
        }
        residual[g] += size;
    }
    chosen[order[depth]] = usize::MAX;
    failed.insert((depth, key));
    false
}

/// A 3-Partition instance: 3k positive integers, each strictly between `s/4`
/// and `s/2`, to be split into k triples summing to `s` each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    target: u64,
    elements: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThreePartitionError {
    NotTriples { elements: usize },
    ElementOutOfRange { index: usize, element: u64, target: u64 },
}

impl fmt::Display for ThreePartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThreePartitionError::NotTriples { elements } => {
                write!(f, "element count {elements} is not divisible by 3")
            }
            ThreePartitionError::ElementOutOfRange { index, element, target } => {
                write!(
                    f,
                    "element {element} at index {index} violates {target}/4 < a < {target}/2"
                )
            }
        }
    }
}

impl core::error::Error for ThreePartitionError {}

impl ThreePartitionInstance {
    pub fn new(target: u64, elements: Vec<u64>) -> Result<Self, ThreePartitionError> {
        if elements.len() % 3 != 0 {
            return Err(ThreePartitionError::NotTriples { elements: elements.len() });
        }
        for (index, &a) in elements.iter().enumerate() {
            if 4 * a <= target || 2 * a >= target {
                return Err(ThreePartitionError::ElementOutOfRange { index, element: a, target });
            }
        }
        Ok(ThreePartitionInstance { target, elements })
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Number of groups k (a third of the element count).
    pub fn group_count(&self) -> usize {
        self.elements.len() / 3
    }
}

/// Exhaustive 3-Partition decision; returns index triples, each summing to
/// the target. Capped at 15 elements.
pub fn three_partition_brute(
    tp: &ThreePartitionInstance,
) -> Result<Option<Vec<[usize; 3]>>, OracleError> {
    const MAX_ELEMENTS: usize = 15;
    let a = tp.elements();
    if a.len() > MAX_ELEMENTS {
        return Err(OracleError::TooManyElements { elements: a.len(), max: MAX_ELEMENTS });
    }
    let total: u64 = a.iter().sum();
    if total != tp.target() * tp.group_count() as u64 {
        return Ok(None);
    }
    let mut used = vec![false; a.len()];
    let mut triples = Vec::with_capacity(tp.group_count());
    if fill_triples(a, tp.target(), &mut used, &mut triples) {
        Ok(Some(triples))
    } else {
        Ok(None)
    }
}

fn fill_triples(a: &[u64], s: u64, used: &mut [bool], triples: &mut Vec<[usize; 3]>) -> bool {
    let Some(i) = used.iter().position(|&u| !u) else {
        return true;
    };
    used[i] = true;
    for j in i + 1..a.len() {
        if used[j] || a[i] + a[j] >= s {
            continue;
        }
        for l in j + 1..a.len() {
            if used[l] || a[i] + a[j] + a[l] != s {
                continue;
            }
            used[j] = true;
            used[l] = true;
            triples.push([i, j, l]);
            if fill_triples(a, s, used, triples) {
                return true;
            }
            triples.pop();
            used[j] = false;
            used[l] = false;
        }
    }
    used[i] = false;
    false
}

/// A multicolored clique instance: k color classes of n vertices each, and
/// edges between distinct classes. Vertex `i` of class `j` is written
/// `(j, i)`, both 0-based; edges are stored normalized with the lower class
/// first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MccInstance {
    classes: usize,
    class_size: usize,
    edges: BTreeSet<((usize, usize), (usize, usize))>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MccError {
    NoClasses,
    EmptyClasses,
    VertexOutOfRange { class: usize, index: usize },
    SameClassEdge { class: usize },
    DuplicateEdge { a: (usize, usize), b: (usize, usize) },
}

impl fmt::Display for MccError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MccError::NoClasses => write!(f, "need at least one color class"),
            MccError::EmptyClasses => write!(f, "color classes must be non-empty"),
            MccError::VertexOutOfRange { class, index } => {
                write!(f, "vertex ({class},{index}) out of range")
            }
            MccError::SameClassEdge { class } => {
                write!(f, "edge joins two vertices of class {class}")
            }
            MccError::DuplicateEdge { a, b } => {
                write!(f, "duplicate edge ({},{})-({},{})", a.0, a.1, b.0, b.1)
            }
        }
    }
}

impl core::error::Error for MccError {}

impl MccInstance {
    pub fn new(
        classes: usize,
        class_size: usize,
        edge_list: &[((usize, usize), (usize, usize))],
    ) -> Result<Self, MccError> {
        if classes == 0 {
            return Err(MccError::NoClasses);
        }
        if class_size == 0 {
            return Err(MccError::EmptyClasses);
        }
        let mut edges = BTreeSet::new();
        for &(a, b) in edge_list {
            for (class, index) in [a, b] {
                if class >= classes || index >= class_size {
                    return Err(MccError::VertexOutOfRange { class, index });
                }
            }
            if a.0 == b.0 {
                return Err(MccError::SameClassEdge { class: a.0 });
            }
            let (lo, hi) = if a.0 < b.0 { (a, b) } else { (b, a) };
            if !edges.insert((lo, hi)) {
                return Err(MccError::DuplicateEdge { a: lo, b: hi });
            }
        }
        Ok(MccInstance { classes, class_size, edges })
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn class_size(&self) -> usize {
        self.class_size
    }

    pub fn edges(&self) -> impl Iterator<Item = &((usize, usize), (usize, usize))> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        let (lo, hi) = if a.0 < b.0 { (a, b) } else { (b, a) };
        self.edges.contains(&(lo, hi))
    }
}

/// Enumerates one vertex per class and returns the first multicolored
/// clique (as one class-local index per class), if any. Capped at 10^6
/// candidate tuples.
pub fn mcc_brute(mcc: &MccInstance) -> Result<Option<Vec<usize>>, OracleError> {
    const MAX_TUPLES: u64 = 1_000_000;
    let k = mcc.classes();
    let n = mcc.class_size() as u64;
    let mut tuples = 1u64;
    for _ in 0..k {
        tuples = tuples.saturating_mul(n);
    }
    if tuples > MAX_TUPLES {
        return Err(OracleError::SearchSpaceTooLarge { tuples, max: MAX_TUPLES });
    }
    let mut pick = vec![0usize; k];
    loop {
        let clique = (0..k).all(|j| {
            (j + 1..k).all(|q| mcc.has_edge((j, pick[j]), (q, pick[q])))
        });
        if clique {
            return Ok(Some(pick));
        }
        // Odometer step.
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < mcc.class_size() {
                break;
            }
            pick[pos] = 0;
        }
    }
}
