//! Component sizes of `T - E'` for a cut `E'`.
//!
//! Two routes compute the same multiset: [`component_sizes`] uses DFS
//! discovery/finish stamps, precomputed subtree sizes and a Hasse diagram
//! over the cut edges' lower endpoints (after an O(n) preprocessing, each cut
//! costs O(|cut|^2) regardless of n), while [`component_sizes_naive`] walks
//! the forest directly and serves as the cross-check oracle.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::tree::{Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentError {
    EdgeNotInTree { parent: VertexId, child: VertexId },
    DuplicateCutEdge { parent: VertexId, child: VertexId },
}

impl fmt::Display for ComponentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentError::EdgeNotInTree { parent, child } => {
                write!(f, "cut edge {parent}-{child} is not an edge of the tree")
            }
            ComponentError::DuplicateCutEdge { parent, child } => {
                write!(f, "cut edge {parent}-{child} listed twice")
            }
        }
    }
}

impl core::error::Error for ComponentError {}

/// Discovery/finish stamps and subtree sizes from one DFS; reusable across
/// many cuts of the same tree.
pub struct DfsTables {
    discovery: Vec<u32>,
    finish: Vec<u32>,
    subtree: Vec<u64>,
}

impl DfsTables {
    pub fn build(tree: &Tree) -> DfsTables {
        let n = tree.vertex_count();
        let csr = tree.children_table();
        let mut discovery = vec![0u32; n];
        let mut finish = vec![0u32; n];
        let mut subtree = vec![1u64; n];
        let mut clock = 0u32;
        let mut stack: Vec<(VertexId, usize)> = vec![(tree.root(), 0)];
        discovery[tree.root() as usize] = {
            clock += 1;
            clock
        };
        while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
            let kids = csr.children(v);
            if *cursor < kids.len() {
                let c = kids[*cursor];
                *cursor += 1;
                clock += 1;
                discovery[c as usize] = clock;
                stack.push((c, 0));
            } else {
                clock += 1;
                finish[v as usize] = clock;
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    subtree[p as usize] += subtree[v as usize];
                }
            }
        }
        DfsTables { discovery, finish, subtree }
    }

    /// `u` is a proper descendant of `v` iff `d(v) < d(u) < f(u) < f(v)`.
    pub fn is_strict_descendant(&self, u: VertexId, v: VertexId) -> bool {
        self.discovery[v as usize] < self.discovery[u as usize]
            && self.finish[u as usize] < self.finish[v as usize]
    }

    pub fn subtree_size(&self, v: VertexId) -> u64 {
        self.subtree[v as usize]
    }

    /// Component orders of `T - E'` where `tops` are the cut edges' lower
    /// endpoints (child sides). Builds the Hasse diagram of the descendancy
    /// relation restricted to the root plus `tops`, then subtracts each Hasse
    /// child's subtree from its parent's. Output is sorted.
    pub fn component_sizes(&self, root: VertexId, tops: &[VertexId]) -> Vec<u64> {
        let mut nodes: Vec<VertexId> = Vec::with_capacity(tops.len() + 1);
        nodes.push(root);
        nodes.extend_from_slice(tops);
        let mut size: Vec<u64> = nodes.iter().map(|&w| self.subtree[w as usize]).collect();
        // Immediate Hasse parent of w = the strict ancestor in `nodes` with
        // the latest discovery time.
        for (i, &w) in nodes.iter().enumerate() {
            if w == root {
                continue;
            }
            let mut best: Option<usize> = None;
            for (j, &a) in nodes.iter().enumerate() {
                if i != j && (a == root || self.is_strict_descendant(w, a)) {
                    let better = match best {
                        None => true,
                        Some(b) => self.discovery[a as usize] > self.discovery[nodes[b] as usize],
                    };
                    if better {
                        best = Some(j);
                    }
                }
            }
            if let Some(j) = best {
                size[j] -= self.subtree[w as usize];
            }
        }
        size.sort_unstable();
        size
    }
}

/// Component orders of `tree - cut` via DFS stamps and the Hasse diagram.
/// The result has `|cut| + 1` entries and sums to `n`.
pub fn component_sizes(
    tree: &Tree,
    cut: &[(VertexId, VertexId)],
) -> Result<Vec<u64>, ComponentError> {
    let tops = cut_tops(tree, cut)?;
    let tables = DfsTables::build(tree);
    Ok(tables.component_sizes(tree.root(), &tops))
}

/// Same contract as [`component_sizes`], by direct traversal of the forest.
pub fn component_sizes_naive(
    tree: &Tree,
    cut: &[(VertexId, VertexId)],
) -> Result<Vec<u64>, ComponentError> {
    let tops = cut_tops(tree, cut)?;
    let labels = ComponentLabels::compute(tree, &tops);
    let mut sizes: Vec<u64> = labels.components().map(|(_, _, size)| size).collect();
    sizes.sort_unstable();
    Ok(sizes)
}

/// Validates a cut and returns the child endpoints (each determines its edge
/// uniquely, since every vertex has one parent).
pub fn cut_tops(
    tree: &Tree,
    cut: &[(VertexId, VertexId)],
) -> Result<Vec<VertexId>, ComponentError> {
    let mut tops = Vec::with_capacity(cut.len());
    for &(u, v) in cut {
        if !tree.is_edge(u, v) {
            return Err(ComponentError::EdgeNotInTree { parent: u, child: v });
        }
        tops.push(v);
    }
    let mut sorted = tops.clone();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(ComponentError::DuplicateCutEdge {
            parent: tree.parent(w[0]).unwrap(),
            child: w[0],
        });
    }
    Ok(tops)
}

/// Per-vertex component labels for `T - E'`.
///
/// Every component of the forest is a rooted subtree; its `top` is the vertex
/// closest to the root of `T` (the tree root or a cut edge's child). Computed
/// by walking parent pointers with path memoization, O(n) amortized and using
/// no child adjacency, so it stays cheap on gadget trees of 10^8 vertices.
pub struct ComponentLabels {
    top_of: Vec<VertexId>,
    /// top -> (min vertex id in component, component order)
    stats: BTreeMap<VertexId, (VertexId, u64)>,
}

impl ComponentLabels {
    pub fn compute(tree: &Tree, tops: &[VertexId]) -> ComponentLabels {
        let n = tree.vertex_count();
        let mut is_top = vec![false; n];
        is_top[tree.root() as usize] = true;
        for &t in tops {
            is_top[t as usize] = true;
        }
        const UNSET: VertexId = VertexId::MAX;
        let mut top_of = vec![UNSET; n];
        let mut stack: Vec<VertexId> = Vec::new();
        for v in 0..n as VertexId {
            let mut w = v;
            loop {
                if top_of[w as usize] != UNSET {
                    break;
                }
                stack.push(w);
                if is_top[w as usize] {
                    top_of[w as usize] = w;
                    break;
                }
                w = tree.parent(w).expect("non-top vertex has a parent");
            }
            let label = top_of[w as usize];
            for &u in &stack {
                top_of[u as usize] = label;
            }
            stack.clear();
        }
        let mut stats: BTreeMap<VertexId, (VertexId, u64)> = BTreeMap::new();
        for (v, &t) in top_of.iter().enumerate() {
            let entry = stats.entry(t).or_insert((v as VertexId, 0));
            entry.1 += 1;
        }
        ComponentLabels { top_of, stats }
    }

    pub fn top_of(&self, v: VertexId) -> VertexId {
        self.top_of[v as usize]
    }

    /// Minimum vertex id in the component whose top is `top`.
    pub fn rep_of_top(&self, top: VertexId) -> VertexId {
        self.stats[&top].0
    }

    /// `(top, representative, size)` per component, in top order.
    pub fn components(&self) -> impl Iterator<Item = (VertexId, VertexId, u64)> + '_ {
        self.stats.iter().map(|(&t, &(rep, size))| (t, rep, size))
    }

    /// Component sizes keyed by representative.
    pub fn sizes_by_rep(&self) -> BTreeMap<VertexId, u64> {
        self.stats.values().map(|&(rep, size)| (rep, size)).collect()
    }

    pub fn component_count(&self) -> usize {
        self.stats.len()
    }
}
