//! Problem instances and candidate solutions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::tree::{Tree, VertexId};

/// Whether the cut must have exactly `k` edges or at most `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetMode {
    Exact,
    AtMost,
}

/// A tree partitioning instance: a rooted tree, a cut budget `k`, and the
/// group sizes `s_1..s_b` the resulting components must be grouped into.
///
/// All fields are immutable after construction; instances are freely shared
/// across threads.
#[derive(Clone, Debug)]
pub struct Instance {
    pub tree: Tree,
    pub budget: usize,
    pub targets: Vec<u64>,
    pub mode: BudgetMode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceError {
    NoGroups,
    ZeroTarget { group: usize },
    /// Group sizes must add up to the number of vertices.
    TargetSumMismatch { vertices: u64, sum: u64 },
    BudgetTooLarge { budget: usize, edges: usize },
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::NoGroups => write!(f, "instance needs at least one group"),
            InstanceError::ZeroTarget { group } => {
                write!(f, "group {} has target 0; targets must be positive", group + 1)
            }
            InstanceError::TargetSumMismatch { vertices, sum } => {
                write!(f, "targets sum to {sum} but the tree has {vertices} vertices")
            }
            InstanceError::BudgetTooLarge { budget, edges } => {
                write!(f, "budget {budget} exceeds the {edges} tree edges")
            }
        }
    }
}

impl core::error::Error for InstanceError {}

impl Instance {
    pub fn new(
        tree: Tree,
        budget: usize,
        targets: Vec<u64>,
        mode: BudgetMode,
    ) -> Result<Instance, InstanceError> {
        if targets.is_empty() {
            return Err(InstanceError::NoGroups);
        }
        if let Some(group) = targets.iter().position(|&s| s == 0) {
            return Err(InstanceError::ZeroTarget { group });
        }
        let n = tree.vertex_count() as u64;
        let sum: u64 = targets.iter().sum();
        if sum != n {
            return Err(InstanceError::TargetSumMismatch { vertices: n, sum });
        }
        if budget > tree.vertex_count() - 1 {
            return Err(InstanceError::BudgetTooLarge {
                budget,
                edges: tree.vertex_count() - 1,
            });
        }
        Ok(Instance { tree, budget, targets, mode })
    }

    pub fn vertex_count(&self) -> usize {
        self.tree.vertex_count()
    }

    /// Number of groups `b`.
    pub fn groups(&self) -> usize {
        self.targets.len()
    }

    /// Targets in nondecreasing order.
    pub fn sorted_targets(&self) -> Vec<u64> {
        let mut t = self.targets.clone();
        t.sort_unstable();
        t
    }

    /// True iff all group sizes are equal (the balanced problem).
    pub fn is_balanced(&self) -> bool {
        self.targets.windows(2).all(|w| w[0] == w[1])
    }
}

/// A candidate solution: the cut edge set `E_P` and the assignment of the
/// components of `T - E_P` to groups.
///
/// A component is identified by its representative, the minimum vertex id it
/// contains. Group indices are 0-based in memory (1-based in the text
/// format).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSolution {
    /// `(parent, child)` pairs, sorted.
    pub cut_edges: Vec<(VertexId, VertexId)>,
    /// Component representative -> group index.
    pub assignment: BTreeMap<VertexId, usize>,
}

impl CutSolution {
    pub fn new(
        mut cut_edges: Vec<(VertexId, VertexId)>,
        assignment: BTreeMap<VertexId, usize>,
    ) -> CutSolution {
        cut_edges.sort_unstable();
        CutSolution { cut_edges, assignment }
    }

    /// Total vertices assigned to each of the `b` groups, given component
    /// sizes keyed by representative. Missing representatives count zero.
    pub fn group_loads(&self, groups: usize, size_of_rep: &BTreeMap<VertexId, u64>) -> Vec<u64> {
        let mut loads = alloc::vec![0u64; groups];
        for (rep, &g) in &self.assignment {
            if g < groups {
                loads[g] += size_of_rep.get(rep).copied().unwrap_or(0);
            }
        }
        loads
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Tree;

    fn p6() -> Tree {
        Tree::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap()
    }

    #[test]
    fn accepts_valid_instance() {
        let inst = Instance::new(p6(), 2, alloc::vec![2, 2, 2], BudgetMode::Exact).unwrap();
        assert_eq!(inst.groups(), 3);
        assert!(inst.is_balanced());
    }

    #[test]
    fn rejects_invalid_instances() {
        assert!(matches!(
            Instance::new(p6(), 2, alloc::vec![], BudgetMode::Exact),
            Err(InstanceError::NoGroups)
        ));
        assert!(matches!(
            Instance::new(p6(), 2, alloc::vec![2, 0, 4], BudgetMode::Exact),
            Err(InstanceError::ZeroTarget { group: 1 })
        ));
        assert!(matches!(
            Instance::new(p6(), 2, alloc::vec![1, 1], BudgetMode::Exact),
            Err(InstanceError::TargetSumMismatch { vertices: 6, sum: 2 })
        ));
        assert!(matches!(
            Instance::new(p6(), 6, alloc::vec![2, 2, 2], BudgetMode::Exact),
            Err(InstanceError::BudgetTooLarge { budget: 6, edges: 5 })
        ));
    }
}
