//! Full solution verification.

use alloc::vec::Vec;
use core::fmt;

use crate::components::ComponentLabels;
use crate::instance::{BudgetMode, CutSolution, Instance};
use crate::tree::VertexId;

/// First violated condition, reported by [`verify_solution`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    CutCountMismatch { budget: usize, got: usize },
    CutBudgetExceeded { budget: usize, got: usize },
    EdgeNotInTree { parent: VertexId, child: VertexId },
    DuplicateCutEdge { parent: VertexId, child: VertexId },
    /// An assignment key that is not the representative of any component.
    UnknownRepresentative { rep: VertexId },
    /// A component of `T - E_P` missing from the assignment.
    UnassignedComponent { rep: VertexId },
    GroupIndexOutOfRange { rep: VertexId, group: usize, groups: usize },
    GroupLoadMismatch { group: usize, expected: u64, got: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CutCountMismatch { budget, got } => {
                write!(f, "cut has {got} edges, exact budget is {budget}")
            }
            Violation::CutBudgetExceeded { budget, got } => {
                write!(f, "cut has {got} edges, budget allows at most {budget}")
            }
            Violation::EdgeNotInTree { parent, child } => {
                write!(f, "cut edge {parent}-{child} is not an edge of the tree")
            }
            Violation::DuplicateCutEdge { parent, child } => {
                write!(f, "cut edge {parent}-{child} listed twice")
            }
            Violation::UnknownRepresentative { rep } => {
                write!(f, "assignment names {rep}, which is no component representative")
            }
            Violation::UnassignedComponent { rep } => {
                write!(f, "component with representative {rep} is not assigned to any group")
            }
            Violation::GroupIndexOutOfRange { rep, group, groups } => {
                write!(
                    f,
                    "component {rep} assigned to group {}, but there are only {groups} groups",
                    group + 1
                )
            }
            Violation::GroupLoadMismatch { group, expected, got } => {
                write!(f, "group {} load {got} != {expected}", group + 1)
            }
        }
    }
}

impl core::error::Error for Violation {}

/// Accepts iff `sol` is a solution of `inst`: the cut size matches the
/// budget (mode-dependent), every component of `T - E_P` is assigned to
/// exactly one group, and every group `i` receives exactly `s_i` vertices.
pub fn verify_solution(inst: &Instance, sol: &CutSolution) -> Result<(), Violation> {
    match inst.mode {
        BudgetMode::Exact if sol.cut_edges.len() != inst.budget => {
            return Err(Violation::CutCountMismatch {
                budget: inst.budget,
                got: sol.cut_edges.len(),
            });
        }
        BudgetMode::AtMost if sol.cut_edges.len() > inst.budget => {
            return Err(Violation::CutBudgetExceeded {
                budget: inst.budget,
                got: sol.cut_edges.len(),
            });
        }
        _ => {}
    }

    let mut tops: Vec<VertexId> = Vec::with_capacity(sol.cut_edges.len());
    for &(u, v) in &sol.cut_edges {
        if !inst.tree.is_edge(u, v) {
            return Err(Violation::EdgeNotInTree { parent: u, child: v });
        }
        tops.push(v);
    }
    {
        let mut sorted = tops.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Violation::DuplicateCutEdge {
                parent: inst.tree.parent(w[0]).unwrap(),
                child: w[0],
            });
        }
    }

    let labels = ComponentLabels::compute(&inst.tree, &tops);
    let sizes = labels.sizes_by_rep();
    for rep in sol.assignment.keys() {
        if !sizes.contains_key(rep) {
            return Err(Violation::UnknownRepresentative { rep: *rep });
        }
    }
    for rep in sizes.keys() {
        if !sol.assignment.contains_key(rep) {
            return Err(Violation::UnassignedComponent { rep: *rep });
        }
    }
    let groups = inst.groups();
    for (&rep, &g) in &sol.assignment {
        if g >= groups {
            return Err(Violation::GroupIndexOutOfRange { rep, group: g, groups });
        }
    }
    let loads = sol.group_loads(groups, &sizes);
    for (g, (&got, &expected)) in loads.iter().zip(inst.targets.iter()).enumerate() {
        if got != expected {
            return Err(Violation::GroupLoadMismatch { group: g, expected, got });
        }
    }
    Ok(())
}
