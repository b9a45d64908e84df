//! Rooted trees over dense 0-based vertex ids.
//!
//! A [`Tree`] is stored as a parent array: `parent[v]` is the parent of `v`,
//! with the root carrying a sentinel. Child adjacency is derived on demand as
//! a CSR-style [`ChildrenTable`], so a tree of `n` vertices costs one `u32`
//! per vertex until an operation actually needs to walk downwards. Gadget
//! instances can reach 10^8 vertices, which is why the representation is kept
//! this lean.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Dense 0-based vertex identifier.
pub type VertexId = u32;

const NO_PARENT: VertexId = VertexId::MAX;

/// A rooted tree on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    parent: Vec<VertexId>,
    root: VertexId,
}

/// Structural defects detected when building a [`Tree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    /// A tree must have at least one vertex.
    Empty,
    /// Too many vertices for the `u32` id space.
    TooManyVertices { vertices: usize },
    /// An edge endpoint is not in `0..n`.
    VertexOutOfRange { vertex: u64, vertices: usize },
    /// The same (parent, child) pair appeared twice.
    DuplicateEdge { parent: VertexId, child: VertexId },
    /// A vertex was given two distinct parents.
    SecondParent { child: VertexId },
    /// An edge points into the designated root.
    RootHasParent { root: VertexId },
    /// The edge set does not connect this vertex to the root (cycle or
    /// disconnection).
    Unreachable { vertex: VertexId },
    /// A tree on `n` vertices needs exactly `n - 1` edges.
    EdgeCountMismatch { expected: usize, got: usize },
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::Empty => write!(f, "tree must have at least one vertex"),
            TreeError::TooManyVertices { vertices } => {
                write!(f, "vertex count {vertices} exceeds the u32 id space")
            }
            TreeError::VertexOutOfRange { vertex, vertices } => {
                write!(f, "vertex {vertex} out of range 0..{vertices}")
            }
            TreeError::DuplicateEdge { parent, child } => {
                write!(f, "duplicate edge {parent}-{child}")
            }
            TreeError::SecondParent { child } => {
                write!(f, "vertex {child} has two parents")
            }
            TreeError::RootHasParent { root } => {
                write!(f, "root {root} must not have a parent")
            }
            TreeError::Unreachable { vertex } => {
                write!(f, "vertex {vertex} is not connected to the root")
            }
            TreeError::EdgeCountMismatch { expected, got } => {
                write!(f, "expected {expected} edges, got {got}")
            }
        }
    }
}

impl core::error::Error for TreeError {}

impl Tree {
    /// The one-vertex tree.
    pub fn singleton() -> Tree {
        Tree { parent: vec![NO_PARENT], root: 0 }
    }

    /// Builds a tree rooted at vertex 0 from directed `(parent, child)` edges.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if n > NO_PARENT as usize {
            return Err(TreeError::TooManyVertices { vertices: n });
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCountMismatch { expected: n - 1, got: edges.len() });
        }
        let mut parent = vec![NO_PARENT; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w as usize >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: w as u64, vertices: n });
                }
            }
            if v == 0 {
                return Err(TreeError::RootHasParent { root: 0 });
            }
            if parent[v as usize] != NO_PARENT {
                return Err(if parent[v as usize] == u {
                    TreeError::DuplicateEdge { parent: u, child: v }
                } else {
                    TreeError::SecondParent { child: v }
                });
            }
            parent[v as usize] = u;
        }
        let tree = Tree { parent, root: 0 };
        tree.check_reachability()?;
        Ok(tree)
    }

    /// Builds a tree from a parent array; `parent[root]` must be `u32::MAX`.
    ///
    /// Intended for generators that lay vertices out parent-before-child; the
    /// array is validated for connectivity regardless of layout order.
    pub fn from_parents(parent: Vec<VertexId>, root: VertexId) -> Result<Tree, TreeError> {
        let n = parent.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if n > NO_PARENT as usize {
            return Err(TreeError::TooManyVertices { vertices: n });
        }
        if (root as usize) >= n || parent[root as usize] != NO_PARENT {
            return Err(TreeError::RootHasParent { root });
        }
        for (v, &p) in parent.iter().enumerate() {
            if v as VertexId != root {
                if p == NO_PARENT {
                    return Err(TreeError::Unreachable { vertex: v as VertexId });
                }
                if p as usize >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: p as u64, vertices: n });
                }
            }
        }
        let tree = Tree { parent, root };
        tree.check_reachability()?;
        Ok(tree)
    }

    /// Decodes a Prüfer sequence into a tree rooted at 0.
    ///
    /// A sequence of length `n - 2` over `0..n` yields each labeled tree on
    /// `n >= 2` vertices exactly once; the empty sequence yields the edge 0-1.
    pub fn from_prufer(seq: &[VertexId]) -> Result<Tree, TreeError> {
        let n = seq.len() + 2;
        if n > NO_PARENT as usize {
            return Err(TreeError::TooManyVertices { vertices: n });
        }
        for &a in seq {
            if a as usize >= n {
                return Err(TreeError::VertexOutOfRange { vertex: a as u64, vertices: n });
            }
        }
        let mut degree = vec![1u32; n];
        for &a in seq {
            degree[a as usize] += 1;
        }
        // Smallest-leaf-first decoding; a pointer sweep avoids a heap.
        let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(n - 1);
        let mut ptr = 0usize;
        while degree[ptr] != 1 {
            ptr += 1;
        }
        let mut leaf = ptr;
        for &a in seq {
            edges.push((leaf as VertexId, a));
            degree[a as usize] -= 1;
            if degree[a as usize] == 1 && (a as usize) < ptr {
                leaf = a as usize;
            } else {
                ptr += 1;
                while degree[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr;
            }
        }
        edges.push((leaf as VertexId, (n - 1) as VertexId));
        Ok(Tree::from_undirected(n, &edges, 0))
    }

    /// Orients an undirected edge list away from `root`. The edges must form
    /// a tree; callers are internal constructors that guarantee this.
    fn from_undirected(n: usize, edges: &[(VertexId, VertexId)], root: VertexId) -> Tree {
        let mut adj_head = vec![u32::MAX; n];
        // Each undirected edge appears as two half-edges in a linked list.
        let mut next = vec![u32::MAX; edges.len() * 2];
        let mut to = vec![0 as VertexId; edges.len() * 2];
        for (i, &(u, v)) in edges.iter().enumerate() {
            let (a, b) = (2 * i, 2 * i + 1);
            to[a] = v;
            next[a] = adj_head[u as usize];
            adj_head[u as usize] = a as u32;
            to[b] = u;
            next[b] = adj_head[v as usize];
            adj_head[v as usize] = b as u32;
        }
        let mut parent = vec![NO_PARENT; n];
        let mut seen = vec![false; n];
        let mut queue = Vec::with_capacity(n);
        queue.push(root);
        seen[root as usize] = true;
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            let mut e = adj_head[v as usize];
            while e != u32::MAX {
                let w = to[e as usize];
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    parent[w as usize] = v;
                    queue.push(w);
                }
                e = next[e as usize];
            }
        }
        Tree { parent, root }
    }

    /// Walk-up connectivity check with path memoization; O(n) amortized.
    fn check_reachability(&self) -> Result<(), TreeError> {
        let n = self.parent.len();
        let mut ok = vec![false; n];
        ok[self.root as usize] = true;
        let mut stack: Vec<VertexId> = Vec::new();
        for v in 0..n {
            let mut w = v as VertexId;
            while !ok[w as usize] {
                stack.push(w);
                if stack.len() > n {
                    return Err(TreeError::Unreachable { vertex: v as VertexId });
                }
                w = self.parent[w as usize];
            }
            for &u in &stack {
                ok[u as usize] = true;
            }
            stack.clear();
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    /// Parent of `v`, or `None` for the root.
    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        let p = self.parent[v as usize];
        (p != NO_PARENT).then_some(p)
    }

    /// True iff `(u, v)` is an edge with `u` the parent of `v`.
    pub fn is_edge(&self, u: VertexId, v: VertexId) -> bool {
        (v as usize) < self.parent.len() && v != self.root && self.parent[v as usize] == u
    }

    /// All edges as `(parent, child)` pairs, in increasing child order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p != NO_PARENT)
            .map(|(v, &p)| (p, v as VertexId))
    }

    /// Child adjacency in CSR form; children of every vertex in id order.
    pub fn children_table(&self) -> ChildrenTable {
        let n = self.parent.len();
        let mut offsets = vec![0u32; n + 1];
        for &p in &self.parent {
            if p != NO_PARENT {
                offsets[p as usize + 1] += 1;
            }
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut child = vec![0 as VertexId; n - 1];
        for (v, &p) in self.parent.iter().enumerate() {
            if p != NO_PARENT {
                child[cursor[p as usize] as usize] = v as VertexId;
                cursor[p as usize] += 1;
            }
        }
        ChildrenTable { offsets, child }
    }

    /// Maximum vertex degree in the underlying undirected tree.
    pub fn max_degree(&self) -> usize {
        let n = self.parent.len();
        let mut deg = vec![0u32; n];
        for (v, &p) in self.parent.iter().enumerate() {
            if p != NO_PARENT {
                deg[p as usize] += 1;
                deg[v] += 1;
            }
        }
        deg.iter().copied().max().unwrap_or(0) as usize
    }

    /// The same undirected tree re-rooted at `new_root`.
    pub fn rerooted(&self, new_root: VertexId) -> Tree {
        assert!((new_root as usize) < self.parent.len());
        if new_root == self.root {
            return self.clone();
        }
        let edges: Vec<_> = self.edges().collect();
        Tree::from_undirected(self.parent.len(), &edges, new_root)
    }

    /// Renames vertex `v` to `perm[v]`; `perm` must be a permutation of
    /// `0..n`. The root moves with its label.
    pub fn relabeled(&self, perm: &[VertexId]) -> Tree {
        let n = self.parent.len();
        assert_eq!(perm.len(), n);
        let mut parent = vec![NO_PARENT; n];
        for (v, &p) in self.parent.iter().enumerate() {
            if p != NO_PARENT {
                parent[perm[v] as usize] = perm[p as usize];
            }
        }
        Tree { parent, root: perm[self.root as usize] }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}, root={}, edges=[", self.parent.len(), self.root)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// CSR child adjacency derived from a [`Tree`].
pub struct ChildrenTable {
    offsets: Vec<u32>,
    child: Vec<VertexId>,
}

impl ChildrenTable {
    pub fn children(&self, v: VertexId) -> &[VertexId] {
        let lo = self.offsets[v as usize] as usize;
        let hi = self.offsets[v as usize + 1] as usize;
        &self.child[lo..hi]
    }

    /// Post-order over the subtree of `root` (children before parents,
    /// sibling subtrees in id order). Iterative, so path-shaped trees of any
    /// depth are fine.
    pub fn post_order(&self, root: VertexId) -> Vec<VertexId> {
        let mut order = Vec::new();
        let mut stack: Vec<(VertexId, usize)> = alloc::vec![(root, 0)];
        while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
            let kids = self.children(v);
            if *cursor < kids.len() {
                let c = kids[*cursor];
                *cursor += 1;
                stack.push((c, 0));
            } else {
                order.push(v);
                stack.pop();
            }
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n as VertexId).map(|v| (v - 1, v)).collect();
        Tree::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn singleton_and_path() {
        let t = Tree::singleton();
        assert_eq!(t.vertex_count(), 1);
        assert_eq!(t.root(), 0);
        assert_eq!(t.parent(0), None);

        let p = path(4);
        assert_eq!(p.vertex_count(), 4);
        assert!(p.is_edge(1, 2));
        assert!(!p.is_edge(2, 1));
        assert_eq!(p.max_degree(), 2);
    }

    #[test]
    fn from_edges_rejects_defects() {
        assert_eq!(Tree::from_edges(0, &[]), Err(TreeError::Empty));
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1)]),
            Err(TreeError::EdgeCountMismatch { expected: 2, got: 1 })
        ));
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1), (0, 1)]),
            Err(TreeError::DuplicateEdge { parent: 0, child: 1 })
        ));
        assert!(matches!(
            Tree::from_edges(3, &[(0, 1), (2, 1)]),
            Err(TreeError::SecondParent { child: 1 })
        ));
        assert!(matches!(
            Tree::from_edges(3, &[(1, 2), (2, 1)]),
            Err(TreeError::SecondParent { .. }) | Err(TreeError::Unreachable { .. })
        ));
        // 0-1 plus the 2-3 cycle-free pair is disconnected from the root.
        assert!(matches!(
            Tree::from_edges(4, &[(0, 1), (2, 3), (3, 2)]),
            Err(TreeError::SecondParent { .. }) | Err(TreeError::Unreachable { .. })
        ));
        assert!(matches!(
            Tree::from_edges(2, &[(1, 0)]),
            Err(TreeError::RootHasParent { root: 0 })
        ));
    }

    #[test]
    fn prufer_decodes_every_labeled_tree_once() {
        // All 16 labeled trees on 4 vertices, each from a distinct sequence.
        let mut seen = alloc::collections::BTreeSet::new();
        for a in 0..4u32 {
            for b in 0..4u32 {
                let t = Tree::from_prufer(&[a, b]).unwrap();
                let mut edges: Vec<_> = t
                    .edges()
                    .map(|(u, v)| (u.min(v), u.max(v)))
                    .collect();
                edges.sort_unstable();
                assert!(seen.insert(edges));
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn reroot_preserves_undirected_edges() {
        let t = path(5);
        for r in 0..5 {
            let s = t.rerooted(r);
            assert_eq!(s.root(), r);
            let mut a: Vec<_> = t.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
            let mut b: Vec<_> = s.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn relabel_is_a_rename() {
        let t = path(4);
        let perm = [2u32, 0, 3, 1];
        let s = t.relabeled(&perm);
        assert_eq!(s.root(), 2);
        assert!(s.is_edge(2, 0));
        assert!(s.is_edge(0, 3));
        assert!(s.is_edge(3, 1));
    }

    #[test]
    fn post_order_visits_children_first() {
        // Star: root 0 with leaves 1..4.
        let t = Tree::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let csr = t.children_table();
        assert_eq!(csr.post_order(0), alloc::vec![1, 2, 3, 0]);
        assert_eq!(csr.children(0), &[1, 2, 3]);
    }
}
