//! Instance constructions: nice binary trees, stars, the 3-Partition
//! reduction tree with its certificate cut, the multicolored-clique
//! reduction tree with its certificate cut, non-averaging sets, and the
//! reduction from general targets to balanced ones.
//!
//! Gadget arithmetic runs in arbitrary precision: the pair signatures grow
//! like k'^(O(k^2)) * n^5 and silent overflow would corrupt the targets. A
//! gadget is materialized only when its order fits the vertex id space.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::components::ComponentLabels;
use crate::instance::{BudgetMode, CutSolution, Instance};
use crate::oracle::{MccInstance, ThreePartitionInstance};
use crate::tree::{Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreprocessReject {
    /// An element equal to s/2 - 1 cannot be completed to a triple.
    HalfMinusOne { index: usize },
    /// An element equal to s/2 - 2 needs two s/4 + 1 partners, which are
    /// not present.
    MissingPartners { index: usize },
}

impl fmt::Display for PreprocessReject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreprocessReject::HalfMinusOne { index } => {
                write!(f, "element at index {index} equals s/2 - 1; no triple can absorb it")
            }
            PreprocessReject::MissingPartners { index } => {
                write!(f, "element at index {index} equals s/2 - 2 without two s/4 + 1 partners")
            }
        }
    }
}

impl core::error::Error for PreprocessReject {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetError {
    Rejected(PreprocessReject),
    /// The elements must sum to k*s, otherwise no balanced instance exists.
    ElementSumMismatch { sum: u64, expected: u64 },
    EmptyInstance,
    /// The clique gadget is defined for k >= 2 classes.
    NeedTwoClasses { classes: usize },
    /// The tree would not fit the vertex id space.
    TooLarge { vertices: BigUint },
}

impl fmt::Display for GadgetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetError::Rejected(r) => write!(f, "preprocessing rejected the instance: {r}"),
            GadgetError::ElementSumMismatch { sum, expected } => {
                write!(f, "elements sum to {sum}, expected k*s = {expected}")
            }
            GadgetError::EmptyInstance => write!(f, "instance has no elements"),
            GadgetError::NeedTwoClasses { classes } => {
                write!(f, "clique gadget needs at least 2 classes, got {classes}")
            }
            GadgetError::TooLarge { vertices } => {
                write!(f, "gadget tree of {vertices} vertices cannot be materialized")
            }
        }
    }
}

impl core::error::Error for GadgetError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateError {
    WrongGroupCount { expected: usize, got: usize },
    /// The grouping does not partition the element index set.
    NotAPartition,
    TripleSumMismatch { group: usize, sum: u64, target: u64 },
    WrongCliqueSize { expected: usize, got: usize },
    VertexOutOfRange { class: usize, index: usize },
    MissingCliqueEdge { a: (usize, usize), b: (usize, usize) },
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::WrongGroupCount { expected, got } => {
                write!(f, "grouping has {got} triples, expected {expected}")
            }
            CertificateError::NotAPartition => {
                write!(f, "grouping does not partition the element indices")
            }
            CertificateError::TripleSumMismatch { group, sum, target } => {
                write!(f, "triple {group} sums to {sum}, expected {target}")
            }
            CertificateError::WrongCliqueSize { expected, got } => {
                write!(f, "clique has {got} vertices, expected {expected}")
            }
            CertificateError::VertexOutOfRange { class, index } => {
                write!(f, "clique vertex ({class},{index}) out of range")
            }
            CertificateError::MissingCliqueEdge { a, b } => {
                write!(f, "({},{}) and ({},{}) are not adjacent", a.0, a.1, b.0, b.1)
            }
        }
    }
}

impl core::error::Error for CertificateError {}

/// Incremental parent-array construction. Vertex 0 is the root; children
/// always get larger ids than their parents.
struct TreeBuilder {
    parent: Vec<VertexId>,
}

impl TreeBuilder {
    fn with_capacity(capacity: usize) -> TreeBuilder {
        let mut parent = Vec::with_capacity(capacity);
        parent.push(VertexId::MAX);
        TreeBuilder { parent }
    }

    fn add_child(&mut self, parent: VertexId) -> VertexId {
        let id = self.parent.len() as VertexId;
        self.parent.push(parent);
        id
    }

    /// Star of the given order under `parent`; returns the star root.
    fn add_star(&mut self, parent: VertexId, order: u64) -> VertexId {
        debug_assert!(order >= 1);
        let root = self.add_child(parent);
        let len = self.parent.len() + (order - 1) as usize;
        self.parent.resize(len, root);
        root
    }

    /// Nice binary tree of the given order under `parent`: both child
    /// subtrees nice, orders differing by at most one, the left taking the
    /// larger half. Returns the subtree root.
    fn add_nice(&mut self, parent: VertexId, order: u64) -> VertexId {
        debug_assert!(order >= 1);
        let root = self.add_child(parent);
        let left = order / 2; // ceil((order - 1) / 2)
        let right = (order - 1) / 2;
        if left > 0 {
            self.add_nice(root, left);
        }
        if right > 0 {
            self.add_nice(root, right);
        }
        root
    }

    fn finish(self) -> Tree {
        Tree::from_parents(self.parent, 0).expect("builder output is connected")
    }
}

/// Nice binary tree of order `m >= 1`, rooted at vertex 0.
pub fn nice_binary_tree(m: u64) -> Tree {
    assert!(m >= 1, "a tree needs at least one vertex");
    let mut b = TreeBuilder::with_capacity(m as usize);
    let left = m / 2;
    let right = (m - 1) / 2;
    if left > 0 {
        b.add_nice(0, left);
    }
    if right > 0 {
        b.add_nice(0, right);
    }
    b.finish()
}

/// Star of order `m >= 1`: a root attached to `m - 1` leaves.
pub fn star(m: u64) -> Tree {
    assert!(m >= 1, "a tree needs at least one vertex");
    let mut b = TreeBuilder::with_capacity(m as usize);
    for _ in 1..m {
        b.add_child(0);
    }
    b.finish()
}

/// Normalizes a 3-Partition instance so that s is a multiple of 4, s > 24k,
/// and s/4 + 6k <= a_i <= s/2 - 18k, preserving the yes/no answer:
///
/// 1. scale s and every element by 4;
/// 2. reject on an element equal to s/2 - 1; remove any element equal to
///    s/2 - 2 together with two elements of value s/4 + 1 (its only possible
///    partners), rejecting if they are missing;
/// 3. scale by 6k.
pub fn preprocess_3partition(
    tp: &ThreePartitionInstance,
) -> Result<ThreePartitionInstance, PreprocessReject> {
    let s4 = tp.target() * 4;
    let mut a: Vec<u64> = tp.elements().iter().map(|&x| x * 4).collect();

    if let Some(index) = a.iter().position(|&x| x == s4 / 2 - 1) {
        return Err(PreprocessReject::HalfMinusOne { index });
    }
    while let Some(index) = a.iter().position(|&x| x == s4 / 2 - 2) {
        let quarter = s4 / 4 + 1;
        let partners: Vec<usize> = a
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i != index && x == quarter)
            .map(|(i, _)| i)
            .take(2)
            .collect();
        if partners.len() < 2 {
            return Err(PreprocessReject::MissingPartners { index });
        }
        let mut remove = vec![index, partners[0], partners[1]];
        remove.sort_unstable();
        for i in remove.into_iter().rev() {
            a.remove(i);
        }
    }

    // Step 3 uses the group count after the removals; an emptied instance is
    // trivially satisfiable and scaling by zero would destroy it.
    let k = a.len() as u64 / 3;
    let factor = if k == 0 { 1 } else { 6 * k };
    let s = s4 * factor;
    for x in &mut a {
        *x *= factor;
    }
    Ok(ThreePartitionInstance::new(s, a).expect("scaling preserves the element range"))
}

/// The 3-Partition reduction tree plus the bookkeeping the certificate cut
/// needs: for each element a binary tree `T_i` whose left subtree has order
/// `a_i` and whose right subtree has order `s - 2`, all hanging off a path
/// of 3k vertices.
#[derive(Debug)]
pub struct ThreePartitionGadget {
    pub instance: Instance,
    /// The instance the tree encodes (preprocessed unless `raw`).
    pub tp: ThreePartitionInstance,
    /// The edge above each left subtree `L_i`.
    pub left_edges: Vec<(VertexId, VertexId)>,
    /// The 3k - 1 edges of the path.
    pub path_edges: Vec<(VertexId, VertexId)>,
    /// Root of each `T_i`.
    pub t_roots: Vec<VertexId>,
}

/// Builds the balanced instance `(T, 6k - 1, 4k groups of s)` for a
/// 3-Partition input. With `raw` the input is encoded as-is (desk-scale
/// oracle checks need that); otherwise [`preprocess_3partition`] runs first.
pub fn gadget_3partition(
    tp: &ThreePartitionInstance,
    raw: bool,
) -> Result<ThreePartitionGadget, GadgetError> {
    let tp = if raw {
        tp.clone()
    } else {
        preprocess_3partition(tp).map_err(GadgetError::Rejected)?
    };
    let k = tp.group_count() as u64;
    if k == 0 {
        return Err(GadgetError::EmptyInstance);
    }
    let s = tp.target();
    let sum: u64 = tp.elements().iter().sum();
    if sum != k * s {
        return Err(GadgetError::ElementSumMismatch { sum, expected: k * s });
    }
    let total = 4 * k * s;
    if total >= VertexId::MAX as u64 {
        return Err(GadgetError::TooLarge { vertices: BigUint::from(total) });
    }

    let mut b = TreeBuilder::with_capacity(total as usize);
    // Path vertices first: ids 0..3k-1, rooted at the path's first vertex.
    let mut path_edges = Vec::with_capacity(3 * k as usize - 1);
    for i in 1..3 * k as usize {
        let p = b.add_child(i as VertexId - 1);
        debug_assert_eq!(p as usize, i);
        path_edges.push((i as VertexId - 1, i as VertexId));
    }
    let mut left_edges = Vec::with_capacity(3 * k as usize);
    let mut t_roots = Vec::with_capacity(3 * k as usize);
    for (i, &a) in tp.elements().iter().enumerate() {
        let t_root = b.add_child(i as VertexId);
        let l_root = b.add_nice(t_root, a);
        b.add_nice(t_root, s - 2);
        left_edges.push((t_root, l_root));
        t_roots.push(t_root);
    }
    let tree = b.finish();
    debug_assert_eq!(tree.vertex_count() as u64, total);
    let instance = Instance::new(
        tree,
        (6 * k - 1) as usize,
        vec![s; 4 * k as usize],
        BudgetMode::Exact,
    )
    .expect("gadget accounting is balanced");
    Ok(ThreePartitionGadget { instance, tp, left_edges, path_edges, t_roots })
}

/// The certificate cut for a yes-instance: the edge above every `L_i` plus
/// all path edges (6k - 1 cuts). Each `L_i` joins the group of its triple;
/// each remaining `T_i` remnant together with its path vertex is a
/// size-s component alone in a group.
pub fn certificate_cut_3partition(
    gadget: &ThreePartitionGadget,
    grouping: &[[usize; 3]],
) -> Result<CutSolution, CertificateError> {
    let k = gadget.tp.group_count();
    if grouping.len() != k {
        return Err(CertificateError::WrongGroupCount { expected: k, got: grouping.len() });
    }
    let mut seen = vec![false; 3 * k];
    for triple in grouping {
        for &i in triple {
            if i >= 3 * k || seen[i] {
                return Err(CertificateError::NotAPartition);
            }
            seen[i] = true;
        }
    }
    for (g, triple) in grouping.iter().enumerate() {
        let sum: u64 = triple.iter().map(|&i| gadget.tp.elements()[i]).sum();
        if sum != gadget.tp.target() {
            return Err(CertificateError::TripleSumMismatch {
                group: g,
                sum,
                target: gadget.tp.target(),
            });
        }
    }

    let mut cuts = gadget.left_edges.clone();
    cuts.extend_from_slice(&gadget.path_edges);
    let tops: Vec<VertexId> = cuts.iter().map(|&(_, v)| v).collect();
    let labels = ComponentLabels::compute(&gadget.instance.tree, &tops);

    let mut assignment = BTreeMap::new();
    for (g, triple) in grouping.iter().enumerate() {
        for &i in triple {
            let l_top = gadget.left_edges[i].1;
            assignment.insert(labels.rep_of_top(l_top), g);
        }
    }
    // Remnant of T_i plus p_i: topped by p_i (p_1 tops the whole root
    // component).
    for i in 0..3 * k {
        assignment.insert(labels.rep_of_top(i as VertexId), k + i);
    }
    Ok(CutSolution::new(cuts, assignment))
}

/// Strictly increasing positive integers such that any `l` members (with
/// repetition) summing to `l` times a member forces all of them equal to it.
/// Built greedily: the smallest admissible next integer, each step verified
/// exhaustively by [`is_non_averaging`].
pub fn non_averaging_set(count: usize, l: u32) -> Vec<u64> {
    assert!(count >= 1 && l >= 1);
    let mut xs: Vec<u64> = Vec::with_capacity(count);
    let mut candidate = 1u64;
    while xs.len() < count {
        xs.push(candidate);
        if !is_non_averaging(&xs, l) {
            xs.pop();
        }
        candidate += 1;
    }
    xs
}

/// Exhaustive check of the defining property over all size-`l` multisets.
pub fn is_non_averaging(xs: &[u64], l: u32) -> bool {
    if xs.is_empty() {
        return true;
    }
    let l = l as usize;
    let mut idx = vec![0usize; l];
    loop {
        let sum: u64 = idx.iter().map(|&i| xs[i]).sum();
        for &x in xs {
            if sum == l as u64 * x && !idx.iter().all(|&i| xs[i] == x) {
                return false;
            }
        }
        // Next nondecreasing index tuple.
        let mut pos = l;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            if idx[pos] + 1 < xs.len() {
                let v = idx[pos] + 1;
                for slot in &mut idx[pos..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// The element bound cited for polynomial-time constructions of
/// (l)-non-averaging sets of the given cardinality: k^2 n^2 with k = l + 1.
pub fn non_averaging_cited_bound(count: usize, l: u32) -> u64 {
    let k = l as u64 + 1;
    k * k * (count as u64) * (count as u64)
}

fn big_pow(base: &BigUint, exp: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// The numeric skeleton of the clique gadget, in arbitrary precision.
///
/// With k classes of n vertices: k' = k + C(k,2); z = k'^2 n^5; the class
/// weights b_j = k'^(2j) z and class signatures c_j = k'^(2(k+j)) z each grow
/// by a factor k'^2 along their sequences, as do the pair signatures
/// c_j^q = c_k * k'^(2((j-1)k - j(j-1)/2 + q - j)) in lexicographic (j, q)
/// order.
#[derive(Debug, Clone)]
pub struct MccGadgetParams {
    pub classes: usize,
    pub class_size: usize,
    /// k' = k + C(k,2).
    pub group_param: usize,
    /// Cut budget k + 3*C(k,2).
    pub budget: usize,
    pub z: BigUint,
    /// b_1..b_k.
    pub class_weights: Vec<BigUint>,
    /// c_1..c_k.
    pub class_signatures: Vec<BigUint>,
    /// ((j, q), c_j^q) for 0-based j < q, lexicographic.
    pub pair_signatures: Vec<((usize, usize), BigUint)>,
    /// The (k-1)-non-averaging set x_1..x_n.
    pub nonavg: Vec<u64>,
    /// True when the greedy non-averaging set exceeds the cited k^2 n^2
    /// element bound; callers may want to surface a warning.
    pub nonavg_exceeds_cited_bound: bool,
    /// Order of each of the k' + 1 fixing stars.
    pub fix_star_order: BigUint,
    /// Order of the whole gadget tree.
    pub total: BigUint,
    /// Target of the remainder group.
    pub rest_target: BigUint,
}

impl MccGadgetParams {
    pub fn compute(mcc: &MccInstance) -> Result<MccGadgetParams, GadgetError> {
        let k = mcc.classes();
        if k < 2 {
            return Err(GadgetError::NeedTwoClasses { classes: k });
        }
        let n = mcc.class_size();
        let pairs = k * (k - 1) / 2;
        let group_param = k + pairs;
        let budget = k + 3 * pairs;
        let kp = BigUint::from(group_param);
        let z = &kp * &kp * big_pow(&BigUint::from(n), 5);

        let class_weights: Vec<BigUint> =
            (1..=k as u64).map(|j| big_pow(&kp, 2 * j) * &z).collect();
        let class_signatures: Vec<BigUint> =
            (1..=k as u64).map(|j| big_pow(&kp, 2 * (k as u64 + j)) * &z).collect();
        let c_k = class_signatures[k - 1].clone();
        let mut pair_signatures = Vec::with_capacity(pairs);
        for j in 1..=k as u64 {
            for q in j + 1..=k as u64 {
                let exp = 2 * ((j - 1) * k as u64 - j * (j - 1) / 2 + q - j);
                pair_signatures
                    .push(((j as usize - 1, q as usize - 1), &c_k * big_pow(&kp, exp)));
            }
        }

        let nonavg = non_averaging_set(n, k as u32 - 1);
        let nonavg_exceeds_cited_bound = nonavg
            .iter()
            .any(|&x| x > non_averaging_cited_bound(n, k as u32 - 1));

        let fix_star_order =
            pair_signatures.last().map(|(_, c)| c.clone()).expect("k >= 2 has pairs")
                + BigUint::from(group_param + 1);

        // Vertex gadgets, edge gadgets, the fixing stars, and the root.
        let km1 = BigUint::from(k as u64 - 1);
        let mut total = BigUint::from(1u32);
        for j in 0..k {
            for i in 0..n {
                total += &class_signatures[j]
                    - &km1 * &class_weights[j]
                    - &km1 * BigUint::from(nonavg[i]);
            }
        }
        for &((j, i), (q, p)) in mcc.edges() {
            let pair_sig = pair_signatures
                .iter()
                .find(|&&((pj, pq), _)| (pj, pq) == (j, q))
                .map(|(_, c)| c.clone())
                .expect("normalized edge classes");
            total += pair_sig
                + &class_weights[j]
                + BigUint::from(nonavg[i])
                + &class_weights[q]
                + BigUint::from(nonavg[p]);
        }
        total += BigUint::from(group_param as u64 + 1) * &fix_star_order;

        let mut rest_target = total.clone();
        for c in &class_signatures {
            rest_target -= c;
        }
        for (_, c) in &pair_signatures {
            rest_target -= c;
        }

        Ok(MccGadgetParams {
            classes: k,
            class_size: n,
            group_param,
            budget,
            z,
            class_weights,
            class_signatures,
            pair_signatures,
            nonavg,
            nonavg_exceeds_cited_bound,
            fix_star_order,
            total,
            rest_target,
        })
    }

    /// Order of the vertex gadget star for vertex `(class j, index i)`.
    pub fn vertex_gadget_order(&self, j: usize, i: usize) -> BigUint {
        let km1 = BigUint::from(self.classes as u64 - 1);
        &self.class_signatures[j]
            - &km1 * &self.class_weights[j]
            - &km1 * BigUint::from(self.nonavg[i])
    }

    /// Order of the side star for class `j`, index `i` inside an edge gadget.
    pub fn side_star_order(&self, j: usize, i: usize) -> BigUint {
        &self.class_weights[j] + BigUint::from(self.nonavg[i])
    }

    pub fn pair_signature(&self, j: usize, q: usize) -> &BigUint {
        self.pair_signatures
            .iter()
            .find(|&&((pj, pq), _)| (pj, pq) == (j, q))
            .map(|(_, c)| c)
            .expect("pair exists")
    }

    /// Position of the pair group (j, q) in the target list.
    pub fn pair_group_index(&self, j: usize, q: usize) -> usize {
        self.classes
            + self
                .pair_signatures
                .iter()
                .position(|&((pj, pq), _)| (pj, pq) == (j, q))
                .expect("pair exists")
    }
}

/// The clique reduction tree plus the edges its certificate cut needs.
#[derive(Debug)]
pub struct MccGadget {
    pub instance: Instance,
    pub params: MccGadgetParams,
    pub mcc: MccInstance,
    /// Edge from the root to each vertex gadget, indexed `[class][index]`.
    pub vertex_edges: Vec<Vec<(VertexId, VertexId)>>,
    /// For each graph edge: the root edge of its gadget and the two edges
    /// from the gadget root to the side stars.
    pub edge_gadget_edges: BTreeMap<((usize, usize), (usize, usize)), [(VertexId, VertexId); 3]>,
}

/// Materializes the clique gadget: one star per graph vertex, one edge
/// gadget per graph edge, and k' + 1 fixing stars, all attached to a common
/// root. Targets are the class signatures, the pair signatures, and the
/// remainder.
pub fn gadget_mcc(mcc: &MccInstance) -> Result<MccGadget, GadgetError> {
    let params = MccGadgetParams::compute(mcc)?;
    let total = u64::try_from(&params.total)
        .ok()
        .filter(|&t| t < VertexId::MAX as u64)
        .ok_or_else(|| GadgetError::TooLarge { vertices: params.total.clone() })?;

    let as_u64 = |b: &BigUint| u64::try_from(b).expect("bounded by the total");
    let mut builder = TreeBuilder::with_capacity(total as usize);

    let k = params.classes;
    let n = params.class_size;
    let mut vertex_edges = vec![Vec::with_capacity(n); k];
    for j in 0..k {
        for i in 0..n {
            let order = as_u64(&params.vertex_gadget_order(j, i));
            let r_v = builder.add_star(0, order);
            vertex_edges[j].push((0, r_v));
        }
    }

    let mut edge_gadget_edges = BTreeMap::new();
    for &((j, i), (q, p)) in mcc.edges() {
        let r_e = builder.add_star(0, as_u64(params.pair_signature(j, q)));
        let left = builder.add_star(r_e, as_u64(&params.side_star_order(j, i)));
        let right = builder.add_star(r_e, as_u64(&params.side_star_order(q, p)));
        edge_gadget_edges
            .insert(((j, i), (q, p)), [(0, r_e), (r_e, left), (r_e, right)]);
    }

    let fix_order = as_u64(&params.fix_star_order);
    for _ in 0..=params.group_param {
        builder.add_star(0, fix_order);
    }

    let tree = builder.finish();
    debug_assert_eq!(tree.vertex_count() as u64, total);

    let mut targets: Vec<u64> = params.class_signatures.iter().map(&as_u64).collect();
    targets.extend(params.pair_signatures.iter().map(|(_, c)| as_u64(c)));
    targets.push(as_u64(&params.rest_target));
    let instance = Instance::new(tree, params.budget, targets, BudgetMode::Exact)
        .expect("gadget accounting is balanced");
    Ok(MccGadget { instance, params, mcc: mcc.clone(), vertex_edges, edge_gadget_edges })
}

/// The certificate cut for a multicolored clique: detach the clique
/// vertices' gadgets (k cuts) and carve each clique edge's gadget apart
/// (3 cuts each). Class groups absorb a vertex gadget plus its k - 1 side
/// stars, pair groups the middle stars, and the remainder group the rest.
pub fn certificate_cut_mcc(
    gadget: &MccGadget,
    clique: &[usize],
) -> Result<CutSolution, CertificateError> {
    let k = gadget.params.classes;
    let n = gadget.params.class_size;
    if clique.len() != k {
        return Err(CertificateError::WrongCliqueSize { expected: k, got: clique.len() });
    }
    for (class, &index) in clique.iter().enumerate() {
        if index >= n {
            return Err(CertificateError::VertexOutOfRange { class, index });
        }
    }
    for j in 0..k {
        for q in j + 1..k {
            if !gadget.mcc.has_edge((j, clique[j]), (q, clique[q])) {
                return Err(CertificateError::MissingCliqueEdge {
                    a: (j, clique[j]),
                    b: (q, clique[q]),
                });
            }
        }
    }

    let mut cuts = Vec::with_capacity(gadget.params.budget);
    let mut grouped: Vec<((VertexId, VertexId), usize)> = Vec::new();
    for (j, &i) in clique.iter().enumerate() {
        let edge = gadget.vertex_edges[j][i];
        cuts.push(edge);
        grouped.push((edge, j));
    }
    for j in 0..k {
        for q in j + 1..k {
            let key = ((j, clique[j]), (q, clique[q]));
            let [root_edge, left_edge, right_edge] = gadget.edge_gadget_edges[&key];
            cuts.extend_from_slice(&[root_edge, left_edge, right_edge]);
            grouped.push((left_edge, j));
            grouped.push((right_edge, q));
            grouped.push((root_edge, gadget.params.pair_group_index(j, q)));
        }
    }

    let tops: Vec<VertexId> = cuts.iter().map(|&(_, v)| v).collect();
    let labels = ComponentLabels::compute(&gadget.instance.tree, &tops);
    let mut assignment = BTreeMap::new();
    for ((_, top), group) in grouped {
        assignment.insert(labels.rep_of_top(top), group);
    }
    let rest_group = gadget.instance.groups() - 1;
    assignment.insert(labels.rep_of_top(gadget.instance.tree.root()), rest_group);
    Ok(CutSolution::new(cuts, assignment))
}

/// Reduces arbitrary targets to a balanced instance: attach to the root one
/// star of order 5n - s_i per group; the new instance asks for b groups of
/// 5n vertices with budget k + b - 1 (at-most semantics on both sides).
///
/// With more groups than k + 1 components can fill, the input is already
/// unsatisfiable and a fixed trivial no-instance is returned.
pub fn reduce_tp_to_btp(inst: &Instance) -> Instance {
    let n = inst.vertex_count() as u64;
    let b = inst.groups();
    if b > inst.budget + 1 {
        let tree = Tree::from_edges(2, &[(0, 1)]).unwrap();
        return Instance::new(tree, 0, vec![1, 1], BudgetMode::AtMost)
            .expect("fixed no-instance");
    }
    let total = 5 * n * b as u64;
    let root = inst.tree.root();
    // Keep the input tree's labels; the stars take the fresh ids.
    let mut parent: Vec<VertexId> = (0..inst.vertex_count() as VertexId)
        .map(|v| inst.tree.parent(v).unwrap_or(VertexId::MAX))
        .collect();
    parent.reserve_exact(total as usize - parent.len());
    for &s in &inst.targets {
        let star_root = parent.len() as VertexId;
        parent.push(root);
        let order = 5 * n - s;
        parent.resize(parent.len() + (order - 1) as usize, star_root);
    }
    let tree = Tree::from_parents(parent, root).expect("augmented tree is connected");
    Instance::new(tree, inst.budget + b - 1, vec![5 * n; b], BudgetMode::AtMost)
        .expect("star orders balance the instance")
}
