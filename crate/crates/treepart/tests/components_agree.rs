//! The stamped-DFS component sizes against direct traversal.

mod common;

use rand::Rng;
use treepart::components::{component_sizes_naive, DfsTables};
use treepart::VertexId;

/// Exhaustive over every labeled tree on up to 8 vertices and every cut of
/// at most 3 edges.
#[test]
fn sizes_agree_exhaustively_up_to_n8() {
    for n in 1..=8usize {
        for tree in common::all_labeled_trees(n) {
            let tables = DfsTables::build(&tree);
            let edges: Vec<(VertexId, VertexId)> = tree.edges().collect();
            let m = edges.len();
            for mask in 0u32..(1 << m) {
                if mask.count_ones() > 3 {
                    continue;
                }
                let cut: Vec<(VertexId, VertexId)> = (0..m)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| edges[i])
                    .collect();
                let tops: Vec<VertexId> = cut.iter().map(|&(_, v)| v).collect();
                let fast = tables.component_sizes(tree.root(), &tops);
                let slow = component_sizes_naive(&tree, &cut).unwrap();
                assert_eq!(fast, slow, "tree {tree:?} cut {cut:?}");
                assert_eq!(fast.len(), cut.len() + 1);
                assert_eq!(fast.iter().sum::<u64>(), n as u64);
            }
        }
    }
}

#[test]
fn sizes_agree_on_random_larger_trees() {
    let mut rng = common::rng(0xc0);
    for n in [20usize, 60, 150, 400] {
        for _ in 0..20 {
            let tree = common::random_tree(&mut rng, n);
            let tables = DfsTables::build(&tree);
            let edges: Vec<(VertexId, VertexId)> = tree.edges().collect();
            let cuts = rng.gen_range(0..=8.min(n - 1));
            let mut picked: Vec<usize> = Vec::new();
            while picked.len() < cuts {
                let i = rng.gen_range(0..edges.len());
                if !picked.contains(&i) {
                    picked.push(i);
                }
            }
            let cut: Vec<(VertexId, VertexId)> = picked.iter().map(|&i| edges[i]).collect();
            let tops: Vec<VertexId> = cut.iter().map(|&(_, v)| v).collect();
            let fast = tables.component_sizes(tree.root(), &tops);
            let slow = component_sizes_naive(&tree, &cut).unwrap();
            assert_eq!(fast, slow);
        }
    }
}
