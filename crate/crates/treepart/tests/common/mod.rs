//! Seeded instance sampling shared by the integration tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treepart::{BudgetMode, Instance, Tree, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Tree {
    match n {
        0 => panic!("empty tree"),
        1 => Tree::singleton(),
        2 => Tree::from_prufer(&[]).unwrap(),
        _ => {
            let seq: Vec<VertexId> =
                (0..n - 2).map(|_| rng.gen_range(0..n as VertexId)).collect();
            Tree::from_prufer(&seq).unwrap()
        }
    }
}

/// A uniformly random composition of `n` into `b` positive parts.
pub fn random_targets(rng: &mut ChaCha8Rng, n: u64, b: usize) -> Vec<u64> {
    assert!(b as u64 <= n);
    let mut points: Vec<u64> = (1..n).collect();
    for i in 0..b - 1 {
        let j = rng.gen_range(i..points.len());
        points.swap(i, j);
    }
    let mut cuts: Vec<u64> = points[..b - 1].to_vec();
    cuts.sort_unstable();
    cuts.push(n);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let part = c - prev;
            prev = c;
            part
        })
        .collect()
}

/// Random valid instance: tree via a Prüfer sequence, budget k in 0..=3,
/// group count up to k + 2 (so unsatisfiable-by-counting cases appear too),
/// random positive targets summing to n, random mode.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let tree = random_tree(rng, n);
    let k = rng.gen_range(0..=3.min(n - 1));
    let b = rng.gen_range(1..=(k + 2).min(n));
    let targets = random_targets(rng, n as u64, b);
    let mode = if rng.gen_bool(0.5) { BudgetMode::Exact } else { BudgetMode::AtMost };
    Instance::new(tree, k, targets, mode).unwrap()
}

/// All Prüfer sequences of length `n - 2`, i.e. every labeled tree on `n`
/// vertices exactly once.
pub fn all_labeled_trees(n: usize) -> Vec<Tree> {
    assert!(n >= 1);
    if n == 1 {
        return vec![Tree::singleton()];
    }
    if n == 2 {
        return vec![Tree::from_prufer(&[]).unwrap()];
    }
    let len = n - 2;
    let mut seq = vec![0 as VertexId; len];
    let mut out = Vec::with_capacity(n.pow(len as u32));
    loop {
        out.push(Tree::from_prufer(&seq).unwrap());
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            seq[pos] += 1;
            if (seq[pos] as usize) < n {
                break;
            }
            seq[pos] = 0;
        }
    }
}

/// Random permutation of `0..n`.
pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<VertexId> {
    let mut perm: Vec<VertexId> = (0..n as VertexId).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}
