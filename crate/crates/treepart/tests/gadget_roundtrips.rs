//! End-to-end checks of the reduction constructions.

mod common;

use rand::Rng;
use treepart::generators::{
    certificate_cut_3partition, certificate_cut_mcc, gadget_3partition, gadget_mcc,
    is_non_averaging, non_averaging_set, reduce_tp_to_btp,
};
use treepart::oracle::{
    brute_force_solve, mcc_brute, three_partition_brute, MccInstance, ThreePartitionInstance,
};
use treepart::{dp, verify_solution};

/// Every valid single-triple instance with matching sum is a yes-instance;
/// the solver must prove it on the encoded tree, and the witness must pass
/// the verifier. Covers all raw instances with k = 1 and s <= 14.
#[test]
fn dp_agrees_with_three_partition_on_small_raw_gadgets() {
    for s in 5..=14u64 {
        let lo = s / 4 + 1;
        let hi = s.div_ceil(2) - 1;
        for a1 in lo..=hi {
            for a2 in a1..=hi {
                for a3 in a2..=hi {
                    if a1 + a2 + a3 != s {
                        continue;
                    }
                    let tp = ThreePartitionInstance::new(s, vec![a1, a2, a3]).unwrap();
                    assert!(three_partition_brute(&tp).unwrap().is_some());
                    let g = gadget_3partition(&tp, true).unwrap();
                    let sol = dp::solve(&g.instance)
                        .unwrap_or_else(|| panic!("solver missed s={s} a=({a1},{a2},{a3})"));
                    assert_eq!(verify_solution(&g.instance, &sol), Ok(()));
                }
            }
        }
    }
}

/// Random yes-instances of 3-Partition, raw and preprocessed, must round-trip
/// through the certificate cut into verifier-accepted solutions with exactly
/// 6k - 1 cuts and 6k components.
#[test]
fn certificate_cuts_round_trip_for_3partition() {
    let mut rng = common::rng(0x3bad9e);
    for k in 1..=3usize {
        for trial in 0..4 {
            let raw = trial % 2 == 0;
            let (tp, grouping) = random_yes_three_partition(&mut rng, k);
            let g = gadget_3partition(&tp, raw).unwrap();
            // Preprocessing rescales; recompute the grouping on the encoded
            // instance (scaling never changes which triples work).
            let grouping = if raw {
                grouping
            } else {
                three_partition_brute(&g.tp).unwrap().expect("scaling preserves yes")
            };
            let sol = certificate_cut_3partition(&g, &grouping).unwrap();
            assert_eq!(sol.cut_edges.len(), 6 * g.tp.group_count() - 1);
            assert_eq!(sol.assignment.len(), 6 * g.tp.group_count());
            assert_eq!(verify_solution(&g.instance, &sol), Ok(()));
        }
    }
}

/// A yes-instance with k triples, elements shuffled across the instance.
fn random_yes_three_partition(
    rng: &mut rand_chacha::ChaCha8Rng,
    k: usize,
) -> (ThreePartitionInstance, Vec<[usize; 3]>) {
    let m = 20 + 4 * rng.gen_range(0..6) as u64;
    let s = 4 * m;
    let mut elements = Vec::with_capacity(3 * k);
    for _ in 0..k {
        // (m + d1, m + d2, 2m - d1 - d2) stays strictly inside (s/4, s/2).
        let d1 = rng.gen_range(1..=m / 4);
        let d2 = rng.gen_range(1..=m / 4);
        elements.extend_from_slice(&[m + d1, m + d2, 2 * m - d1 - d2]);
    }
    let perm = common::random_permutation(rng, 3 * k);
    let shuffled: Vec<u64> = (0..3 * k).map(|i| elements[perm[i] as usize]).collect();
    let tp = ThreePartitionInstance::new(s, shuffled).unwrap();
    let grouping = three_partition_brute(&tp).unwrap().expect("constructed as yes");
    (tp, grouping)
}

#[test]
fn certificate_cuts_round_trip_for_cliques() {
    // Two classes, two vertices each, all four cross edges: every tuple is a
    // clique. k + 3*C(k,2) = 5 cuts.
    let mcc = MccInstance::new(
        2,
        2,
        &[
            ((0, 0), (1, 0)),
            ((0, 0), (1, 1)),
            ((0, 1), (1, 0)),
            ((0, 1), (1, 1)),
        ],
    )
    .unwrap();
    let clique = mcc_brute(&mcc).unwrap().expect("every pair is adjacent");
    let g = gadget_mcc(&mcc).unwrap();
    let sol = certificate_cut_mcc(&g, &clique).unwrap();
    assert_eq!(sol.cut_edges.len(), 5);
    assert_eq!(verify_solution(&g.instance, &sol), Ok(()));
}

#[test]
fn greedy_non_averaging_sets_always_verify() {
    for l in 1..=5u32 {
        for count in 1..=8usize {
            let xs = non_averaging_set(count, l);
            assert_eq!(xs.len(), count);
            assert!(is_non_averaging(&xs, l));
        }
    }
}

/// The balanced reduction preserves the oracle answer on a random
/// desk-scale corpus (both modes of answer represented).
#[test]
fn btp_reduction_preserves_the_oracle_answer() {
    let mut rng = common::rng(0xb7b);
    let mut yes = 0;
    let mut no = 0;
    for n in 2..=5usize {
        for _ in 0..12 {
            let tree = common::random_tree(&mut rng, n);
            let k = rng.gen_range(0..=2.min(n - 1));
            let b = rng.gen_range(1..=2.min(n));
            let targets = common::random_targets(&mut rng, n as u64, b);
            let inst = treepart::Instance::new(
                tree,
                k,
                targets,
                treepart::BudgetMode::AtMost,
            )
            .unwrap();
            let reduced = reduce_tp_to_btp(&inst);
            let want = brute_force_solve(&inst).unwrap().is_some();
            let got = brute_force_solve(&reduced).unwrap().is_some();
            assert_eq!(got, want, "reduction flipped the answer on {inst:?}");
            if want {
                yes += 1;
            } else {
                no += 1;
            }
        }
    }
    assert!(yes > 0 && no > 0, "corpus must cover both answers: {yes} yes / {no} no");
}
