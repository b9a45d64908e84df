//! Integer partitions, σ-representations and the ◇ decomposition relation.
//!
//! A σ-representation is a sorted list of `b` naturals recording how many
//! vertices each of `b` indistinguishable groups has received so far. For
//! lists of equal length, `X = Y ◇ Z` holds iff some permutations `Y'`, `Z'`
//! satisfy `X(i) = Y'(i) + Z'(i)` for all `i`. [`check_realizability`]
//! decides the relation by memoized recursion over canonical triples;
//! [`diamond_compositions`] enumerates every `X` with `X = Y ◇ Z` directly,
//! which is what the solver consumes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    LengthMismatch { x: usize, y: usize, z: usize },
    /// The brute-force check enumerates b! pairings and is capped.
    TooManyGroups { groups: usize, max: usize },
    Underflow { index: usize, entry: u64, delta: u64 },
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::LengthMismatch { x, y, z } => {
                write!(f, "length mismatch: |X|={x}, |Y|={y}, |Z|={z}")
            }
            PartitionError::TooManyGroups { groups, max } => {
                write!(f, "{groups} groups exceed the brute-force cap of {max}")
            }
            PartitionError::Underflow { index, entry, delta } => {
                write!(f, "cannot subtract {delta} from entry {entry} at index {index}")
            }
        }
    }
}

impl core::error::Error for PartitionError {}

/// Sorted length-`b` list of group loads; zeros first. Two representations
/// are equal iff their entry lists are identical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SigmaRep(Vec<u64>);

impl SigmaRep {
    pub fn zeros(groups: usize) -> SigmaRep {
        SigmaRep(vec![0; groups])
    }

    /// Canonicalizes (sorts) the given entries.
    pub fn new(mut entries: Vec<u64>) -> SigmaRep {
        entries.sort_unstable();
        SigmaRep(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all entries.
    pub fn mass(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn max_entry(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    /// Entry `index` increased by `delta`, re-sorted.
    pub fn add_at(&self, index: usize, delta: u64) -> SigmaRep {
        self.add_at_tracked(index, delta).0
    }

    /// Like [`SigmaRep::add_at`], also returning where each old position
    /// landed: `perm[old] = new`. The stable sort makes the placement
    /// deterministic, which witness replay relies on.
    pub fn add_at_tracked(&self, index: usize, delta: u64) -> (SigmaRep, Vec<usize>) {
        let mut decorated: Vec<(u64, usize)> =
            self.0.iter().copied().enumerate().map(|(i, v)| (v, i)).collect();
        decorated[index].0 += delta;
        decorated.sort_by_key(|&(v, _)| v);
        let mut perm = vec![0usize; self.0.len()];
        let mut entries = Vec::with_capacity(self.0.len());
        for (new_pos, &(v, old)) in decorated.iter().enumerate() {
            perm[old] = new_pos;
            entries.push(v);
        }
        (SigmaRep(entries), perm)
    }

    /// Entry `index` decreased by `delta`, re-sorted; fails on underflow.
    pub fn sub_at(&self, index: usize, delta: u64) -> Result<SigmaRep, PartitionError> {
        let entry = self.0[index];
        if entry < delta {
            return Err(PartitionError::Underflow { index, entry, delta });
        }
        let mut entries = self.0.clone();
        entries[index] = entry - delta;
        entries.sort_unstable();
        Ok(SigmaRep(entries))
    }
}

impl fmt::Debug for SigmaRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// All partitions of `m` (multisets of positive integers summing to `m`) as
/// nondecreasing lists, in lexicographic order. `m = 0` yields the empty
/// partition.
pub fn enumerate_partitions(m: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    gen_partitions(m, 1, usize::MAX, &mut prefix, &mut out);
    out
}

fn gen_partitions(
    remaining: u64,
    min_part: u64,
    parts_left: usize,
    prefix: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if remaining == 0 {
        out.push(prefix.clone());
        return;
    }
    if parts_left == 0 {
        return;
    }
    for part in min_part..=remaining {
        prefix.push(part);
        gen_partitions(remaining - part, part, parts_left - 1, prefix, out);
        prefix.pop();
    }
}

/// Every σ-representation of length `b` with mass at most `n`, each exactly
/// once, in lexicographic order.
pub fn all_sigma_reps(n: u64, b: usize) -> Vec<SigmaRep> {
    assert!(b >= 1, "need at least one group");
    let mut reps = Vec::new();
    for m in 0..=n {
        let mut prefix = Vec::new();
        let mut parts = Vec::new();
        gen_partitions(m, 1, b, &mut prefix, &mut parts);
        for p in parts {
            let mut entries = vec![0u64; b - p.len()];
            entries.extend_from_slice(&p);
            reps.push(SigmaRep(entries));
        }
    }
    reps.sort();
    reps
}

/// `|all_sigma_reps(n, b)|` without materializing: the number of partitions
/// of each `m <= n` into at most `b` parts, summed. Saturates at `u64::MAX`.
pub fn count_sigma_reps(n: u64, b: usize) -> u64 {
    // Partitions into at most b parts = partitions with largest part <= b.
    let n = n as usize;
    let mut dp = vec![0u64; n + 1];
    dp[0] = 1;
    for part in 1..=b.min(n) {
        for m in part..=n {
            dp[m] = dp[m].saturating_add(dp[m - part]);
        }
    }
    dp.iter().fold(0u64, |acc, &v| acc.saturating_add(v))
}

/// Index pairing witnessing `X = Y ◇ Z`: `pairing[i] = (j, k)` states
/// `X(i) = Y(j) + Z(k)`, with the `j`s and the `k`s each a permutation.
pub type Pairing = Vec<(usize, usize)>;

type Triple = (Vec<u64>, Vec<u64>, Vec<u64>);

/// Shared ◇ cache for one solver run.
///
/// Holds the memo of decided triples (the table Λ, realized as top-down
/// memoization over exactly the reachable canonical triples) plus a cache of
/// full composition lists per (Y, Z) pair. Callers either keep one table per
/// worker or wrap a shared one in a lock; results are deterministic either
/// way.
#[derive(Default)]
pub struct LambdaTable {
    /// Canonical triple -> None (not realizable) or the (j, k) choice that
    /// matched the last entry of X, for witness reconstruction.
    triples: BTreeMap<Triple, Option<(usize, usize)>>,
    compositions: BTreeMap<(Vec<u64>, Vec<u64>), Arc<Vec<(SigmaRep, Pairing)>>>,
    pub hits: u64,
    pub misses: u64,
}

impl LambdaTable {
    pub fn new() -> LambdaTable {
        LambdaTable::default()
    }

    /// Number of cached entries across both maps.
    pub fn len(&self) -> usize {
        self.triples.len() + self.compositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty() && self.compositions.is_empty()
    }

    /// Decided canonical triples only.
    pub fn decided_triples(&self) -> usize {
        self.triples.len()
    }
}

/// Decides `X = Y ◇ Z`; on success also returns a pairing witness.
///
/// Recursion: strip the last (largest) entry of `X`, try every value pair
/// `(Y(j), Z(k))` summing to it, and recurse on the reduced sorted lists.
/// Each canonical triple is decided at most once per table.
pub fn check_realizability(
    x: &SigmaRep,
    y: &SigmaRep,
    z: &SigmaRep,
    memo: &mut LambdaTable,
) -> Result<Option<Pairing>, PartitionError> {
    if x.len() != y.len() || x.len() != z.len() {
        return Err(PartitionError::LengthMismatch { x: x.len(), y: y.len(), z: z.len() });
    }
    if x.mass() != y.mass() + z.mass() {
        return Ok(None);
    }
    if !decide(x.entries(), y.entries(), z.entries(), memo) {
        return Ok(None);
    }
    // Walk the stored (j, k) hints back down, tracking original indices.
    let b = x.len();
    let mut pairing = vec![(0usize, 0usize); b];
    let mut cur_x = x.entries().to_vec();
    let mut cur_y = y.entries().to_vec();
    let mut cur_z = z.entries().to_vec();
    let mut alive_y: Vec<usize> = (0..b).collect();
    let mut alive_z: Vec<usize> = (0..b).collect();
    for level in (1..=b).rev() {
        let key = (cur_x.clone(), cur_y.clone(), cur_z.clone());
        let (j, k) = memo.triples[&key].expect("successful triple has a stored choice");
        pairing[level - 1] = (alive_y[j], alive_z[k]);
        cur_x.pop();
        cur_y.remove(j);
        alive_y.remove(j);
        cur_z.remove(k);
        alive_z.remove(k);
    }
    Ok(Some(pairing))
}

fn decide(x: &[u64], y: &[u64], z: &[u64], memo: &mut LambdaTable) -> bool {
    let len = x.len();
    if len == 0 {
        return true;
    }
    let key = (x.to_vec(), y.to_vec(), z.to_vec());
    if let Some(stored) = memo.triples.get(&key) {
        memo.hits += 1;
        return stored.is_some();
    }
    memo.misses += 1;
    let last = x[len - 1];
    let mut choice = None;
    'search: for j in 0..len {
        if j > 0 && y[j] == y[j - 1] {
            continue;
        }
        if y[j] > last {
            break;
        }
        let need = last - y[j];
        for k in 0..len {
            if k > 0 && z[k] == z[k - 1] {
                continue;
            }
            if z[k] > need {
                break;
            }
            if z[k] == need {
                let rx = x[..len - 1].to_vec();
                let mut ry = y.to_vec();
                ry.remove(j);
                let mut rz = z.to_vec();
                rz.remove(k);
                if decide(&rx, &ry, &rz, memo) {
                    choice = Some((j, k));
                    break 'search;
                }
            }
        }
    }
    memo.triples.insert(key, choice);
    choice.is_some()
}

/// Exact ◇ decision by enumerating all b! pairings; the oracle for
/// [`check_realizability`]. Capped at b <= 7.
pub fn check_realizability_brute(
    x: &SigmaRep,
    y: &SigmaRep,
    z: &SigmaRep,
) -> Result<bool, PartitionError> {
    const MAX_GROUPS: usize = 7;
    if x.len() != y.len() || x.len() != z.len() {
        return Err(PartitionError::LengthMismatch { x: x.len(), y: y.len(), z: z.len() });
    }
    if x.len() > MAX_GROUPS {
        return Err(PartitionError::TooManyGroups { groups: x.len(), max: MAX_GROUPS });
    }
    let b = x.len();
    let mut perm: Vec<usize> = (0..b).collect();
    let mut counters = vec![0usize; b];
    loop {
        let mut sums: Vec<u64> = (0..b).map(|i| y.entries()[perm[i]] + z.entries()[i]).collect();
        sums.sort_unstable();
        if sums == x.entries() {
            return Ok(true);
        }
        // Heap's algorithm, iterative.
        let mut i = 1;
        loop {
            if i >= b {
                return Ok(false);
            }
            if counters[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(counters[i], i);
                }
                counters[i] += 1;
                break;
            }
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Every distinct `X` with `X = Y ◇ Z`, each with one pairing witness, in
/// canonical order. Results are cached in `memo` per (Y, Z) pair.
pub fn diamond_compositions(
    y: &SigmaRep,
    z: &SigmaRep,
    memo: &mut LambdaTable,
) -> Arc<Vec<(SigmaRep, Pairing)>> {
    assert_eq!(y.len(), z.len(), "compositions need equal lengths");
    let key = (y.entries().to_vec(), z.entries().to_vec());
    if let Some(cached) = memo.compositions.get(&key) {
        memo.hits += 1;
        return Arc::clone(cached);
    }
    memo.misses += 1;
    let b = y.len();
    let mut found: BTreeMap<SigmaRep, Pairing> = BTreeMap::new();
    let mut assigned = vec![usize::MAX; b]; // z position -> y index
    let mut used = vec![false; b];
    compose(y.entries(), z.entries(), 0, &mut assigned, &mut used, &mut found);
    let list: Vec<(SigmaRep, Pairing)> = found.into_iter().collect();
    let arc = Arc::new(list);
    memo.compositions.insert(key, Arc::clone(&arc));
    arc
}

fn compose(
    y: &[u64],
    z: &[u64],
    pos: usize,
    assigned: &mut [usize],
    used: &mut [bool],
    found: &mut BTreeMap<SigmaRep, Pairing>,
) {
    let b = z.len();
    if pos == b {
        let mut decorated: Vec<(u64, usize)> =
            (0..b).map(|p| (y[assigned[p]] + z[p], p)).collect();
        decorated.sort_by_key(|&(v, _)| v);
        let entries: Vec<u64> = decorated.iter().map(|&(v, _)| v).collect();
        let rep = SigmaRep(entries);
        found.entry(rep).or_insert_with(|| {
            decorated.iter().map(|&(_, p)| (assigned[p], p)).collect()
        });
        return;
    }
    for j in 0..b {
        if used[j] || (j > 0 && y[j] == y[j - 1] && !used[j - 1]) {
            continue;
        }
        used[j] = true;
        assigned[pos] = j;
        compose(y, z, pos + 1, assigned, used, found);
        used[j] = false;
    }
}

/// True iff the pairing is a valid witness for `X = Y ◇ Z`.
pub fn pairing_witnesses(x: &SigmaRep, y: &SigmaRep, z: &SigmaRep, pairing: &Pairing) -> bool {
    let b = x.len();
    if pairing.len() != b {
        return false;
    }
    let ys: BTreeSet<usize> = pairing.iter().map(|&(j, _)| j).collect();
    let ks: BTreeSet<usize> = pairing.iter().map(|&(_, k)| k).collect();
    if ys.len() != b || ks.len() != b {
        return false;
    }
    pairing
        .iter()
        .enumerate()
        .all(|(i, &(j, k))| x.entries()[i] == y.entries()[j] + z.entries()[k])
}
