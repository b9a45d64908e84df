//! Seeded benchmark harness: the DP against the brute-force oracle on random
//! trees, emitted as CSV.
//!
//! Instances are derived purely from `(seed, n, trial)`, so all columns
//! except the wall-clock times are identical across runs with the same seed.
//! Trees come from uniform Prüfer sequences; budgets range over 0..=3 and
//! targets are random positive compositions.

use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treepart::oracle::{self, OracleError};
use treepart::partitions::count_sigma_reps;
use treepart::{dp, BudgetMode, Instance, Tree, VertexId};

pub const CSV_HEADER: &str = "n,trial,dp_time_ms,oracle_time_ms,agree,max_table,sigma_reps";

#[derive(Clone, Copy, Debug)]
pub struct BenchConfig {
    pub nmax: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug)]
pub enum BenchError {
    Io(io::Error),
    /// The oracle refused an instance; benching beyond its work cap would
    /// silently stall, so the run aborts instead.
    Oracle { n: usize, trial: usize, source: OracleError },
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::Io(e) => write!(f, "{e}"),
            BenchError::Oracle { n, trial, source } => {
                write!(f, "oracle refused n={n} trial={trial}: {source}; reduce --nmax")
            }
        }
    }
}

impl std::error::Error for BenchError {}

impl From<io::Error> for BenchError {
    fn from(e: io::Error) -> Self {
        BenchError::Io(e)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// The RNG for one benchmark cell, independent of every other cell.
pub fn trial_rng(seed: u64, n: usize, trial: usize) -> ChaCha8Rng {
    let mixed = splitmix64(seed)
        ^ splitmix64(((n as u64) << 32) | trial as u64 | 0x5eed_0000_0000_0000);
    ChaCha8Rng::seed_from_u64(mixed)
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

/// Random positive composition of `n` into `b` parts.
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

pub fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let tree = random_tree(rng, n);
    let k = rng.gen_range(0..=3.min(n - 1));
    // Group counts reach k + 2 so unsatisfiable-by-counting cases appear.
    let b = rng.gen_range(1..=(k + 2).min(n));
    let targets = random_targets(rng, n as u64, b);
    let mode = if rng.gen_bool(0.5) { BudgetMode::Exact } else { BudgetMode::AtMost };
    Instance::new(tree, k, targets, mode).unwrap()
}

/// The instance of one benchmark cell.
pub fn bench_instance(seed: u64, n: usize, trial: usize) -> Instance {
    random_instance(&mut trial_rng(seed, n, trial), n)
}

pub fn run(cfg: &BenchConfig, out: &mut impl Write) -> Result<(), BenchError> {
    writeln!(out, "{CSV_HEADER}")?;
    for n in 3..=cfg.nmax {
        for trial in 0..cfg.trials {
            let inst = bench_instance(cfg.seed, n, trial);

            let started = Instant::now();
            let (dp_solution, stats) = dp::solve_with_stats(&inst);
            let dp_ms = started.elapsed().as_secs_f64() * 1e3;

            let started = Instant::now();
            let oracle_solution = oracle::brute_force_solve(&inst)
                .map_err(|source| BenchError::Oracle { n, trial, source })?;
            let oracle_ms = started.elapsed().as_secs_f64() * 1e3;

            let agree = u8::from(dp_solution.is_some() == oracle_solution.is_some());
            let sigma_reps = count_sigma_reps(n as u64, inst.groups());
            writeln!(
                out,
                "{n},{trial},{dp_ms:.3},{oracle_ms:.3},{agree},{max_table},{sigma_reps}",
                max_table = stats.max_table_entries,
            )?;
        }
    }
    Ok(())
}
