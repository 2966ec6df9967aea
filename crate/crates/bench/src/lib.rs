//! Workloads shared by the benchmarks.

use rand::rngs::StdRng;
use rand::SeedableRng;
use upnum_core::fuzz::random_canonical_residues;
use upnum_core::{build_generalized_pascal, build_up_automaton, minimize, Dfa, UpSet};

/// Primes `p` for which 2 generates the units modulo `p`, so that the
/// binary Pascal automaton has `p·(p−1)` states.
pub const FULL_ORDER_PRIMES: [u64; 6] = [29, 53, 101, 163, 211, 317];

/// Unminimized binary automaton for a random canonical residue set modulo
/// `p` above threshold `m`.
pub fn up_workload(p: u64, m: u64, seed: u64) -> Dfa {
    let mut rng = StdRng::seed_from_u64(seed);
    let residues = random_canonical_residues(&mut rng, p);
    let set = UpSet::new(p, &residues, m).expect("residues are below the period");
    build_up_automaton(&set, 2).expect("valid parameters")
}

/// Minimal form of [`up_workload`].
pub fn minimal_up_workload(p: u64, m: u64, seed: u64) -> Dfa {
    minimize(&up_workload(p, m, seed))
}

/// Minimal binary Pascal automaton for a random canonical residue set.
pub fn pascal_workload(p: u64, seed: u64) -> Dfa {
    let mut rng = StdRng::seed_from_u64(seed);
    let residues = random_canonical_residues(&mut rng, p);
    minimize(&build_generalized_pascal(&residues, p, 2).expect("p is odd"))
}
