//! Automata for periodic and ultimately periodic sets of numbers.
//!
//! A period `p` splits as `k · d` with `k` coprime with the base and `d`
//! dividing `b^j`. Acceptance modulo `d` is settled by the first `j` digits
//! (a complete tree), acceptance modulo `k` by generalized Pascal automata
//! hung below the tree leaves. Thresholds are handled by a product with a
//! value tree.

use std::fmt;

use crate::arith::{gcd, mult_order};
use crate::dfa::{product, Dfa, StateId};
use crate::error::BuildError;
use crate::pascal::normalize_residues;

/// `F ∪ {n ≥ m : n mod p ∈ R}` with `F ⊆ [0, m)`.
///
/// Sets produced by the builders have an empty finite part; it is only
/// populated when parameters are read back from an arbitrary automaton.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpSet {
    period: u64,
    residues: Vec<u64>,
    threshold: u64,
    finite: Vec<u64>,
}

impl UpSet {
    pub fn new(period: u64, residues: &[u64], threshold: u64) -> Result<Self, BuildError> {
        Ok(UpSet {
            period,
            residues: normalize_residues(residues, period)?,
            threshold,
            finite: Vec::new(),
        })
    }

    /// Adds explicit members below the threshold.
    pub fn with_finite(mut self, finite: &[u64]) -> Result<Self, BuildError> {
        if let Some(&residue) = finite.iter().find(|&&n| n >= self.threshold) {
            return Err(BuildError::ResidueOutOfRange {
                residue,
                modulus: self.threshold,
            });
        }
        let mut f = finite.to_vec();
        f.sort_unstable();
        f.dedup();
        self.finite = f;
        Ok(self)
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn finite(&self) -> &[u64] {
        &self.finite
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < self.threshold {
            self.finite.binary_search(&n).is_ok()
        } else {
            self.residues.binary_search(&(n % self.period)).is_ok()
        }
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for UpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "period={} residues={} threshold={}",
            self.period,
            join(&self.residues),
            self.threshold
        )?;
        if !self.finite.is_empty() {
            write!(f, " finite={}", join(&self.finite))?;
        }
        Ok(())
    }
}

/// `p = k·d` with `gcd(k, b) = 1` and `j` minimal such that `d | b^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrtSplit {
    pub k: u64,
    pub d: u64,
    pub j: u32,
}

pub fn crt_split(p: u64, base: u32) -> CrtSplit {
    assert!(p >= 1, "period must be positive");
    let b = base as u64;
    let (mut k, mut d) = (p, 1u64);
    loop {
        let g = gcd(k, b);
        if g == 1 {
            break;
        }
        k /= g;
        d *= g;
    }
    let mut j = 0;
    let mut pw = 1 % d;
    while pw != 0 {
        pw = pw * (b % d) % d;
        j += 1;
    }
    CrtSplit { k, d, j }
}

/// Residue pairs `(r mod d, r mod k)` and, for every `x < d`, the residues
/// modulo `k` accepted among numbers congruent to `x` modulo `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueTables {
    pub split: CrtSplit,
    pub pairs: Vec<(u64, u64)>,
    pub tables: Vec<Vec<u64>>,
}

pub fn residue_tables(residues: &[u64], p: u64, base: u32) -> Result<ResidueTables, BuildError> {
    let residues = normalize_residues(residues, p)?;
    let split = crt_split(p, base);
    let pairs: Vec<(u64, u64)> = residues.iter().map(|&r| (r % split.d, r % split.k)).collect();
    let mut tables = vec![Vec::new(); split.d as usize];
    for &(x, rk) in &pairs {
        tables[x as usize].push(rk);
    }
    for t in &mut tables {
        t.sort_unstable();
        t.dedup();
    }
    Ok(ResidueTables {
        split,
        pairs,
        tables,
    })
}

/// Id of the tree node reached by a word of length `len` and value `value`
/// in automata built by [`divisor_tree`] and [`build_threshold`].
pub fn tree_node(base: u32, len: u32, value: u64) -> StateId {
    (tree_offset(base as u64, len) + value) as StateId
}

fn tree_offset(b: u64, len: u32) -> u64 {
    // (b^len − 1) / (b − 1)
    (0..len).fold(0, |acc, _| acc * b + 1)
}

/// Complete `b`-ary tree of depth `j` deciding acceptance modulo `d`, where
/// `d | b^j`. Depth-`j` nodes loop on every digit.
pub fn divisor_tree(d: u64, base: u32, accepted: &[u64]) -> Result<Dfa, BuildError> {
    if d == 0 {
        return Err(BuildError::ZeroModulus);
    }
    let split = crt_split(d, base);
    if split.k != 1 {
        return Err(BuildError::NotBaseDivisor { modulus: d, base });
    }
    let accepted = normalize_residues(accepted, d)?;
    let b = base as u64;
    let j = split.j;
    let n = tree_offset(b, j + 1) as usize;
    let mut finals = vec![false; n];
    let mut delta = Vec::with_capacity(n * base as usize);
    let mut pow = 1u64;
    for len in 0..=j {
        for v in 0..pow {
            let id = tree_node(base, len, v);
            finals[id] = accepted.binary_search(&(v % d)).is_ok();
            for a in 0..b {
                delta.push(if len == j {
                    id
                } else {
                    tree_node(base, len + 1, v + a * pow)
                });
            }
        }
        pow *= b;
    }
    Ok(Dfa::new(base, 0, finals, delta)?)
}

/// Automaton for `{n : n mod p ∈ R}`: a tree of depth `j` whose leaves enter
/// generalized Pascal automata `A_{T_x, k}`.
pub fn build_psa(residues: &[u64], p: u64, base: u32) -> Result<Dfa, BuildError> {
    let tables = residue_tables(residues, p, base)?;
    let residues = normalize_residues(residues, p)?;
    let CrtSplit { k, d, j } = tables.split;
    let b = base as u64;
    let psi = mult_order(base, k)?;
    let internal = tree_offset(b, j) as usize;
    let copy_size = (k * psi) as usize;
    let n = internal + d as usize * copy_size;
    let pascal_id = |x: u64, s: u64, t: u64| internal + x as usize * copy_size + (s * psi + t) as usize;

    let mut pow_k = Vec::with_capacity(psi as usize);
    let mut acc = 1 % k;
    for _ in 0..psi {
        pow_k.push(acc);
        acc = acc * (b % k) % k;
    }

    let mut finals = vec![false; n];
    let mut delta = vec![0; n * base as usize];
    let mut pow = 1u64;
    for len in 0..j {
        for v in 0..pow {
            let id = tree_node(base, len, v);
            finals[id] = residues.binary_search(&(v % p)).is_ok();
            for a in 0..b {
                let child = v + a * pow;
                delta[id * base as usize + a as usize] = if len + 1 < j {
                    tree_node(base, len + 1, child)
                } else {
                    pascal_id(child % d, child % k, (j as u64) % psi)
                };
            }
        }
        pow *= b;
    }
    for x in 0..d {
        let accepted = &tables.tables[x as usize];
        for s in 0..k {
            let fin = accepted.binary_search(&s).is_ok();
            for t in 0..psi {
                let id = pascal_id(x, s, t);
                finals[id] = fin;
                for a in 0..b {
                    let s2 = (s + a % k * pow_k[t as usize]) % k;
                    delta[id * base as usize + a as usize] = pascal_id(x, s2, (t + 1) % psi);
                }
            }
        }
    }
    let initial = if j == 0 { pascal_id(0, 0, 0) } else { 0 };
    Ok(Dfa::from_reachable(base, initial, finals, delta)?)
}

/// Tree of words up to length `depth` labelled by their value; leaves loop
/// on 0 and send any other digit to a sink.
fn value_tree(base: u32, depth: u32, is_final: impl Fn(u64) -> bool, sink_final: bool) -> Dfa {
    let b = base as u64;
    let sink = tree_offset(b, depth + 1) as usize;
    let n = sink + 1;
    let mut finals = vec![false; n];
    let mut delta = Vec::with_capacity(n * base as usize);
    let mut pow = 1u64;
    for len in 0..=depth {
        for v in 0..pow {
            let id = tree_node(base, len, v);
            finals[id] = is_final(v);
            for a in 0..b {
                delta.push(match (len == depth, a) {
                    (false, _) => tree_node(base, len + 1, v + a * pow),
                    (true, 0) => id,
                    (true, _) => sink,
                });
            }
        }
        pow *= b;
    }
    finals[sink] = sink_final;
    delta.extend(std::iter::repeat_n(sink, base as usize));
    Dfa::new(base, 0, finals, delta).expect("value tree is complete and accessible")
}

/// Least `D` with `b^D ≥ max(m, 1)`.
fn tree_depth(m: u64, base: u32) -> u32 {
    let mut depth = 0;
    let mut pow = 1u64;
    while pow < m.max(1) {
        pow = pow.saturating_mul(base as u64);
        depth += 1;
    }
    depth
}

/// Automaton for `{n : n ≥ m}`: a value tree of depth `⌈log_b max(m,1)⌉`
/// plus a final sink.
pub fn build_threshold(m: u64, base: u32) -> Result<Dfa, BuildError> {
    crate::word::check_base(base)?;
    Ok(value_tree(base, tree_depth(m, base), |v| v >= m, true))
}

/// Automaton accepting exactly the given finite set.
pub fn build_finite(values: &[u64], base: u32) -> Result<Dfa, BuildError> {
    crate::word::check_base(base)?;
    let max = values.iter().copied().max().unwrap_or(0);
    let depth = tree_depth(max.saturating_add(1), base);
    Ok(value_tree(base, depth, |v| values.contains(&v), false))
}

/// Product of the periodic automaton with the threshold automaton, united
/// with the finite part when there is one.
pub fn build_up_automaton(set: &UpSet, base: u32) -> Result<Dfa, BuildError> {
    let periodic = build_psa(&set.residues, set.period, base)?;
    let threshold = build_threshold(set.threshold, base)?;
    let up = product(&periodic, &threshold, |x, y| x && y)?;
    if set.finite.is_empty() {
        return Ok(up);
    }
    let finite = build_finite(&set.finite, base)?;
    Ok(product(&up, &finite, |x, y| x || y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn accepted_below(dfa: &Dfa, limit: u64) -> Vec<u64> {
        (0..limit).filter(|&n| dfa.accepts_number(n)).collect()
    }

    #[test]
    fn split_examples() {
        assert_eq!(crt_split(12, 2), CrtSplit { k: 3, d: 4, j: 2 });
        assert_eq!(crt_split(18, 3), CrtSplit { k: 2, d: 9, j: 2 });
        assert_eq!(crt_split(7, 2), CrtSplit { k: 7, d: 1, j: 0 });
        assert_eq!(crt_split(1, 10), CrtSplit { k: 1, d: 1, j: 0 });
        assert_eq!(crt_split(60, 10), CrtSplit { k: 3, d: 20, j: 2 });
    }

    #[test]
    fn split_invariants() {
        for base in [2u32, 3, 6, 10] {
            for p in 1..300u64 {
                let CrtSplit { k, d, j } = crt_split(p, base);
                assert_eq!(k * d, p);
                assert_eq!(gcd(k, base as u64), 1);
                let bj = (base as u128).pow(j);
                assert_eq!(bj % d as u128, 0);
                if j > 0 {
                    assert_ne!((base as u128).pow(j - 1) % d as u128, 0);
                }
            }
        }
    }

    #[test]
    fn chinese_remainder_equivalence() {
        for base in [2u32, 3, 10] {
            for p in 1..=60u64 {
                let CrtSplit { k, d, .. } = crt_split(p, base);
                for r in 0..p {
                    for n in 0..2000u64 {
                        assert_eq!(n % p == r, n % k == r % k && n % d == r % d);
                    }
                }
            }
        }
    }

    #[test]
    fn tables_example_mod_18() {
        let t = residue_tables(&[0, 2, 4, 5, 9], 18, 3).unwrap();
        assert_eq!(t.split, CrtSplit { k: 2, d: 9, j: 2 });
        let mut pairs = t.pairs.clone();
        pairs.sort_unstable();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (2, 0), (4, 0), (5, 1)]);
        assert_eq!(t.tables[0], vec![0, 1]);
        assert_eq!(t.tables[2], vec![0]);
        assert_eq!(t.tables[4], vec![0]);
        assert_eq!(t.tables[5], vec![1]);
        for x in [1, 3, 6, 7, 8] {
            assert!(t.tables[x].is_empty());
        }
    }

    #[test]
    fn tables_example_mod_12() {
        let t = residue_tables(&[5], 12, 2).unwrap();
        assert_eq!(t.pairs, vec![(1, 2)]);
        let empty = residue_tables(&[], 12, 2).unwrap();
        assert!(empty.tables.iter().all(Vec::is_empty));
    }

    #[test]
    fn divisor_tree_one_mod_four() {
        let dfa = divisor_tree(4, 2, &[1]).unwrap();
        assert_eq!(dfa.state_count(), 7);
        let expected: Vec<u64> = (0..200).filter(|n| n % 4 == 1).collect();
        assert_eq!(accepted_below(&dfa, 200), expected);
        let sink = divisor_tree(1, 5, &[0]).unwrap();
        assert_eq!(sink.state_count(), 1);
        assert!(sink.is_final(0));
        assert_eq!(divisor_tree(0, 2, &[]), Err(BuildError::ZeroModulus));
        assert_eq!(
            divisor_tree(6, 2, &[]),
            Err(BuildError::NotBaseDivisor { modulus: 6, base: 2 })
        );
    }

    #[test]
    fn divisor_tree_mod_nine() {
        let dfa = divisor_tree(9, 3, &[0, 2, 4, 5]).unwrap();
        assert_eq!(dfa.state_count(), 13);
        let expected: Vec<u64> = (0..500).filter(|n| [0, 2, 4, 5].contains(&(n % 9))).collect();
        assert_eq!(accepted_below(&dfa, 500), expected);
    }

    #[test]
    fn divisor_tree_suffix_stability() {
        // Past depth j, appending digits never changes acceptance.
        let (d, base) = (8u64, 2u32);
        let dfa = divisor_tree(d, base, &[3, 5]).unwrap();
        let j = crt_split(d, base).j;
        for v in 0..(1u64 << j) {
            let mut word: Vec<u32> = (0..j).map(|i| ((v >> i) & 1) as u32).collect();
            let q = dfa.run(0, &Word(word.clone())).unwrap();
            for a in 0..base {
                word.push(a);
                assert_eq!(dfa.accepts_word(&Word(word.clone())).unwrap(), dfa.is_final(q));
                word.pop();
            }
        }
    }

    #[test]
    fn psa_examples() {
        let fig7 = build_psa(&[0, 2, 4, 5, 9], 18, 3).unwrap();
        assert_eq!(accepted_below(&fig7, 19), vec![0, 2, 4, 5, 9, 18]);
        let fig10 = build_psa(&[0], 24, 2).unwrap();
        assert_eq!(accepted_below(&fig10, 100), vec![0, 24, 48, 72, 96]);
        let pure = build_psa(&[2], 3, 2).unwrap();
        let pascal = crate::pascal::build_generalized_pascal(&[2], 3, 2).unwrap();
        assert!(crate::dfa::equivalent(&pure, &pascal).unwrap());
    }

    #[test]
    fn threshold_examples() {
        let d5 = build_threshold(5, 2).unwrap();
        assert_eq!(accepted_below(&d5, 20), (5..20).collect::<Vec<_>>());
        let leaf = d5.run(0, &Word(vec![1, 0, 1])).unwrap();
        assert_eq!(leaf, tree_node(2, 3, 5));
        assert!(d5.is_final(leaf));
        let d0 = build_threshold(0, 2).unwrap();
        assert_eq!(accepted_below(&d0, 20), (0..20).collect::<Vec<_>>());
        let d1 = build_threshold(1, 2).unwrap();
        assert_eq!(d1.state_count(), 2);
        assert!(!d1.is_final(0));
        assert_eq!(d1.row(0), &[0, 1]);
        assert_eq!(accepted_below(&d1, 20), (1..20).collect::<Vec<_>>());
    }

    #[test]
    fn finite_sets() {
        let f = build_finite(&[0, 3, 9], 2).unwrap();
        assert_eq!(accepted_below(&f, 100), vec![0, 3, 9]);
        let e = build_finite(&[], 3).unwrap();
        assert!(accepted_below(&e, 100).is_empty());
    }

    #[test]
    fn up_automaton_examples() {
        let fig11 = build_up_automaton(&UpSet::new(24, &[0], 1).unwrap(), 2).unwrap();
        assert_eq!(accepted_below(&fig11, 1000), (1..1000).filter(|n| n % 24 == 0).collect::<Vec<_>>());
        let all = build_up_automaton(&UpSet::new(1, &[0], 0).unwrap(), 7).unwrap();
        assert!((0..300).all(|n| all.accepts_number(n)));
        let five = build_up_automaton(&UpSet::new(12, &[5], 0).unwrap(), 2).unwrap();
        assert_eq!(accepted_below(&five, 30), vec![5, 17, 29]);
        let mixed = UpSet::new(4, &[1], 10).unwrap().with_finite(&[2, 3]).unwrap();
        let dfa = build_up_automaton(&mixed, 3).unwrap();
        let expected: Vec<u64> = (0..200).filter(|&n| mixed.contains(n)).collect();
        assert_eq!(accepted_below(&dfa, 200), expected);
    }

    #[test]
    fn upset_display() {
        let s = UpSet::new(24, &[0], 1).unwrap();
        assert_eq!(s.to_string(), "period=24 residues=0 threshold=1");
        let f = UpSet::new(3, &[], 5).unwrap().with_finite(&[1, 4]).unwrap();
        assert_eq!(f.to_string(), "period=3 residues= threshold=5 finite=1,4");
        assert!(UpSet::new(3, &[], 5).unwrap().with_finite(&[5]).is_err());
    }
}
