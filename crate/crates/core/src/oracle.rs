//! Brute-force semantics on a finite window of numbers.
//!
//! Everything here is deliberately naive so that it can serve as ground
//! truth for the structural algorithms elsewhere in the crate.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::builders::UpSet;
use crate::dfa::{Dfa, StateId};
use crate::word::push_digits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("window of {len} bits is too small, need at least {needed}")]
    WindowTooSmall { len: usize, needed: usize },
    #[error("malformed bitmap text: {0}")]
    Malformed(String),
}

/// Membership bits for the numbers `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitmap {
    bits: Vec<bool>,
}

impl Bitmap {
    pub fn zeros(len: usize) -> Self {
        Bitmap {
            bits: vec![false; len],
        }
    }

    pub fn from_fn(len: usize, f: impl FnMut(u64) -> bool) -> Self {
        Bitmap {
            bits: (0..len as u64).map(f).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, n: usize) -> bool {
        self.bits[n]
    }

    pub fn set(&mut self, n: usize, bit: bool) {
        self.bits[n] = bit;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Indices of the set bits.
    pub fn ones(&self) -> Vec<u64> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u64)
            .collect()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    fn zip(&self, other: &Bitmap, f: impl Fn(bool, bool) -> bool) -> Bitmap {
        assert_eq!(self.len(), other.len(), "bitmap lengths differ");
        Bitmap {
            bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn and(&self, other: &Bitmap) -> Bitmap {
        self.zip(other, |a, b| a && b)
    }

    pub fn or(&self, other: &Bitmap) -> Bitmap {
        self.zip(other, |a, b| a || b)
    }

    pub fn not(&self) -> Bitmap {
        Bitmap {
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }

    /// First index where the two bitmaps differ.
    pub fn first_difference(&self, other: &Bitmap) -> Option<usize> {
        assert_eq!(self.len(), other.len(), "bitmap lengths differ");
        self.bits.iter().zip(&other.bits).position(|(a, b)| a != b)
    }
}

/// Run-length text: `len:` followed by comma-separated run lengths that
/// alternate between clear and set bits, starting with clear bits.
/// `10:2,1,2,1,2,1,1` is the bitmap of `{2, 5, 8}` on `[0, 10)`.
impl fmt::Display for Bitmap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.len())?;
        let mut runs = Vec::new();
        let mut current = false;
        let mut count = 0usize;
        for &b in &self.bits {
            if b == current {
                count += 1;
            } else {
                runs.push(count);
                current = b;
                count = 1;
            }
        }
        if count > 0 || runs.is_empty() {
            runs.push(count);
        }
        let text: Vec<String> = runs.iter().map(|r| r.to_string()).collect();
        f.write_str(&text.join(","))
    }
}

impl FromStr for Bitmap {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OracleError::Malformed(s.to_string());
        let (len, runs) = s.trim().split_once(':').ok_or_else(bad)?;
        let len: usize = len.parse().map_err(|_| bad())?;
        let mut bits = Vec::with_capacity(len);
        let mut bit = false;
        for run in runs.split(',') {
            let run: usize = run.trim().parse().map_err(|_| bad())?;
            bits.extend(std::iter::repeat_n(bit, run));
            bit = !bit;
        }
        if bits.len() != len {
            return Err(bad());
        }
        Ok(Bitmap { bits })
    }
}

/// For each state, whether a final state lies on its 0-path.
fn zero_tail_accepts(dfa: &Dfa) -> Vec<bool> {
    let n = dfa.state_count();
    let mut memo: Vec<Option<bool>> = vec![None; n];
    let mut path = Vec::new();
    for start in 0..n {
        let mut q = start;
        let answer = loop {
            if let Some(known) = memo[q] {
                break known;
            }
            if dfa.is_final(q) {
                break true;
            }
            // A repeat on the current path closes a non-accepting 0-cycle.
            if path.contains(&q) {
                break false;
            }
            path.push(q);
            q = dfa.next(q, 0);
        };
        for p in path.drain(..) {
            memo[p] = Some(answer);
        }
        memo[start].get_or_insert(answer);
    }
    memo.into_iter().map(|m| m.unwrap_or(false)).collect()
}

/// Bit `n` is set when the automaton accepts some word of value `n`.
pub fn accepted_bitmap(dfa: &Dfa, len: usize) -> Bitmap {
    let tail = zero_tail_accepts(dfa);
    let mut digits = Vec::new();
    Bitmap::from_fn(len, |n| {
        digits.clear();
        push_digits(n, dfa.base(), &mut digits);
        tail[dfa.run_digits(dfa.initial(), &digits)]
    })
}

pub fn periodic_bitmap(set: &UpSet, len: usize) -> Bitmap {
    Bitmap::from_fn(len, |n| set.contains(n))
}

/// Smallest threshold `m ≤ max_threshold`, then smallest period
/// `p ≤ max_period`, such that the bits on `[m, len)` are `p`-periodic.
///
/// Set bits below `m` become the finite part of the result, so the returned
/// set always reproduces the whole bitmap.
pub fn find_up_params(
    bitmap: &Bitmap,
    max_period: usize,
    max_threshold: usize,
) -> Result<Option<UpSet>, OracleError> {
    let len = bitmap.len();
    let needed = max_threshold + 4 * max_period;
    if len < needed || max_period == 0 {
        return Err(OracleError::WindowTooSmall {
            len,
            needed: needed.max(1),
        });
    }
    let bits = bitmap.bits();
    let mut best: Option<(usize, usize)> = None;
    for p in 1..=max_period {
        let m = (0..len - p)
            .rev()
            .find(|&i| bits[i] != bits[i + p])
            .map_or(0, |i| i + 1);
        if m <= max_threshold && best.is_none_or(|(bm, _)| m < bm) {
            best = Some((m, p));
        }
    }
    let Some((m, p)) = best else {
        return Ok(None);
    };
    let residues: Vec<u64> = (m..m + p)
        .filter(|&i| bits[i])
        .map(|i| (i % p) as u64)
        .collect();
    let finite: Vec<u64> = (0..m).filter(|&i| bits[i]).map(|i| i as u64).collect();
    let set = UpSet::new(p as u64, &residues, m as u64)
        .and_then(|s| s.with_finite(&finite))
        .expect("residues and finite part are in range by construction");
    Ok(Some(set))
}

/// Textbook Moore refinement, quadratic in the worst case.
pub fn moore_minimize(dfa: &Dfa) -> Dfa {
    let n = dfa.state_count();
    let base = dfa.base() as usize;
    let mut class: Vec<usize> = (0..n).map(|q| dfa.is_final(q) as usize).collect();
    let mut count = class.iter().collect::<std::collections::HashSet<_>>().len();
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|q| {
                let mut signature = Vec::with_capacity(base + 1);
                signature.push(class[q]);
                signature.extend(dfa.row(q).iter().map(|&r| class[r]));
                let fresh = ids.len();
                *ids.entry(signature).or_insert(fresh)
            })
            .collect();
        let new_count = ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }
    let mut finals = vec![false; count];
    let mut delta: Vec<StateId> = vec![0; count * base];
    for q in 0..n {
        finals[class[q]] = dfa.is_final(q);
        for (a, &r) in dfa.row(q).iter().enumerate() {
            delta[class[q] * base + a] = class[r];
        }
    }
    Dfa::from_reachable(dfa.base(), class[dfa.initial()], finals, delta)
        .expect("quotient of a valid automaton is valid")
}
