//! Complete, accessible deterministic automata over the digit alphabet
//! `{0, …, base−1}`, read least significant digit first.

use std::collections::{HashMap, VecDeque};

use crate::error::DfaError;
use crate::word::{self, Digit, Word};

/// Dense state index in `0..state_count`.
pub type StateId = usize;

/// A complete deterministic automaton in which every state is reachable from
/// the initial state.
///
/// Transitions are stored row-major: the successor of `q` by digit `a` sits at
/// `q * base + a`. Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    base: u32,
    initial: StateId,
    finals: Vec<bool>,
    delta: Vec<StateId>,
}

impl Dfa {
    /// Builds an automaton, rejecting incomplete tables, out-of-range ids and
    /// unreachable states.
    pub fn new(
        base: u32,
        initial: StateId,
        finals: Vec<bool>,
        delta: Vec<StateId>,
    ) -> Result<Self, DfaError> {
        let dfa = Self::validated(base, initial, finals, delta)?;
        if let Some(q) = dfa.reachable().iter().position(|&r| !r) {
            return Err(DfaError::Unreachable(q));
        }
        Ok(dfa)
    }

    /// Like [`Dfa::new`] but silently drops unreachable states. The result is
    /// renumbered in canonical BFS order.
    pub fn from_reachable(
        base: u32,
        initial: StateId,
        finals: Vec<bool>,
        delta: Vec<StateId>,
    ) -> Result<Self, DfaError> {
        Ok(Self::validated(base, initial, finals, delta)?.canonical())
    }

    /// Skips the reachability check; the caller guarantees that every state
    /// is reachable from `initial`, e.g. because the table is strongly
    /// connected.
    pub(crate) fn new_reachable_unchecked(
        base: u32,
        initial: StateId,
        finals: Vec<bool>,
        delta: Vec<StateId>,
    ) -> Result<Self, DfaError> {
        Self::validated(base, initial, finals, delta)
    }

    fn validated(
        base: u32,
        initial: StateId,
        finals: Vec<bool>,
        delta: Vec<StateId>,
    ) -> Result<Self, DfaError> {
        word::check_base(base)?;
        let n = finals.len();
        if n == 0 {
            return Err(DfaError::NoStates);
        }
        let expected = n * base as usize;
        if delta.len() != expected {
            return Err(DfaError::TableSize {
                expected,
                got: delta.len(),
            });
        }
        if initial >= n {
            return Err(DfaError::StateOutOfRange {
                state: initial,
                count: n,
            });
        }
        if let Some(&state) = delta.iter().find(|&&q| q >= n) {
            return Err(DfaError::StateOutOfRange { state, count: n });
        }
        Ok(Dfa {
            base,
            initial,
            finals,
            delta,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn final_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter_map(|(q, &f)| f.then_some(q))
    }

    /// Raw row-major transition table.
    pub fn table(&self) -> &[StateId] {
        &self.delta
    }

    /// Successors of `q` indexed by digit.
    pub fn row(&self, q: StateId) -> &[StateId] {
        let b = self.base as usize;
        &self.delta[q * b..(q + 1) * b]
    }

    #[inline]
    pub fn next(&self, q: StateId, digit: Digit) -> StateId {
        self.delta[q * self.base as usize + digit as usize]
    }

    pub fn run(&self, from: StateId, word: &Word) -> Result<StateId, DfaError> {
        word.check_base(self.base)?;
        if from >= self.state_count() {
            return Err(DfaError::StateOutOfRange {
                state: from,
                count: self.state_count(),
            });
        }
        Ok(self.run_digits(from, word.digits()))
    }

    /// Runs without validating the digits.
    #[inline]
    pub fn run_digits(&self, from: StateId, digits: &[Digit]) -> StateId {
        digits.iter().fold(from, |q, &a| self.next(q, a))
    }

    pub fn accepts_word(&self, word: &Word) -> Result<bool, DfaError> {
        Ok(self.finals[self.run(self.initial, word)?])
    }

    /// Whether some word of value `n`, i.e. `rep(n)·0^k`, is accepted.
    pub fn accepts_number(&self, n: u64) -> bool {
        let mut digits = Vec::new();
        word::push_digits(n, self.base, &mut digits);
        let mut q = self.run_digits(self.initial, &digits);
        // The 0-path from q enters its cycle within state_count steps.
        for _ in 0..=self.state_count() {
            if self.finals[q] {
                return true;
            }
            q = self.next(q, 0);
        }
        false
    }

    /// Same transitions and finals, different initial state.
    pub fn with_initial(&self, initial: StateId) -> Result<Dfa, DfaError> {
        Dfa::new(self.base, initial, self.finals.clone(), self.delta.clone())
    }

    /// Same transitions and initial state, different finals.
    pub fn with_finals(&self, finals: Vec<bool>) -> Result<Dfa, DfaError> {
        Dfa::new(self.base, self.initial, finals, self.delta.clone())
    }

    /// Language complement (the automaton is complete).
    pub fn complement(&self) -> Dfa {
        Dfa {
            finals: self.finals.iter().map(|f| !f).collect(),
            ..self.clone()
        }
    }

    pub(crate) fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for &r in self.row(q) {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    /// BFS order from the initial state, digits ascending. Only reachable
    /// states are listed.
    pub fn bfs_order(&self) -> Vec<StateId> {
        let mut order = Vec::with_capacity(self.state_count());
        let mut seen = vec![false; self.state_count()];
        seen[self.initial] = true;
        order.push(self.initial);
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for &r in self.row(q) {
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
        }
        order
    }

    /// Renumbers states in BFS order (dropping unreachable ones). Two
    /// isomorphic accessible automata have equal canonical forms.
    pub fn canonical(&self) -> Dfa {
        let order = self.bfs_order();
        let mut new_id = vec![usize::MAX; self.state_count()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q] = i;
        }
        let mut finals = Vec::with_capacity(order.len());
        let mut delta = Vec::with_capacity(order.len() * self.base as usize);
        for &q in &order {
            finals.push(self.finals[q]);
            delta.extend(self.row(q).iter().map(|&r| new_id[r]));
        }
        Dfa {
            base: self.base,
            initial: 0,
            finals,
            delta,
        }
    }

    /// Renumbers states through `perm` (old id → new id).
    pub fn relabel(&self, perm: &[StateId]) -> Dfa {
        let n = self.state_count();
        assert_eq!(perm.len(), n, "relabelling must cover every state");
        let b = self.base as usize;
        let mut finals = vec![false; n];
        let mut delta = vec![0; n * b];
        for q in 0..n {
            finals[perm[q]] = self.finals[q];
            for a in 0..b {
                delta[perm[q] * b + a] = perm[self.delta[q * b + a]];
            }
        }
        Dfa {
            base: self.base,
            initial: perm[self.initial],
            finals,
            delta,
        }
    }

    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        self.base == other.base && self.canonical() == other.canonical()
    }

    /// Per-digit permutations when every digit acts injectively.
    pub fn is_group_automaton(&self) -> Option<Vec<StatePermutation>> {
        (0..self.base)
            .map(|a| {
                let forward: Vec<StateId> =
                    (0..self.state_count()).map(|q| self.next(q, a)).collect();
                StatePermutation::from_forward(forward)
            })
            .collect()
    }
}

/// A bijection on state ids together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePermutation {
    forward: Vec<StateId>,
    inverse: Vec<StateId>,
}

impl StatePermutation {
    /// `None` unless `forward` is a bijection of `0..forward.len()`.
    pub fn from_forward(forward: Vec<StateId>) -> Option<Self> {
        let n = forward.len();
        let mut inverse = vec![usize::MAX; n];
        for (q, &r) in forward.iter().enumerate() {
            if r >= n || inverse[r] != usize::MAX {
                return None;
            }
            inverse[r] = q;
        }
        Some(StatePermutation { forward, inverse })
    }

    pub fn identity(n: usize) -> Self {
        StatePermutation {
            forward: (0..n).collect(),
            inverse: (0..n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, q: StateId) -> StateId {
        self.forward[q]
    }

    #[inline]
    pub fn apply_inverse(&self, q: StateId) -> StateId {
        self.inverse[q]
    }

    pub fn forward(&self) -> &[StateId] {
        &self.forward
    }

    pub fn inverse(&self) -> &[StateId] {
        &self.inverse
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &StatePermutation) -> StatePermutation {
        let forward: Vec<StateId> = self.forward.iter().map(|&q| then.forward[q]).collect();
        let mut inverse = vec![0; forward.len()];
        for (q, &r) in forward.iter().enumerate() {
            inverse[r] = q;
        }
        StatePermutation { forward, inverse }
    }

    pub fn invert(&self) -> StatePermutation {
        StatePermutation {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

/// Accessible product automaton; `(q, r)` is final iff
/// `combine(q final in a, r final in b)`.
pub fn product(
    a: &Dfa,
    b: &Dfa,
    combine: impl Fn(bool, bool) -> bool,
) -> Result<Dfa, DfaError> {
    if a.base != b.base {
        return Err(DfaError::BaseMismatch {
            left: a.base,
            right: b.base,
        });
    }
    let base = a.base as usize;
    let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs = vec![(a.initial, b.initial)];
    ids.insert((a.initial, b.initial), 0);
    let mut delta = Vec::new();
    let mut head = 0;
    while head < pairs.len() {
        let (q, r) = pairs[head];
        head += 1;
        for d in 0..base {
            let next = (a.delta[q * base + d], b.delta[r * base + d]);
            let id = *ids.entry(next).or_insert_with(|| {
                pairs.push(next);
                pairs.len() - 1
            });
            delta.push(id);
        }
    }
    let finals = pairs
        .iter()
        .map(|&(q, r)| combine(a.finals[q], b.finals[r]))
        .collect();
    Ok(Dfa {
        base: a.base,
        initial: 0,
        finals,
        delta,
    })
}

/// Language equality by union-find state merging.
pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool, DfaError> {
    if a.base != b.base {
        return Err(DfaError::BaseMismatch {
            left: a.base,
            right: b.base,
        });
    }
    let offset = a.state_count();
    let mut parent: Vec<usize> = (0..offset + b.state_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let is_final = |x: usize| {
        if x < offset {
            a.finals[x]
        } else {
            b.finals[x - offset]
        }
    };
    let succ = |x: usize, d: Digit| {
        if x < offset {
            a.next(x, d)
        } else {
            b.next(x - offset, d) + offset
        }
    };
    let mut queue = VecDeque::new();
    let (i, j) = (a.initial, b.initial + offset);
    parent[i] = j;
    queue.push_back((i, j));
    while let Some((x, y)) = queue.pop_front() {
        if is_final(x) != is_final(y) {
            return Ok(false);
        }
        for d in 0..a.base {
            let (nx, ny) = (succ(x, d), succ(y, d));
            let (rx, ry) = (find(&mut parent, nx), find(&mut parent, ny));
            if rx != ry {
                parent[rx] = ry;
                queue.push_back((nx, ny));
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Binary automaton for numbers with an even count of 1 digits.
    fn even_ones() -> Dfa {
        Dfa::new(2, 0, vec![true, false], vec![0, 1, 1, 0]).unwrap()
    }

    fn universal(base: u32) -> Dfa {
        Dfa::new(base, 0, vec![true], vec![0; base as usize]).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Dfa::new(2, 0, vec![true], vec![0]),
            Err(DfaError::TableSize {
                expected: 2,
                got: 1
            })
        );
        assert_eq!(
            Dfa::new(2, 0, vec![true], vec![0, 3]),
            Err(DfaError::StateOutOfRange { state: 3, count: 1 })
        );
        assert_eq!(
            Dfa::new(2, 0, vec![true, false], vec![0, 0, 1, 1]),
            Err(DfaError::Unreachable(1))
        );
        assert_eq!(Dfa::new(1, 0, vec![true], vec![0]), Err(DfaError::InvalidBase(1)));
        assert_eq!(Dfa::new(2, 0, vec![], vec![]), Err(DfaError::NoStates));
    }

    #[test]
    fn run_empty_word_is_identity() {
        let a = even_ones();
        for q in 0..a.state_count() {
            assert_eq!(a.run(q, &Word::empty()), Ok(q));
        }
        assert!(a.run(0, &Word(vec![2])).is_err());
    }

    #[test]
    fn accepts_number_scans_zero_tail() {
        // Accepts exactly the words ending in "1,0": value 1 is accepted only
        // through a padded representation.
        let dfa = Dfa::new(2, 0, vec![false, false, true], vec![0, 1, 2, 1, 0, 1]).unwrap();
        assert!(!dfa.accepts_word(&Word(vec![1])).unwrap());
        assert!(dfa.accepts_word(&Word(vec![1, 0])).unwrap());
        assert!(dfa.accepts_number(1));
        assert!(!dfa.accepts_number(0));
    }

    #[test]
    fn group_detection() {
        let perms = even_ones().is_group_automaton().unwrap();
        for p in &perms {
            for q in 0..2 {
                assert_eq!(p.apply_inverse(p.apply(q)), q);
            }
        }
        assert!(universal(3).is_group_automaton().is_some());
        // 1 maps both states to state 1.
        let not_group = Dfa::new(2, 0, vec![false, true], vec![0, 1, 1, 1]).unwrap();
        assert!(not_group.is_group_automaton().is_none());
    }

    #[test]
    fn product_with_universal_is_identity() {
        let a = even_ones();
        let p = product(&a, &universal(2), |x, y| x && y).unwrap();
        assert!(equivalent(&a, &p).unwrap());
        let diag = product(&a, &a, |x, y| x && y).unwrap();
        assert!(equivalent(&a, &diag).unwrap());
        assert!(product(&a, &universal(3), |x, y| x && y).is_err());
    }

    #[test]
    fn equivalence_detects_difference() {
        let a = even_ones();
        assert!(!equivalent(&a, &a.complement()).unwrap());
        assert!(equivalent(&a, &a.relabel(&[1, 0])).unwrap());
    }

    #[test]
    fn canonical_is_relabel_invariant() {
        let a = Dfa::new(3, 0, vec![false, true, false], vec![1, 2, 0, 2, 2, 1, 0, 0, 2]).unwrap();
        let shuffled = a.relabel(&[2, 0, 1]);
        assert_ne!(a, shuffled);
        assert_eq!(a.canonical(), shuffled.canonical());
        assert!(a.is_isomorphic(&shuffled));
    }

    #[test]
    fn from_reachable_drops_dead_states() {
        let d = Dfa::from_reachable(2, 1, vec![true, false], vec![0, 0, 1, 1]).unwrap();
        assert_eq!(d.state_count(), 1);
        assert!(!d.is_final(0));
    }
}
