//! Hopcroft partition refinement.

use crate::dfa::{Dfa, StateId};

/// Refinable partition of `0..n` with per-block marking, in the style of
/// Valmari and Lehtinen.
struct Partition {
    elems: Vec<StateId>,
    loc: Vec<usize>,
    block_of: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    marked: Vec<usize>,
    touched: Vec<usize>,
}

impl Partition {
    fn new(finals: &[bool]) -> Self {
        let n = finals.len();
        let mut elems: Vec<StateId> = (0..n).filter(|&q| finals[q]).collect();
        let split = elems.len();
        elems.extend((0..n).filter(|&q| !finals[q]));
        let mut loc = vec![0; n];
        for (i, &q) in elems.iter().enumerate() {
            loc[q] = i;
        }
        let mut p = Partition {
            elems,
            loc,
            block_of: vec![0; n],
            start: Vec::new(),
            end: Vec::new(),
            marked: Vec::new(),
            touched: Vec::new(),
        };
        for (lo, hi) in [(0, split), (split, n)] {
            if lo < hi {
                let b = p.start.len();
                p.start.push(lo);
                p.end.push(hi);
                p.marked.push(0);
                for i in lo..hi {
                    p.block_of[p.elems[i]] = b;
                }
            }
        }
        p
    }

    fn block_count(&self) -> usize {
        self.start.len()
    }

    fn mark(&mut self, q: StateId) {
        let b = self.block_of[q];
        let i = self.loc[q];
        let m = self.start[b] + self.marked[b];
        if i < m {
            return;
        }
        let other = self.elems[m];
        self.elems.swap(i, m);
        self.loc[other] = i;
        self.loc[q] = m;
        if self.marked[b] == 0 {
            self.touched.push(b);
        }
        self.marked[b] += 1;
    }

    /// Splits every touched block into marked/unmarked parts; the smaller part
    /// becomes a new block, whose id is pushed onto `new_blocks`.
    fn split(&mut self, new_blocks: &mut Vec<usize>) {
        while let Some(b) = self.touched.pop() {
            let cnt = self.marked[b];
            self.marked[b] = 0;
            let (lo, hi) = (self.start[b], self.end[b]);
            if cnt == hi - lo {
                continue;
            }
            let mid = lo + cnt;
            let nb = self.start.len();
            if cnt <= hi - mid {
                self.start.push(lo);
                self.end.push(mid);
                self.start[b] = mid;
            } else {
                self.start.push(mid);
                self.end.push(hi);
                self.end[b] = mid;
            }
            self.marked.push(0);
            for i in self.start[nb]..self.end[nb] {
                self.block_of[self.elems[i]] = nb;
            }
            new_blocks.push(nb);
        }
    }
}

/// Minimal complete automaton for the same language, states numbered in
/// canonical BFS order. Runs in `O(b · n log n)`.
pub fn minimize(dfa: &Dfa) -> Dfa {
    let n = dfa.state_count();
    let base = dfa.base() as usize;

    // Reverse transitions, CSR per digit: preds of q by a are
    // rev[off[a*n + q]..off[a*n + q + 1]].
    let mut off = vec![0usize; base * n + 1];
    for q in 0..n {
        for (a, &r) in dfa.row(q).iter().enumerate() {
            off[a * n + r + 1] += 1;
        }
    }
    for i in 0..base * n {
        off[i + 1] += off[i];
    }
    let mut fill = off.clone();
    let mut rev = vec![0; base * n];
    for q in 0..n {
        for (a, &r) in dfa.row(q).iter().enumerate() {
            rev[fill[a * n + r]] = q;
            fill[a * n + r] += 1;
        }
    }

    let mut part = Partition::new(dfa.finals());
    let mut work: Vec<usize> = (0..part.block_count()).collect();
    let mut splitter = Vec::new();
    while let Some(s) = work.pop() {
        for a in 0..base {
            // The splitter block may itself be split while processing an
            // earlier digit; snapshot its current members.
            splitter.clear();
            splitter.extend_from_slice(&part.elems[part.start[s]..part.end[s]]);
            for &r in &splitter {
                for &q in &rev[off[a * n + r]..off[a * n + r + 1]] {
                    part.mark(q);
                }
            }
            part.split(&mut work);
        }
    }

    let blocks = part.block_count();
    let mut finals = vec![false; blocks];
    let mut delta = vec![0; blocks * base];
    for b in 0..blocks {
        let rep = part.elems[part.start[b]];
        finals[b] = dfa.is_final(rep);
        for (a, &r) in dfa.row(rep).iter().enumerate() {
            delta[b * base + a] = part.block_of[r];
        }
    }
    Dfa::from_reachable(dfa.base(), part.block_of[dfa.initial()], finals, delta)
        .expect("quotient of a valid automaton is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::equivalent;

    #[test]
    fn merges_duplicated_copy() {
        // Two copies of the even-ones automaton glued together.
        let dfa = Dfa::new(
            2,
            0,
            vec![true, false, true, false],
            vec![2, 1, 1, 2, 0, 3, 3, 0],
        )
        .unwrap();
        let min = minimize(&dfa);
        assert_eq!(min.state_count(), 2);
        assert!(equivalent(&dfa, &min).unwrap());
        assert_eq!(minimize(&min), min);
    }

    #[test]
    fn single_class() {
        let dfa = Dfa::new(3, 0, vec![true, true], vec![1, 0, 1, 0, 0, 1]).unwrap();
        let min = minimize(&dfa);
        assert_eq!(min.state_count(), 1);
        assert!(min.is_final(0));
    }
}
