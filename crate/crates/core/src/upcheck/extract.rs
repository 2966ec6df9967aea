//! Reading canonical `(p, R, m)` back from an automaton that satisfies the
//! UP-criterion.
//!
//! Every accepted word first crosses trivial states (at most `L` digits),
//! then enters a Type 1 component, possibly through a Type 2 circuit that
//! behaves like its image. For `n ≥ b^L` the low `L` digits of `n` pick the
//! entry, and moving the entry state back through those digits (the component
//! is a group automaton) gives a state `e` of the component such that `n` is
//! accepted iff `e` accepts `n`. The sequence of such states, indexed by
//! `n mod b^L`, has a least cyclic period `δ`; `δ · lcm(p_D)` is then a
//! period of the tail. The exact period and threshold are finally read off
//! the accepted-number bitmap.

use crate::arith::lcm;
use crate::builders::UpSet;
use crate::dfa::{Dfa, StateId};
use crate::word::{push_digits, Digit};

use super::conditions::{Embedding, SccClass, Type1Analysis};
use super::condense::Condensation;

/// Upper bound on the number of evaluated numbers; beyond it the parameters
/// are reported as unavailable.
pub const EXTRACTION_BUDGET: u64 = 1 << 24;

/// Least `q` dividing `seq.len()` such that `seq` is invariant under cyclic
/// shift by `q`.
pub(crate) fn least_cyclic_period<T: PartialEq>(seq: &[T]) -> usize {
    let n = seq.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && seq[i] != seq[k] {
            k = fail[k];
        }
        if seq[i] == seq[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    let period = n - fail[n];
    if n.is_multiple_of(period) {
        period
    } else {
        n
    }
}

struct Evaluator<'a> {
    dfa: &'a Dfa,
    digits: Vec<Digit>,
}

impl Evaluator<'_> {
    /// Membership through the canonical representation only; UP-0 makes
    /// padding zeros irrelevant.
    fn accepts(&mut self, n: u64) -> bool {
        push_digits(n, self.dfa.base(), &mut self.digits);
        self.dfa.is_final(self.dfa.run_digits(self.dfa.initial(), &self.digits))
    }
}

pub fn extract_parameters(
    dfa: &Dfa,
    cond: &Condensation,
    classes: &[SccClass],
    type1: &Type1Analysis,
    embeddings: &[Embedding],
) -> Option<UpSet> {
    let n = dfa.state_count();
    let base = dfa.base();
    let b = base as u64;
    let trivial = |q: StateId| classes[cond.scc_of[q]] == SccClass::Trivial;

    // Longest run of trivial states starting at each state. Trivial states
    // form a DAG; SCC ids are a reverse topological order.
    let mut run_len = vec![0u32; n];
    for (class, members) in classes.iter().zip(&cond.members) {
        if *class != SccClass::Trivial {
            continue;
        }
        let q = members[0];
        let below = dfa.row(q).iter().map(|&r| run_len[r]).max().unwrap_or(0);
        run_len[q] = below + 1;
    }
    let depth = run_len[dfa.initial()];
    let block = b.checked_pow(depth).filter(|&v| v <= EXTRACTION_BUDGET)?;

    let mut image = vec![usize::MAX; n];
    for e in embeddings {
        for &(q, f) in &e.map {
            image[q] = f;
        }
    }
    let entry = |q: StateId| if image[q] != usize::MAX { image[q] } else { q };
    let component = |q: StateId| type1.component_of_scc[cond.scc_of[q]];

    // Effective component state for every residue of n modulo b^depth.
    let mut rows = vec![usize::MAX; block as usize];
    if depth == 0 {
        rows[0] = entry(dfa.initial());
    } else {
        // (state, length, value) with the path digits kept in `path`.
        let mut path: Vec<Digit> = Vec::new();
        let mut stack: Vec<(StateId, u32, u64, Digit)> = vec![(dfa.initial(), 0, 0, 0)];
        while let Some((q, len, value, next)) = stack.pop() {
            path.truncate(len as usize);
            if next == base {
                continue;
            }
            stack.push((q, len, value, next + 1));
            let a = next;
            let r = dfa.next(q, a);
            let pos = b.pow(len);
            let v = value + a as u64 * pos;
            if trivial(r) {
                path.push(a);
                stack.push((r, len + 1, v, 0));
                continue;
            }
            let comp = &type1.components[component(entry(r))];
            let mut e = entry(r);
            e = comp.inverse_step(&type1.local_of, e, a, base);
            for &d in path.iter().rev() {
                e = comp.inverse_step(&type1.local_of, e, d, base);
            }
            let step = pos * b;
            let mut x = v;
            while x < block {
                rows[x as usize] = e;
                x += step;
            }
        }
    }
    debug_assert!(rows.iter().all(|&e| e != usize::MAX));

    let row_period = least_cyclic_period(&rows) as u64;
    let mut coprime_part = 1u64;
    let mut seen = vec![false; type1.components.len()];
    for &e in &rows[..row_period as usize] {
        let k = component(e);
        if !seen[k] {
            seen[k] = true;
            coprime_part = lcm(coprime_part, type1.components[k].period());
        }
    }
    let span = row_period.checked_mul(coprime_part).filter(|&s| s <= EXTRACTION_BUDGET)?;

    let mut eval = Evaluator {
        dfa,
        digits: Vec::new(),
    };
    let start = block;
    let tail: Vec<bool> = (0..span).map(|i| eval.accepts(start + i)).collect();
    let period = least_cyclic_period(&tail) as u64;
    let mut in_r = vec![false; period as usize];
    for i in 0..period {
        if tail[i as usize] {
            in_r[((start + i) % period) as usize] = true;
        }
    }
    let residues: Vec<u64> = (0..period).filter(|&r| in_r[r as usize]).collect();
    let mut threshold = start;
    while threshold > 0 && eval.accepts(threshold - 1) == in_r[((threshold - 1) % period) as usize] {
        threshold -= 1;
    }
    let finite: Vec<u64> = (0..threshold).filter(|&x| eval.accepts(x)).collect();
    UpSet::new(period, &residues, threshold)
        .and_then(|s| s.with_finite(&finite))
        .ok()
}

#[cfg(test)]
mod tests {
    use super::least_cyclic_period;

    #[test]
    fn cyclic_periods() {
        assert_eq!(least_cyclic_period(&[1, 2, 1, 2]), 2);
        assert_eq!(least_cyclic_period(&[1, 2, 1]), 3);
        assert_eq!(least_cyclic_period(&[7, 7, 7]), 1);
        assert_eq!(least_cyclic_period(&[1, 0, 0, 1, 0, 0]), 3);
        assert_eq!(least_cyclic_period::<u8>(&[]), 0);
    }
}
