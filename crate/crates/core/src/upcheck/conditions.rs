//! Classification of SCCs and the individual UP conditions.

use crate::dfa::{Dfa, StateId};
use crate::pascal::{minimal_residue_period, recognize_pascal_quotient, QuotientWitness};
use crate::word::Digit;

use super::condense::Condensation;
use super::{Condition, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SccClass {
    /// A single state without internal transition.
    Trivial,
    /// Non-trivial with an internal transition on a non-zero digit.
    Type1,
    /// Non-trivial, all internal transitions labelled 0.
    Type2,
}

pub fn classify(dfa: &Dfa, cond: &Condensation) -> Vec<SccClass> {
    let mut classes: Vec<SccClass> = cond
        .has_internal_edge
        .iter()
        .map(|&internal| if internal { SccClass::Type2 } else { SccClass::Trivial })
        .collect();
    for q in 0..dfa.state_count() {
        let c = cond.scc_of[q];
        if classes[c] == SccClass::Type2
            && dfa.row(q)[1..].iter().any(|&r| cond.scc_of[r] == c)
        {
            classes[c] = SccClass::Type1;
        }
    }
    classes
}

/// States whose finality differs from that of their 0-successor.
pub fn check_up0(dfa: &Dfa) -> Vec<StateId> {
    (0..dfa.state_count())
        .filter(|&q| dfa.is_final(q) != dfa.is_final(dfa.next(q, 0)))
        .collect()
}

fn exit_of(dfa: &Dfa, cond: &Condensation, c: usize) -> Option<(StateId, Digit)> {
    cond.members[c].iter().find_map(|&q| {
        dfa.row(q)
            .iter()
            .position(|&r| cond.scc_of[r] != c)
            .map(|a| (q, a as Digit))
    })
}

/// Type 1 SCCs must be leaves; Type 2 SCCs must be simple 0-circuits whose
/// only successor is a Type 1 leaf.
pub fn check_up1_up2(dfa: &Dfa, cond: &Condensation, classes: &[SccClass]) -> Vec<Failure> {
    let mut failures = Vec::new();
    for (c, class) in classes.iter().enumerate() {
        match class {
            SccClass::Trivial => {}
            SccClass::Type1 => {
                if let Some((q, a)) = exit_of(dfa, cond, c) {
                    failures.push(Failure::new(Condition::Up1, Some(c), Some(q), Some(a)));
                }
            }
            SccClass::Type2 => {
                let members = &cond.members[c];
                if let Some(&q) = members.iter().find(|&&q| cond.scc_of[dfa.next(q, 0)] != c) {
                    failures.push(Failure::new(Condition::Up2, Some(c), Some(q), Some(0)));
                    continue;
                }
                let start = members[0];
                let mut len = 1;
                let mut q = dfa.next(start, 0);
                while q != start && len <= members.len() {
                    q = dfa.next(q, 0);
                    len += 1;
                }
                if len != members.len() {
                    failures.push(Failure::new(Condition::Up2, Some(c), Some(start), Some(0)));
                    continue;
                }
                let succ = &cond.successors[c];
                let ok = succ.len() == 1 && cond.is_leaf(succ[0]) && classes[succ[0]] == SccClass::Type1;
                if !ok {
                    let witness = exit_of(dfa, cond, c);
                    failures.push(Failure::new(
                        Condition::Up2,
                        Some(c),
                        witness.map(|w| w.0).or(Some(start)),
                        witness.map(|w| w.1),
                    ));
                }
            }
        }
    }
    failures
}

/// A Type 1 SCC recognized as a Pascal quotient.
#[derive(Debug, Clone)]
pub struct Type1Component {
    pub scc: usize,
    /// Local index → global state. The first member is the local initial.
    pub states: Vec<StateId>,
    pub witness: QuotientWitness,
    /// `inverse[local * base + a]` is the global a-predecessor of the state.
    inverse: Vec<StateId>,
}

impl Type1Component {
    /// Predecessor by digit `a` inside the component; `local_of` maps global
    /// ids to local ones.
    pub fn inverse_step(&self, local_of: &[usize], q: StateId, a: Digit, base: u32) -> StateId {
        self.inverse[local_of[q] * base as usize + a as usize]
    }

    pub fn period(&self) -> u64 {
        self.witness.period
    }
}

/// Outcome of UP-3: recognized components and a global → local index map.
#[derive(Debug, Clone, Default)]
pub struct Type1Analysis {
    pub components: Vec<Type1Component>,
    /// Component index per SCC id (`usize::MAX` when not Type 1).
    pub component_of_scc: Vec<usize>,
    pub local_of: Vec<usize>,
}

/// Every Type 1 SCC, taken as a standalone automaton started at its first
/// member, must be a quotient of a Pascal automaton.
pub fn check_up3(
    dfa: &Dfa,
    cond: &Condensation,
    classes: &[SccClass],
) -> Result<Type1Analysis, Vec<Failure>> {
    let base = dfa.base();
    let b = base as usize;
    let mut analysis = Type1Analysis {
        components: Vec::new(),
        component_of_scc: vec![usize::MAX; cond.scc_count()],
        local_of: vec![usize::MAX; dfa.state_count()],
    };
    let mut failures = Vec::new();
    for (c, _) in classes.iter().enumerate().filter(|(_, &k)| k == SccClass::Type1) {
        let states = cond.members[c].clone();
        for (i, &q) in states.iter().enumerate() {
            analysis.local_of[q] = i;
        }
        let mut delta = Vec::with_capacity(states.len() * b);
        let mut finals = Vec::with_capacity(states.len());
        for &q in &states {
            finals.push(dfa.is_final(q));
            delta.extend(dfa.row(q).iter().map(|&r| analysis.local_of[r]));
        }
        let sub = Dfa::new_reachable_unchecked(base, 0, finals, delta).expect("a closed SCC is a complete automaton");
        match recognize_pascal_quotient(&sub) {
            Ok(witness) => {
                let mut inverse = vec![0; states.len() * b];
                for (local, &q) in states.iter().enumerate() {
                    for (a, &r) in sub.row(local).iter().enumerate() {
                        inverse[r * b + a] = q;
                    }
                }
                analysis.component_of_scc[c] = analysis.components.len();
                analysis.components.push(Type1Component {
                    scc: c,
                    states,
                    witness,
                    inverse,
                });
            }
            Err(rej) => {
                let mut f = Failure::new(
                    Condition::Up3,
                    Some(c),
                    rej.state.map(|l| states[l]),
                    rej.digit,
                );
                f.reason = Some(rej.reason.code());
                failures.push(f);
            }
        }
    }
    if failures.is_empty() {
        Ok(analysis)
    } else {
        Err(failures)
    }
}

/// Injective map from a Type 2 circuit into its Type 1 successor commuting
/// with 0 and agreeing on every exiting transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub scc: usize,
    pub target_scc: usize,
    /// `(circuit state, image)` in circuit order.
    pub map: Vec<(StateId, StateId)>,
}

impl Embedding {
    pub fn image(&self, q: StateId) -> Option<StateId> {
        self.map.iter().find(|(s, _)| *s == q).map(|&(_, t)| t)
    }
}

pub fn check_up4(
    dfa: &Dfa,
    cond: &Condensation,
    classes: &[SccClass],
    type1: &Type1Analysis,
) -> Result<Vec<Embedding>, Vec<Failure>> {
    let base = dfa.base();
    let mut embeddings = Vec::new();
    let mut failures = Vec::new();
    for (c, _) in classes.iter().enumerate().filter(|(_, &k)| k == SccClass::Type2) {
        let target = cond.successors[c][0];
        let comp = &type1.components[type1.component_of_scc[target]];
        let q0 = cond.members[c][0];
        let fail = |q: StateId, a: Option<Digit>| Failure::new(Condition::Up4, Some(c), Some(q), a);

        // Each non-zero digit forces the image of q0.
        let mut anchor = None;
        let mut conflict = None;
        for a in 1..base {
            let candidate = comp.inverse_step(&type1.local_of, dfa.next(q0, a), a, base);
            match anchor {
                None => anchor = Some(candidate),
                Some(f) if f != candidate => {
                    conflict = Some(a);
                    break;
                }
                _ => {}
            }
        }
        if let Some(a) = conflict {
            failures.push(fail(q0, Some(a)));
            continue;
        }
        let anchor = anchor.expect("base has a non-zero digit");

        let len = cond.members[c].len();
        let mut map = Vec::with_capacity(len);
        let (mut q, mut f) = (q0, anchor);
        let mut ok = true;
        for i in 0..len {
            if i > 0 && f == anchor {
                // 0-orbit of the image shorter than the circuit.
                failures.push(fail(q, Some(0)));
                ok = false;
                break;
            }
            map.push((q, f));
            q = dfa.next(q, 0);
            f = dfa.next(f, 0);
        }
        if !ok {
            continue;
        }
        if f != anchor {
            failures.push(fail(q0, Some(0)));
            continue;
        }
        let bad = map.iter().find_map(|&(q, f)| {
            (1..base)
                .find(|&a| dfa.next(f, a) != dfa.next(q, a))
                .map(|a| (q, a))
        });
        if let Some((q, a)) = bad {
            failures.push(fail(q, Some(a)));
            continue;
        }
        embeddings.push(Embedding {
            scc: c,
            target_scc: target,
            map,
        });
    }
    if failures.is_empty() {
        Ok(embeddings)
    } else {
        Err(failures)
    }
}

/// Linear-time evidence that the input is not minimal: a Type 2 circuit
/// equivalent to its image, or a Type 1 component whose residues have a
/// smaller period than its g-circuit.
pub fn minimality_witnesses(dfa: &Dfa, type1: &Type1Analysis, embeddings: &[Embedding]) -> Vec<Failure> {
    let mut failures = Vec::new();
    for comp in &type1.components {
        let w = &comp.witness;
        if minimal_residue_period(w.period, &w.residues) != w.period {
            failures.push(Failure::new(
                Condition::NotMinimalInput,
                Some(comp.scc),
                Some(comp.states[0]),
                None,
            ));
        }
    }
    for e in embeddings {
        let (q, f) = e.map[0];
        if dfa.is_final(q) == dfa.is_final(f) {
            failures.push(Failure::new(Condition::NotMinimalInput, Some(e.scc), Some(q), None));
        }
    }
    failures
}
