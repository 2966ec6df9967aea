//! Seeded random testing of the criterion against the oracle.
//!
//! Each case draws an ultimately periodic set, builds and minimizes its
//! automaton, and checks three things:
//!
//! * the criterion accepts it and reads back parameters with the same
//!   bitmap;
//! * after redirecting one transition, the verdict agrees with the oracle
//!   (a positive verdict must come with parameters reproducing the bitmap,
//!   a negative one must leave the naive search empty-handed), unless the
//!   mutant no longer defines a set of numbers at all;
//! * a corrupted minimal Pascal automaton is never recognized as a Pascal
//!   quotient that reconstructs to itself.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::builders::{build_up_automaton, UpSet};
use crate::dfa::{Dfa, StateId};
use crate::minimize::minimize;
use crate::oracle::{accepted_bitmap, find_up_params, periodic_bitmap};
use crate::pascal::{build_generalized_pascal, minimal_residue_period, recognize_pascal_quotient};
use crate::upcheck::{is_up, is_up_minimal, Condition};

/// Window and search bounds used to judge verdicts.
pub const WINDOW: usize = 4096;
pub const MAX_PERIOD: usize = 64;
pub const MAX_THRESHOLD: usize = 512;
/// Larger window used by [`run_fuzz`] to re-examine a disagreement before
/// reporting it. Mutants of automata with a few dozen states can look
/// periodic on `[0, WINDOW)` when their irregular part only shows on longer
/// representations.
pub const CONFIRM_WINDOW: usize = 1 << 20;

/// A residue set where each residue is kept with probability 1/2.
pub fn random_residues(rng: &mut impl Rng, period: u64) -> Vec<u64> {
    (0..period).filter(|_| rng.gen_bool(0.5)).collect()
}

/// A random residue set that is not invariant under a smaller period.
pub fn random_canonical_residues(rng: &mut impl Rng, period: u64) -> Vec<u64> {
    loop {
        let r = random_residues(rng, period);
        if minimal_residue_period(period, &r) == period {
            return r;
        }
    }
}

/// Redirects the transition `(state, digit)` to `target`. Returns `None` if
/// that leaves some state unreachable.
pub fn redirect(dfa: &Dfa, state: StateId, digit: u32, target: StateId) -> Option<Dfa> {
    let mut delta = dfa.table().to_vec();
    delta[state * dfa.base() as usize + digit as usize] = target;
    Dfa::new(dfa.base(), dfa.initial(), dfa.finals().to_vec(), delta).ok()
}

/// Redirects a random transition to a different random target, keeping
/// only the reachable part.
pub fn random_mutation(rng: &mut impl Rng, dfa: &Dfa) -> Option<Dfa> {
    let n = dfa.state_count();
    if n < 2 {
        return None;
    }
    let q = rng.gen_range(0..n);
    let a = rng.gen_range(0..dfa.base());
    let old = dfa.next(q, a);
    let mut r = rng.gen_range(0..n - 1);
    if r >= old {
        r += 1;
    }
    let mut delta = dfa.table().to_vec();
    delta[q * dfa.base() as usize + a as usize] = r;
    Dfa::from_reachable(dfa.base(), dfa.initial(), dfa.finals().to_vec(), delta).ok()
}

/// How a mutated automaton fared against the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MutantOutcome {
    Agrees,
    /// The language is not closed under appending and removing trailing
    /// zeros, so the automaton does not define a set of numbers and the
    /// criterion correctly rejects it at UP-0. The oracle's "some word of
    /// value n" reading does not apply to such automata.
    Unsaturated,
    Disagrees(String),
}

/// Compares the criterion's verdict on `dfa` with the oracle on
/// `[0, window)`.
pub fn judge_mutant(dfa: &Dfa, window: usize) -> MutantOutcome {
    let report = is_up(dfa);
    if report.failures.iter().any(|f| f.condition == Condition::Up0) {
        return MutantOutcome::Unsaturated;
    }
    let bitmap = accepted_bitmap(dfa, window);
    let disagreement = if report.verdict {
        match &report.parameters {
            Some(set) => {
                let expected = periodic_bitmap(set, window);
                expected.first_difference(&bitmap).map(|n| {
                    format!("verdict UP with {set}, but membership of {n} disagrees")
                })
            }
            None => match find_up_params(&bitmap, MAX_PERIOD, MAX_THRESHOLD) {
                Ok(Some(_)) => None,
                _ => Some("verdict UP without parameters and no small parameters fit".into()),
            },
        }
    } else {
        match find_up_params(&bitmap, MAX_PERIOD, MAX_THRESHOLD) {
            Ok(Some(set)) => Some(format!(
                "verdict NOT_UP ({}) but {set} fits the window",
                report.failures.first().map_or(String::new(), |f| f.to_string())
            )),
            _ => None,
        }
    };
    disagreement.map_or(MutantOutcome::Agrees, MutantOutcome::Disagrees)
}

/// Which property a counterexample violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuzzProperty {
    RoundTrip,
    MutationVerdict,
    CorruptedQuotient,
}

impl FuzzProperty {
    pub fn name(self) -> &'static str {
        match self {
            FuzzProperty::RoundTrip => "round-trip",
            FuzzProperty::MutationVerdict => "mutation-verdict",
            FuzzProperty::CorruptedQuotient => "corrupted-quotient",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub case: usize,
    pub property: FuzzProperty,
    pub dfa: Dfa,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct FuzzSummary {
    pub cases: usize,
    pub passed: usize,
    /// Mutants compared against the oracle.
    pub mutations_checked: usize,
    /// Mutants rejected at UP-0 because they do not define a set of numbers.
    pub unsaturated: usize,
    /// Disagreements on the small window that vanished on the larger one.
    pub window_artifacts: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl FuzzSummary {
    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Draws a small UP set and base for one case.
fn random_case_set(rng: &mut StdRng) -> (UpSet, u32) {
    let base = rng.gen_range(2..=4);
    let period = rng.gen_range(1..=12);
    let residues = random_residues(rng, period);
    let threshold = [0, 1, rng.gen_range(0..20)][rng.gen_range(0..3)];
    let set = UpSet::new(period, &residues, threshold).expect("residues drawn below period");
    (set, base)
}

fn round_trip(set: &UpSet, base: u32) -> Result<Dfa, (Dfa, String)> {
    let dfa = minimize(&build_up_automaton(set, base).expect("drawn sets are valid"));
    let report = is_up_minimal(&dfa);
    if !report.verdict {
        return Err((dfa, format!("{set} rejected: {}", report.machine().trim_end())));
    }
    let expected = periodic_bitmap(set, WINDOW);
    match &report.parameters {
        Some(found) if periodic_bitmap(found, WINDOW) == expected => Ok(dfa),
        Some(found) => Err((dfa, format!("{set} read back as {found}"))),
        None => Err((dfa, format!("{set} accepted without parameters"))),
    }
}

fn corrupted_quotient(rng: &mut StdRng) -> Option<(Dfa, String)> {
    let base = rng.gen_range(2..=4u32);
    let period = loop {
        let p = rng.gen_range(2..=15u64);
        if crate::arith::gcd(p, base as u64) == 1 {
            break p;
        }
    };
    let residues = random_canonical_residues(rng, period);
    let pascal = minimize(&build_generalized_pascal(&residues, period, base).ok()?);
    let n = pascal.state_count();
    if n < 2 {
        return None;
    }
    let q = rng.gen_range(0..n);
    let a = rng.gen_range(0..base);
    let target = (pascal.next(q, a) + rng.gen_range(1..n)) % n;
    let corrupted = redirect(&pascal, q, a, target)?;
    let witness = recognize_pascal_quotient(&corrupted).ok()?;
    match witness.reconstruct(base, corrupted.initial()) {
        Ok(rebuilt) if rebuilt == corrupted => Some((
            corrupted,
            format!("corruption recognized as {}", witness.summary()),
        )),
        _ => None,
    }
}

/// Runs `count` cases from `seed`.
pub fn run_fuzz(seed: u64, count: usize) -> FuzzSummary {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut summary = FuzzSummary::default();
    for case in 0..count {
        summary.cases += 1;
        let before = summary.counterexamples.len();
        let (set, base) = random_case_set(&mut rng);
        match round_trip(&set, base) {
            Ok(dfa) => {
                if let Some(mutant) = random_mutation(&mut rng, &dfa) {
                    match judge_mutant(&mutant, WINDOW) {
                        MutantOutcome::Agrees => summary.mutations_checked += 1,
                        MutantOutcome::Unsaturated => summary.unsaturated += 1,
                        MutantOutcome::Disagrees(_) => {
                            summary.mutations_checked += 1;
                            match judge_mutant(&mutant, CONFIRM_WINDOW) {
                                MutantOutcome::Disagrees(detail) => {
                                    summary.counterexamples.push(Counterexample {
                                        case,
                                        property: FuzzProperty::MutationVerdict,
                                        dfa: mutant,
                                        detail,
                                    })
                                }
                                _ => summary.window_artifacts += 1,
                            }
                        }
                    }
                }
            }
            Err((dfa, detail)) => summary.counterexamples.push(Counterexample {
                case,
                property: FuzzProperty::RoundTrip,
                dfa,
                detail,
            }),
        }
        if let Some((dfa, detail)) = corrupted_quotient(&mut rng) {
            summary.counterexamples.push(Counterexample {
                case,
                property: FuzzProperty::CorruptedQuotient,
                dfa,
                detail,
            });
        }
        if summary.counterexamples.len() == before {
            summary.passed += 1;
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_run_is_clean() {
        let summary = run_fuzz(7, 100);
        for c in &summary.counterexamples {
            eprintln!("{} #{}: {}", c.property.name(), c.case, c.detail);
        }
        assert!(summary.ok());
        assert_eq!(summary.passed, 100);
        assert!(summary.mutations_checked > 30, "{summary:?}");
    }

    #[test]
    fn runs_are_reproducible() {
        let a = run_fuzz(3, 10);
        let b = run_fuzz(3, 10);
        assert_eq!(a.mutations_checked, b.mutations_checked);
        assert_eq!(a.passed, b.passed);
    }

    #[test]
    fn mutation_changes_exactly_one_edge_or_drops_states() {
        let mut rng = StdRng::seed_from_u64(1);
        let dfa = minimize(&build_generalized_pascal(&[1, 2], 7, 2).unwrap());
        for _ in 0..50 {
            if let Some(m) = random_mutation(&mut rng, &dfa) {
                assert_ne!(m, dfa);
            }
        }
    }

    #[test]
    fn canonical_residues_have_full_period() {
        let mut rng = StdRng::seed_from_u64(11);
        for p in 1..20 {
            let r = random_canonical_residues(&mut rng, p);
            assert_eq!(minimal_residue_period(p, &r), p);
        }
    }
}
