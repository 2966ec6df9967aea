//! Pascal automata and linear-time recognition of their quotients.
//!
//! The Pascal automaton for a period `p` coprime with the base tracks
//! `(value mod p, length mod ψ)` where `ψ` is the multiplicative order of the
//! base modulo `p`. Recognition works on the "modified" automaton over the two
//! letters `0` and `g`, where `g` acts as `1` followed by the inverse of `0`.

use std::collections::VecDeque;
use std::fmt;

use crate::arith::{divisors, gcd, mod_inverse, mult_order};
use crate::dfa::{Dfa, StateId, StatePermutation};
use crate::error::BuildError;
use crate::word::Digit;

pub use crate::arith::mult_order as multiplicative_order;

/// Parameters `(p, ψ, R)` of a Pascal automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PascalParams {
    period: u64,
    psi: u64,
    residues: Vec<u64>,
}

impl PascalParams {
    pub fn new(period: u64, residues: &[u64], base: u32) -> Result<Self, BuildError> {
        let psi = mult_order(base, period)?;
        let residues = normalize_residues(residues, period)?;
        Ok(PascalParams {
            period,
            psi,
            residues,
        })
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn psi(&self) -> u64 {
        self.psi
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

pub(crate) fn normalize_residues(residues: &[u64], modulus: u64) -> Result<Vec<u64>, BuildError> {
    if modulus == 0 {
        return Err(BuildError::ZeroModulus);
    }
    if let Some(&residue) = residues.iter().find(|&&r| r >= modulus) {
        return Err(BuildError::ResidueOutOfRange { residue, modulus });
    }
    let mut r = residues.to_vec();
    r.sort_unstable();
    r.dedup();
    Ok(r)
}

/// State id of `(s, t)` in automata produced by [`build_pascal`].
pub fn pascal_state(s: u64, t: u64, psi: u64) -> StateId {
    (s * psi + t) as StateId
}

/// The Pascal automaton on `Z/pZ × Z/ψZ`: initial `(0,0)`, finals `R × Z/ψZ`,
/// `(s,t)·a = (s + a·b^t mod p, t+1 mod ψ)`. State `(s,t)` has id `s·ψ + t`.
pub fn build_pascal(params: &PascalParams, base: u32) -> Result<Dfa, BuildError> {
    let p = params.period;
    let psi = params.psi;
    let b = base as u64;
    let mut pow = Vec::with_capacity(psi as usize);
    let mut x = 1 % p;
    for _ in 0..psi {
        pow.push(x);
        x = x * b % p;
    }
    let mut in_r = vec![false; p as usize];
    for &r in &params.residues {
        in_r[r as usize] = true;
    }
    let n = (p * psi) as usize;
    let mut finals = vec![false; n];
    let mut delta = Vec::with_capacity(n * base as usize);
    for s in 0..p {
        for t in 0..psi {
            finals[pascal_state(s, t, psi)] = in_r[s as usize];
            let t2 = (t + 1) % psi;
            for a in 0..b {
                let s2 = (s + a % p * pow[t as usize]) % p;
                delta.push(pascal_state(s2, t2, psi));
            }
        }
    }
    Ok(Dfa::new(base, 0, finals, delta)?)
}

/// Pascal construction for arbitrary, possibly non-canonical `(R, p)`.
pub fn build_generalized_pascal(residues: &[u64], period: u64, base: u32) -> Result<Dfa, BuildError> {
    build_pascal(&PascalParams::new(period, residues, base)?, base)
}

/// Actions of `0` and of the derived letter `g = 1·0⁻¹` on a group automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModifiedTransitions {
    pub zero: StatePermutation,
    pub g: StatePermutation,
}

pub fn to_modified(perms: &[StatePermutation]) -> ModifiedTransitions {
    let zero = perms[0].clone();
    let g = perms[1].then(&zero.invert());
    ModifiedTransitions { zero, g }
}

fn digit_law_violation(dfa: &Dfa, m: &ModifiedTransitions) -> Option<(StateId, Digit)> {
    for q in 0..dfa.state_count() {
        let mut x = q;
        for a in 0..dfa.base() {
            if dfa.next(q, a) != m.zero.apply(x) {
                return Some((q, a));
            }
            x = m.g.apply(x);
        }
    }
    None
}

/// Whether every digit `a` acts as `g^a` followed by `0`.
pub fn check_digit_law(dfa: &Dfa, m: &ModifiedTransitions) -> bool {
    digit_law_violation(dfa, m).is_none()
}

/// Why an automaton is not recognized as a quotient of a Pascal automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RejectReason {
    NotGroup,
    DigitLaw,
    NonCoprimePeriod,
    SizeMismatch,
    ResidueOrbits,
    MarkingConflict,
}

impl RejectReason {
    pub fn code(self) -> &'static str {
        match self {
            RejectReason::NotGroup => "NotGroup",
            RejectReason::DigitLaw => "DigitLaw",
            RejectReason::NonCoprimePeriod => "NonCoprimePeriod",
            RejectReason::SizeMismatch => "SizeMismatch",
            RejectReason::ResidueOrbits => "ResidueOrbits",
            RejectReason::MarkingConflict => "MarkingConflict",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A rejection with the state (and digit) where the failing check tripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub reason: RejectReason,
    pub state: Option<StateId>,
    pub digit: Option<Digit>,
}

impl Rejection {
    fn at(reason: RejectReason, state: Option<StateId>, digit: Option<Digit>) -> Self {
        Rejection {
            reason,
            state,
            digit,
        }
    }
}

/// Evidence that an automaton is the quotient of `P_{R,p}`.
///
/// Each state carries a mark `(x, z)` with `x < p` and `z < t`; the marks
/// enumerate the representatives of the quotient classes. The class of
/// `(0,0)` is the orbit of `(s, t)` under left multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientWitness {
    pub period: u64,
    pub residues: Vec<u64>,
    /// `s`: g-distance from the initial state to the first return point.
    pub offset: u64,
    /// `t`: number of inverse-zero steps to the first return point.
    pub stride: u64,
    pub marks: Vec<(u64, u64)>,
}

impl QuotientWitness {
    pub fn mark(&self, q: StateId) -> (u64, u64) {
        self.marks[q]
    }

    /// Rebuilds the quotient from the marks alone: state `q` keeps its id, its
    /// digit transitions follow the representative formulas and it is final
    /// iff its first mark component lies in `R`.
    pub fn reconstruct(&self, base: u32, initial: StateId) -> Result<Dfa, BuildError> {
        let (p, t) = (self.period, self.stride);
        let b = base as u64;
        let mut owner = vec![usize::MAX; (p * t) as usize];
        for (q, &(x, z)) in self.marks.iter().enumerate() {
            owner[(x * t + z) as usize] = q;
        }
        let pow = powers(b, t, p);
        let inv_bt = mod_inverse(pow_mod_len(b, t, p), p).ok_or(BuildError::NotCoprime {
            period: p,
            base,
        })?;
        let mut in_r = vec![false; p as usize];
        for &r in &self.residues {
            in_r[r as usize] = true;
        }
        let mut delta = Vec::with_capacity(self.marks.len() * base as usize);
        let mut finals = Vec::with_capacity(self.marks.len());
        for &(x, z) in &self.marks {
            finals.push(in_r[x as usize]);
            for a in 0..b {
                let gx = (x + a % p * pow[z as usize]) % p;
                let (nx, nz) = zero_step(gx, z, self.offset, t, p, inv_bt);
                delta.push(owner[(nx * t + nz) as usize]);
            }
        }
        Ok(Dfa::new(base, initial, finals, delta)?)
    }

    /// Machine-readable one-line form used in reports.
    pub fn summary(&self) -> String {
        let r = self
            .residues
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "pascal-quotient p={} R={} s={} t={}",
            self.period, r, self.offset, self.stride
        )
    }
}

fn powers(b: u64, count: u64, p: u64) -> Vec<u64> {
    let mut pow = Vec::with_capacity(count as usize);
    let mut x = 1 % p;
    for _ in 0..count {
        pow.push(x);
        x = (x as u128 * b as u128 % p as u128) as u64;
    }
    pow
}

fn pow_mod_len(b: u64, e: u64, p: u64) -> u64 {
    crate::arith::mod_pow(b, e, p)
}

#[inline]
fn zero_step(x: u64, z: u64, s: u64, t: u64, p: u64, inv_bt: u64) -> (u64, u64) {
    if z + 1 < t {
        (x, z + 1)
    } else {
        let y = (x + p - s) % p;
        ((y as u128 * inv_bt as u128 % p as u128) as u64, 0)
    }
}

/// Decides whether `dfa` (assumed minimal) is a quotient of a Pascal
/// automaton, in time linear in its size.
///
/// Works on compact 32-bit copies of the permutations it needs (the inverse
/// of `0` and the letter `g`) rather than on full [`StatePermutation`]s.
pub fn recognize_pascal_quotient(dfa: &Dfa) -> Result<QuotientWitness, Rejection> {
    use RejectReason::*;
    const NONE: u32 = u32::MAX;
    let n = dfa.state_count();
    assert!(n < NONE as usize, "state ids must fit in 32 bits");
    let base = dfa.base();
    let bu = base as usize;
    let b = base as u64;
    let init = dfa.initial();
    let table = dfa.table();

    let mut zero_inv = vec![NONE; n];
    for q in 0..n {
        let r = table[q * bu];
        if zero_inv[r] != NONE {
            return Err(Rejection::at(NotGroup, None, Some(0)));
        }
        zero_inv[r] = q as u32;
    }
    let mut seen = vec![false; n];
    for a in 1..bu {
        seen.iter_mut().for_each(|x| *x = false);
        for q in 0..n {
            let r = table[q * bu + a];
            if std::mem::replace(&mut seen[r], true) {
                return Err(Rejection::at(NotGroup, None, Some(a as Digit)));
            }
        }
    }
    drop(seen);
    let g: Vec<u32> = (0..n).map(|q| zero_inv[table[q * bu + 1]]).collect();
    // Digits 0 and 1 satisfy the law by definition of g.
    if bu > 2 {
        for q in 0..n {
            let mut x = g[q] as usize;
            for a in 2..bu {
                x = g[x] as usize;
                if table[q * bu + a] != table[x * bu] {
                    return Err(Rejection::at(DigitLaw, Some(q), Some(a as Digit)));
                }
            }
        }
    }

    // The g-circuit through the initial state gives p and R.
    let mut on_circuit = vec![NONE; n];
    let mut residues = Vec::new();
    let mut q = init;
    let mut p = 0u64;
    loop {
        on_circuit[q] = p as u32;
        if dfa.is_final(q) {
            residues.push(p);
        }
        p += 1;
        q = g[q] as usize;
        if q == init {
            break;
        }
    }
    if gcd(p, b) != 1 {
        return Err(Rejection::at(NonCoprimePeriod, Some(init), None));
    }

    // First positive number of inverse-zero steps that lands on the circuit.
    let mut q = zero_inv[init] as usize;
    let mut t = 1u64;
    while on_circuit[q] == NONE {
        q = zero_inv[q] as usize;
        t += 1;
    }
    let s = on_circuit[q] as u64;
    drop(on_circuit);

    if p.checked_mul(t) != Some(n as u64) {
        return Err(Rejection::at(SizeMismatch, Some(q), None));
    }

    let pow = powers(b, t, p);
    let bt = pow_mod_len(b, t, p);
    let mut in_r = vec![false; p as usize];
    for &r in &residues {
        in_r[r as usize] = true;
    }
    for &r in &residues {
        let image = ((r as u128 * bt as u128 + s as u128) % p as u128) as u64;
        if !in_r[image as usize] {
            return Err(Rejection::at(ResidueOrbits, None, None));
        }
    }
    let inv_bt = mod_inverse(bt, p).expect("b^t is a unit modulo p");

    // Mark every state with its representative, checking consistency.
    let mut marks = vec![(NONE, NONE); n];
    let mut owner = vec![false; n];
    marks[init] = (0, 0);
    owner[0] = true;
    let mut queue = VecDeque::from([init]);
    while let Some(q) = queue.pop_front() {
        let (x, z) = (marks[q].0 as u64, marks[q].1 as u64);
        let by_g = ((x + pow[z as usize]) % p, z);
        let by_zero = zero_step(x, z, s, t, p, inv_bt);
        for (next, mark, digit) in [(g[q] as usize, by_g, None), (table[q * bu], by_zero, Some(0))] {
            let mark = (mark.0 as u32, mark.1 as u32);
            if marks[next].0 == NONE {
                let slot = (mark.0 as u64 * t + mark.1 as u64) as usize;
                if std::mem::replace(&mut owner[slot], true) {
                    return Err(Rejection::at(MarkingConflict, Some(next), digit));
                }
                marks[next] = mark;
                queue.push_back(next);
            } else if marks[next] != mark {
                return Err(Rejection::at(MarkingConflict, Some(next), digit));
            }
        }
    }
    for (q, &(x, _)) in marks.iter().enumerate() {
        if x == NONE || dfa.is_final(q) != in_r[x as usize] {
            return Err(Rejection::at(MarkingConflict, Some(q), None));
        }
    }

    Ok(QuotientWitness {
        period: p,
        residues,
        offset: s,
        stride: t,
        marks: marks.into_iter().map(|(x, z)| (x as u64, z as u64)).collect(),
    })
}

/// Residues accepted when the state marked `new_initial = (s', t')` becomes
/// initial: `{(r − s')·b^{−t'} mod p : r ∈ R}`.
pub fn shift_initial_residues(witness: &QuotientWitness, new_initial: (u64, u64), base: u32) -> Vec<u64> {
    let p = witness.period;
    let (s, t) = new_initial;
    let inv = mod_inverse(pow_mod_len(base as u64, t, p), p).expect("base is a unit modulo p");
    let mut out: Vec<u64> = witness
        .residues
        .iter()
        .map(|&r| (((r + p - s % p) % p) as u128 * inv as u128 % p as u128) as u64)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Least period `q | p` such that `R` is invariant under translation by `q`.
pub fn minimal_residue_period(period: u64, residues: &[u64]) -> u64 {
    let mut in_r = vec![false; period as usize];
    for &r in residues {
        in_r[r as usize] = true;
    }
    divisors(period)
        .into_iter()
        .find(|&q| (0..period as usize).all(|x| in_r[x] == in_r[(x + q as usize) % period as usize]))
        .unwrap_or(period)
}
