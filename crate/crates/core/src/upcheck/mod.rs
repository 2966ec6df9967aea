//! The UP-criterion: decides whether a minimal automaton accepts an
//! ultimately periodic set of numbers, in time linear in its size.
//!
//! Conditions, checked in order:
//!
//! * UP-0: a state and its 0-successor agree on finality;
//! * UP-1: SCCs with an internal non-zero transition (Type 1) are leaves of
//!   the condensation;
//! * UP-2: every other non-trivial SCC (Type 2) is a simple 0-circuit whose
//!   unique successor is a Type 1 leaf;
//! * UP-3: every Type 1 SCC is a quotient of a Pascal automaton;
//! * UP-4: every Type 2 circuit embeds into its Type 1 successor.

mod condense;
mod conditions;
mod extract;

use std::fmt;
use std::time::{Duration, Instant};

use crate::builders::UpSet;
use crate::dfa::{Dfa, StateId};
use crate::minimize::minimize;
use crate::pascal::QuotientWitness;
use crate::word::Digit;

pub use condense::{condense, Condensation};
pub use conditions::{
    check_up0, check_up1_up2, check_up3, check_up4, classify, minimality_witnesses, Embedding,
    SccClass, Type1Analysis, Type1Component,
};
pub use extract::{extract_parameters, EXTRACTION_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    Up0,
    Up1,
    Up2,
    Up3,
    Up4,
    NotMinimalInput,
}

impl Condition {
    pub fn tag(self) -> &'static str {
        match self {
            Condition::Up0 => "UP0",
            Condition::Up1 => "UP1",
            Condition::Up2 => "UP2",
            Condition::Up3 => "UP3",
            Condition::Up4 => "UP4",
            Condition::NotMinimalInput => "NotMinimalInput",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A violated condition with the SCC, state and digit where it shows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub condition: Condition,
    pub scc: Option<usize>,
    pub state: Option<StateId>,
    pub digit: Option<Digit>,
    /// Rejection code from Pascal-quotient recognition (UP-3 only).
    pub reason: Option<&'static str>,
}

impl Failure {
    pub fn new(
        condition: Condition,
        scc: Option<usize>,
        state: Option<StateId>,
        digit: Option<Digit>,
    ) -> Self {
        Failure {
            condition,
            scc,
            state,
            digit,
            reason: None,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn opt<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "-".to_string(), |v| v.to_string())
        }
        write!(
            f,
            "fail={} scc={} state={} digit={}",
            self.condition,
            opt(&self.scc),
            opt(&self.state),
            opt(&self.digit)
        )?;
        if let Some(r) = self.reason {
            write!(f, " reason={r}")?;
        }
        Ok(())
    }
}

/// Outcome of the criterion.
#[derive(Debug, Clone)]
pub struct UpReport {
    pub verdict: bool,
    pub failures: Vec<Failure>,
    /// Canonical parameters; `None` when the verdict is negative or when
    /// reading them back would exceed [`EXTRACTION_BUDGET`].
    pub parameters: Option<UpSet>,
    /// Pascal-quotient witnesses of the Type 1 SCCs, by SCC id.
    pub quotients: Vec<(usize, QuotientWitness)>,
    pub embeddings: Vec<Embedding>,
    pub timings: Vec<(&'static str, Duration)>,
}

impl UpReport {
    fn failed(failures: Vec<Failure>, timings: Vec<(&'static str, Duration)>) -> Self {
        UpReport {
            verdict: false,
            failures,
            parameters: None,
            quotients: Vec::new(),
            embeddings: Vec::new(),
            timings,
        }
    }

    /// Line-oriented machine format.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        if self.verdict {
            match &self.parameters {
                Some(set) => out.push_str(&format!("verdict=UP {set}\n")),
                None => out.push_str("verdict=UP parameters=unavailable\n"),
            }
            for (scc, w) in &self.quotients {
                out.push_str(&format!("{} scc={scc}\n", w.summary()));
            }
        } else {
            out.push_str("verdict=NOT_UP\n");
            for f in &self.failures {
                out.push_str(&format!("{f}\n"));
            }
        }
        out
    }

    /// Human-readable summary including per-phase timings.
    pub fn human(&self) -> String {
        let mut out = String::new();
        if self.verdict {
            out.push_str("The automaton accepts an ultimately periodic set.\n");
            match &self.parameters {
                Some(set) => {
                    out.push_str(&format!("  period:    {}\n", set.period()));
                    out.push_str(&format!("  residues:  {:?}\n", set.residues()));
                    out.push_str(&format!("  threshold: {}\n", set.threshold()));
                    if !set.finite().is_empty() {
                        out.push_str(&format!("  below threshold: {:?}\n", set.finite()));
                    }
                }
                None => out.push_str("  parameters too large to enumerate\n"),
            }
            out.push_str(&format!(
                "  {} Pascal quotient(s), {} embedded 0-circuit(s)\n",
                self.quotients.len(),
                self.embeddings.len()
            ));
        } else {
            out.push_str("The automaton does not accept an ultimately periodic set.\n");
            for f in &self.failures {
                out.push_str(&format!("  {f}\n"));
            }
        }
        out.push_str("timings:\n");
        for (phase, d) in &self.timings {
            out.push_str(&format!("  {phase:<10} {:>10.3} ms\n", d.as_secs_f64() * 1e3));
        }
        out
    }
}

/// Runs UP-0 … UP-4 on an automaton assumed to be minimal. Each phase
/// collects all of its failures; later phases are skipped once one fails.
pub fn is_up_minimal(dfa: &Dfa) -> UpReport {
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, timings: &mut Vec<(&'static str, Duration)>| {
        let now = Instant::now();
        timings.push((name, now - clock));
        clock = now;
    };

    let up0: Vec<Failure> = check_up0(dfa)
        .into_iter()
        .map(|q| Failure::new(Condition::Up0, None, Some(q), Some(0)))
        .collect();
    lap("up0", &mut timings);
    if !up0.is_empty() {
        return UpReport::failed(up0, timings);
    }

    let cond = condense(dfa);
    let classes = classify(dfa, &cond);
    lap("condense", &mut timings);

    let up12 = check_up1_up2(dfa, &cond, &classes);
    lap("up1-up2", &mut timings);
    if !up12.is_empty() {
        return UpReport::failed(up12, timings);
    }
    debug_assert!((0..cond.scc_count())
        .filter(|&c| cond.is_leaf(c))
        .all(|c| classes[c] == SccClass::Type1));

    let type1 = match check_up3(dfa, &cond, &classes) {
        Ok(t) => t,
        Err(f) => {
            lap("up3", &mut timings);
            return UpReport::failed(f, timings);
        }
    };
    lap("up3", &mut timings);

    let embeddings = match check_up4(dfa, &cond, &classes, &type1) {
        Ok(e) => e,
        Err(f) => {
            lap("up4", &mut timings);
            return UpReport::failed(f, timings);
        }
    };
    lap("up4", &mut timings);

    let not_minimal = minimality_witnesses(dfa, &type1, &embeddings);
    if !not_minimal.is_empty() {
        lap("minimality", &mut timings);
        return UpReport::failed(not_minimal, timings);
    }

    let parameters = extract_parameters(dfa, &cond, &classes, &type1, &embeddings);
    lap("extract", &mut timings);

    UpReport {
        verdict: true,
        failures: Vec::new(),
        parameters,
        quotients: type1
            .components
            .into_iter()
            .map(|c| (c.scc, c.witness))
            .collect(),
        embeddings,
        timings,
    }
}

/// Minimizes, then runs [`is_up_minimal`]. `O(n log n)` overall.
pub fn is_up(dfa: &Dfa) -> UpReport {
    let start = Instant::now();
    let min = minimize(dfa);
    let elapsed = start.elapsed();
    let mut report = is_up_minimal(&min);
    report.timings.insert(0, ("minimize", elapsed));
    report
}
