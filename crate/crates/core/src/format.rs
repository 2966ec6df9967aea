//! The line-oriented `dfa v1` text format and Graphviz DOT export.
//!
//! ```text
//! dfa v1
//! base 2
//! states 2
//! initial 0
//! finals 0
//! trans 0 0 0
//! trans 0 1 1
//! trans 1 0 1
//! trans 1 1 0
//! ```
//!
//! Everything after `#` on a line is ignored. `finals` may list no state.
//! Exactly `states · base` transition lines are required.

use std::fmt::Write as _;

use thiserror::Error;

use crate::dfa::{Dfa, StateId};
use crate::error::DfaError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected header `dfa v1`")]
    MissingHeader { line: usize },
    #[error("line {line}: unknown directive `{word}`")]
    UnknownDirective { line: usize, word: String },
    #[error("line {line}: malformed `{directive}` line")]
    Malformed { line: usize, directive: &'static str },
    #[error("line {line}: `{directive}` given twice")]
    DuplicateDirective { line: usize, directive: &'static str },
    #[error("missing `{0}` line")]
    MissingDirective(&'static str),
    #[error("line {line}: `{directive}` must precede transitions")]
    OutOfOrder { line: usize, directive: &'static str },
    #[error("line {line}: {what} {value} out of range")]
    OutOfRange {
        line: usize,
        what: &'static str,
        value: u64,
    },
    #[error("line {line}: duplicate transition from state {state} on digit {digit}")]
    DuplicateTransition { line: usize, state: StateId, digit: u32 },
    #[error("missing transition from state {state} on digit {digit}")]
    MissingTransition { state: StateId, digit: u32 },
    #[error(transparent)]
    Invalid(#[from] DfaError),
}

fn numbers(line: usize, directive: &'static str, rest: &[&str]) -> Result<Vec<u64>, ParseError> {
    rest.iter()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| ParseError::Malformed { line, directive })
        })
        .collect()
}

fn single(line: usize, directive: &'static str, rest: &[&str]) -> Result<u64, ParseError> {
    match numbers(line, directive, rest)?.as_slice() {
        [v] => Ok(*v),
        _ => Err(ParseError::Malformed { line, directive }),
    }
}

fn set_once(
    slot: &mut Option<u64>,
    value: u64,
    line: usize,
    directive: &'static str,
) -> Result<(), ParseError> {
    if slot.replace(value).is_some() {
        return Err(ParseError::DuplicateDirective { line, directive });
    }
    Ok(())
}

/// Parses a `dfa v1` document. The automaton must be complete and accessible.
pub fn parse_dfa(text: &str) -> Result<Dfa, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l.split_whitespace().collect::<Vec<_>>() == ["dfa", "v1"] => {}
        Some((line, _)) => return Err(ParseError::MissingHeader { line }),
        None => return Err(ParseError::MissingHeader { line: 1 }),
    }

    let mut base = None;
    let mut states = None;
    let mut initial = None;
    let mut finals: Option<Vec<u64>> = None;
    let mut table: Option<Vec<Option<StateId>>> = None;

    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let (head, rest) = (tokens[0], &tokens[1..]);
        match head {
            "base" | "states" | "initial" | "finals" if table.is_some() => {
                let directive = match head {
                    "base" => "base",
                    "states" => "states",
                    "initial" => "initial",
                    _ => "finals",
                };
                return Err(ParseError::OutOfOrder { line, directive });
            }
            "base" => set_once(&mut base, single(line, "base", rest)?, line, "base")?,
            "states" => set_once(&mut states, single(line, "states", rest)?, line, "states")?,
            "initial" => set_once(&mut initial, single(line, "initial", rest)?, line, "initial")?,
            "finals" => {
                let list = numbers(line, "finals", rest)?;
                if finals.replace(list).is_some() {
                    return Err(ParseError::DuplicateDirective {
                        line,
                        directive: "finals",
                    });
                }
            }
            "trans" => {
                let b = base.ok_or(ParseError::MissingDirective("base"))?;
                let n = states.ok_or(ParseError::MissingDirective("states"))?;
                if b < 2 || b > u32::MAX as u64 {
                    return Err(ParseError::OutOfRange {
                        line,
                        what: "base",
                        value: b,
                    });
                }
                let table = table.get_or_insert_with(|| vec![None; (n * b) as usize]);
                let v = numbers(line, "trans", rest)?;
                let [q, a, r] = v[..] else {
                    return Err(ParseError::Malformed {
                        line,
                        directive: "trans",
                    });
                };
                for (what, value, bound) in [("state", q, n), ("digit", a, b), ("state", r, n)] {
                    if value >= bound {
                        return Err(ParseError::OutOfRange { line, what, value });
                    }
                }
                let slot = &mut table[(q * b + a) as usize];
                if slot.is_some() {
                    return Err(ParseError::DuplicateTransition {
                        line,
                        state: q as StateId,
                        digit: a as u32,
                    });
                }
                *slot = Some(r as StateId);
            }
            other => {
                return Err(ParseError::UnknownDirective {
                    line,
                    word: other.to_string(),
                })
            }
        }
    }

    let base = base.ok_or(ParseError::MissingDirective("base"))?;
    let n = states.ok_or(ParseError::MissingDirective("states"))?;
    let initial = initial.ok_or(ParseError::MissingDirective("initial"))?;
    let finals = finals.ok_or(ParseError::MissingDirective("finals"))?;
    if base < 2 || base > u32::MAX as u64 {
        return Err(DfaError::InvalidBase(base.min(u32::MAX as u64) as u32).into());
    }
    if n == 0 {
        return Err(DfaError::NoStates.into());
    }
    let table = table.unwrap_or_else(|| vec![None; (n * base) as usize]);
    let mut delta = Vec::with_capacity(table.len());
    for (i, slot) in table.iter().enumerate() {
        match slot {
            Some(r) => delta.push(*r),
            None => {
                return Err(ParseError::MissingTransition {
                    state: i / base as usize,
                    digit: (i % base as usize) as u32,
                })
            }
        }
    }
    let mut final_flags = vec![false; n as usize];
    for &f in &finals {
        if f >= n {
            return Err(DfaError::StateOutOfRange {
                state: f as StateId,
                count: n as usize,
            }
            .into());
        }
        final_flags[f as usize] = true;
    }
    Ok(Dfa::new(base as u32, initial as StateId, final_flags, delta)?)
}

/// Serializes in the `dfa v1` format, transitions ordered by state then digit.
pub fn write_dfa(dfa: &Dfa) -> String {
    let mut out = String::new();
    out.push_str("dfa v1\n");
    let _ = writeln!(out, "base {}", dfa.base());
    let _ = writeln!(out, "states {}", dfa.state_count());
    let _ = writeln!(out, "initial {}", dfa.initial());
    out.push_str("finals");
    for q in dfa.final_states() {
        let _ = write!(out, " {q}");
    }
    out.push('\n');
    for q in 0..dfa.state_count() {
        for (a, r) in dfa.row(q).iter().enumerate() {
            let _ = writeln!(out, "trans {q} {a} {r}");
        }
    }
    out
}

/// Graphviz rendering: the initial state gets an arrow from a point node,
/// finals are double circles, parallel edges share one comma-separated label.
pub fn to_dot(dfa: &Dfa) -> String {
    let mut out = String::new();
    out.push_str("digraph dfa {\n  rankdir=LR;\n");
    out.push_str("  __start [shape=point];\n");
    for q in 0..dfa.state_count() {
        let shape = if dfa.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  {q} [shape={shape}];");
    }
    let _ = writeln!(out, "  __start -> {};", dfa.initial());
    for q in 0..dfa.state_count() {
        let mut targets: Vec<(StateId, Vec<usize>)> = Vec::new();
        for (a, &r) in dfa.row(q).iter().enumerate() {
            match targets.iter_mut().find(|(t, _)| *t == r) {
                Some((_, digits)) => digits.push(a),
                None => targets.push((r, vec![a])),
            }
        }
        for (r, digits) in targets {
            let label = digits
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(out, "  {q} -> {r} [label=\"{label}\"];");
        }
    }
    out.push_str("}\n");
    out
}
