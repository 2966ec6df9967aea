use crate::dfa::{Dfa, StateId};

/// Strongly connected components and the DAG between them.
///
/// SCC ids follow Tarjan's completion order, so every DAG edge goes from a
/// larger id to a smaller one and id 0 is a leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    pub scc_of: Vec<usize>,
    pub members: Vec<Vec<StateId>>,
    /// Distinct successor SCCs, ascending, self-loops excluded.
    pub successors: Vec<Vec<usize>>,
    pub has_internal_edge: Vec<bool>,
}

impl Condensation {
    pub fn scc_count(&self) -> usize {
        self.members.len()
    }

    pub fn is_leaf(&self, c: usize) -> bool {
        self.successors[c].is_empty()
    }

    pub fn dag_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.successors
            .iter()
            .enumerate()
            .flat_map(|(c, succ)| succ.iter().map(move |&d| (c, d)))
    }
}

/// Tarjan's algorithm in Pearce's single-array formulation, iterative,
/// linear in states plus transitions.
pub fn condense(dfa: &Dfa) -> Condensation {
    let n = dfa.state_count();
    let base = dfa.base() as usize;
    // A 32-bit copy halves the memory touched by the random-access walk.
    let table: Vec<u32> = dfa.table().iter().map(|&r| r as u32).collect();
    // 0 = unvisited; 1..=n = DFS index or inherited low link while open;
    // once a state is closed it holds `component_id + n + 1`.
    let mut rindex = vec![0u32; n];
    let closed = n as u32 + 1;
    let mut next_index = 1u32;
    let mut next_component = 0u32;
    let mut stack: Vec<u32> = Vec::new();
    // (state, next digit to explore, still a root)
    let mut call: Vec<(u32, u32, bool)> = Vec::new();

    for start in 0..n {
        if rindex[start] != 0 {
            continue;
        }
        rindex[start] = next_index;
        next_index += 1;
        call.push((start as u32, 0, true));
        while let Some(frame) = call.last_mut() {
            let v = frame.0 as usize;
            if (frame.1 as usize) < base {
                let w = table[v * base + frame.1 as usize] as usize;
                frame.1 += 1;
                if rindex[w] == 0 {
                    rindex[w] = next_index;
                    next_index += 1;
                    call.push((w as u32, 0, true));
                } else if rindex[w] < rindex[v] {
                    rindex[v] = rindex[w];
                    frame.2 = false;
                }
                continue;
            }
            let (_, _, root) = call.pop().expect("frame present");
            if root {
                next_index -= 1;
                let id = closed + next_component;
                while let Some(&w) = stack.last() {
                    if rindex[v] > rindex[w as usize] {
                        break;
                    }
                    stack.pop();
                    rindex[w as usize] = id;
                    next_index -= 1;
                }
                rindex[v] = id;
                next_component += 1;
            } else {
                stack.push(v as u32);
            }
            if let Some(parent) = call.last_mut() {
                let p = parent.0 as usize;
                if rindex[v] < rindex[p] {
                    rindex[p] = rindex[v];
                    parent.2 = false;
                }
            }
        }
    }

    let scc_of: Vec<usize> = (0..n).map(|q| (rindex[q] - closed) as usize).collect();
    let mut members: Vec<Vec<StateId>> = vec![Vec::new(); next_component as usize];
    for (q, &c) in scc_of.iter().enumerate() {
        members[c].push(q);
    }

    let count = members.len();
    let mut successors = vec![Vec::new(); count];
    let mut has_internal_edge = vec![false; count];
    for q in 0..n {
        let c = scc_of[q];
        for &r in dfa.row(q) {
            let d = scc_of[r];
            if d == c {
                has_internal_edge[c] = true;
            } else {
                successors[c].push(d);
            }
        }
    }
    for succ in &mut successors {
        succ.sort_unstable();
        succ.dedup();
    }
    Condensation {
        scc_of,
        members,
        successors,
        has_internal_edge,
    }
}
