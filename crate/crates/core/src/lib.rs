//! Base-b digit automata for ultimately periodic sets of natural numbers.
//!
//! Numbers are written least significant digit first. The crate builds
//! automata for periodic and ultimately periodic sets, and decides whether a
//! deterministic automaton accepts an ultimately periodic set: in linear time
//! when the automaton is minimal, `O(n log n)` otherwise.

pub mod arith;
pub mod builders;
pub mod dfa;
pub mod error;
pub mod format;
pub mod fuzz;
pub mod minimize;
pub mod oracle;
pub mod pascal;
pub mod upcheck;
pub mod word;

pub use builders::{build_up_automaton, UpSet};
pub use dfa::{equivalent, product, Dfa, StateId, StatePermutation};
pub use error::{BuildError, DfaError};
pub use format::{parse_dfa, to_dot, write_dfa, ParseError};
pub use minimize::minimize;
pub use oracle::{accepted_bitmap, find_up_params, periodic_bitmap, Bitmap};
pub use pascal::{
    build_generalized_pascal, build_pascal, recognize_pascal_quotient, PascalParams,
    QuotientWitness,
};
pub use upcheck::{is_up, is_up_minimal, UpReport};
pub use word::{lsdf_rep, value, Digit, Word};
