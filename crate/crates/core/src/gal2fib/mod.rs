//! Galois→Fibonacci direction and the sequence-level machinery shared with
//! the rest of the crate: simulation, eventually periodic output sequences,
//! derived window digraphs, minimal-stage reconstruction, realization of
//! sequences by a Galois register, and the output-set equivalence oracle.

mod digraph;
mod equiv;
mod minstage;
mod realize;
mod seq;

pub use digraph::{derived_digraph, realizable, DerivedDigraph};
pub use equiv::{equivalent, Equivalence};
pub use minstage::{
    min_stage_fibonacci, min_stage_fibonacci_with, Completions, MinStageFibonacci,
    PartialTransition, DEFAULT_MAX_FREE,
};
pub use realize::{galois_from_sequences, Realization};
pub use seq::{all_output_sequences, output_sequence, simulate, state_cycle, OutputSeq};
