//! 4-regular multigraphs at dart level: construction, text I/O, generation
//! and isomorphism machinery.

mod canon;
mod dart;
mod generate;
mod io;
pub mod samples;

pub use canon::{
    automorphism_group, canonical_code, canonical_order, is_three_connected, Automorphisms,
    GraphCode,
};
pub use dart::{
    dart_at, dart_relabeling, local_of, local_pair_index, vertex_of, Dart, DartGraph, LocalPairing,
    LOCAL_PAIRS,
};
pub use generate::{generate_graphs, generate_simple_graphs, MAX_GENERATE_N};
pub use io::{parse_graph, parse_graphs, serialize_graph};
