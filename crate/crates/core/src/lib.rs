//! Semi-proper orientations of graphs: exact solvers, the `{1, 2}` weight
//! normalizer, the tree construction, and the two hardness constructions
//! with their gadget catalog.

pub mod benchmark;
pub mod generate;
pub mod graph;
pub mod normalizer;
pub mod orientation;
pub mod reductions;
pub mod solver;
pub mod tree;

pub use graph::{
    chromatic_number, is_bipartite, is_planar, max_degree, parse_graph, serialize_graph, Graph, GraphBuilder,
    GraphError,
};
pub use normalizer::{
    case1_rebalance, case2_reverse_path, normalize_to_12, normalize_with_trace, reachable_min_vertex, BadEdgeLedger,
    NormalizeError,
};
pub use orientation::{
    first_violation, is_semi_proper, max_s, parse_orientation, s_profile, serialize_orientation, Direction,
    OrientationError, SProfile, WeightedOrientation,
};
pub use solver::{
    decide, enumerate_optimal, oracle_min_max, proper_orientation_number, semi_proper_number, Alphabet, Limits,
    SolveError, Solution,
};
pub use benchmark::{benchmark_gap, BenchmarkConfig, Family, GapRow, GapTable};
pub use reductions::{
    assignment_to_orientation, build_g, build_h, extract_assignment, gadget, parse_dimacs, validate_instance,
    verify_gadget, CnfInstance, Flavor, GadgetName,
};
pub use tree::{dfs_layering, tree_number, tree_semi_proper, TreeError};
