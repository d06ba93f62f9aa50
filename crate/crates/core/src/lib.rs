//! Greedy approximation of minimum dominating sets on graphs that exclude a
//! complete bipartite subgraph `K_{i,j}`.
//!
//! The crate contains the classical greedy rule, the modified round-based
//! greedy (with a fixed biclique parameter, in parameterless mode, and the
//! hybrid that extends every intermediate partial solution classically),
//! exact oracles for small graphs, the set-cover reduction onto
//! `K_{3,3}`-free graphs, seeded generators and a CSV benchmark harness.
//!
//! ```
//! use domgreedy::{solve_auto, Graph, VertexSet};
//!
//! let c4 = Graph::parse("p ds 4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0").unwrap();
//! let result = solve_auto(&c4, &VertexSet::full(4)).unwrap();
//! assert_eq!(result.dominating_set.as_slice(), &[0, 2]);
//! assert_eq!(result.t_detected, Some(3));
//! ```

pub mod generators;
pub mod graph;
pub mod harness;
pub mod oracles;
pub mod reduction;
pub mod solvers;

pub use generators::{
    gen_d_degenerate, gen_gnp, gen_grid, gen_intersection_one, gen_random_tree, GenError, GenSpec, Generated,
    SplitMix64,
};
pub use graph::{Graph, GraphError, Vertex, VertexSet};
pub use oracles::{
    enumerate_min_dominating_sets, exact_min_dominating_set, harmonic, has_biclique, OracleError, OracleOutcome,
    OracleResult,
};
pub use reduction::{
    forward_solution, map_solution_back, reduce_set_cover, validate_intersection_one, ReducedInstance, ReductionError,
    SetCoverInstance,
};
pub use solvers::{
    solve_auto, solve_classical, solve_fixed_i, solve_hybrid, verify_witness, AlgoSpec, Algorithm, BicliqueWitness,
    GreedyTrace, Round, SolveResult, SolverError, SolverParams,
};
