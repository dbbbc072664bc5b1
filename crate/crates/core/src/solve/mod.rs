//! SAT solving and searches for large visibility sets.

mod dpll;
mod external;
mod search;
mod symmetry;

pub use dpll::{
    dpll_solve, dpll_solve_with, solve_clauses, Branching, SolveOutcome, SolveStats, SolverConfig,
};
pub use external::{external_solve, parse_solver_output, ExternalSolver, SOLVER_ENV};
pub use search::{
    exact_number, exact_number_with, heuristic_search, heuristic_search_with, read_metadata,
    sidecar_path, two_phase_search, two_phase_search_with, Certificate, HeuristicOptions,
    SearchOptions, SearchResult, Seeds, SolverChoice, Status, TwoPhaseResult, MAX_EXACT_DIM,
    MAX_EXHAUSTIVE_DIM, MAX_HEURISTIC_DIM,
};
pub use symmetry::{apply_automorphism, lex_less, Automorphisms, CanonicalCache, MAX_SYMMETRY_DIM};
