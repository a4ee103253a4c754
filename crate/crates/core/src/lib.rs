//! Controllability analysis for N-level quantum bilinear control systems
//! evolving on SU(N).
//!
//! A system is the pair of skew-Hermitian generators built from an energy
//! spectrum (the diagonal drift) and a Hermitian coupling matrix (the
//! control). The crate decides controllability two ways:
//!
//! - structural criteria on the transition values and the coupling graph
//!   (regularity of the drift, regularity along the touched transitions,
//!   connectivity of regular parts, and singular-case variants using the
//!   diagonal of the control matrix and of the level-two bracket), which
//!   certify controllability without computing any Lie bracket chain;
//! - a brute-force closure oracle that spans the generated Lie algebra
//!   numerically and reports its dimension — the rank condition that is
//!   both necessary and sufficient on the compact group SU(N).
//!
//! The criteria are sound but not complete, so the orchestrator reports an
//! honest `INCONCLUSIVE` when nothing fires, and every batch run
//! cross-checks criteria against the oracle.

pub mod brackets;
pub mod criteria;
pub mod error;
pub mod graph;
mod linalg;
pub mod oracle;
pub mod roots;
pub mod su;
pub mod system;

pub use brackets::{
    build_m, build_m_for_roots, derive_brackets, det_m_nonzero, dk_from_energies,
    effective_diagonal_roots, AMatrix, DerivedBrackets, DiagonalSource, DIAGONAL_PHASE,
};
pub use criteria::{
    check_necessary, cor2_fundamental, evaluate, thm_b_regular, thm_br_connected, thm_regular,
    thm_singular_b0, thm_singular_d0, thm_singular_union, CriterionId, CriterionResult, Decision,
    Outcome, OracleSummary, Verdict,
};
pub use error::CoreError;
pub use graph::{
    build_graph, default_edge_threshold, fundamental_coverage, is_p_irreducible, TransitionGraph,
};
pub use oracle::{
    closure_of_subspaces, default_max_generations, lie_closure, BracketClosure, Origin,
};
pub use roots::{
    compute_roots, is_regular, split_regular, EnergySpectrum, Root, RootTable, ROOT_EQ_TOL,
};
pub use su::{commutator, weyl_basis, BasisElement, BasisKind, Coordinates, SuElement, WeylBasis};
pub use system::{ControlSystem, Tolerances};
