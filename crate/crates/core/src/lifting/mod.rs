//! Lifting problems and the fibration classifiers built on them.
//!
//! Every structural question downstream (inner fibrancy, trivial Kan
//! fibrations, Cartesian edges and 2-simplices, the fibration flags) reduces
//! to solving finitely many lifting problems against explicit generator
//! families, so the solver enumerates diagonals exhaustively and verdicts
//! are always relative to the dimension bound they were computed at.

mod classify;
mod families;
mod solve;

pub use classify::{
    cartesian_lift_exists, check_marked_anodyne_characterization, classify, decorated_opposite,
    has_rlp, is_cartesian_edge, is_p_cartesian_2simplex, is_trivial_kan_fibration, marked_nerve,
    two_simplex_as_arrow_edge, Flags, RlpOutcome, RlpWitness,
};
pub use families::{generator_family, FamilyError, Generator};
pub use solve::{solve_lifting, Decoration, DecoratedMap, LiftError, LiftingProblem};
