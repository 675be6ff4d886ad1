//! Finite simplicial sets in Eilenberg-Zilber normal form.
//!
//! A simplicial set is stored by its nondegenerate simplices only; every
//! simplex is a [`SimplexRef`], a nondegenerate base together with a strictly
//! decreasing word of degeneracy indices. Faces of nondegenerate simplices
//! are tabulated, faces of degenerate ones are computed by rewriting words
//! with the simplicial identities.

mod cat;
mod cells;
mod io;
mod map;
mod ops;
mod set;
mod simplex;

pub use cat::{chain_ref, nerve, nerve_map, FinCategory, FinFunctor, MorInfo};
pub use cells::{boundary, horn, standard_simplex, ValidationError};
pub use io::{parse_ref, parse_smap, parse_sset, render_sset, IoError};
pub use map::SimplicialMap;
pub use ops::{
    act, apply_assign, enumerate_maps, exponential, join, join_ref, monotone_maps, multi_limit,
    op_ref, opposite, opposite_map, product, product_map, quotient, simplex_category, slice_over,
    standard_map, vertex_seq, Exponential, Limit, MapConstraint, SimplexCategory, Slice,
};
pub use set::SimplicialSet;
pub use simplex::{face_word, word_insert, SimplexRef};
