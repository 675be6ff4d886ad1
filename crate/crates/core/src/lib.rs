//! Finite-instance engine for scaled simplicial sets, operator categories,
//! and Segal operad checks.
//!
//! Everything here works with explicitly enumerated finite data: simplicial
//! sets are stored one nondegenerate simplex at a time, categories as finite
//! composition tables, and every fibration or Segal condition is decided by
//! exhaustive search over a bounded range of dimensions.

pub mod lifting;
pub mod opcat;
pub mod report;
pub mod scaled;
pub mod segal;
pub mod seqcat;
pub mod simpset;
