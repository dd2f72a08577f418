//! Multifold packings of radius-1 balls in Hamming graphs.
//!
//! The crate verifies, constructs, bounds and classifies `lambda`-fold
//! 1-packings of `H(n, q)`, with particular attention to 1-perfect
//! unitrades (sets meeting every radius-1 ball in 0 or 2 words) and the
//! three optimal two-fold packings of size 96 in `H(9, 2)`.
//!
//! Module map:
//!
//! * [`word`], [`code`]: vertices, multisets of vertices, the text format.
//! * [`linalg`]: GF(2) spans and ranks, Z2Z4 modules, the Gray map,
//!   translation-plus-permutation maps.
//! * [`analysis`]: packing and unitrade predicates, distance distributions,
//!   the MacWilliams transform.
//! * [`bounds`]: closed-form upper and lower bounds in exact arithmetic.
//! * [`constructions`]: explicit codes and unitrades, including the
//!   embedded data of the size-96 packings.
//! * [`partitions`]: equitable partitions and completely regular codes.
//! * [`search`]: canonical forms, isomorph-free classification, and exact
//!   extremal searches.
//!
//! The heavy scans run on rayon when the `parallel` feature is enabled
//! (the default); see [`par::Exec`].

pub mod analysis;
pub mod bounds;
pub mod code;
pub mod constructions;
pub mod error;
pub mod linalg;
pub mod par;
pub mod partitions;
pub mod search;
pub mod word;

pub use code::{coverage_multiplicity, Code};
pub use error::{Error, Result};
pub use par::Exec;
pub use word::{antipode, ball, hamming_distance, weight, Space, Word};
