//! Finite groups as 0/1 matrices.
//!
//! A finite group `G` of order `n` with identity-first multiplication table is
//! encoded as a 0/1 matrix `B_G` with `(n^2 + n + 4) / 2` rows (one per cube
//! monomial `w_i^3`, unordered pair monomial `w_i w_j x2^4`, a two-odd-term
//! row, and `x1^15`) and `n` columns. The permutation-structured solutions of
//! the matrix equation `X * B_G = B_G * Y` form a group that the solver
//! enumerates and reconstructs, and matrix equality of canonical forms gives a
//! labeling-independent isomorphism test for groups of order up to 8.
//!
//! ```
//! use grpmat::encoder::{build_b, BuildMode};
//! use grpmat::groups::{brute_iso, catalog};
//! use grpmat::solver::solution_group;
//!
//! let g = catalog("Z4").unwrap();
//! let b = build_b(&g, BuildMode::Auto).unwrap();
//! assert_eq!(b.rows(), 12);
//! let s = solution_group(&b).unwrap();
//! assert_eq!(s.order(), 4);
//! assert!(brute_iso(s.as_group(), &g).is_some());
//! ```
//!
//! Modules:
//! - [`groups`]: multiplication tables, validation, a small catalog, Cayley
//!   embeddings, cycle data, brute-force isomorphism, enumeration up to
//!   order 8.
//! - [`linalg`]: exact rational dense matrices, RREF, nullspaces, permutation
//!   and pair-permutation matrices, and the vectorized solution space of
//!   `XB = BY`.
//! - [`encoder`]: the row layout, per-column pair terms, `B_G` itself,
//!   canonical forms, the census, and the matrix file format.
//! - [`solver`]: enumeration of the structured solutions, their group law,
//!   reconstruction of the abstract group, and the linear cross-check.
//! - [`sullivan`]: the free graded-commutative cochain algebra on
//!   `x1, x2, y1, y2, y3, w_1..w_n`, its differential, the degree-120
//!   cohomology slice, and the induced matrices that validate the encoder.

pub mod encoder;
pub mod groups;
pub mod linalg;
pub mod solver;
pub mod sullivan;
