//! Exact-arithmetic toolkit for the determinant identities behind
//! moving-plane / moving-quadric surface implicitization.
//!
//! A bidegree-`(m,n)` parametrization with generic coefficients gives rise
//! to two coefficient matrices: the `4mn x 4mn` matrix `F` of the
//! moving-plane map and the `9mn x 9mn` matrix `Q` of the moving-quadric
//! map. Their determinants satisfy
//!
//! ```text
//! det(Q) = ± det(F)^3 * Res(F1, F2, F3)
//! ```
//!
//! with `Res` the tensor sparse resultant, here realized independently by a
//! Dixon construction. This crate builds the matrices (for rectangular and
//! for arbitrary 2D lattice supports with a boundary edge chain removed),
//! and verifies the identity plus its degree, weight, specialization and
//! valuation structure — exactly at tiny scale, and by randomized
//! evaluation over large prime fields everywhere else.
//!
//! * [`exactalg`] — prime fields, `F_p[t]`, integer polynomials, and the
//!   determinant kernels.
//! * [`latticegeom`] — hulls, Ehrhart counts, edge chains, support bases.
//! * [`builders`] — the labeled matrix templates, row deletions, and
//!   coefficient specializations.
//! * [`resultant`] — the Dixon polynomial and matrix for bidegree systems.
//! * [`verify`] — the randomized identity checks, general-support structure
//!   checks, and the deletion-set evidence scanner.
//! * [`cli`] — the `mvsurf` command-line front end (`build`, `verify`).
//!
//! Runnable walkthroughs of each capability live under `examples/`.

pub mod builders;
pub mod cli;
pub mod exactalg;
pub mod latticegeom;
pub mod resultant;
pub mod verify;
