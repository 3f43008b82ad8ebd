//! Exact computation of cohomologically induced `(g, K)`-modules, from two sides.
//!
//! The algebraic side builds the standard resolution of an `(h, L)`-module,
//! induces it to `(g, K)` through the Hecke algebra, and takes homology weight by
//! weight. The geometric side realizes the same modules on the projective line as
//! twisted D-modules: delta-function modules on closed `K`-orbits, Laurent sections
//! on open orbits, and Čech cohomology of line bundles when `K = G`.
//!
//! Everything is computed over the rationals, so both sides can be compared
//! multiplicity by multiplicity with no tolerance.
//!
//! Module map:
//!
//! * [`exactla`]: rational sparse matrices, rank, kernels, homology.
//! * [`liealg`]: Lie algebras by structure constants, pairs and subpair data.
//! * [`pbw`]: the universal enveloping algebra in PBW normal form.
//! * [`gkmod`]: weight-graded modules, characters, one-dimensional twists.
//! * [`hecke`]: the Hecke algebras `R(K)` and `R(g, K)` and a degree-zero oracle.
//! * [`cohind`]: the standard complex and the derived functors `P_j`, `I^j`.
//! * [`locp1`]: twisted differential operators and D-modules on `P^1`.
//! * [`harness`]: verification cases and machine-readable reports.

pub mod cohind;
pub mod error;
pub mod exactla;
pub mod gkmod;
pub mod harness;
pub mod hecke;
pub mod liealg;
pub mod locp1;
pub mod pbw;

pub use error::{Error, Result};
pub use exactla::{Q, SparseMatrix};
pub use gkmod::{Character, CharacterKind, GradedModule, HModule, Weight, Window};
pub use liealg::{Family, FactorKind, LieAlg, PairData};
