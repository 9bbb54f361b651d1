//! Discrete octonionic analysis on the lattice `hZ^8` in the Weyl-calculus
//! splitting `e_k = e_k^+ + e_k^-`.
//!
//! * [`octonion`]: the octonion algebra, conjugation, norm and associator.
//! * [`weyl`]: split generators, right-nested monomials of degree at most 3
//!   and the free module they span.
//! * [`lattice`]: compactly supported grid functions, shifts, differences
//!   and region sums.
//! * [`operators`]: discrete Cauchy-Riemann operators, the star-Laplacian
//!   and both factorization residuals.
//! * [`stokes`]: whole-lattice and half-lattice Stokes sums, the telescoping
//!   oracle, boundary right-hand sides and the associator probe.
//! * [`suite`]: seeded verification suites and their JSON reports.

pub mod error;
pub mod lattice;
pub mod octonion;
pub mod operators;
pub mod stokes;
pub mod suite;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::{GridFunction, LatticeValue, LatticeWindow, Point, Region};
pub use octonion::{associator, basis_product, BasisIndex, Octonion, SignedBasis};
pub use operators::{Composition, Direction, WeylVariant};
pub use stokes::{BoundaryInterpretation, HalfSpace, StokesReport};
pub use suite::{CheckRecord, SuiteConfig, SuiteReport, Target};
pub use weyl::{ModuleElement, RawMonomial, Sign, SplitGenerator};
