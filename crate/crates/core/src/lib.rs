//! Exact computations around generalized Clifford algebras and Ulrich
//! bundles on quartic surfaces.
//!
//! - [`exactalg`]: cyclotomic fields, sparse polynomials, determinants,
//!   Pfaffians and a nondegeneracy test for ternary forms.
//! - [`clifford`]: verification and generation of matrix representations and
//!   the linear determinantal presentation they induce.
//! - [`lattice`]: Picard lattices of the degree-2 del Pezzo surface and of the
//!   Clifford quartic, with certified exhaustive searches.
//! - [`geomcalc`]: closed-form numerics (Riemann-Roch, Brill-Noether, ...)
//!   and the numerology replay ledger.
//! - [`random`]: seeded generators for randomized checks.
//! - [`acceptance`]: the end-to-end acceptance criteria.

pub mod acceptance;
pub mod clifford;
pub mod exactalg;
pub mod geomcalc;
pub mod lattice;
pub mod random;
