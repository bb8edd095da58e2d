//! Exact symbolic computation for the affine geometric crystal of type
//! G2(1) on the 15-dimensional fundamental module, together with its
//! ultra-discretization to a piecewise-linear crystal over Z^6.
//!
//! The library is organized in layers:
//!
//! * [`ratfunc`]: multivariate Laurent polynomials and rational functions
//!   over arbitrary-precision rationals, with canonical forms, exact
//!   equality by cross-multiplication, substitution, evaluation, and a
//!   subtraction-freeness witness.
//! * [`g2module`]: the 15-dimensional module with its Chevalley generator
//!   action, weights, and representation-theoretic consistency checks.
//! * [`geomcrystal`]: the two torus charts, unipotent products, the
//!   birational chart change and its inverse, Schubert-cell crystal
//!   actions, the explicit rational action formulas, and the verification
//!   suites (coefficient identities, crystal axioms, Verma relations).
//! * [`tropical`]: tropicalization of verified subtraction-free maps into
//!   piecewise-linear data, a valuation oracle to certify it, the
//!   ultra-discrete crystal on Z^6, and crystal-graph exploration.
//! * [`report`]: deterministic sampling, budget accounting, and replayable
//!   verification reports shared by all suites.

pub mod error;
pub mod g2module;
pub mod geomcrystal;
pub mod ratfunc;
pub mod report;
pub mod tropical;

pub use error::{Error, Result};
pub use ratfunc::{
    LaurentPolynomial, Monomial, Positivity, RationalFunction, RationalPoint, VarTable,
};
pub use report::{Config, OutputFormat, VerificationReport};
