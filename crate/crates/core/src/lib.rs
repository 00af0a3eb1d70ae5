//! Exact-arithmetic verification of group-cograded weak Hopf quasigroup
//! structures and of the Yetter-Drinfeld module categories built over them.
//!
//! Everything is computed over the rationals with no rounding: structures are
//! given by structure constants (dense rational matrices), axioms and derived
//! identities are evaluated as exact matrix equalities, and every check
//! produces a [`report::CheckReport`] listing one verdict per identity
//! instantiation.
//!
//! Module map:
//! - [`exactlin`] — rational scalars, dense matrices, Kronecker products and
//!   tensor-leg permutations;
//! - [`group`] — finite grading groups as validated Cayley tables;
//! - [`whq`] — ungraded weak Hopf quasigroups: the axiom checker and the
//!   group/groupoid algebra constructors;
//! - [`graded`] — group-cograded structures: Sweedler expansion, counital
//!   maps and the axiom / derived-identity checkers;
//! - [`crossed`] — crossings, the mirror construction and the three builders
//!   deriving a crossed structure from a group action;
//! - [`yd`] — Yetter-Drinfeld weak quasimodules and modules, their checkers
//!   and the tensor / conjugation constructions;
//! - [`braid`] — the braiding, its inverse, the QYBE map and the braided
//!   crossed category law suite;
//! - [`io`] — JSON (de)serialization of every structure kind plus the
//!   structure diff used by the command line tool.

pub mod braid;
pub mod crossed;
pub mod exactlin;
pub mod graded;
pub mod group;
pub mod io;
pub mod report;
pub mod whq;
pub mod yd;

pub use exactlin::{Mat, Rational};
pub use report::{CheckReport, Verdict};
