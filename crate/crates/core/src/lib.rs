//! Exact cohomology over GF(2) of the graded Lie algebras of maximal class
//! `m0`, `m2` and their truncations `m0(n)`, `m2(n)`.
//!
//! The building blocks are dense GF(2) linear algebra ([`gf2`]), the
//! exterior algebra without signs ([`exterior`]), Lie algebras given by
//! structure constants ([`lie`]) and their Chevalley–Eilenberg complexes
//! ([`cohomology`]). [`maxclass`] holds the explicit constructions for the
//! maximal-class families: the operators `D`, `D_1`, the cocycle series `F`,
//! the binomial systems behind `b_3(m0(n))`, closed-form Betti numbers,
//! explicit cohomology bases and the involution exchanging the two
//! differentials. [`verify`] bundles the named verification suites.

pub mod cohomology;
pub mod combinatorics;
pub mod error;
pub mod exterior;
pub mod gf2;
pub mod lie;
pub mod maxclass;
pub mod par;
pub mod verify;

pub use error::{Error, Result};
pub use exterior::{e, Form, Monomial};
pub use lie::{Family, GradedLieAlgebra};
pub use par::Exec;
