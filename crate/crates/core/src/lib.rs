//! Linear cyclic hybrid cellular automata (LCHCA) over prime fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`ff`] exact arithmetic in `F_p`, `F_p[x]` and `F_{p^n}`, irreducibility and
//!   primitivity tests, and a baby-step/giant-step + Pohlig–Hellman discrete log.
//! * [`matfp`] dense matrices over any [`ff::Field`]: products, powers,
//!   elimination, characteristic polynomials and multiplicative orders.
//! * [`lchca`] the automaton model: rule specifications, stepping, classification,
//!   cycle structure and uniformity statistics.
//! * [`reductions`] discrete-distance instances (DDP, FDP, SDDP) and the two
//!   constructive reductions between DDP and the finite-field discrete log.
//! * [`pow`] a proof-of-work built on the short discrete-distance problem.

pub mod error;
pub mod ff;
pub mod lchca;
pub mod matfp;
pub mod pow;
pub mod reductions;

pub use error::{Error, Result};
