//! Exact arithmetic on Betti tables.
//!
//! The crate is `no_std` (it needs `alloc` for big integers) and is organised
//! bottom-up:
//!
//! * [`diagram`]: degree sequences, Betti tables and pure diagrams.
//! * [`decomp`]: the greedy Boij-Söderberg decomposition with exact
//!   reconstruction.
//! * [`bounds`]: binomial-coefficient bounds on total Betti numbers and
//!   their specialisations to Veronese embeddings and projective varieties.
//! * [`estimate`]: outward-rounded natural-log brackets and digit-count
//!   brackets for Betti bounds too large to evaluate exactly.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod decomp;
pub mod diagram;
mod error;
pub mod estimate;
mod fixed;
pub mod rational;

pub use bounds::{BoundPair, VeroneseParams};
pub use decomp::{Decomposition, Term};
pub use diagram::{BettiTable, DegreeSequence};
pub use error::Error;
pub use estimate::{Constants, Decimal, DigitBracket, LogBracket};
pub use rational::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;
