//! Virasoro Whittaker vectors in the Jack-polynomial basis, over exact
//! arithmetic.
//!
//! The crate builds the degenerate (Gaiotto) and non-degenerate Whittaker
//! states degree by degree, both from their factored closed form and from the
//! split-operator recursion, verifies the Whittaker property directly through
//! the bosonized Virasoro modes, checks the combinatorial corner-sum
//! identities behind the closed form, and compares the state's norm expansion
//! against the combinatorial instanton partition function under the standard
//! parameter dictionary.
//!
//! All core math is generic over the [`scalar::Scalar`] field: computations
//! run either over exact rationals ([`Rational`]) or symbolically in one
//! formal parameter ([`RatFunc`]).

pub mod agt;
pub mod cache;
pub mod error;
pub mod identities;
pub mod jack;
pub mod matrix;
pub mod nekrasov;
pub mod partition;
pub mod scalar;
pub mod symfunc;
pub mod virops;
pub mod whittaker;

pub use error::{Error, Result};
pub use partition::{partitions_of, Partition};
pub use scalar::{RatFunc, Rational, Scalar};


