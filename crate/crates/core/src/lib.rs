//! Group equivariant non-expansive operators (GENEOs) on vertex- and
//! edge-weighted graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: permutations, cycle notation, finite groups and homomorphisms.
//! * [`graph`]: simple graphs, automorphism groups, induced edge permutations
//!   and subgraph isomorphism classes of complete graphs.
//! * [`perception`]: measurements, function spaces and perception pairs,
//!   together with the sup-norm metric and the sample-based pseudometrics.
//! * [`permutant`]: the action `(g, f) ↦ g∘f∘T(g⁻¹)` on maps `Y → X`, its
//!   orbits, generalized permutants and permutant measures.
//! * [`geneo`]: linear operators built from permutants and measures, their
//!   verification, combinators and the decomposition back into a measure.
//! * [`experiments`]: F-code tables of complete graphs and the `C₆ → C₃`
//!   orbit census.
//!
//! All arithmetic on the core path is exact ([`Rational`]).

pub mod error;
pub mod experiments;
pub mod geneo;
pub mod graph;
mod linalg;
pub mod perception;
pub mod perm;
pub mod permutant;
pub mod rational;
mod verdict;

pub use error::{Error, Result};
pub use rational::Rational;
pub use verdict::Verdict;
