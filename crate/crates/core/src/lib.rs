//! Numerical toolkit for the Landau-Streater / Werner-Holevo channel family
//! on qudits and their noisy interpolations.
//!
//! The library constructs the channels from their generator algebras, applies
//! them in closed form and as Kraus sums, and derives everything the closed
//! forms promise: superoperator spectra and divisibility, complementary
//! channels in block form, mixed-unitary decompositions for even dimensions,
//! and one-shot classical / entanglement-assisted / coherent-information
//! capacity figures. Every closed form has an independent matrix-level oracle
//! next to it in the test suite.
//!
//! Conventions used throughout:
//! - vectorization is row-stacking: `vec(m)` lists the entries of `m` row by
//!   row, so basis labels `|m,n>` map to flat index `m*d + n`;
//! - indices are 0-based internally, 1-based in displays;
//! - all entropies and capacities are in bits (base-2 logarithms).

pub mod algebra;
pub mod capacity;
pub mod channel;
pub mod complement;
pub mod error;
pub mod matrix;
pub mod mixed_unitary;
pub mod sampling;
pub mod spectral;

pub use crate::channel::{ChannelSpec, KrausLabel, KrausSet};
pub use crate::error::{Error, Result};
pub use crate::matrix::{ComplexMatrix, Spectrum, C64};
