//! Exact computations around symmetric tensor rank: catalecticant border-rank
//! bounds, binary Waring decompositions, uniqueness certificates, Gotzmann
//! numbers, tangent-star counterexamples and border-rank degenerations of
//! matrix-multiplication tensors.

pub mod binary;
pub mod catalecticant;
pub mod counterexamples;
pub mod error;
pub mod exactalg;
pub mod forms;
pub mod hilbert;
pub mod tensor3;
pub mod waring;

pub use error::{Error, Result};
