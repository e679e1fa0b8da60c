//! Temporal Markov logic networks: weighted temporal facts and rules,
//! grounding, temporal (in)consistency relations and MAP inference under
//! pluggable semantics.

pub mod check;
pub mod error;
pub mod gen;
pub mod inference;
pub mod kbformat;
pub mod kernel;
pub mod network;
pub mod oracle;
pub mod report;
pub mod semantics;
pub mod temporal;
pub mod weight;

pub use error::{Error, Result};
pub use network::{Instantiation, Tmln};
pub use weight::Weight;
