//! Exact computations in Cayley algebras over finite fields and the rationals:
//! automorphisms, local and 2-local automorphisms, and the characteristic-2
//! stabilizer analysis.

pub mod autgroup;
pub mod cayley;
pub mod char2lab;
pub mod error;
pub mod exactfield;
pub mod harness;
pub mod linalg;
pub mod quadform;
pub mod sample;

pub use error::{Error, Result};
