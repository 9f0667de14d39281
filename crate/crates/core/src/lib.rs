//! String-complex calculus for the homotopy category `K(Proj-Λ)` of the
//! derived-discrete algebras `Λ(r, n, m)`.

pub mod error;
pub mod gentle;
pub mod strings;
pub mod complexes;
pub mod linalg;
pub mod homlab;
pub mod arquiver;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
