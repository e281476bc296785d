pub mod algebra;
pub mod bimodule;
pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod ffmat;
pub mod hopf;
pub mod module;
pub mod par;
pub mod verify;
pub mod varieties;

pub use error::{Error, Result};
pub use ffmat::{Field, FpMatrix, Rref, Subspace};
pub use par::Exec;
