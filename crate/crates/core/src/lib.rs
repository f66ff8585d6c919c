pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod forms;
pub mod hermitian;
pub mod linalg;
pub mod scalar;
pub mod search;
pub mod shear;
pub mod verify;

pub use error::{Error, Result};
