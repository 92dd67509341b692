pub mod error;
pub mod expr;
pub mod catalog;
pub mod finhopf;
pub mod linalg;
pub mod nichols;
pub mod present;
pub mod scalar;
pub mod ydmod;

pub use error::{Error, Result};
pub use scalar::Scalar;
