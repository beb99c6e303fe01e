pub mod cobordism;
pub mod colored;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod simplify;

pub use error::{Error, Result};
