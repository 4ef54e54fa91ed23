pub mod analysis;
pub mod cli;
pub mod error;
pub mod mesh;
pub mod metric;
pub mod operator;
pub mod oracles;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
