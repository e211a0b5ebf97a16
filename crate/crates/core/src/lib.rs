pub mod error;
pub mod exactpoly;

pub use error::{Error, Result};
pub mod pencil;
pub mod numeric;
pub mod mechanisms;
pub mod hensel;
pub mod monodromy;
pub mod experiments;
pub mod acceptance;
pub mod cli;
