pub mod cli;
pub mod contextuality;
pub mod error;
pub mod generate;
pub mod homotopy;
pub mod io;
pub mod logiccat;
mod lp;
pub mod scenario;
pub mod semiring;
pub mod simpdist;

pub use error::{Error, Result};
