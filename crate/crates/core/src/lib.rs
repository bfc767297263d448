pub mod cli;
pub mod equiv;
pub mod error;
pub mod eval;
pub mod finset;
pub mod game;
pub mod graph;
pub mod io;
pub mod lens;
pub mod rel;
pub mod signature;
pub mod term;

pub use error::{Error, Result};
