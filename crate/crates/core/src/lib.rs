pub mod cli;
pub mod error;
pub mod functors;
pub mod groebner;
pub mod homalg;
pub mod matrix;
pub mod mf;
pub mod ring;
pub mod singcat;

pub use error::{Error, Result};
