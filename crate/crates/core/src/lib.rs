pub mod arith;
pub mod characters;
pub mod cyclotomic;
pub mod error;
pub mod harness;
pub mod iwasawa;
pub mod padic;
pub mod qexp;
pub mod symsq;

pub use error::{Error, Result};
