pub mod arithmetic;
pub mod audit;
pub mod cli;
pub mod constancy;
mod dec;
pub mod error;
pub mod families;
pub mod global_root;
pub mod local_tables;
pub mod rankjump;
pub mod sign;

pub use error::{Error, Result};
pub use sign::Sign;
