pub mod arith;
pub mod error;
pub mod factor_loop;
pub mod ff;
pub mod invariants;
pub mod io;
pub mod montes;
pub mod oracle;
pub mod polygon;
pub mod types;

pub use error::{Error, Result};
