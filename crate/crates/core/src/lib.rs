#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bundle;
pub mod classify;
pub mod curves;
pub mod error;
pub mod oracle;
pub mod surface;

pub use error::{Error, Result};
