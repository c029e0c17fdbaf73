//! Conversion between Fibonacci and Galois feedback shift registers.

pub mod cli;
pub mod error;
pub mod expr;
pub mod fib;
pub mod fib2gal;
pub mod gal2fib;
pub mod stp;

pub use error::{Error, Result};
