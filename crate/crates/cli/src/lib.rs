//! Command-line front end: an expression language for diagrams and the
//! commands built on it.

pub mod app;
pub mod expr;

pub use app::{run, Outcome};
