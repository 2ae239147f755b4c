//! Exact symbolic engine for the Brauer category, the affine Brauer category
//! and its cyclotomic quotients.
//!
//! Morphisms are finite linear combinations of normally ordered dotted
//! diagrams with exact rational coefficients. Every composition and tensor
//! product is rewritten back into that basis. An exact matrix functor into
//! representations of `so_N` and `sp_N` serves as an independent oracle.

pub mod admissible;
pub mod diagram;
pub mod engine;
pub mod lie_oracle;
pub mod nw;
pub mod scalar;

pub use admissible::{OmegaSequence, Provenance};
pub use diagram::{
    enumerate_matchings, enumerate_nd_basis, equivalent, slice_matching, EndpointRole, Gen, GeneratorWord, Matching,
    NormalDiagram, Slice,
};
pub use engine::{BubbleValue, CategoryConfig, Engine, Kind, Morphism};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size bound exceeded: {0}")]
    TooLarge(String),
}
