//! Certifying solver for partial representation extension of interval
//! graphs.

#![forbid(unsafe_code)]

pub mod catalog;
pub mod error;
pub mod extender;
pub mod finder;
pub mod graph;
pub mod oracle;
pub mod order;
pub mod partrep;
pub mod random;
pub mod rational;
pub mod recognition;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use partrep::{Interval, PartialRepresentation};
pub use rational::{ExtRational, Rational};

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../book/src/library.md")]
    mod library {}
    #[doc = include_str!("../../../book/src/obstructions.md")]
    mod obstructions {}
    #[doc = include_str!("../../../book/src/internals.md")]
    mod internals {}
    #[doc = include_str!("../../../book/src/testing.md")]
    mod testing {}
}
