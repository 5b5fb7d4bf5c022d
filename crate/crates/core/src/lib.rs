//! Exact and certified signless Laplacian spectral computations.

pub mod canon;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod hjoin;
pub mod jacobi;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod sums;
pub mod template;

pub use error::{Error, Result};
pub use graph::{Graph, NamedGraph, PatternId};
pub use matrix::RationalMatrix;
pub use poly::IntPolynomial;
pub use roots::{Enclosure, Precision, Spectrum, Verdict};
pub use hjoin::{HJoinSpec, Part, QuotientMatrix};
pub use sums::{Mode, SumResult};
