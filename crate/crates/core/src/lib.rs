//! Exact computations with untwisted simply-laced affine Lie algebras and
//! their imaginary Verma, Wakimoto and twisted modules.

pub mod algebra;
pub mod error;
pub mod heisenberg;
pub mod induced;
pub mod instances;
pub mod linalg;
pub mod module;
pub mod partitions;
pub mod rational;
pub mod sparse;
pub mod twisting;
pub mod wakimoto;

pub use algebra::{AffineAlgebra, AlgElement, CartanType, Frame, Generator, Mode, Root, RootClass};
pub use error::{Error, Result};
pub use rational::{Rational, Q};
pub use sparse::SparseVec;
