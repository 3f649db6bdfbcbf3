mod cartan;
mod frame;
mod lie;

pub use cartan::{positive_roots, CartanType, Family};
pub use frame::{Frame, GenElement, Generator};
pub use lie::{mode, AffineAlgebra, AlgElement, Mode, Root, RootClass};
