//! Exact computations with highest-weight modules over the quantum group
//! `U_q(g)` at generic `q`: Shapovalov forms, singular vectors of tensor
//! products, the extremal twist operator and complete reducibility.

pub mod algebra;
pub mod cartan;
pub mod coeff;
pub mod error;
pub mod linalg;
pub mod module;
pub mod tensor;
pub mod unitarity;
pub mod words;

pub use cartan::{CartanType, Context, RootDatum, RootSum, Weight};
pub use coeff::{LaurentPoly, RatFunc};
pub use error::{Error, Result};
pub use module::{HWModule, ModuleKind, WeightSpace};
