//! Computer algebra for the mod 2 Steenrod algebra, its twisted analogue
//! over `H*(K(Z/2,1) × K(Z/2,2))`, and finitely presented graded modules
//! over them.

pub mod algebra;
pub mod error;
pub mod expr;
pub mod fpmod;
pub mod lincomb;
pub mod series;
pub mod steenrod;
pub mod theorems;
pub mod twisted;
pub mod unstable;

pub use error::{Error, Result};
