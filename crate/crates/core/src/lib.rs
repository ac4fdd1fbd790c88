//! Exact computations with level-zero loop modules of the natural
//! representation of the quantum affine algebras `U_q(g^(1))`, `g` classical.

pub mod criteria;
pub mod crystal;
pub mod cli;
pub mod error;
pub mod filtration;
pub mod matrix;
pub mod natmod;
pub mod qlaurent;
pub mod rootdata;
pub mod sl2check;

pub use error::{Error, Result};
pub use qlaurent::{LaurentPoly, RatFunc};
pub use rootdata::{make_cartan, AffineWeight, CartanData, Family, FiniteWeight};
