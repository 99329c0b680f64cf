//! Exact computer algebra for sticky shuffle Hopf algebras over Itô algebras,
//! and the moments of classical and quantum Lévy areas.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalar`]: the coefficient ring, polynomials in `σ₊`, `σ₋` over the
//!   Gaussian rationals.
//! - [`ito_algebra`]: multiplication tables of stochastic differentials.
//! - [`tensor_hopf`]: the tensor algebra with the sticky shuffle product,
//!   coproduct, counit and antipode.
//! - [`combinatorics`]: permutation statistics, Euler zigzag numbers,
//!   Eulerian numbers and Euler polynomials.
//! - [`moments`]: the Lévy-area moments, computed three independent ways.
//! - [`cli`]: the command-line front end used by the `sticky-hopf` binary.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod ito_algebra;
pub mod moments;
mod parse;
pub mod scalar;
pub mod tensor_hopf;

pub use error::{Error, Result};
pub use ito_algebra::{builtin_algebra, Builtin, Differential, ItoAlgebra};
pub use parse::parse_gaussian;
pub use scalar::{GaussianRational, Monomial, Scalar};
