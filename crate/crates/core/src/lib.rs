//! Spectral Galerkin operators for the 2D Helmholtz equation on open arcs.
//!
//! Densities are expanded in Chebyshev polynomials: first kind `T_n` for the
//! single layer `S` and second kind `U_n` for the hypersingular `N`.  The crate
//! assembles both operators, builds the square-root preconditioners, measures
//! orders of operators numerically and solves the screen problems with GMRES.

pub mod assembly;
pub mod cheb;
pub mod curve;
pub mod dct;
pub mod error;
pub mod gmres;
pub mod operator;
pub mod probe;
pub mod special;
pub mod sqrtm;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
