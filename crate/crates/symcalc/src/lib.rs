//! Exact symbolic calculus for pseudodifferential symbols on open arcs.
//!
//! Coefficients are polynomials in `sin`, `cos` of the angular variable, the
//! wavenumber, the arc length and curvature derivatives, with exact Gaussian
//! rational coefficients.

pub mod coef;
pub mod kernel;
pub mod ops;
pub mod poly;
pub mod reference;
pub mod symbol;

pub use coef::Coef;
pub use ops::{d_tilde, sym_n, sym_n1, sym_n2, verify_theorems, TheoremCheck, TheoremReport};
pub use poly::{Env, TrigPoly, Var};
pub use symbol::{compose, extract_pair, sym_sqrt, PSymbol, SymbolPair};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("composition needs the operand known to xi^{needed}, it is only known to xi^{have}")]
    InsufficientDepth { needed: i32, have: i32 },
    #[error("square root needs a symbol of order 2, got {0:?}")]
    NotOrderTwo(Option<i32>),
    #[error("leading coefficient {0} is not a rational square")]
    LeadingNotSquare(String),
    #[error("coefficient {0} does not split into a1 + i s a2")]
    NonSplittable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
