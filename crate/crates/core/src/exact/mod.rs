//! Exact arithmetic: rational scalars, sparse multivariate polynomials,
//! rational functions, and linear algebra over Q and over the rational
//! function field. Everything here is immutable after construction and
//! all operations are pure.

pub mod funcfield;
pub mod matrix;
pub mod mono;
pub mod poly;
pub mod rat;
pub mod ratfunc;

pub use matrix::{QMatrix, Rref};
pub use mono::{binomial, multinomial, Mono};
pub use poly::Poly;
pub use rat::Rat;
pub use ratfunc::RatFunc;
