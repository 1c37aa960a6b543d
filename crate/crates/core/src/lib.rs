//! Exact-arithmetic analysis of higher osculating spaces, fundamental
//! forms, and higher Gauss maps for polynomially parametrized projective
//! varieties.
//!
//! A variety enters as N+1 polynomials in k affine parameters
//! ([`variety::ParamVariety`], parsed from a small text grammar). From
//! there, [`jets`] computes jet matrices and the osculating dimensions
//! d_t, [`fundforms`] builds the fundamental forms |I^t| as canonical
//! linear systems, [`conegeom`] finds their cone vertices, and
//! [`gaussmap`] measures the fibers of the Gauss maps through Plücker
//! coordinates. [`harness::run_suite`] ties the pieces together into a
//! verification report with a PASS/FAIL/SKIPPED entry per identity.
//!
//! All arithmetic is exact over Q ([`exact`]); "generic point" quantities
//! are maxima over deterministically seeded random samples, so every
//! result is reproducible from its seed.

pub mod conegeom;
pub mod config;
pub mod error;
pub mod exact;
pub mod fundforms;
pub mod gaussmap;
pub mod harness;
pub mod jets;
pub mod variety;
