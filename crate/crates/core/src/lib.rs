//! A numerical-and-exact toolkit for quaternionic slice analysis.
//!
//! The crate provides:
//!
//! - exact quaternion algebra, slice coordinates and the conjugation
//!   rotations ([`quaternion`]);
//! - polynomials with right quaternionic coefficients and the slice-function
//!   algebra: slice product, conjugate, symmetrization, normal, trace,
//!   reciprocal, and semi-regular quotients ([`poly`], [`stem`]);
//! - the slice differential operators: Cullen derivative, the first-order
//!   pair, three second-order Laplacians, the global operator and
//!   harmonic-conjugate reconstruction ([`calculus`]);
//! - quadrature-backed integral formulas: general mean value, harmonicity
//!   functional, generalized representation coefficients, Poisson formula
//!   and 3-sphere averages ([`measure`], [`quadrature`]);
//! - zero sets and slice divisors with a simultaneous root finder, zero
//!   classification and right-factor extraction ([`roots`], [`divisor`]);
//! - Blaschke factors, factorization of semi-regular functions, Jensen's
//!   formula and the zero-counting bound ([`blaschke`], [`jensen`]);
//! - a seeded verification battery exercising all of the above ([`verify`]).
//!
//! All values are immutable plain data and every operation is a pure
//! function, so everything can be shared freely across threads.

pub mod blaschke;
pub mod calculus;
pub mod divisor;
pub mod error;
pub mod jensen;
pub mod measure;
pub mod poly;
pub mod quadrature;
pub mod quaternion;
pub mod report;
pub mod roots;
pub mod stem;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{SemiRegular, SlicePolynomial};
pub use quaternion::{ImaginaryUnit, Quaternion, SliceCoords};
pub use stem::StemEvaluator;
