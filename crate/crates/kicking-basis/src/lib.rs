//! Kicking bases for two-column and hook Garsia-Haiman orbit modules.
//!
//! Start with [`combinat::Shape`] and [`kicking::phi`]; [`orbit`] certifies the
//! basis, [`hilbert`] computes and checks the degree polynomials.

pub mod cli;
pub mod combinat;
pub mod hilbert;
pub mod kicking;
pub mod linfactor;
pub mod oracle;
pub mod orbit;

pub use combinat::{Cell, Filling, Parameters, Shape};
pub use kicking::{phi, phi_hook, phi_two_column};
pub use linfactor::{FactorProduct, LinearFactor, QTPoly, Rational};
