//! Vibrational and vibronic response functions of linearly displaced
//! harmonic oscillators, evaluated with coherent states and checked against
//! a truncated number-basis propagator.

pub mod bath;
pub mod coherent;
pub mod config;
pub mod dsl;
pub mod error;
pub mod evaluate;
pub mod exponent;
pub mod fock;
pub mod model;
pub mod pathway;
pub mod relaxation;
pub mod spectral;
pub mod thermal;
pub mod third_order;

pub use error::{Error, Result};
pub use num_complex::Complex64;
