//! Inelastic diffraction of slow electron wavepackets by optical near fields.
//!
//! Two engines share the same grids and models: an analytic phase-mask
//! engine built on the coupling integrals of [`nearfield`], and a split-step
//! Fourier integrator of the time-dependent Schrödinger equation in
//! [`numeric`]. Units are nm, fs and eV throughout (see [`units`]).

pub mod analysis;
pub mod analytic;
pub mod bessel;
pub mod error;
pub mod fft;
pub mod grid;
pub mod io;
pub mod nearfield;
pub mod numeric;
pub mod quadrature;
pub mod spectrum;
pub mod units;
pub mod wavepacket;

pub use error::{Error, Result};
pub use grid::Grid2D;
pub use num_complex::Complex64 as C64;
pub use spectrum::MomentumSpectrum;
pub use wavepacket::Wavepacket;
