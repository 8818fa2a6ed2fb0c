//! Split-step Fourier integration of the 2D Schrödinger equation with the
//! minimal-coupling Hamiltonian, in the frame co-moving with the carrier.

mod evolve;
mod params;

pub use evolve::{split_step_evolve, split_step_evolve_with, EvolutionTrace, TraceRecord};
pub use params::{choose_steps, EvolutionParams, KINETIC_PHASE_BOUND, POTENTIAL_PHASE_BOUND};
