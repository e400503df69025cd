//! Exact diagonalization of the spin-1/2 XXZ model on small lattices.

pub mod lanczos;
pub mod observables;
pub mod ramp;
pub mod spectrum;
pub mod system;
pub mod thermal;

pub use lanczos::LanczosOptions;
pub use observables::{coherent_x_state, ground_observables, real_state_observables, state_observables};
pub use ramp::{evolve_constant, evolve_ramp, fidelity, EdRampOptions, EdRampResult};
pub use spectrum::{full_spectrum, ground_and_gap, GroundAndGap, Spectrum};
pub use system::SpinSystem;
pub use thermal::{thermal_observables, ThermalPoint, ThermalSpectrum};
