//! Adiabatic spin squeezing in the spin-1/2 XXZ model on hypercubic lattices.
//!
//! Linear spin-wave theory (static and time-dependent) gives the large-system
//! behaviour; exact diagonalization on small clusters provides ground states,
//! gaps, thermal states and real-time ramps to check it against; the
//! [`thermo`] module turns energy tables into entropy curves and
//! squeezing-versus-entropy maps.

pub mod cli;
pub mod dynamics;
pub mod ed;
pub mod error;
pub mod fit;
pub mod lattice;
pub mod lsw;
pub mod model;
pub mod rk4;
pub mod schedule;
pub mod table;
pub mod thermo;

pub use error::{Error, Result};
pub use lattice::Lattice;
pub use model::{ModelSpec, SpinObservables};
