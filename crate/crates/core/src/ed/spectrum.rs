use faer::{Mat, Side};

use super::lanczos::{fix_phase, lowest_eigenpair, LanczosOptions};
use super::system::SpinSystem;
use crate::error::{Error, Result};
use crate::model::ModelSpec;

/// Largest system handled by full dense diagonalization.
pub const DENSE_MAX_SPINS: usize = 12;

/// Below this Hilbert-space dimension the ground state is found densely.
const DENSE_GROUND_DIM: usize = 256;

/// Levels closer than this are reported as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

pub fn dense_hamiltonian(system: &SpinSystem, omega: f64) -> Mat<f64> {
    let dim = system.dim();
    let mut h = Mat::<f64>::zeros(dim, dim);
    let mut e = vec![0.0; dim];
    for c in 0..dim {
        e[c] = 1.0;
        system.apply(omega, &e, h.col_as_slice_mut(c));
        e[c] = 0.0;
    }
    h
}

/// Eigenvalues in ascending order with eigenvectors as matching columns.
pub struct Spectrum {
    pub energies: Vec<f64>,
    pub vectors: Mat<f64>,
}

impl Spectrum {
    pub fn vector(&self, n: usize) -> &[f64] {
        self.vectors.col_as_slice(n)
    }
}

pub fn full_spectrum(system: &SpinSystem, omega: f64) -> Result<Spectrum> {
    if system.n_sites() > DENSE_MAX_SPINS {
        return Err(Error::TooLarge {
            what: "full-spectrum diagonalization",
            n: system.n_sites(),
            limit: DENSE_MAX_SPINS,
        });
    }
    let h = dense_hamiltonian(system, omega);
    let eig = h.selfadjoint_eigendecomposition(Side::Lower);
    let s = eig.s().column_vector();
    let u = eig.u();
    let dim = system.dim();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| s.read(a).total_cmp(&s.read(b)));
    let energies = order.iter().map(|&i| s.read(i)).collect();
    let mut vectors = Mat::<f64>::zeros(dim, dim);
    for (c, &i) in order.iter().enumerate() {
        let col = vectors.col_as_slice_mut(c);
        for (r, v) in col.iter_mut().enumerate() {
            *v = u.read(r, i);
        }
        fix_phase(col);
    }
    Ok(Spectrum { energies, vectors })
}

#[derive(Clone, Debug)]
pub struct GroundAndGap {
    pub e0: f64,
    pub e1: f64,
    /// Normalized ground state, largest amplitude real positive.
    pub ground: Vec<f64>,
    /// `|H x - E x|` for the two returned levels.
    pub residuals: [f64; 2],
    /// The two lowest levels coincide within [`DEGENERACY_TOL`]: the ground
    /// state is one member of a multiplet.
    pub degenerate: bool,
}

impl GroundAndGap {
    pub fn gap(&self) -> f64 {
        self.e1 - self.e0
    }
}

fn residual(system: &SpinSystem, omega: f64, value: f64, x: &[f64]) -> f64 {
    let mut hx = vec![0.0; x.len()];
    system.apply(omega, x, &mut hx);
    hx.iter()
        .zip(x)
        .map(|(h, v)| (h - value * v).powi(2))
        .sum::<f64>()
        .sqrt()
}

pub fn system_ground_and_gap(
    system: &SpinSystem,
    omega: f64,
    opts: &LanczosOptions,
) -> Result<GroundAndGap> {
    let dim = system.dim();
    let (e0, e1, ground, second) = if dim <= DENSE_GROUND_DIM {
        let spec = full_spectrum(system, omega)?;
        let e1 = if dim > 1 { spec.energies[1] } else { f64::INFINITY };
        let second = (dim > 1).then(|| spec.vector(1).to_vec());
        (spec.energies[0], e1, spec.vector(0).to_vec(), second)
    } else {
        let op = |x: &[f64], y: &mut [f64]| system.apply(omega, x, y);
        let p0 = lowest_eigenpair(op, dim, &[], opts)?;
        let p1 = lowest_eigenpair(op, dim, std::slice::from_ref(&p0.vector), opts)?;
        (p0.value, p1.value, p0.vector, Some(p1.vector))
    };
    let r0 = residual(system, omega, e0, &ground);
    let r1 = second
        .as_deref()
        .map_or(0.0, |v| residual(system, omega, e1, v));
    Ok(GroundAndGap {
        e0,
        e1,
        ground,
        residuals: [r0, r1],
        degenerate: e1 - e0 < DEGENERACY_TOL,
    })
}

/// Two lowest levels of the XXZ model and its ground state.
pub fn ground_and_gap(model: &ModelSpec) -> Result<GroundAndGap> {
    let system = SpinSystem::from_model(model)?;
    system_ground_and_gap(&system, model.omega, &LanczosOptions::default())
}
