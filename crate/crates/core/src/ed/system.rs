use std::ops::{AddAssign, Mul};

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ModelSpec;

/// Largest system the matrix-free operators accept.
pub const MAX_SPINS: usize = 24;

/// Scalar type of a state vector.
pub trait Amplitude:
    Copy + Default + Send + Sync + AddAssign + Mul<f64, Output = Self> + 'static
{
}

impl Amplitude for f64 {}
impl Amplitude for C64 {}

/// Spin-1/2 system in the computational `S^z` basis.
///
/// Bit `i` of a basis index is the state of site `i` (1 = up), with sites
/// numbered as in [`crate::lattice::Lattice`]. The Hamiltonian is
///
/// `H = -sum_bonds [j_xy (Sx Sx + Sy Sy) - j_zz Sz Sz] - omega sum_i s_i Sx_i`
///
/// where `s_i` are per-site field signs (all `+1` for the uniform field).
#[derive(Clone, Debug, PartialEq)]
pub struct SpinSystem {
    n_sites: usize,
    bonds: Vec<(usize, usize)>,
    j_xy: f64,
    j_zz: f64,
    field_signs: Vec<f64>,
    diagonal: Vec<f64>,
}

impl SpinSystem {
    pub fn new(
        n_sites: usize,
        bonds: Vec<(usize, usize)>,
        j_xy: f64,
        j_zz: f64,
        field_signs: Vec<f64>,
    ) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::InvalidParameter("system needs at least one spin".into()));
        }
        if n_sites > MAX_SPINS {
            return Err(Error::TooLarge {
                what: "exact diagonalization",
                n: n_sites,
                limit: MAX_SPINS,
            });
        }
        if field_signs.len() != n_sites {
            return Err(Error::InvalidParameter(format!(
                "expected {n_sites} field signs, got {}",
                field_signs.len()
            )));
        }
        if let Some(&(i, j)) = bonds.iter().find(|&&(i, j)| i == j || i >= n_sites || j >= n_sites) {
            return Err(Error::InvalidParameter(format!("invalid bond ({i}, {j})")));
        }
        let dim = 1usize << n_sites;
        let diagonal = (0..dim)
            .into_par_iter()
            .with_min_len(4096)
            .map(|s| {
                bonds
                    .iter()
                    .map(|&(i, j)| if ((s >> i) ^ (s >> j)) & 1 == 0 { 0.25 } else { -0.25 })
                    .sum::<f64>()
                    * j_zz
            })
            .collect();
        Ok(Self {
            n_sites,
            bonds,
            j_xy,
            j_zz,
            field_signs,
            diagonal,
        })
    }

    /// The XXZ model on the model's lattice (uniform field; the field
    /// strength is passed to the operator methods).
    pub fn from_model(model: &ModelSpec) -> Result<Self> {
        model.validate()?;
        let n = model.n_sites();
        Self::new(
            n,
            model.lattice.bonds(),
            model.coupling,
            model.coupling * model.delta,
            vec![1.0; n],
        )
    }

    pub fn single_spin() -> Self {
        Self::new(1, vec![], 0.0, 0.0, vec![1.0]).expect("valid single spin")
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    pub fn bonds(&self) -> &[(usize, usize)] {
        &self.bonds
    }

    pub fn j_xy(&self) -> f64 {
        self.j_xy
    }

    /// `y = H(omega) x`.
    pub fn apply<T: Amplitude>(&self, omega: f64, x: &[T], y: &mut [T]) {
        let hop = -0.5 * self.j_xy;
        let field: Vec<f64> = self.field_signs.iter().map(|s| -0.5 * omega * s).collect();
        let bonds = &self.bonds;
        let diag = &self.diagonal;
        y.par_iter_mut()
            .with_min_len(1024)
            .enumerate()
            .for_each(|(s, out)| {
                let mut acc = x[s] * diag[s];
                for &(i, j) in bonds {
                    if ((s >> i) ^ (s >> j)) & 1 == 1 {
                        acc += x[s ^ ((1 << i) | (1 << j))] * hop;
                    }
                }
                for (i, &h) in field.iter().enumerate() {
                    acc += x[s ^ (1 << i)] * h;
                }
                *out = acc;
            });
    }

    /// `y = J^x x`.
    pub fn apply_jx<T: Amplitude>(&self, x: &[T], y: &mut [T]) {
        let n = self.n_sites;
        y.par_iter_mut()
            .with_min_len(1024)
            .enumerate()
            .for_each(|(s, out)| {
                let mut acc = T::default();
                for i in 0..n {
                    acc += x[s ^ (1 << i)] * 0.5;
                }
                *out = acc;
            });
    }

    /// `y = K x` with `J^y = -i K`; `K` is real and antisymmetric.
    pub fn apply_ky<T: Amplitude>(&self, x: &[T], y: &mut [T]) {
        let n = self.n_sites;
        y.par_iter_mut()
            .with_min_len(1024)
            .enumerate()
            .for_each(|(s, out)| {
                let mut acc = T::default();
                for i in 0..n {
                    let sign = if (s >> i) & 1 == 1 { 0.5 } else { -0.5 };
                    acc += x[s ^ (1 << i)] * sign;
                }
                *out = acc;
            });
    }

    /// Eigenvalue of `J^z` on basis state `s`.
    pub fn jz_value(&self, s: usize) -> f64 {
        (s.count_ones() as f64) - 0.5 * self.n_sites as f64
    }

    /// `y = J^y x` for complex states.
    pub fn apply_jy(&self, x: &[C64], y: &mut [C64]) {
        self.apply_ky(x, y);
        let minus_i = C64::new(0.0, -1.0);
        y.iter_mut().for_each(|v| *v *= minus_i);
    }

    pub fn apply_jz<T: Amplitude>(&self, x: &[T], y: &mut [T]) {
        for (s, (out, &v)) in y.iter_mut().zip(x).enumerate() {
            *out = v * self.jz_value(s);
        }
    }

    /// `<x|H|x>` for a real vector.
    pub fn expectation(&self, omega: f64, x: &[f64]) -> f64 {
        let mut hx = vec![0.0; x.len()];
        self.apply(omega, x, &mut hx);
        x.iter().zip(&hx).map(|(a, b)| a * b).sum()
    }
}
