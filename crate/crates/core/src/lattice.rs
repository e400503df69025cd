//! Periodic hypercubic (and rectangular) lattices, their momentum grids and
//! the nearest-neighbour structure factor.
//!
//! Sites are linearized row-major: for extents `(L_1, ..., L_d)` the site at
//! coordinates `(x_1, ..., x_d)` has index `((x_1 L_2 + x_2) L_3 + x_3) ...`.
//! Momenta use the same linearization on their integer labels `n_a`, with
//! `k_a = 2 pi n_a / L_a`, so the momentum at position 0 is always `k = 0`.
//!
//! The structure factor is normalized as `gamma_k = J sum_a cos(k_a)`, i.e.
//! `gamma_0 = z J / 2`. The alternative ordered-pair convention
//! `(1/N) sum_ij J_ij exp(ik(r_i - r_j))` is exactly twice this value; the
//! half-normalization is the one that reproduces the low-field gap
//! `2 J sqrt(Omega / J)` of the square lattice and the exact spectra.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    extents: Vec<usize>,
}

/// A point of the discrete Brillouin zone.
#[derive(Clone, Debug, PartialEq)]
pub struct Momentum {
    /// Integer labels `n_a` in `0..L_a`.
    pub labels: Vec<usize>,
    /// Components `k_a = 2 pi n_a / L_a`.
    pub k: Vec<f64>,
}

impl Momentum {
    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(|&n| n == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborTable {
    neighbors: Vec<Vec<usize>>,
}

impl NeighborTable {
    pub fn of(&self, site: usize) -> &[usize] {
        &self.neighbors[site]
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.neighbors.iter().map(Vec::as_slice)
    }
}

impl Lattice {
    pub fn hypercubic(d: usize, l: usize) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&d) {
            return Err(Error::InvalidLattice(format!(
                "dimension must be 1, 2 or 3, got {d}"
            )));
        }
        Self::rectangular(&vec![l; d])
    }

    /// Periodic box with independent extents per axis, e.g. a 3x4 cluster.
    pub fn rectangular(extents: &[usize]) -> Result<Self> {
        if extents.is_empty() || extents.len() > MAX_DIM {
            return Err(Error::InvalidLattice(format!(
                "dimension must be 1, 2 or 3, got {}",
                extents.len()
            )));
        }
        if let Some(&l) = extents.iter().find(|&&l| l < 2) {
            return Err(Error::InvalidLattice(format!(
                "linear size must be at least 2, got {l}"
            )));
        }
        let n = extents
            .iter()
            .try_fold(1usize, |acc, &l| acc.checked_mul(l))
            .ok_or_else(|| Error::InvalidLattice("lattice too large".into()))?;
        if n > u32::MAX as usize {
            return Err(Error::InvalidLattice("lattice too large".into()));
        }
        Ok(Self {
            extents: extents.to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    /// Linear size when all extents agree.
    pub fn linear_size(&self) -> Option<usize> {
        let l = self.extents[0];
        self.extents.iter().all(|&e| e == l).then_some(l)
    }

    pub fn n_sites(&self) -> usize {
        self.extents.iter().product()
    }

    pub fn coordination(&self) -> usize {
        2 * self.dim()
    }

    /// Compact label such as `10` or `3x4`.
    pub fn label(&self) -> String {
        self.extents
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut c = vec![0; self.dim()];
        for (a, &l) in self.extents.iter().enumerate().rev() {
            c[a] = index % l;
            index /= l;
        }
        c
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.extents)
            .fold(0, |acc, (&x, &l)| acc * l + x % l)
    }

    /// Neighbours ordered as `+e_1, -e_1, +e_2, -e_2, ...`. On an axis of
    /// extent 2 both entries name the same site.
    pub fn neighbor_table(&self) -> NeighborTable {
        let neighbors = (0..self.n_sites())
            .map(|i| {
                let c = self.coords(i);
                let mut out = Vec::with_capacity(self.coordination());
                for (a, &l) in self.extents.iter().enumerate() {
                    for step in [1, l - 1] {
                        let mut nc = c.clone();
                        nc[a] = (c[a] + step) % l;
                        out.push(self.index(&nc));
                    }
                }
                out
            })
            .collect();
        NeighborTable { neighbors }
    }

    /// Distinct unordered nearest-neighbour pairs `(i, j)` with `i < j`.
    ///
    /// An axis of extent 2 contributes a single bond per pair of sites, so a
    /// two-site ring is a single `S_1 . S_2` coupling.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let table = self.neighbor_table();
        let mut bonds: Vec<(usize, usize)> = table
            .iter()
            .enumerate()
            .flat_map(|(i, nbrs)| {
                nbrs.iter()
                    .filter(move |&&j| i < j)
                    .map(move |&j| (i, j))
            })
            .collect();
        bonds.sort_unstable();
        bonds.dedup();
        bonds
    }

    pub fn momenta(&self) -> Vec<Momentum> {
        (0..self.n_sites())
            .map(|i| {
                let labels = self.coords(i);
                let k = labels
                    .iter()
                    .zip(&self.extents)
                    .map(|(&n, &l)| 2.0 * PI * n as f64 / l as f64)
                    .collect();
                Momentum { labels, k }
            })
            .collect()
    }

    /// Position of `-k` in the list returned by [`Lattice::momenta`].
    pub fn negated_momentum(&self, index: usize) -> usize {
        let labels: Vec<usize> = self
            .coords(index)
            .iter()
            .zip(&self.extents)
            .map(|(&n, &l)| (l - n) % l)
            .collect();
        self.index(&labels)
    }
}

pub fn build_lattice(d: usize, l: usize) -> Result<(Lattice, NeighborTable, Vec<Momentum>)> {
    let lattice = Lattice::hypercubic(d, l)?;
    let table = lattice.neighbor_table();
    let momenta = lattice.momenta();
    Ok((lattice, table, momenta))
}

/// `gamma_k = J sum_a cos(k_a)`.
pub fn gamma_k(coupling: f64, k: &Momentum) -> f64 {
    coupling * k.k.iter().map(|ka| ka.cos()).sum::<f64>()
}
