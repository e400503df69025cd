use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// XXZ model with nearest-neighbour coupling on a periodic lattice:
///
/// `H = -J sum_<ij> (Sx_i Sx_j + Sy_i Sy_j - delta Sz_i Sz_j) - omega sum_i Sx_i`
///
/// with `J > 0` (in-plane ferromagnet) and `-1 < delta <= 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub lattice: Lattice,
    pub coupling: f64,
    pub delta: f64,
    pub omega: f64,
}

impl ModelSpec {
    /// Model in units of the coupling (`J = 1`).
    pub fn new(lattice: Lattice, delta: f64, omega: f64) -> Result<Self> {
        let model = Self {
            lattice,
            coupling: 1.0,
            delta,
            omega,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.coupling > 0.0 && self.coupling.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "coupling must be positive, got {}",
                self.coupling
            )));
        }
        if !(self.delta > -1.0 && self.delta <= 1.0) {
            return Err(Error::InvalidModel(format!(
                "anisotropy must lie in (-1, 1], got {}",
                self.delta
            )));
        }
        if !(self.omega >= 0.0 && self.omega.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "field must be finite and non-negative, got {}",
                self.omega
            )));
        }
        Ok(())
    }

    pub fn with_omega(&self, omega: f64) -> Self {
        Self {
            omega,
            ..self.clone()
        }
    }

    pub fn n_sites(&self) -> usize {
        self.lattice.n_sites()
    }
}

/// Collective-spin moments of a state, plus the derived squeezing figures.
///
/// `xi2` is the Wineland parameter `N min_perp Var(J_perp) / <J^x>^2`, `fq`
/// the quantum Fisher information density for rotations about `y`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinObservables {
    pub n_spins: usize,
    pub jx: f64,
    /// Only available from exact states.
    pub var_jx: Option<f64>,
    pub var_jy: f64,
    pub var_jz: f64,
    pub cov_yz: f64,
    pub xi2: f64,
    pub fq: f64,
    pub gap: Option<f64>,
}

impl SpinObservables {
    pub fn jx_per_spin(&self) -> f64 {
        self.jx / self.n_spins as f64
    }

    /// Smallest variance among spin components orthogonal to `x`.
    pub fn min_transverse_variance(&self) -> f64 {
        min_transverse_variance(self.var_jy, self.var_jz, self.cov_yz)
    }

    /// `4 Var(J^y) / N`, the pure-state value of the Fisher density and an
    /// upper bound to it in general.
    pub fn fisher_upper_bound(&self) -> f64 {
        4.0 * self.var_jy / self.n_spins as f64
    }

    pub fn inverse_xi2(&self) -> f64 {
        1.0 / self.xi2
    }

    /// `Var(J^y) Var(J^z) - <J^x>^2 / 4`; non-negative for every physical state.
    pub fn uncertainty_excess(&self) -> f64 {
        self.var_jy * self.var_jz - 0.25 * self.jx * self.jx
    }

    /// Read a column by its CSV name.
    pub fn column(&self, name: &str) -> Option<f64> {
        Some(match name {
            "jx" => self.jx,
            "jx_per_spin" => self.jx_per_spin(),
            "var_jx" => self.var_jx?,
            "var_jy" => self.var_jy,
            "var_jz" => self.var_jz,
            "cov_yz" => self.cov_yz,
            "xi2" => self.xi2,
            "fq" => self.fq,
            "gap" => self.gap?,
            _ => return None,
        })
    }
}

/// Lowest eigenvalue of the transverse covariance matrix
/// `[[vy, c], [c, vz]]`.
pub fn min_transverse_variance(var_jy: f64, var_jz: f64, cov_yz: f64) -> f64 {
    let mean = 0.5 * (var_jy + var_jz);
    let half_diff = 0.5 * (var_jy - var_jz);
    mean - half_diff.hypot(cov_yz)
}
