//! Canonical-ensemble observables from the full spectrum.

use faer::Mat;

use super::spectrum::{full_spectrum, DENSE_MAX_SPINS};
use super::system::SpinSystem;
use crate::error::{Error, Result};
use crate::model::{min_transverse_variance, ModelSpec, SpinObservables};

/// Spectrum of one Hamiltonian with the matrix elements every temperature
/// needs, so that scanning `T` costs `O(dim^2)` per point.
pub struct ThermalSpectrum {
    n_sites: usize,
    energies: Vec<f64>,
    jx_diag: Vec<f64>,
    jx2_diag: Vec<f64>,
    jz_diag: Vec<f64>,
    jz2_diag: Vec<f64>,
    jy2_diag: Vec<f64>,
    /// `|<m|J^y|n>|^2`.
    jy_elements: Mat<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThermalPoint {
    pub temperature: f64,
    pub obs: SpinObservables,
    pub energy_per_spin: f64,
    pub entropy_per_spin: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl ThermalSpectrum {
    pub fn new(system: &SpinSystem, omega: f64) -> Result<Self> {
        if system.n_sites() > DENSE_MAX_SPINS {
            return Err(Error::TooLarge {
                what: "thermal observables",
                n: system.n_sites(),
                limit: DENSE_MAX_SPINS,
            });
        }
        let spec = full_spectrum(system, omega)?;
        let dim = system.dim();
        let mut ky_v = Mat::<f64>::zeros(dim, dim);
        let mut jx_diag = Vec::with_capacity(dim);
        let mut jx2_diag = Vec::with_capacity(dim);
        let mut jz_diag = Vec::with_capacity(dim);
        let mut jz2_diag = Vec::with_capacity(dim);
        let mut buf = vec![0.0; dim];
        for n in 0..dim {
            let v = spec.vector(n);
            system.apply_ky(v, ky_v.col_as_slice_mut(n));
            system.apply_jx(v, &mut buf);
            jx_diag.push(dot(v, &buf));
            jx2_diag.push(dot(&buf, &buf));
            let (mut z1, mut z2) = (0.0, 0.0);
            for (s, &a) in v.iter().enumerate() {
                let jz = system.jz_value(s);
                z1 += a * a * jz;
                z2 += a * a * jz * jz;
            }
            jz_diag.push(z1);
            jz2_diag.push(z2);
        }
        let elements = spec.vectors.transpose() * &ky_v;
        let jy_elements = Mat::<f64>::from_fn(dim, dim, |m, n| elements.read(m, n).powi(2));
        let jy2_diag = (0..dim)
            .map(|n| jy_elements.col_as_slice(n).iter().sum())
            .collect();
        Ok(Self {
            n_sites: system.n_sites(),
            energies: spec.energies,
            jx_diag,
            jx2_diag,
            jz_diag,
            jz2_diag,
            jy2_diag,
            jy_elements,
        })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Boltzmann weights at temperature `t` (`t = inf` gives the uniform
    /// mixture) together with their logarithms.
    pub fn weights(&self, t: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        if !(t > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "temperature must be positive, got {t}"
            )));
        }
        let e0 = self.energies[0];
        let logw: Vec<f64> = self
            .energies
            .iter()
            .map(|&e| if t.is_infinite() { 0.0 } else { -(e - e0) / t })
            .collect();
        let log_z = logw.iter().map(|l| l.exp()).sum::<f64>().ln();
        let logp: Vec<f64> = logw.iter().map(|l| l - log_z).collect();
        Ok((logp.iter().map(|l| l.exp()).collect(), logp))
    }

    pub fn at(&self, t: f64) -> Result<ThermalPoint> {
        let (p, logp) = self.weights(t)?;
        let nf = self.n_sites as f64;
        let avg = |d: &[f64]| dot(&p, d);
        let energy = avg(&self.energies);
        let entropy: f64 = -p
            .iter()
            .zip(&logp)
            .filter(|(pi, _)| **pi > 0.0)
            .map(|(pi, li)| pi * li)
            .sum::<f64>();
        let jx = avg(&self.jx_diag);
        let jz = avg(&self.jz_diag);
        let var_jx = avg(&self.jx2_diag) - jx * jx;
        let var_jz = avg(&self.jz2_diag) - jz * jz;
        // real eigenvectors: <n|J^y|n> = 0 and <n|{J^y, J^z}|n> = 0
        let var_jy = avg(&self.jy2_diag);
        let cov_yz = 0.0;

        let dim = p.len();
        let mut fisher = 0.0;
        for n in 0..dim {
            let col = self.jy_elements.col_as_slice(n);
            for m in 0..dim {
                let s = p[n] + p[m];
                if s > 0.0 {
                    let d = p[n] - p[m];
                    fisher += d * d / s * col[m];
                }
            }
        }
        let fq = 2.0 * fisher / nf;

        let min_perp = min_transverse_variance(var_jy, var_jz, cov_yz);
        let gap = (self.energies.len() > 1).then(|| self.energies[1] - self.energies[0]);
        Ok(ThermalPoint {
            temperature: t,
            obs: SpinObservables {
                n_spins: self.n_sites,
                jx,
                var_jx: Some(var_jx),
                var_jy,
                var_jz,
                cov_yz,
                xi2: nf * min_perp / (jx * jx),
                fq,
                gap,
            },
            energy_per_spin: energy / nf,
            entropy_per_spin: entropy / nf,
        })
    }
}

pub fn thermal_observables(model: &ModelSpec, t: f64) -> Result<ThermalPoint> {
    let system = SpinSystem::from_model(model)?;
    ThermalSpectrum::new(&system, model.omega)?.at(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_level_thermodynamics() {
        let omega = 1.0;
        let spec = ThermalSpectrum::new(&SpinSystem::single_spin(), omega).unwrap();
        for t in [0.05, 0.3, 1.0, 7.0] {
            let x = omega / (2.0 * t);
            let pt = spec.at(t).unwrap();
            assert!((pt.energy_per_spin + 0.5 * omega * x.tanh()).abs() < 1e-14);
            let s = (2.0 * x.cosh()).ln() - x * x.tanh();
            assert!((pt.entropy_per_spin - s).abs() < 1e-13);
            assert!((pt.obs.jx - 0.5 * x.tanh()).abs() < 1e-14);
        }
    }

    #[test]
    fn infinite_temperature() {
        let sys = SpinSystem::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)], 1.0, 1.0, vec![1.0; 4]).unwrap();
        let pt = ThermalSpectrum::new(&sys, 0.7).unwrap().at(f64::INFINITY).unwrap();
        assert!(pt.obs.jx.abs() < 1e-12);
        assert!((pt.entropy_per_spin - std::f64::consts::LN_2).abs() < 1e-12);
        assert!(pt.obs.fq.abs() < 1e-12);
    }

    #[test]
    fn rejects_non_positive_temperature() {
        let spec = ThermalSpectrum::new(&SpinSystem::single_spin(), 1.0).unwrap();
        assert!(spec.at(0.0).is_err());
        assert!(spec.at(-1.0).is_err());
    }
}
