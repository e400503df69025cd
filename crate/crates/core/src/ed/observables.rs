use num_complex::Complex64 as C64;

use super::lanczos::LanczosOptions;
use super::spectrum::{system_ground_and_gap, GroundAndGap};
use super::system::SpinSystem;
use crate::error::Result;
use crate::model::{min_transverse_variance, ModelSpec, SpinObservables};

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Collective-spin moments of a normalized pure state.
///
/// The squeezing parameter uses the transverse variance minimized over the
/// `y-z` plane, `(V_y + V_z)/2 - sqrt(((V_y - V_z)/2)^2 + Cov^2)`; for a pure
/// state the Fisher density equals `4 Var(J^y) / N`.
pub fn state_observables(system: &SpinSystem, psi: &[C64]) -> SpinObservables {
    let n = system.n_sites();
    let nf = n as f64;
    let mut jx_psi = vec![C64::default(); psi.len()];
    let mut jy_psi = vec![C64::default(); psi.len()];
    let mut jz_psi = vec![C64::default(); psi.len()];
    system.apply_jx(psi, &mut jx_psi);
    system.apply_jy(psi, &mut jy_psi);
    system.apply_jz(psi, &mut jz_psi);

    let jx = inner(psi, &jx_psi).re;
    let jy = inner(psi, &jy_psi).re;
    let jz = inner(psi, &jz_psi).re;
    let var_jx = inner(&jx_psi, &jx_psi).re - jx * jx;
    let var_jy = inner(&jy_psi, &jy_psi).re - jy * jy;
    let var_jz = inner(&jz_psi, &jz_psi).re - jz * jz;
    // symmetrized covariance: Re <Jy Jz> - <Jy><Jz>
    let cov_yz = inner(&jy_psi, &jz_psi).re - jy * jz;

    let min_perp = min_transverse_variance(var_jy, var_jz, cov_yz);
    SpinObservables {
        n_spins: n,
        jx,
        var_jx: Some(var_jx),
        var_jy,
        var_jz,
        cov_yz,
        xi2: nf * min_perp / (jx * jx),
        fq: 4.0 * var_jy / nf,
        gap: None,
    }
}

pub fn real_state_observables(system: &SpinSystem, psi: &[f64]) -> SpinObservables {
    let z: Vec<C64> = psi.iter().map(|&x| C64::new(x, 0.0)).collect();
    state_observables(system, &z)
}

/// Ground-state observables with the gap to the first excited level.
pub fn ground_observables(model: &ModelSpec) -> Result<(SpinObservables, GroundAndGap)> {
    let system = SpinSystem::from_model(model)?;
    let gg = system_ground_and_gap(&system, model.omega, &LanczosOptions::default())?;
    if gg.degenerate {
        log::warn!(
            "ground state at omega = {} is degenerate; observables refer to one member of the multiplet",
            model.omega
        );
    }
    let mut obs = real_state_observables(&system, &gg.ground);
    obs.gap = Some(gg.gap());
    Ok((obs, gg))
}

/// Product state with every spin along `+x`.
pub fn coherent_x_state(n_sites: usize) -> Vec<f64> {
    let dim = 1usize << n_sites;
    vec![(dim as f64).sqrt().recip(); dim]
}
