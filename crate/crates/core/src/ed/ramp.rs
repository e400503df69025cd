//! Real-time Schrödinger evolution under a time-dependent field.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::lanczos::LanczosOptions;
use super::observables::state_observables;
use super::spectrum::system_ground_and_gap;
use super::system::SpinSystem;
use crate::dynamics::{step_plan, RampSeries, TimeSample};
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::rk4::Rk4;
use crate::schedule::RampSchedule;

/// Largest system accepted for time evolution.
pub const MAX_RAMP_SPINS: usize = 16;

/// Allowed deviation of the state norm from 1.
pub const NORM_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdRampOptions {
    pub dt: f64,
    pub stride: usize,
}

impl Default for EdRampOptions {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            stride: 20,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EdRampResult {
    pub series: RampSeries,
    pub final_state: Vec<C64>,
    pub max_norm_drift: f64,
}

fn norm_drift(psi: &[C64]) -> f64 {
    (psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs()
}

/// Evolve `psi` with `i d/dt psi = H(field(t)) psi` over consecutive time
/// segments.
///
/// The Hamiltonian is offset by the energy of the fully `x`-polarized state
/// at the instantaneous field. The offset only changes the global phase, but
/// keeps the dominant amplitudes slowly rotating so the explicit stepper loses
/// almost no norm.
pub fn evolve_state(
    system: &SpinSystem,
    psi: Vec<C64>,
    field: &dyn Fn(f64) -> f64,
    segments: &[f64],
    opts: &EdRampOptions,
) -> Result<(RampSeries, Vec<C64>, f64)> {
    if system.n_sites() > MAX_RAMP_SPINS {
        return Err(Error::TooLarge {
            what: "time evolution",
            n: system.n_sites(),
            limit: MAX_RAMP_SPINS,
        });
    }
    if psi.len() != system.dim() {
        return Err(Error::InvalidParameter(format!(
            "state has length {}, expected {}",
            psi.len(),
            system.dim()
        )));
    }
    if !(opts.dt > 0.0 && opts.dt.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "time step must be positive, got {}",
            opts.dt
        )));
    }
    let nf = system.n_sites() as f64;
    let bond_energy = -0.25 * system.bonds().len() as f64 * system.j_xy();
    let offset = |omega: f64| bond_energy - 0.5 * nf * omega;
    let minus_i = C64::new(0.0, -1.0);
    let rhs = |t: f64, x: &[C64], out: &mut [C64]| {
        let omega = field(t);
        system.apply(omega, x, out);
        let e = offset(omega);
        for (o, &xi) in out.iter_mut().zip(x) {
            *o = (*o - xi * e) * minus_i;
        }
    };

    let stride = opts.stride.max(1);
    let mut psi = psi;
    let mut rk = Rk4::new(psi.len());
    let mut t = 0.0;
    let sample = |t: f64, psi: &[C64]| TimeSample {
        t,
        omega: field(t),
        obs: state_observables(system, psi),
    };
    let mut samples = vec![sample(t, &psi)];
    let mut max_drift = norm_drift(&psi);
    for &span in segments {
        let (steps, dt) = step_plan(span, opts.dt);
        let t0 = t;
        for s in 1..=steps {
            rk.step(t, dt, &mut psi, rhs);
            t = if s == steps { t0 + span } else { t + dt };
            let drift = norm_drift(&psi);
            if !drift.is_finite() {
                return Err(Error::Overflow(t));
            }
            max_drift = max_drift.max(drift);
            if drift > NORM_TOL {
                return Err(Error::NormDrift { t, drift });
            }
            if s % stride == 0 || s == steps {
                samples.push(sample(t, &psi));
            }
        }
    }
    let series = RampSeries {
        samples,
        ramp_end: None,
    };
    Ok((series, psi, max_drift))
}

fn ground_state(system: &SpinSystem, omega: f64) -> Result<Vec<C64>> {
    let gg = system_ground_and_gap(system, omega, &LanczosOptions::default())?;
    Ok(gg.ground.iter().map(|&x| C64::new(x, 0.0)).collect())
}

/// Ramp the field starting from the exact ground state at `omega_i`.
pub fn evolve_ramp(
    template: &ModelSpec,
    ramp: &RampSchedule,
    opts: &EdRampOptions,
) -> Result<EdRampResult> {
    let system = SpinSystem::from_model(template)?;
    let psi = ground_state(&system, ramp.omega_i)?;
    let field = |t: f64| ramp.value(t);
    let (mut series, final_state, max_norm_drift) =
        evolve_state(&system, psi, &field, &[ramp.tau, ramp.hold], opts)?;
    let end = series
        .samples
        .iter()
        .position(|s| s.t == ramp.tau)
        .expect("ramp end is always sampled");
    series.ramp_end = Some(end);
    Ok(EdRampResult {
        series,
        final_state,
        max_norm_drift,
    })
}

/// Evolve the ground state at the model's own field for `t_end`.
pub fn evolve_constant(model: &ModelSpec, t_end: f64, opts: &EdRampOptions) -> Result<EdRampResult> {
    let system = SpinSystem::from_model(model)?;
    let psi = ground_state(&system, model.omega)?;
    let omega = model.omega;
    let (series, final_state, max_norm_drift) =
        evolve_state(&system, psi, &|_| omega, &[t_end], opts)?;
    Ok(EdRampResult {
        series,
        final_state,
        max_norm_drift,
    })
}

/// `|<a|b>|^2` for a complex and a real state.
pub fn fidelity(a: &[C64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, &y)| x.conj() * y)
        .sum::<C64>()
        .norm_sqr()
}
