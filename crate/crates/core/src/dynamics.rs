//! Time-dependent linear spin-wave theory.
//!
//! The Gaussian boson state is tracked through `G_k = <b_k^+ b_k>` and
//! `F_k = <b_k b_-k>`, which obey the Heisenberg-picture equations
//!
//! ```text
//! dG_k/dt = -2 B_k Im F_k
//! dF_k/dt = -i [2 A_k(t) F_k + B_k (1 + G_k + G_-k)]
//! ```
//!
//! For the zero mode these already contain the factor 2 coming from
//! `G_k + G_-k = 2 G_0`. [`ZeroModeEquations::Literal`] additionally doubles the
//! whole `k = 0` right-hand side, a variant kept for comparison against exact
//! dynamics.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lsw::{build_modes, ModeCoefficients};
use crate::model::{ModelSpec, SpinObservables};
use crate::rk4::Rk4;
use crate::schedule::RampSchedule;

/// Tolerance on `|F_k|^2 - G_k (G_k + 1)` before a state is declared unphysical.
pub const PHYSICALITY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroModeEquations {
    #[default]
    Derived,
    Literal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModePairState {
    pub g: Vec<f64>,
    pub f: Vec<C64>,
}

impl ModePairState {
    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    /// Largest violation of `|F_k|^2 <= G_k (G_k + 1)` and the mode it occurs at.
    pub fn physicality_excess(&self) -> (usize, f64) {
        self.g
            .iter()
            .zip(&self.f)
            .map(|(&g, f)| f.norm_sqr() - g * (g + 1.0))
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, x)| if x > acc.1 { (i, x) } else { acc })
    }

    fn pack(&self, y: &mut [C64]) {
        let n = self.len();
        for k in 0..n {
            y[k] = C64::new(self.g[k], 0.0);
            y[n + k] = self.f[k];
        }
    }

    fn unpack(&mut self, y: &[C64]) {
        let n = self.len();
        for k in 0..n {
            self.g[k] = y[k].re;
            self.f[k] = y[n + k];
        }
    }
}

/// Bogoliubov vacuum at the model's field: `G_k = v_k^2`, `F_k = -u_k v_k`.
pub fn ground_state_pairs(model: &ModelSpec) -> Result<ModePairState> {
    let modes = build_modes(model)?;
    Ok(ModePairState {
        g: modes.iter().map(|m| m.v * m.v).collect(),
        f: modes.iter().map(|m| C64::new(-m.u * m.v, 0.0)).collect(),
    })
}

/// Collective-spin moments of a pair state; mode 0 must be `k = 0`.
pub fn pair_observables(state: &ModePairState) -> Result<SpinObservables> {
    let n = state.len();
    let nf = n as f64;
    let jx = 0.5 * nf - state.g.iter().sum::<f64>();
    if jx <= 0.0 {
        return Err(Error::MagnetizationCollapse(jx));
    }
    let (g0, f0) = (state.g[0], state.f[0].re);
    let var_jz = 0.25 * nf * (1.0 + 2.0 * g0 - 2.0 * f0);
    let var_jy = 0.25 * nf * (1.0 + 2.0 * g0 + 2.0 * f0);
    Ok(SpinObservables {
        n_spins: n,
        jx,
        var_jx: None,
        var_jy,
        var_jz,
        cov_yz: 0.0,
        xi2: nf * var_jz / (jx * jx),
        fq: 4.0 * var_jy / nf,
        gap: None,
    })
}

/// Right-hand side of the pair equations on a packed `[G..., F...]` vector.
pub struct PairEquations {
    coeffs: ModeCoefficients,
    negated: Vec<usize>,
    zero_factor: f64,
}

impl PairEquations {
    pub fn new(model: &ModelSpec, equations: ZeroModeEquations) -> Self {
        let coeffs = ModeCoefficients::new(model);
        let negated = (0..coeffs.len())
            .map(|k| model.lattice.negated_momentum(k))
            .collect();
        let zero_factor = match equations {
            ZeroModeEquations::Derived => 1.0,
            ZeroModeEquations::Literal => 2.0,
        };
        Self {
            coeffs,
            negated,
            zero_factor,
        }
    }

    pub fn max_a(&self, omega: f64) -> f64 {
        (0..self.coeffs.len())
            .map(|k| self.coeffs.a(k, omega).abs())
            .fold(0.0, f64::max)
    }

    fn rhs(&self, omega: f64, y: &[C64], out: &mut [C64]) {
        let n = self.coeffs.len();
        let minus_i = C64::new(0.0, -1.0);
        for k in 0..n {
            let scale = if k == 0 { self.zero_factor } else { 1.0 };
            let b = self.coeffs.b[k];
            let a = self.coeffs.a(k, omega);
            let f = y[n + k];
            let g_sum = y[k].re + y[self.negated[k]].re;
            out[k] = C64::new(-2.0 * scale * b * f.im, 0.0);
            out[n + k] = minus_i * scale * (f * (2.0 * a) + b * (1.0 + g_sum));
        }
    }
}

/// One fourth-order step of the pair equations from `t` to `t + dt`, with the
/// field given as a function of time.
pub fn integrate_step(
    state: &mut ModePairState,
    equations: &PairEquations,
    field: impl Fn(f64) -> f64,
    t: f64,
    dt: f64,
) -> Result<()> {
    let mut rk = Rk4::new(2 * state.len());
    let mut y = vec![C64::default(); 2 * state.len()];
    state.pack(&mut y);
    rk.step(t, dt, &mut y, |s, x, out| equations.rhs(field(s), x, out));
    if y.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Overflow(t + dt));
    }
    state.unpack(&y);
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolveOptions {
    pub dt: f64,
    /// Record every `stride`-th step (the start, the end of the ramp and the
    /// final time are always recorded).
    pub stride: usize,
    pub equations: ZeroModeEquations,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            dt: 0.005,
            stride: 20,
            equations: ZeroModeEquations::Derived,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimeSample {
    pub t: f64,
    pub omega: f64,
    pub obs: SpinObservables,
}

#[derive(Clone, Debug)]
pub struct RampSeries {
    pub samples: Vec<TimeSample>,
    /// Position of the `t = tau` sample in `samples`, when there is a ramp.
    pub ramp_end: Option<usize>,
}

impl RampSeries {
    pub fn final_sample(&self) -> &TimeSample {
        self.samples.last().expect("series always holds the initial sample")
    }

    pub fn at_ramp_end(&self) -> Option<&TimeSample> {
        self.ramp_end.map(|i| &self.samples[i])
    }

    /// Samples strictly after the end of the ramp.
    pub fn after_ramp(&self) -> &[TimeSample] {
        match self.ramp_end {
            Some(i) => &self.samples[i + 1..],
            None => &[],
        }
    }
}

/// Split `[0, span]` into equal steps no longer than `dt`.
pub(crate) fn step_plan(span: f64, dt: f64) -> (usize, f64) {
    if span <= 0.0 {
        return (0, dt);
    }
    let n = (span / dt).ceil().max(1.0) as usize;
    (n, span / n as f64)
}

struct Integrator<'a> {
    state: ModePairState,
    equations: &'a PairEquations,
    rk: Rk4,
    y: Vec<C64>,
    t: f64,
}

impl Integrator<'_> {
    fn advance(&mut self, dt: f64, field: &dyn Fn(f64) -> f64) -> Result<()> {
        let eqs = self.equations;
        self.rk
            .step(self.t, dt, &mut self.y, |s, x, out| eqs.rhs(field(s), x, out));
        self.t += dt;
        if self.y.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Overflow(self.t));
        }
        self.state.unpack(&self.y);
        let (mode, excess) = self.state.physicality_excess();
        if excess > PHYSICALITY_TOL {
            return Err(Error::Unphysical {
                mode,
                t: self.t,
                excess,
            });
        }
        Ok(())
    }

    fn sample(&self, field: &dyn Fn(f64) -> f64) -> Result<TimeSample> {
        Ok(TimeSample {
            t: self.t,
            omega: field(self.t),
            obs: pair_observables(&self.state)?,
        })
    }
}

fn run_segments(
    initial: ModePairState,
    model: &ModelSpec,
    field: &dyn Fn(f64) -> f64,
    segments: &[f64],
    opts: &EvolveOptions,
) -> Result<(Vec<TimeSample>, Vec<usize>)> {
    let equations = PairEquations::new(model, opts.equations);
    if initial.len() != equations.coeffs.len() {
        return Err(Error::InvalidParameter(format!(
            "state has {} modes, lattice has {}",
            initial.len(),
            equations.coeffs.len()
        )));
    }
    let limit = 0.1;
    let a_max = equations.max_a(field(0.0));
    if !(opts.dt > 0.0) || opts.dt * a_max > limit {
        return Err(Error::InvalidParameter(format!(
            "time step {} does not resolve the fastest mode (dt * max A_k = {} > {limit})",
            opts.dt,
            opts.dt * a_max
        )));
    }
    let stride = opts.stride.max(1);
    let mut y = vec![C64::default(); 2 * initial.len()];
    initial.pack(&mut y);
    let mut it = Integrator {
        rk: Rk4::new(y.len()),
        y,
        state: initial,
        equations: &equations,
        t: 0.0,
    };
    let mut samples = vec![it.sample(field)?];
    let mut boundaries = Vec::new();
    for &span in segments {
        let (steps, dt) = step_plan(span, opts.dt);
        let t0 = it.t;
        for s in 1..=steps {
            it.advance(dt, field)?;
            if s == steps {
                // land exactly on the segment boundary
                it.t = t0 + span;
            }
            if s % stride == 0 || s == steps {
                samples.push(it.sample(field)?);
            }
        }
        boundaries.push(samples.len() - 1);
    }
    Ok((samples, boundaries))
}

/// Evolve `state` under the ramp, sampling the collective-spin observables.
pub fn evolve(
    state: ModePairState,
    model: &ModelSpec,
    ramp: &RampSchedule,
    opts: &EvolveOptions,
) -> Result<RampSeries> {
    let field = |t: f64| ramp.value(t);
    let (samples, boundaries) =
        run_segments(state, model, &field, &[ramp.tau, ramp.hold], opts)?;
    Ok(RampSeries {
        samples,
        ramp_end: Some(boundaries[0]),
    })
}

/// Evolve at an arbitrary time-dependent field up to `t_end`.
pub fn evolve_with_field(
    state: ModePairState,
    model: &ModelSpec,
    field: impl Fn(f64) -> f64,
    t_end: f64,
    opts: &EvolveOptions,
) -> Result<RampSeries> {
    let (samples, _) = run_segments(state, model, &field, &[t_end], opts)?;
    Ok(RampSeries {
        samples,
        ramp_end: None,
    })
}

/// Ramp starting from the spin-wave ground state at `omega_i`.
pub fn ramp_from_ground_state(
    template: &ModelSpec,
    ramp: &RampSchedule,
    opts: &EvolveOptions,
) -> Result<RampSeries> {
    let start = ground_state_pairs(&template.with_omega(ramp.omega_i))?;
    evolve(start, template, ramp, opts)
}
