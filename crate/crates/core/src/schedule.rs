use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quasi-adiabatic field ramp `omega(t) = omega_i + F(t/tau)(omega_f - omega_i)`
/// held at `omega_f` for `hold` after the ramp ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RampSchedule {
    pub omega_i: f64,
    pub omega_f: f64,
    pub tau: f64,
    pub hold: f64,
}

impl RampSchedule {
    pub fn new(omega_i: f64, omega_f: f64, tau: f64, hold: f64) -> Result<Self> {
        if !(omega_f > 0.0 && omega_i > omega_f && omega_i.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "ramp needs omega_i > omega_f > 0, got {omega_i} -> {omega_f}"
            )));
        }
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "ramp duration must be positive, got {tau}"
            )));
        }
        if !(hold >= 0.0 && hold.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "hold time must be non-negative, got {hold}"
            )));
        }
        Ok(Self {
            omega_i,
            omega_f,
            tau,
            hold,
        })
    }

    pub fn duration(&self) -> f64 {
        self.tau + self.hold
    }

    pub fn value(&self, t: f64) -> f64 {
        self.omega_i + smooth_step(t / self.tau) * (self.omega_f - self.omega_i)
    }
}

/// Step from 0 to 1 on `[0, 1]` whose derivatives of all orders vanish at
/// both ends: `e^(2 - 1/x)/2` below `x = 1/2`, `1 - e^(2 - 1/(1-x))/2` above.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else if x < 0.5 {
        0.5 * (2.0 - 1.0 / x).exp()
    } else {
        1.0 - 0.5 * (2.0 - 1.0 / (1.0 - x)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branches_meet_at_midpoint() {
        assert_eq!(smooth_step(0.5), 0.5);
        let below = 0.5 * (2.0f64 - 1.0 / (0.5 - 1e-12)).exp();
        assert!((below - 0.5).abs() < 1e-10);
    }

    #[test]
    fn endpoint_limits() {
        assert!(smooth_step(1e-3) < 1e-300);
        assert!(1.0 - smooth_step(1.0 - 1e-3) < 1e-300);
        assert_eq!(smooth_step(-1.0), 0.0);
        assert_eq!(smooth_step(2.0), 1.0);
    }

    #[test]
    fn monotone() {
        let mut prev = 0.0;
        for i in 0..=1000 {
            let f = smooth_step(i as f64 / 1000.0);
            assert!(f >= prev);
            prev = f;
        }
    }

    #[test]
    fn schedule_values() {
        let ramp = RampSchedule::new(10.0, 0.1, 20.0, 5.0).unwrap();
        assert_eq!(ramp.value(0.0), 10.0);
        assert!((ramp.value(10.0) - 5.05).abs() < 1e-14);
        assert!((ramp.value(20.0) - 0.1).abs() < 1e-14);
        assert!((ramp.value(23.0) - 0.1).abs() < 1e-14);
        assert!(RampSchedule::new(0.1, 10.0, 20.0, 0.0).is_err());
        assert!(RampSchedule::new(10.0, 0.1, 0.0, 0.0).is_err());
    }
}
