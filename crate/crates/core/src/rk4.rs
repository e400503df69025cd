//! Classical fourth-order Runge-Kutta stepping for complex state vectors,
//! shared by the spin-wave and exact time evolutions.

use num_complex::Complex64 as C64;

pub struct Rk4 {
    k1: Vec<C64>,
    k2: Vec<C64>,
    k3: Vec<C64>,
    k4: Vec<C64>,
    tmp: Vec<C64>,
}

impl Rk4 {
    pub fn new(len: usize) -> Self {
        let z = vec![C64::default(); len];
        Self {
            k1: z.clone(),
            k2: z.clone(),
            k3: z.clone(),
            k4: z.clone(),
            tmp: z,
        }
    }

    /// Advance `y` from `t` to `t + dt` under `dy/dt = rhs(t, y)`.
    pub fn step<F>(&mut self, t: f64, dt: f64, y: &mut [C64], mut rhs: F)
    where
        F: FnMut(f64, &[C64], &mut [C64]),
    {
        let half = 0.5 * dt;
        rhs(t, y, &mut self.k1);
        for ((s, &y0), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k1) {
            *s = y0 + k * half;
        }
        rhs(t + half, &self.tmp, &mut self.k2);
        for ((s, &y0), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k2) {
            *s = y0 + k * half;
        }
        rhs(t + half, &self.tmp, &mut self.k3);
        for ((s, &y0), &k) in self.tmp.iter_mut().zip(y.iter()).zip(&self.k3) {
            *s = y0 + k * dt;
        }
        rhs(t + dt, &self.tmp, &mut self.k4);
        let w = dt / 6.0;
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += (self.k1[i] + (self.k2[i] + self.k3[i]) * 2.0 + self.k4[i]) * w;
        }
    }
}
