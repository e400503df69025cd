use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordinary least squares of `ln y` against `ln x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub intercept: f64,
    pub exponent_stderr: f64,
    pub points: usize,
}

impl PowerLawFit {
    pub fn prefactor(&self) -> f64 {
        self.intercept.exp()
    }
}

/// Fit `y = c x^lambda` to the points whose `x` lies in `[lo, hi]`.
pub fn fit_power_law(points: &[(f64, f64)], window: (f64, f64)) -> Result<PowerLawFit> {
    let (lo, hi) = window;
    let selected: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(x, _)| x >= lo && x <= hi)
        .collect();
    if selected.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 points in [{lo}, {hi}], found {}",
            selected.len()
        )));
    }
    if let Some(&(x, y)) = selected.iter().find(|&&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::Fit(format!(
            "non-positive value at x = {x}: {y}"
        )));
    }
    let logs: Vec<(f64, f64)> = selected.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = logs
        .iter()
        .map(|&(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let stderr = (rss / (n - 2.0) / sxx).sqrt();
    Ok(PowerLawFit {
        exponent: slope,
        intercept,
        exponent_stderr: stderr,
        points: logs.len(),
    })
}

/// `n` points from `a` to `b` inclusive, evenly spaced in `ln x`.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => {
            let (la, lb) = (a.ln(), b.ln());
            (0..n)
                .map(|i| {
                    if i == 0 {
                        a
                    } else if i == n - 1 {
                        b
                    } else {
                        (la + (lb - la) * i as f64 / (n - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

pub fn lin_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}
