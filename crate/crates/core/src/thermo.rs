//! Entropy from tabulated energies by integrating a piecewise-linear
//! specific heat against `1/T`, and squeezing-versus-entropy maps.
//!
//! The specific heat is known at the interval midpoints
//! `T_{k+1/2} = (T_k + T_{k+1})/2` as a difference quotient of the energy.
//! On each half interval `c(T)` is the straight line through the two nearest
//! midpoint values, so the entropy increment over `[T_k, T_{k+1}]` is a sum of
//! two closed-form integrals `a ln(y/x) + b (y - x)`. The scheme is exact
//! whenever `c` is piecewise linear.

use std::collections::BTreeMap;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{CsvTable, TableMeta};

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyTable {
    pub meta: Option<TableMeta>,
    temperatures: Vec<f64>,
    energies: Vec<f64>,
}

impl EnergyTable {
    pub fn new(temperatures: Vec<f64>, energies: Vec<f64>, meta: Option<TableMeta>) -> Result<Self> {
        if temperatures.len() != energies.len() {
            return Err(Error::Table(format!(
                "{} temperatures but {} energies",
                temperatures.len(),
                energies.len()
            )));
        }
        if temperatures.len() < 2 {
            return Err(Error::Table("energy table needs at least two samples".into()));
        }
        if let Some(t) = temperatures.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
            return Err(Error::Table(format!("temperature {t} is not positive and finite")));
        }
        for w in temperatures.windows(2) {
            if w[1] == w[0] {
                return Err(Error::Table(format!("duplicate temperature {}", w[0])));
            }
            if w[1] < w[0] {
                return Err(Error::Table(format!(
                    "temperatures must increase ({} after {})",
                    w[1], w[0]
                )));
            }
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::Table("energy table holds non-finite values".into()));
        }
        if let Some(i) = (1..energies.len()).find(|&i| energies[i] < energies[i - 1]) {
            warn!(
                "energy decreases between T = {} and T = {}; specific heat will be negative",
                temperatures[i - 1],
                temperatures[i]
            );
        }
        Ok(Self {
            meta,
            temperatures,
            energies,
        })
    }

    /// Reads the `T` and `e` columns (other columns are ignored). When the
    /// table carries an `omega` column with several values, `omega` selects
    /// the rows to use.
    pub fn from_csv(table: &CsvTable, omega: Option<f64>) -> Result<Self> {
        let mut meta = table.meta();
        let t = table.column_f64("T")?;
        let e = table.column_f64("e")?;
        let (t, e) = match table.column_f64("omega") {
            Ok(omegas) => {
                let mut distinct = omegas.clone();
                distinct.sort_by(f64::total_cmp);
                distinct.dedup();
                let pick = match (omega, distinct.as_slice()) {
                    (Some(o), _) => o,
                    (None, [only]) => *only,
                    (None, _) => {
                        return Err(Error::Table(format!(
                            "table holds {} fields; select one",
                            distinct.len()
                        )))
                    }
                };
                if let Some(m) = meta.as_mut() {
                    m.omega = Some(pick);
                }
                let rows: Vec<usize> = (0..omegas.len()).filter(|&i| omegas[i] == pick).collect();
                if rows.is_empty() {
                    return Err(Error::Table(format!("no rows at omega = {pick}")));
                }
                (
                    rows.iter().map(|&i| t[i]).collect(),
                    rows.iter().map(|&i| e[i]).collect(),
                )
            }
            Err(_) => (t, e),
        };
        Self::new(t, e, meta)
    }

    pub fn temperatures(&self) -> &[f64] {
        &self.temperatures
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn len(&self) -> usize {
        self.temperatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.temperatures.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Midpoint {
    pub t: f64,
    pub c: f64,
}

pub fn specific_heat_midpoints(table: &EnergyTable) -> Vec<Midpoint> {
    let (t, e) = (&table.temperatures, &table.energies);
    let out: Vec<Midpoint> = (0..t.len() - 1)
        .map(|k| Midpoint {
            t: 0.5 * (t[k] + t[k + 1]),
            c: (e[k + 1] - e[k]) / (t[k + 1] - t[k]),
        })
        .collect();
    if out.iter().any(|m| m.c < 0.0) {
        warn!("negative specific heat in energy table");
    }
    out
}

/// How the specific heat is continued beyond the outermost midpoints.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryExtension {
    /// Extend the straight line through the two outermost midpoints.
    #[default]
    Linear,
    /// Hold the outermost midpoint value.
    Constant,
}

/// `int_x^y (a + b T) / T dT` for the line through `(t0, c0)` and `(t1, c1)`.
fn line_integral(t0: f64, c0: f64, t1: f64, c1: f64, x: f64, y: f64) -> f64 {
    let b = (c1 - c0) / (t1 - t0);
    let a = c0 - b * t0;
    a * (y / x).ln() + b * (y - x)
}

/// Line used for `c(T)` on the half interval adjoining midpoint `m` on the
/// given side.
fn segment(mid: &[Midpoint], m: usize, lower: bool, ext: BoundaryExtension) -> (f64, f64, f64, f64) {
    let last = mid.len() - 1;
    let constant = |p: &Midpoint| (p.t, p.c, p.t + 1.0, p.c);
    let pair = |i: usize| (mid[i].t, mid[i].c, mid[i + 1].t, mid[i + 1].c);
    match (lower, m, ext) {
        (true, 0, BoundaryExtension::Constant) => constant(&mid[0]),
        (true, 0, BoundaryExtension::Linear) => pair(0),
        (true, _, _) => pair(m - 1),
        (false, _, BoundaryExtension::Constant) if m == last => constant(&mid[last]),
        (false, _, BoundaryExtension::Linear) if m == last => pair(last - 1),
        (false, _, _) => pair(m),
    }
}

/// Entropy gained between consecutive table temperatures.
pub fn entropy_increments(
    temperatures: &[f64],
    midpoints: &[Midpoint],
    ext: BoundaryExtension,
) -> Result<Vec<f64>> {
    if midpoints.len() < 3 {
        return Err(Error::Table(format!(
            "entropy increments need at least 3 midpoints, got {}",
            midpoints.len()
        )));
    }
    if temperatures.len() != midpoints.len() + 1 {
        return Err(Error::Table("temperature grid does not match midpoints".into()));
    }
    Ok((0..midpoints.len())
        .map(|k| {
            let tm = midpoints[k].t;
            let (a0, ac0, a1, ac1) = segment(midpoints, k, true, ext);
            let (b0, bc0, b1, bc1) = segment(midpoints, k, false, ext);
            line_integral(a0, ac0, a1, ac1, temperatures[k], tm)
                + line_integral(b0, bc0, b1, bc1, tm, temperatures[k + 1])
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "rule", content = "value")]
pub enum AnchorRule {
    /// `s(T_min) = 0`, appropriate when the gap is well above `T_min`.
    ZeroAtTmin,
    /// `s(T_max)` set to a known value.
    ValueAtTmax(f64),
    /// `s(inf) = ln 2`, bridging the range above `T_max` with a `1/T^2`
    /// specific-heat tail fitted to the last midpoint.
    Ln2AtInfinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    pub rule: AnchorRule,
    pub temperature: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyCurve {
    pub meta: Option<TableMeta>,
    pub temperatures: Vec<f64>,
    pub midpoints: Vec<Midpoint>,
    pub entropy: Vec<f64>,
    pub anchor: Anchor,
    pub extension: BoundaryExtension,
}

impl EntropyCurve {
    /// Piecewise-linear specific heat evaluated at table temperature `k`.
    pub fn specific_heat_at(&self, k: usize) -> f64 {
        let t = self.temperatures[k];
        let m = k.min(self.midpoints.len() - 1);
        let lower = k < self.midpoints.len();
        let (t0, c0, t1, c1) = segment(&self.midpoints, m, lower, self.extension);
        c0 + (c1 - c0) / (t1 - t0) * (t - t0)
    }

    pub fn samples(&self) -> EntropySamples {
        EntropySamples {
            meta: self.meta.clone(),
            temperatures: self.temperatures.clone(),
            entropy: self.entropy.clone(),
        }
    }

    pub fn to_csv(&self) -> CsvTable {
        let mut out = CsvTable::new(&["T", "c", "s"]);
        if let Some(m) = &self.meta {
            out.comments.push(m.to_string());
        }
        out.comments.push(format!(
            "anchor={},T_anchor={},s_anchor={}",
            match self.anchor.rule {
                AnchorRule::ZeroAtTmin => "zero-at-tmin",
                AnchorRule::ValueAtTmax(_) => "value-at-tmax",
                AnchorRule::Ln2AtInfinity => "ln2-at-infinity",
            },
            self.anchor.temperature,
            self.anchor.value
        ));
        for k in 0..self.temperatures.len() {
            out.push_row([self.temperatures[k], self.specific_heat_at(k), self.entropy[k]]);
        }
        out
    }
}

/// Cumulative entropy of a table under the given anchoring.
///
/// `gap` is an optional estimate of the excitation gap; anchoring at zero is
/// flagged when it is not large compared with the lowest temperature.
pub fn entropy_curve(
    table: &EnergyTable,
    rule: AnchorRule,
    ext: BoundaryExtension,
    gap: Option<f64>,
) -> Result<EntropyCurve> {
    let midpoints = specific_heat_midpoints(table);
    let ds = entropy_increments(&table.temperatures, &midpoints, ext)?;
    let mut s = Vec::with_capacity(table.len());
    s.push(0.0);
    for d in &ds {
        s.push(s.last().unwrap() + d);
    }
    let t_min = table.temperatures[0];
    let t_max = *table.temperatures.last().unwrap();
    let anchor = match rule {
        AnchorRule::ZeroAtTmin => {
            if let Some(g) = gap {
                if g < 10.0 * t_min {
                    warn!("gap {g} is not large compared with T_min = {t_min}; s(T_min) = 0 is biased");
                }
            }
            Anchor {
                rule,
                temperature: t_min,
                value: 0.0,
            }
        }
        AnchorRule::ValueAtTmax(v) => Anchor {
            rule,
            temperature: t_max,
            value: v,
        },
        AnchorRule::Ln2AtInfinity => {
            warn!("anchoring at infinite temperature assumes a 1/T^2 specific-heat tail above T_max");
            let last = midpoints.last().unwrap();
            let tail = 0.5 * last.c * last.t * last.t / (t_max * t_max);
            Anchor {
                rule,
                temperature: t_max,
                value: std::f64::consts::LN_2 - tail,
            }
        }
    };
    let shift = match rule {
        AnchorRule::ZeroAtTmin => -s[0],
        _ => anchor.value - s[s.len() - 1],
    };
    s.iter_mut().for_each(|x| *x += shift);
    if s.windows(2).any(|w| w[1] < w[0]) {
        warn!("reconstructed entropy is not monotone");
    }
    Ok(EntropyCurve {
        meta: table.meta.clone(),
        temperatures: table.temperatures.clone(),
        midpoints,
        entropy: s,
        anchor,
        extension: ext,
    })
}

/// Tabulated entropy `s(T)` of one system at one field.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropySamples {
    pub meta: Option<TableMeta>,
    pub temperatures: Vec<f64>,
    pub entropy: Vec<f64>,
}

impl EntropySamples {
    /// Reads the `T` and `s` columns of an entropy-curve table.
    pub fn from_csv(table: &CsvTable) -> Result<Self> {
        let temperatures = table.column_f64("T")?;
        let entropy = table.column_f64("s")?;
        if temperatures.len() < 2 || temperatures.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Table(
                "entropy table needs at least two increasing temperatures".into(),
            ));
        }
        Ok(Self {
            meta: table.meta(),
            temperatures,
            entropy,
        })
    }

    /// Entropy at `t` by linear interpolation between table temperatures;
    /// `None` outside the tabulated range.
    pub fn entropy_at(&self, t: f64) -> Option<f64> {
        let ts = &self.temperatures;
        if !(t >= ts[0] && t <= ts[ts.len() - 1]) {
            return None;
        }
        let k = ts.partition_point(|&x| x <= t).clamp(1, ts.len() - 1);
        let (x0, x1) = (ts[k - 1], ts[k]);
        let w = (t - x0) / (x1 - x0);
        Some(self.entropy[k - 1] * (1.0 - w) + self.entropy[k] * w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezingPoint {
    pub omega: f64,
    pub t: f64,
    pub xi2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapRow {
    pub omega: f64,
    pub t: f64,
    pub s: f64,
    pub xi2: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EntropyMap {
    pub rows: Vec<MapRow>,
    /// Fields whose squeezing rows could not be matched, with the reason.
    pub errors: Vec<(f64, String)>,
}

impl EntropyMap {
    pub fn to_csv(&self, meta: Option<&TableMeta>) -> CsvTable {
        let mut out = CsvTable::new(&["omega", "T", "s", "xi2"]);
        if let Some(m) = meta {
            let mut m = m.clone();
            m.omega = None;
            out.comments.push(m.to_string());
        }
        for (omega, msg) in &self.errors {
            out.comments.push(format!("error omega={omega}: {msg}"));
        }
        for r in &self.rows {
            out.push_row([r.omega, r.t, r.s, r.xi2]);
        }
        out
    }
}

/// Attach an entropy to every squeezing point using the curve at its field.
pub fn join_squeezing_entropy(
    squeezing: &[SqueezingPoint],
    squeezing_meta: Option<&TableMeta>,
    curves: &[EntropySamples],
) -> Result<EntropyMap> {
    let mut by_omega: BTreeMap<u64, &EntropySamples> = BTreeMap::new();
    for c in curves {
        let meta = c
            .meta
            .as_ref()
            .ok_or_else(|| Error::Table("entropy curve carries no metadata".into()))?;
        if let Some(sm) = squeezing_meta {
            if !sm.same_system(meta) {
                return Err(Error::Table(format!(
                    "metadata mismatch: squeezing table is '{sm}', entropy curve is '{meta}'"
                )));
            }
        }
        let omega = meta
            .omega
            .ok_or_else(|| Error::Table(format!("entropy curve '{meta}' has no field")))?;
        if by_omega.insert(omega.to_bits(), c).is_some() {
            return Err(Error::Table(format!("two entropy curves at omega = {omega}")));
        }
    }
    if squeezing_meta.is_none() && !curves.is_empty() {
        warn!("squeezing table has no metadata; system match not checked");
    }

    let mut map = EntropyMap::default();
    let mut missing: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
    for p in squeezing {
        let Some(curve) = by_omega.get(&p.omega.to_bits()) else {
            if !map.errors.iter().any(|(o, _)| *o == p.omega) {
                map.errors.push((p.omega, "no entropy curve at this field".into()));
            }
            continue;
        };
        match curve.entropy_at(p.t) {
            Some(s) => map.rows.push(MapRow {
                omega: p.omega,
                t: p.t,
                s,
                xi2: p.xi2,
            }),
            None => missing.entry(p.omega.to_bits()).or_default().push(p.t),
        }
    }
    for (bits, ts) in missing {
        let omega = f64::from_bits(bits);
        let curve = by_omega[&bits];
        map.errors.push((
            omega,
            format!(
                "{} temperatures outside the entropy range [{}, {}]",
                ts.len(),
                curve.temperatures[0],
                curve.temperatures.last().unwrap()
            ),
        ));
    }
    Ok(map)
}
