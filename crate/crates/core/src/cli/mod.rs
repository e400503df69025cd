//! Command-line front end.
//!
//! Every subcommand produces one table. Output files start with `#` lines
//! holding the tool version, the normalized configuration as JSON and, where
//! it applies, the system metadata; the CSV is mirrored as JSON.

pub mod config;
pub mod report;

use std::path::Path;

use clap::Parser;
use rayon::prelude::*;
use serde_json::json;

use crate::dynamics::{ramp_from_ground_state, EvolveOptions, RampSeries};
use crate::ed::{evolve_ramp, ground_observables, EdRampOptions, SpinSystem, ThermalSpectrum};
use crate::error::Result;
use crate::lsw::static_observables;
use crate::model::SpinObservables;
use crate::schedule::RampSchedule;
use crate::table::{format_f64, write_atomic, CsvTable};
use crate::thermo::{entropy_curve, join_squeezing_entropy, EnergyTable, EntropySamples, SqueezingPoint};

pub use config::{validate_config, Cli, ConfigError, Format, Run, RunConfig, StaticMethod, Task};
pub use report::{emit_report, MethodSeries, Report};

/// Environment variable fixing the worker-thread count.
pub const THREADS_ENV: &str = "SPINSQUEEZE_THREADS";

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

fn header(config: &RunConfig) -> Result<Vec<String>> {
    Ok(vec![
        format!("spinsqueeze {}", env!("CARGO_PKG_VERSION")),
        format!("config: {}", serde_json::to_string(config)?),
    ])
}

fn static_point(method: StaticMethod, system: &config::SystemSpec, omega: f64) -> Result<SpinObservables> {
    let model = system.model(omega)?;
    match method {
        StaticMethod::Lsw => static_observables(&model),
        StaticMethod::Ed => ground_observables(&model).map(|(obs, _)| obs),
    }
}

fn sweep_table(method: StaticMethod, system: &config::SystemSpec, omegas: &[f64]) -> CsvTable {
    let mut headers = vec!["omega", "jx_per_spin", "var_jz", "var_jy", "xi2", "fq", "gap"];
    if method == StaticMethod::Ed {
        headers.extend(["var_jx", "cov_yz"]);
    }
    let mut table = CsvTable::new(&headers);
    table.comments.push(system.meta(None).to_string());
    let results: Vec<Result<SpinObservables>> = omegas
        .par_iter()
        .map(|&w| static_point(method, system, w))
        .collect();
    for (&omega, res) in omegas.iter().zip(results) {
        match res {
            Ok(o) => {
                let mut row = vec![
                    omega,
                    o.jx_per_spin(),
                    o.var_jz,
                    o.var_jy,
                    o.xi2,
                    o.fq,
                    o.gap.unwrap_or(f64::NAN),
                ];
                if method == StaticMethod::Ed {
                    row.extend([o.var_jx.unwrap_or(f64::NAN), o.cov_yz]);
                }
                table.push_row(row);
            }
            Err(e) => table.comments.push(format!("error omega={omega}: {e}")),
        }
    }
    table
}

fn series_table(series: &RampSeries) -> CsvTable {
    let mut table = CsvTable::new(&["t", "omega", "jx_per_spin", "var_jz", "var_jy", "xi2"]);
    for s in &series.samples {
        table.push_row([
            s.t,
            s.omega,
            s.obs.jx_per_spin(),
            s.obs.var_jz,
            s.obs.var_jy,
            s.obs.xi2,
        ]);
    }
    table
}

/// Compute the table a configuration describes.
pub fn execute(config: &RunConfig) -> Result<CsvTable> {
    let mut table = match &config.task {
        Task::Sweep {
            method,
            system,
            omega_grid,
        } => sweep_table(*method, system, &omega_grid.values()),
        Task::Ramp {
            method,
            system,
            omega_i,
            omega_f,
            tau,
            hold,
            dt,
            stride,
            zero_mode,
        } => {
            let ramp = RampSchedule::new(*omega_i, *omega_f, *tau, *hold)?;
            let template = system.model(*omega_i)?;
            let (mut table, extra) = match method {
                config::RampMethod::Tlsw => {
                    let opts = EvolveOptions {
                        dt: *dt,
                        stride: *stride,
                        equations: *zero_mode,
                    };
                    (series_table(&ramp_from_ground_state(&template, &ramp, &opts)?), None)
                }
                config::RampMethod::EdRamp => {
                    let opts = EdRampOptions {
                        dt: *dt,
                        stride: *stride,
                    };
                    let res = evolve_ramp(&template, &ramp, &opts)?;
                    (
                        series_table(&res.series),
                        Some(format!("max_norm_drift={}", format_f64(res.max_norm_drift))),
                    )
                }
            };
            table.comments.push(system.meta(None).to_string());
            table.comments.extend(extra);
            table
        }
        Task::Thermal {
            system,
            omega_grid,
            t_grid,
        } => {
            let omegas = omega_grid.values();
            let temps = t_grid.values();
            let mut table = CsvTable::new(&[
                "omega", "T", "e", "s", "jx_per_spin", "var_jx", "var_jy", "var_jz", "xi2", "fq",
            ]);
            let single = (omegas.len() == 1).then(|| omegas[0]);
            table.comments.push(system.meta(single).to_string());
            let sys = SpinSystem::from_model(&system.model(1.0)?)?;
            for &omega in &omegas {
                let spec = ThermalSpectrum::new(&sys, omega)?;
                for &t in &temps {
                    let p = spec.at(t)?;
                    table.push_row([
                        omega,
                        t,
                        p.energy_per_spin,
                        p.entropy_per_spin,
                        p.obs.jx_per_spin(),
                        p.obs.var_jx.unwrap_or(f64::NAN),
                        p.obs.var_jy,
                        p.obs.var_jz,
                        p.obs.xi2,
                        p.obs.fq,
                    ]);
                }
            }
            table
        }
        Task::Entropy {
            input,
            omega,
            anchor,
            boundary,
            gap,
        } => {
            let energy = EnergyTable::from_csv(&CsvTable::read(input)?, *omega)?;
            entropy_curve(&energy, *anchor, *boundary, *gap)?.to_csv()
        }
        Task::Join { squeezing, entropy } => {
            let sq = CsvTable::read(squeezing)?;
            let (omegas, temps, xi2) = (sq.column_f64("omega")?, sq.column_f64("T")?, sq.column_f64("xi2")?);
            let points: Vec<SqueezingPoint> = (0..omegas.len())
                .map(|i| SqueezingPoint {
                    omega: omegas[i],
                    t: temps[i],
                    xi2: xi2[i],
                })
                .collect();
            let curves = entropy
                .iter()
                .map(|p| EntropySamples::from_csv(&CsvTable::read(p)?))
                .collect::<Result<Vec<_>>>()?;
            let meta = sq.meta();
            join_squeezing_entropy(&points, meta.as_ref(), &curves)?.to_csv(meta.as_ref())
        }
        Task::Compare {
            methods,
            system,
            omega_grid,
            column,
            fit_window,
        } => {
            let omegas = omega_grid.values();
            let mut series = Vec::new();
            let mut failures = Vec::new();
            for &m in methods {
                let values: Vec<Option<f64>> = omegas
                    .par_iter()
                    .map(|&w| static_point(m, system, w))
                    .collect::<Vec<_>>()
                    .into_iter()
                    .zip(&omegas)
                    .map(|(r, &w)| match r {
                        Ok(o) => o.column(column),
                        Err(e) => {
                            failures.push(format!("error method={} omega={w}: {e}", m.name()));
                            None
                        }
                    })
                    .collect();
                series.push(MethodSeries {
                    method: m.name().to_string(),
                    values,
                });
            }
            let mut table = emit_report(column, &omegas, &series, *fit_window)?.table;
            table.comments.insert(0, system.meta(None).to_string());
            table.comments.extend(failures);
            table
        }
    };
    let mut comments = header(config)?;
    comments.append(&mut table.comments);
    table.comments = comments;
    Ok(table)
}

fn render_json(table: &CsvTable) -> Result<String> {
    Ok(serde_json::to_string_pretty(&table.to_json())? + "\n")
}

/// Write the table where the run asks for it.
pub fn write_output(run: &Run, table: &CsvTable) -> Result<()> {
    let text = match run.config.format {
        Format::Csv => table.render()?,
        Format::Json => render_json(table)?,
    };
    match &run.output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            write_atomic(path, text.as_bytes())?;
            if run.config.format == Format::Csv {
                write_atomic(&json_mirror(path), render_json(table)?.as_bytes())?;
            }
            Ok(())
        }
    }
}

/// Path of the JSON mirror written next to a CSV file.
pub fn json_mirror(path: &Path) -> std::path::PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".json");
    path.with_file_name(name)
}

fn error_record(kind: &str, messages: &[String]) {
    eprintln!("{}", json!({ "error": kind, "messages": messages }));
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got '{raw}'"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Entry point of the binary; returns the process exit code.
pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    // dense kernels run sequentially so results do not depend on the pool size
    faer::set_global_parallelism(faer::Parallelism::None);
    if let Err(msg) = configure_threads() {
        error_record("config", &[msg]);
        return EXIT_CONFIG;
    }
    let run = match validate_config(&cli) {
        Ok(run) => run,
        Err(ConfigError(violations)) => {
            error_record("config", &violations);
            return EXIT_CONFIG;
        }
    };
    match execute(&run.config).and_then(|t| write_output(&run, &t)) {
        Ok(()) => 0,
        Err(e) if e.is_input_error() => {
            error_record("input", &[e.to_string()]);
            EXIT_CONFIG
        }
        Err(e) => {
            error_record("numerical", &[e.to_string()]);
            EXIT_NUMERICAL
        }
    }
}
