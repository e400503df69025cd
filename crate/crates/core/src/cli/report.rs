use crate::error::{Error, Result};
use crate::fit::{fit_power_law, PowerLawFit};
use crate::table::{format_f64, CsvTable};

/// One method's values of a column along the shared field grid; `None` marks
/// points where the method failed.
#[derive(Clone, Debug, PartialEq)]
pub struct MethodSeries {
    pub method: String,
    pub values: Vec<Option<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub table: CsvTable,
    pub max_rel_dev: f64,
    pub mean_rel_dev: f64,
    pub fits: Vec<(String, PowerLawFit)>,
}

/// Join per-method series on the field grid and summarize their deviation
/// from the last method, which serves as the reference.
pub fn emit_report(
    column: &str,
    omegas: &[f64],
    series: &[MethodSeries],
    fit_window: Option<(f64, f64)>,
) -> Result<Report> {
    if series.len() < 2 {
        return Err(Error::Table("a report needs at least two tables".into()));
    }
    if let Some(s) = series.iter().find(|s| s.values.len() != omegas.len()) {
        return Err(Error::Table(format!(
            "table '{}' has {} rows, the field grid has {}",
            s.method,
            s.values.len(),
            omegas.len()
        )));
    }
    let reference = &series[series.len() - 1];
    let mut headers = vec!["omega".to_string()];
    headers.extend(series.iter().map(|s| s.method.clone()));
    headers.push("rel_dev".into());
    let mut table = CsvTable {
        headers,
        ..Default::default()
    };

    let mut devs = Vec::new();
    for (i, &omega) in omegas.iter().enumerate() {
        let mut row = vec![format_f64(omega)];
        row.extend(
            series
                .iter()
                .map(|s| format_f64(s.values[i].unwrap_or(f64::NAN))),
        );
        let dev = reference.values[i].and_then(|r| {
            series[..series.len() - 1]
                .iter()
                .map(|s| s.values[i].map(|v| ((v - r) / r).abs()))
                .try_fold(0.0f64, |m, d| d.map(|d| m.max(d)))
        });
        if let Some(d) = dev {
            devs.push(d);
        }
        row.push(format_f64(dev.unwrap_or(f64::NAN)));
        table.records.push(row);
    }

    let max_rel_dev = devs.iter().copied().fold(0.0, f64::max);
    let mean_rel_dev = if devs.is_empty() {
        0.0
    } else {
        devs.iter().sum::<f64>() / devs.len() as f64
    };
    table.comments.push(format!(
        "summary column={column} reference={} max_rel_dev={max_rel_dev} mean_rel_dev={mean_rel_dev}",
        reference.method
    ));

    let mut fits = Vec::new();
    if let Some(window) = fit_window {
        for s in series {
            let points: Vec<(f64, f64)> = omegas
                .iter()
                .zip(&s.values)
                .filter_map(|(&w, v)| v.map(|v| (w, v)))
                .collect();
            match fit_power_law(&points, window) {
                Ok(fit) => {
                    table.comments.push(format!(
                        "fit method={} window={}:{} exponent={} stderr={} points={}",
                        s.method, window.0, window.1, fit.exponent, fit.exponent_stderr, fit.points
                    ));
                    fits.push((s.method.clone(), fit));
                }
                Err(e) => table
                    .comments
                    .push(format!("fit method={} failed: {e}", s.method)),
            }
        }
    }
    Ok(Report {
        table,
        max_rel_dev,
        mean_rel_dev,
        fits,
    })
}
