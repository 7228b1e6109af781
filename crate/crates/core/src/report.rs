//! Tabular output of experiment results.
//!
//! `results.csv` holds one row per (cell, metric) in cell order with a fixed
//! metric order; numbers use six fractional digits so that output is
//! byte-stable. Plot files hold one series column per model/strategy.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiment::{CellAggregate, StrategyAggregate, Summary};
use crate::mobility::MobilityModel;

pub const RESULTS_HEADER: [&str; 7] = [
    "model",
    "density",
    "velocity_mps",
    "metric",
    "ora",
    "lora",
    "percent_increase",
];

/// Reported metrics, in row order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Connectivity,
    HopCount,
    RouteLifetime,
    CdsSize,
    CdsLifetime,
    CdsConnectedFraction,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::Connectivity,
        Metric::HopCount,
        Metric::RouteLifetime,
        Metric::CdsSize,
        Metric::CdsLifetime,
        Metric::CdsConnectedFraction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Connectivity => "connectivity",
            Metric::HopCount => "hop_count",
            Metric::RouteLifetime => "route_lifetime_s",
            Metric::CdsSize => "cds_size",
            Metric::CdsLifetime => "cds_lifetime_s",
            Metric::CdsConnectedFraction => "cds_connected_fraction",
        }
    }

    /// Whether ORA and LORA can differ, and so a percent increase is shown.
    pub fn compares_strategies(self) -> bool {
        matches!(self, Metric::HopCount | Metric::CdsSize)
    }

    fn summary(self, agg: &StrategyAggregate) -> Option<Summary> {
        match self {
            Metric::Connectivity => Some(agg.connectivity),
            Metric::HopCount => Some(agg.hop_count),
            Metric::RouteLifetime => agg.route_lifetime,
            Metric::CdsSize => Some(agg.cds_size),
            Metric::CdsLifetime => agg.cds_lifetime,
            Metric::CdsConnectedFraction => Some(agg.cds_connected_fraction),
        }
    }

    pub fn value(self, agg: &StrategyAggregate) -> Option<f64> {
        self.summary(agg).and_then(|s| s.mean)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub model: MobilityModel,
    pub density: usize,
    pub velocity: f64,
    pub metric: Metric,
    pub ora: Option<f64>,
    pub lora: Option<f64>,
    pub percent_increase: Option<f64>,
}

impl ReportRow {
    fn fields(&self) -> [String; 7] {
        [
            self.model.key().to_string(),
            self.density.to_string(),
            fmt_num(Some(self.velocity)),
            self.metric.name().to_string(),
            fmt_num(self.ora),
            fmt_num(self.lora),
            fmt_num(self.percent_increase),
        ]
    }
}

fn fmt_num(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.6}")).unwrap_or_default()
}

pub fn report_rows(cells: &[CellAggregate]) -> Vec<ReportRow> {
    let mut rows = Vec::with_capacity(cells.len() * Metric::ALL.len());
    for cell in cells {
        for metric in Metric::ALL {
            let percent_increase = match metric {
                Metric::HopCount => cell.percent_increase_hops,
                Metric::CdsSize => cell.percent_increase_cds,
                _ => None,
            };
            rows.push(ReportRow {
                model: cell.key.model,
                density: cell.key.density,
                velocity: cell.key.velocity,
                metric,
                ora: metric.value(&cell.ora),
                lora: metric.value(&cell.lora),
                percent_increase,
            });
        }
    }
    rows
}

pub fn write_results_csv<W: Write>(cells: &[CellAggregate], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULTS_HEADER)?;
    for row in report_rows(cells) {
        w.write_record(row.fields())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Plot series for one metric against density or velocity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Density,
    Velocity,
}

impl Axis {
    fn name(self) -> &'static str {
        match self {
            Axis::Density => "density",
            Axis::Velocity => "velocity",
        }
    }
}

/// Writes a plot table: first column is the held-fixed parameter, second the
/// x value, then one column per model/strategy series. Series without a
/// value (ORA lifetimes) are omitted.
pub fn write_plot_csv<W: Write>(
    cells: &[CellAggregate],
    metric: Metric,
    axis: Axis,
    out: W,
) -> Result<()> {
    let mut models: Vec<MobilityModel> = cells.iter().map(|c| c.key.model).collect();
    models.sort();
    models.dedup();
    let lora_only = matches!(metric, Metric::RouteLifetime | Metric::CdsLifetime);
    let mut series = Vec::new();
    for &m in &models {
        if !lora_only {
            series.push((m, false));
        }
        series.push((m, true));
    }

    let (fixed_name, x_name) = match axis {
        Axis::Density => ("velocity_mps", "density"),
        Axis::Velocity => ("density", "velocity_mps"),
    };
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![fixed_name.to_string(), x_name.to_string()];
    header.extend(
        series
            .iter()
            .map(|(m, lora)| format!("{}_{}", m.key(), if *lora { "lora" } else { "ora" })),
    );
    w.write_record(&header)?;

    let mut points: Vec<(f64, f64)> = cells
        .iter()
        .map(|c| {
            let (d, v) = (c.key.density as f64, c.key.velocity);
            match axis {
                Axis::Density => (v, d),
                Axis::Velocity => (d, v),
            }
        })
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    points.dedup();

    for (fixed, x) in points {
        let (density, velocity) = match axis {
            Axis::Density => (x, fixed),
            Axis::Velocity => (fixed, x),
        };
        let fmt_axis = |v: f64, is_density: bool| {
            if is_density {
                format!("{}", v as usize)
            } else {
                fmt_num(Some(v))
            }
        };
        let mut record = vec![
            fmt_axis(fixed, axis == Axis::Velocity),
            fmt_axis(x, axis == Axis::Density),
        ];
        for &(model, lora) in &series {
            let cell = cells.iter().find(|c| {
                c.key.model == model
                    && c.key.density as f64 == density
                    && c.key.velocity == velocity
            });
            record.push(fmt_num(cell.and_then(|c| {
                metric.value(if lora { &c.lora } else { &c.ora })
            })));
        }
        w.write_record(&record)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Writes `results.csv`, `results.json` and the plot tables into `dir`,
/// returning the written paths.
pub fn write_reports(dir: &Path, cells: &[CellAggregate]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();

    let path = dir.join("results.csv");
    let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
    write_results_csv(cells, std::io::BufWriter::new(file))?;
    written.push(path);

    let path = dir.join("results.json");
    let json = serde_json::to_string_pretty(cells)?;
    fs::write(&path, json + "\n").map_err(|e| Error::io(&path, e))?;
    written.push(path);

    for metric in Metric::ALL {
        for axis in [Axis::Density, Axis::Velocity] {
            let path = dir.join(format!("plot_{}_by_{}.csv", metric.name(), axis.name()));
            let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
            write_plot_csv(cells, metric, axis, std::io::BufWriter::new(file))?;
            written.push(path);
        }
    }
    Ok(written)
}
