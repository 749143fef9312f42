//! Single points, parameter sweeps and figure tables.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde_json::Value;
use su11_core::analytic;
use su11_core::measurement::{analyze, sensitivity_error_propagation};
use su11_core::numeric::golden_section_min;
use su11_core::InterferometerConfig;

use crate::args::SweepParam;
use crate::config::Grid;
use crate::error::CliError;
use crate::format::{number, Cell, Table};

/// Largest accepted relative deviation between a numeric column and its
/// closed-form counterpart.
pub const DEVIATION_TOL: f64 = 1e-6;

/// A command result: a table for CSV, a JSON document, and the reason the
/// run failed its self-checks, if it did.
#[derive(Debug, Clone)]
pub struct Output {
    pub table: Table,
    pub json: Value,
    pub failure: Option<String>,
}

impl Output {
    fn from_table(table: Table, failure: Option<String>) -> Self {
        let json = table.to_json();
        Self { table, json, failure }
    }
}

/// `|numeric − exact| / |exact|` when both are finite.
pub fn deviation(numeric: f64, exact: f64) -> Option<f64> {
    if numeric.is_finite() && exact.is_finite() {
        let scale = exact.abs();
        Some(if scale == 0.0 { numeric.abs() } else { (numeric - exact).abs() / scale })
    } else {
        None
    }
}

/// Closed-form sensitivity where one exists: lossless with real inputs, or
/// equal losses at `η = 1/2` with real inputs.
pub fn analytic_sensitivity(c: &InterferometerConfig) -> Option<f64> {
    if c.phi != 0.0 || c.delta != 0.0 {
        return None;
    }
    if c.is_lossless() {
        Some(analytic::sensitivity_ideal(c.alpha_mag, c.g, c.eta, c.theta))
    } else if c.eta == 0.5 && c.loss_a == c.loss_b {
        analytic::sensitivity_lossy(c.alpha_mag, c.g, c.loss_a, c.n_th, c.theta).ok()
    } else {
        None
    }
}

const POINT_COLUMNS: [&str; 19] = [
    "alpha", "g", "eta", "theta", "L1", "L2", "n_th", "phi", "delta", "x_mean", "x_var", "delta_theta",
    "delta_theta_analytic", "deviation", "cfi", "qfi", "qcrb", "snl", "visibility",
];

struct PointRow {
    cells: Vec<Cell>,
    deviation: Option<f64>,
}

fn point_row(c: &InterferometerConfig) -> Result<PointRow, CliError> {
    let report = analyze(c)?;
    let exact = analytic_sensitivity(c);
    let dev = exact.and_then(|e| deviation(report.delta_theta, e));
    let cells = vec![
        c.alpha_mag.into(),
        c.g.into(),
        c.eta.into(),
        c.theta.into(),
        c.loss_a.into(),
        c.loss_b.into(),
        c.n_th.into(),
        c.phi.into(),
        c.delta.into(),
        report.x_mean.into(),
        report.x_var.into(),
        report.delta_theta.into(),
        exact.into(),
        dev.into(),
        report.cfi.into(),
        analytic::qfi(c.alpha_mag, c.g).into(),
        analytic::qcrb(c.alpha_mag, c.g).ok().into(),
        analytic::snl(c.alpha_mag, c.g).ok().into(),
        report.visibility.into(),
    ];
    Ok(PointRow { cells, deviation: dev })
}

/// One operating point; JSON is a single object.
pub fn point(c: &InterferometerConfig) -> Result<Output, CliError> {
    let row = point_row(c)?;
    let mut table = Table::new(POINT_COLUMNS);
    let failure = row
        .deviation
        .filter(|d| !(*d <= DEVIATION_TOL))
        .map(|d| format!("sensitivity deviates from the closed form by {}", number(d)));
    table.push(row.cells);
    let json = table.to_json()[0].clone();
    Ok(Output { table, json, failure })
}

pub fn default_sweep_grid(param: SweepParam) -> Grid {
    let (start, stop, points) = match param {
        SweepParam::G => (0.0, 3.0, 31),
        SweepParam::Eta => (0.0, 1.0, 101),
        SweepParam::Theta => (0.0, TAU, 181),
        SweepParam::Loss => (0.0, 0.99, 100),
        SweepParam::AlphaMag => (0.1, 10.0, 100),
        SweepParam::NTh => (0.0, 2.0, 21),
    };
    Grid { start, stop, points }
}

fn param_name(param: SweepParam) -> &'static str {
    match param {
        SweepParam::G => "g",
        SweepParam::Eta => "eta",
        SweepParam::Theta => "theta",
        SweepParam::Loss => "L",
        SweepParam::AlphaMag => "alpha_mag",
        SweepParam::NTh => "n_th",
    }
}

fn set_param(c: &InterferometerConfig, param: SweepParam, v: f64) -> InterferometerConfig {
    let mut c = *c;
    match param {
        SweepParam::G => c.g = v,
        SweepParam::Eta => c.eta = v,
        SweepParam::Theta => c.theta = v,
        SweepParam::Loss => {
            c.loss_a = v;
            c.loss_b = v;
        }
        SweepParam::AlphaMag => c.alpha_mag = v,
        SweepParam::NTh => c.n_th = v,
    }
    c
}

/// Point evaluation along one parameter; rows follow the grid order.
pub fn sweep(base: &InterferometerConfig, param: SweepParam, grid: &Grid) -> Result<Output, CliError> {
    let name = param_name(param);
    let mut table = Table::new(POINT_COLUMNS);
    let mut bad = Vec::new();
    for v in grid.values() {
        let c = set_param(base, param, v);
        c.validate()
            .map_err(|e| CliError::Usage(format!("{name}={} is out of range: {e}", number(v))))?;
        let row = point_row(&c)?;
        if let Some(d) = row.deviation.filter(|d| !(*d <= DEVIATION_TOL)) {
            bad.push((d, v));
        }
        table.push(row.cells);
    }
    Ok(Output::from_table(table, summarize(&bad, name)))
}

/// Closed-form optimal transmittance next to the argmin of the numeric
/// pipeline sensitivity (|α| = 1, θ = π/2).
pub fn fig_eta_opt(grid: &Grid) -> Result<Output, CliError> {
    let mut table = Table::new(["g", "eta_opt_analytic", "eta_opt_numeric_argmin", "deviation"]);
    let mut bad = Vec::new();
    for g in grid.values() {
        if g < 0.0 {
            return Err(CliError::Usage("gain must be non-negative".into()));
        }
        let cost = |eta: f64| {
            sensitivity_error_propagation(&InterferometerConfig::new(1.0, g, eta, FRAC_PI_2))
                .unwrap_or(f64::INFINITY)
        };
        let numeric = golden_section_min(cost, 0.0, 1.0, 1e-10)?;
        let exact = analytic::eta_opt(g);
        let dev = deviation(numeric, exact).unwrap_or(f64::INFINITY);
        if !(dev <= DEVIATION_TOL) {
            bad.push((dev, g));
        }
        table.push(vec![g.into(), exact.into(), numeric.into(), dev.into()]);
    }
    Ok(Output::from_table(table, summarize(&bad, "g")))
}

fn summarize(bad: &[(f64, f64)], name: &str) -> Option<String> {
    if bad.is_empty() {
        return None;
    }
    let shown: Vec<String> = bad
        .iter()
        .take(10)
        .map(|(d, v)| format!("{} at {name}={}", number(*d), number(*v)))
        .collect();
    Some(format!(
        "{} deviation(s) above {}: {}",
        bad.len(),
        number(DEVIATION_TOL),
        shown.join("; ")
    ))
}

/// `Δθ_QCRB / Δθ_min` on a gain × photon-number grid, with `Δθ_min` taken
/// from the numeric pipeline at `η = 1/2`, `θ = π/2`.
pub fn fig_qcrb_ratio(g_grid: &Grid, alpha2_grid: &Grid) -> Result<Output, CliError> {
    if alpha2_grid.start <= 0.0 {
        return Err(CliError::Usage("|alpha|^2 grid must be positive".into()));
    }
    let mut table = Table::new([
        "g",
        "alpha2",
        "qcrb",
        "delta_min_analytic",
        "delta_min_numeric",
        "ratio",
        "deviation",
    ]);
    let mut bad = Vec::new();
    for g in g_grid.values() {
        for a2 in alpha2_grid.values() {
            let a = a2.sqrt();
            let bound = analytic::qcrb(a, g)?;
            let exact = analytic::sensitivity_ideal_min(a, g);
            let numeric = sensitivity_error_propagation(&InterferometerConfig::new(a, g, 0.5, FRAC_PI_2))?;
            let dev = deviation(numeric, exact).unwrap_or(f64::INFINITY);
            if !(dev <= DEVIATION_TOL) {
                bad.push((dev, g));
            }
            table.push(vec![
                g.into(),
                a2.into(),
                bound.into(),
                exact.into(),
                numeric.into(),
                (bound / numeric).into(),
                dev.into(),
            ]);
        }
    }
    Ok(Output::from_table(table, summarize(&bad, "g")))
}

/// Comma-separated list of positive photon numbers.
pub fn parse_alpha2_list(text: &str) -> Result<Vec<f64>, CliError> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| *v > 0.0 && v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("bad |alpha|^2 value '{}'", s.trim())))
        })
        .collect::<Result<Vec<f64>, CliError>>()?;
    if values.is_empty() {
        return Err(CliError::Usage("empty |alpha|^2 list".into()));
    }
    Ok(values)
}

/// Maximal tolerable loss per photon number, the large-gain limit, and the
/// largest gap between the linear solution and bisection.
pub fn fig_lmax(grid: &Grid, alpha2: &[f64], n_th: f64) -> Result<Output, CliError> {
    if !(n_th >= 0.0 && n_th.is_finite()) {
        return Err(CliError::Usage("n-th must be non-negative".into()));
    }
    let mut columns = vec!["g".to_string()];
    columns.extend(alpha2.iter().map(|a2| format!("lmax_alpha2_{}", number(*a2))));
    columns.push("lmax_limit".into());
    columns.push("deviation".into());
    let mut table = Table::new(columns);
    let mut bad = Vec::new();
    for g in grid.values() {
        if g < 0.0 {
            return Err(CliError::Usage("gain must be non-negative".into()));
        }
        let mut cells = vec![Cell::Num(g)];
        let mut worst: f64 = 0.0;
        for &a2 in alpha2 {
            let a = a2.sqrt();
            let linear = analytic::lmax_solve(a, g, n_th)?;
            let bisected = analytic::lmax_bisect(a, g, n_th)?;
            worst = worst.max((linear - bisected).abs());
            cells.push(linear.into());
        }
        if !(worst <= DEVIATION_TOL) {
            bad.push((worst, g));
        }
        cells.push(analytic::lmax_limit(n_th).into());
        cells.push(worst.into());
        table.push(cells);
    }
    Ok(Output::from_table(table, summarize(&bad, "g")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_examples() {
        let out = point(&InterferometerConfig::new(1.0, 0.0, 0.5, 1.570_796_3)).unwrap();
        let dt = out.json["delta_theta"].as_f64().unwrap();
        assert!((dt - 0.707_106_78).abs() < 1e-6);
        assert!(out.failure.is_none());

        let out = point(&InterferometerConfig::new(10.0, 1.0, 0.5, FRAC_PI_2)).unwrap();
        assert!((out.json["delta_theta"].as_f64().unwrap() - 9.569_4e-3).abs() < 1e-6);
        let qcrb = 1.0 / (200.0 * (4f64.exp() + 1.0) + 2f64.sinh().powi(2)).sqrt();
        assert!((out.json["qcrb"].as_f64().unwrap() - qcrb).abs() < 1e-15);

        let out = point(&InterferometerConfig::default().with_loss(1.0, 1.0, 1.0)).unwrap();
        assert!((out.json["x_var"].as_f64().unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(out.json["delta_theta"], Value::from("inf"));
        assert_eq!(out.json["delta_theta_analytic"], Value::Null);
    }

    #[test]
    fn analytic_applicability() {
        let c = InterferometerConfig::new(1.0, 0.5, 0.3, 1.0);
        assert!(analytic_sensitivity(&c).is_some());
        assert!(analytic_sensitivity(&c.with_loss(0.1, 0.1, 0.0)).is_none());
        assert!(analytic_sensitivity(&c.with_phases(0.2, -0.2)).is_none());
        let half = InterferometerConfig::new(1.0, 0.5, 0.5, 1.0);
        assert!(analytic_sensitivity(&half.with_loss(0.1, 0.1, 1.0)).is_some());
        assert!(analytic_sensitivity(&half.with_loss(0.1, 0.2, 1.0)).is_none());
    }

    #[test]
    fn eta_opt_rows() {
        let out = fig_eta_opt(&Grid { start: 0.0, stop: 2.0, points: 3 }).unwrap();
        assert!(out.failure.is_none());
        assert_eq!(out.json[0]["eta_opt_analytic"], Value::from(1.0));
        assert!((out.json[0]["eta_opt_numeric_argmin"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        let last = out.json[2]["eta_opt_analytic"].as_f64().unwrap();
        assert!((last - 0.500_335_462_590_151_2).abs() < 1e-15);
    }

    #[test]
    fn qcrb_ratio_rows() {
        let out = fig_qcrb_ratio(&Grid { start: 0.0, stop: 2.0, points: 2 }, &Grid {
            start: 1.0,
            stop: 100.0,
            points: 2,
        })
        .unwrap();
        assert!(out.failure.is_none());
        let ratio = |i: usize| out.json[i]["ratio"].as_f64().unwrap();
        assert!((ratio(0) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
        assert!(ratio(3) > 0.99 && ratio(3) <= 1.0);
    }

    #[test]
    fn lmax_rows() {
        let out = fig_lmax(&Grid { start: 1.0, stop: 3.0, points: 3 }, &[10.0, 1000.0], 1.0).unwrap();
        assert!(out.failure.is_none());
        assert_eq!(
            out.table.columns,
            ["g", "lmax_alpha2_10", "lmax_alpha2_1000", "lmax_limit", "deviation"]
        );
        assert_eq!(out.json[0]["lmax_limit"], Value::from(0.25));
        assert!(parse_alpha2_list("10, 0").is_err());
        assert_eq!(parse_alpha2_list("10,100").unwrap(), [10.0, 100.0]);
    }

    #[test]
    fn sweep_rejects_out_of_range_points() {
        let base = InterferometerConfig::default();
        let r = sweep(&base, SweepParam::Eta, &Grid { start: 0.5, stop: 1.5, points: 3 });
        assert!(matches!(r, Err(CliError::Usage(_))));
        let out = sweep(&base, SweepParam::Theta, &default_sweep_grid(SweepParam::Theta)).unwrap();
        assert_eq!(out.table.rows.len(), 181);
        assert!(out.failure.is_none(), "{:?}", out.failure);
    }
}
