//! Data behind the four comparison figures, as fixed-column tables.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::bounds::{bound_c4, bound_f, bound_g, bound_gghz_lambda, bound_theorem1, bound_theorem2, Variant, WClassCoefficients};
use super::verify::triples;
use crate::error::{Error, Result};
use crate::qstate::make_wclass;
use crate::svetlichny::{maximize_svetlichny, OptimizerOptions};

/// Offset applied to the endpoints of open intervals.
pub const OPEN_INTERVAL_NUDGE: f64 = 1e-9;

pub const DEFAULT_GRID_POINTS: usize = 181;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl Figure {
    pub fn parse(name: &str) -> Option<Figure> {
        match name.to_ascii_uppercase().as_str() {
            "FIG1" => Some(Figure::Fig1),
            "FIG2" => Some(Figure::Fig2),
            "FIG3" => Some(Figure::Fig3),
            "FIG4" => Some(Figure::Fig4),
            _ => None,
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Figure::Fig1 => &["theta", "theorem1", "gghz_lambda"],
            Figure::Fig2 => &["theta", "theorem2", "c4"],
            Figure::Fig3 => &["gamma", "F", "G"],
            Figure::Fig4 => &["gamma", "s2_abc", "s2_abd", "s2_acd", "s2_bcd", "sum", "F"],
        }
    }
}

/// A row whose values contradict the relation the figure illustrates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlaggedRow {
    pub row: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureTable {
    pub figure: Figure,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub flagged: Vec<FlaggedRow>,
}

/// `points` evenly spaced values from `lo` to `hi`, both included.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let step = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| if i + 1 == points { hi } else { lo + step * i as f64 })
        .collect()
}

fn slice_coefficients(gamma: f64) -> Result<WClassCoefficients> {
    WClassCoefficients::w_class(0.0, 0.0, gamma, (1.0 - gamma * gamma).max(0.0).sqrt())
}

/// Tabulates one figure over `grid_points` samples.
///
/// * FIG1: `(θ, 16|cos 2θ|, 16 max{cos⁴θ, sin⁴θ})` on `[0, π/4]`.
/// * FIG2: `(θ, bound_theorem2, 20 cos²θ)` on `(π/2, 3π/2)`.
/// * FIG3: `(γ, F, G)` on `[0, 1]` with `α = β = 0`, `δ² = 1 − γ²`.
/// * FIG4: squared maximized values of the four reductions on the same
///   slice, their sum and `F`. Uses `opts` for the maximizations.
pub fn sweep_figure(fig: Figure, grid_points: usize, opts: &OptimizerOptions) -> Result<FigureTable> {
    if grid_points < 2 {
        return Err(Error::Domain(format!("need at least 2 grid points, got {grid_points}")));
    }
    let mut rows = Vec::with_capacity(grid_points);
    let mut flagged = Vec::new();
    match fig {
        Figure::Fig1 => {
            for theta in linspace(0.0, FRAC_PI_4, grid_points) {
                rows.push(vec![theta, bound_theorem1(theta), bound_gghz_lambda(theta)]);
            }
        }
        Figure::Fig2 => {
            let lo = FRAC_PI_2 + OPEN_INTERVAL_NUDGE;
            let hi = 3.0 * FRAC_PI_2 - OPEN_INTERVAL_NUDGE;
            for theta in linspace(lo, hi, grid_points) {
                rows.push(vec![theta, bound_theorem2(theta), bound_c4(theta)]);
            }
        }
        Figure::Fig3 => {
            for gamma in linspace(0.0, 1.0, grid_points) {
                let w = slice_coefficients(gamma)?;
                rows.push(vec![gamma, bound_f(&w)?, bound_g(&w, Variant::Verbatim)?]);
            }
        }
        Figure::Fig4 => {
            for gamma in linspace(0.0, 1.0, grid_points) {
                let w = slice_coefficients(gamma)?;
                let psi = make_wclass(w.alpha, w.beta, w.gamma, w.delta, 0.0)?;
                let mut row = vec![gamma];
                for qubits in triples(4) {
                    let value = maximize_svetlichny(&psi.reduce(&qubits)?, opts)?.value;
                    row.push(value * value);
                }
                row.push(row[1..5].iter().sum());
                row.push(bound_f(&w)?);
                rows.push(row);
            }
        }
    }
    for (i, row) in rows.iter().enumerate() {
        let violation = match fig {
            Figure::Fig1 if row[1] > row[2] + 1e-12 => Some("theorem1 bound exceeds gghz_lambda"),
            Figure::Fig2 if row[1] > row[2] + 1e-12 => Some("theorem2 bound exceeds c4"),
            Figure::Fig3 if row[1] > row[2] + 1e-12 => Some("F exceeds G"),
            Figure::Fig4 if row[5] > row[6] + 1e-6 => Some("sum of squares exceeds F"),
            _ => None,
        };
        if let Some(reason) = violation {
            flagged.push(FlaggedRow {
                row: i,
                reason: reason.to_string(),
            });
        }
    }
    Ok(FigureTable {
        figure: fig,
        columns: fig.columns().iter().map(|c| c.to_string()).collect(),
        rows,
        flagged,
    })
}

/// Formats a float with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl FigureTable {
    /// One header row, then one line per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_f64(x)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn fig1_endpoints_touch_at_zero() {
        let t = sweep_figure(Figure::Fig1, 91, &OptimizerOptions::default()).unwrap();
        assert_eq!(t.rows.len(), 91);
        assert_eq!(t.rows[0], vec![0.0, 16.0, 16.0]);
        assert!(t.flagged.is_empty());
        assert_abs_diff_eq!(t.rows[90][0], FRAC_PI_4);
    }

    #[test]
    fn fig2_uses_open_interval() {
        let t = sweep_figure(Figure::Fig2, 11, &OptimizerOptions::default()).unwrap();
        assert_abs_diff_eq!(t.rows[0][0], FRAC_PI_2 + OPEN_INTERVAL_NUDGE);
        assert_abs_diff_eq!(t.rows[10][0], 3.0 * FRAC_PI_2 - OPEN_INTERVAL_NUDGE);
    }

    #[test]
    fn fig3_has_no_violations() {
        let t = sweep_figure(Figure::Fig3, 201, &OptimizerOptions::default()).unwrap();
        assert!(t.flagged.is_empty(), "{:?}", t.flagged);
    }

    #[test]
    fn csv_layout() {
        let t = sweep_figure(Figure::Fig1, 2, &OptimizerOptions::default()).unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "theta,theorem1,gghz_lambda");
        assert_eq!(lines[1], "0.0000000000000000e0,1.6000000000000000e1,1.6000000000000000e1");
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn grid_too_small() {
        assert!(matches!(
            sweep_figure(Figure::Fig1, 1, &OptimizerOptions::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn csv_values_round_trip() {
        for x in [0.1, std::f64::consts::PI, 1e-300, -2.5e17, 704.0 / 7.0] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
    }
}
