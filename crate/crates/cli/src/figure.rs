//! Curve data for figures 1–3.
//!
//! Figures 1 and 2 boost the scenario state with velocities `v ∈ [0, v_max]`
//! and record `|⟨Σ⟩^Λ|` together with `W₁(r₁)`, `W₂(r₂)` and `⟨Σ⟩^Λ`.
//! Figure 3 records `|W₁(r₁) − W₂(r₁)|` with `p₂ = d·p₁` for every `d` in
//! `figure.dots`.

use lorentz_spin::{
    erasable_polarization, transform_state, KinematicsError, MomentumSpec, SpinMapError,
};
use thiserror::Error;

use crate::scenario::{BoostSize, Scenario};

/// Slack on the upper bound of emitted magnitudes.
pub const MAGNITUDE_SLACK: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum FigureError {
    #[error("no figure {0}; expected 1, 2 or 3")]
    UnknownFigure(u8),
    #[error("figure 3 needs |r1| <= 1/2, got {0}")]
    RadiusTooLarge(f64),
    #[error(transparent)]
    Spin(#[from] SpinMapError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error("invalid curve table: {0}")]
    InvalidTable(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl CurveTable {
    /// Checks that the first column is `v` and strictly increasing, and that
    /// every `magnitude*` column lies in `[0, 1 + 1e-12]`.
    pub fn new(columns: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self, FigureError> {
        let bad = |m: String| Err(FigureError::InvalidTable(m));
        if columns.first().map(String::as_str) != Some("v") {
            return bad("first column must be v".into());
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != columns.len() {
                return bad(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    columns.len()
                ));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return bad(format!("row {i} has a non-finite entry"));
            }
            if i > 0 && row[0] <= rows[i - 1][0] {
                return bad(format!("v not strictly increasing at row {i}"));
            }
            for (name, x) in columns.iter().zip(row) {
                if name.starts_with("magnitude") && !(0.0..=1.0 + MAGNITUDE_SLACK).contains(x) {
                    return bad(format!("{name} = {x} out of range at row {i}"));
                }
            }
        }
        Ok(Self { columns, rows })
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

/// `n` uniformly spaced velocities from 0 to `vmax`, both ends included.
pub fn velocity_grid(n: usize, vmax: f64) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i + 1 == n {
                vmax
            } else {
                vmax * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Column label for a figure-3 curve.
pub fn dot_column(dot: f64) -> String {
    format!("magnitude[dot={dot}]")
}

/// `p₂` with spatial part `d·p₁`.
pub fn scaled_momentum(p1: &MomentumSpec, d: f64) -> Result<MomentumSpec, KinematicsError> {
    if d == 0.0 {
        return Ok(MomentumSpec::at_rest());
    }
    let magnitude = d.abs() * p1.momentum_magnitude();
    MomentumSpec::new(magnitude.asinh(), p1.direction() * d.signum())
}

pub fn run_figure(which: u8, sc: &Scenario) -> Result<CurveTable, FigureError> {
    match which {
        1 | 2 => spin_curve(sc),
        3 => erasure_curves(sc),
        other => Err(FigureError::UnknownFigure(other)),
    }
}

fn spin_curve(sc: &Scenario) -> Result<CurveTable, FigureError> {
    let columns = [
        "v",
        "magnitude",
        "w1r1_x",
        "w1r1_y",
        "w1r1_z",
        "w2r2_x",
        "w2r2_y",
        "w2r2_z",
        "sigma_x",
        "sigma_y",
        "sigma_z",
    ];
    let state = sc.state();
    let mut rows = Vec::with_capacity(sc.samples);
    for v in velocity_grid(sc.samples, sc.vmax) {
        let boosted = transform_state(&sc.boost_with(BoostSize::Velocity(v)), &state)?;
        let (a, b, s) = (boosted.r1(), boosted.r2(), boosted.mean_spin());
        rows.push(vec![
            v,
            s.norm(),
            a.x,
            a.y,
            a.z,
            b.x,
            b.y,
            b.z,
            s.x,
            s.y,
            s.z,
        ]);
    }
    CurveTable::new(columns.iter().map(|c| c.to_string()).collect(), rows)
}

fn erasure_curves(sc: &Scenario) -> Result<CurveTable, FigureError> {
    let r1 = sc.r1;
    if r1.norm() > 0.5 + MAGNITUDE_SLACK {
        return Err(FigureError::RadiusTooLarge(r1.norm()));
    }
    let p1 = sc.p1();
    let partners = sc
        .dots
        .iter()
        .map(|&d| scaled_momentum(&p1, d))
        .collect::<Result<Vec<_>, _>>()?;
    let mut columns = vec!["v".to_string()];
    columns.extend(sc.dots.iter().map(|&d| dot_column(d)));
    let mut rows = Vec::with_capacity(sc.samples);
    for v in velocity_grid(sc.samples, sc.vmax) {
        let b = sc.boost_with(BoostSize::Velocity(v));
        let mut row = vec![v];
        for p2 in &partners {
            row.push(erasable_polarization(&b, &p1, p2, r1)?.norm());
        }
        rows.push(row);
    }
    CurveTable::new(columns, rows)
}
