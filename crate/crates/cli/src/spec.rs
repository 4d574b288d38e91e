//! Curve specification files.

use std::path::Path;

use serde::Deserialize;

use cwidth::curves::{self, RandomCurveParams};
use cwidth::{ConvexCurve, ParamGrid, PeriodicFn, Vec2};

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub grid_n: usize,
    pub source: Source,
    /// Uniform scale applied to the support function.
    #[serde(default)]
    pub scale: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Preset(String),
    Fourier { fourier: Fourier },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fourier {
    pub a0: f64,
    #[serde(default)]
    pub cos: Vec<(u32, f64)>,
    #[serde(default)]
    pub sin: Vec<(u32, f64)>,
}

pub const PRESETS: [&str; 3] = ["paper-deltoid", "circle", "offset-circle"];

/// Center of the `offset-circle` preset.
pub const OFFSET_CENTER: Vec2 = Vec2 { x: 0.5, y: -0.25 };

impl CurveSpec {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::BadSpec(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::BadSpec(format!("{}: {e}", path.display())))
    }

    /// Samples the support function and validates convexity.
    pub fn build(&self, grid_override: Option<usize>) -> Result<ConvexCurve, CliError> {
        let n = grid_override.unwrap_or(self.grid_n);
        let grid = ParamGrid::new(n)
            .map_err(|_| CliError::BadSpec(format!("grid_n: {n} must be even and at least 16")))?;
        let scale = self.scale.unwrap_or(1.0);
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(CliError::BadSpec(format!("scale: {scale} must be positive")));
        }
        let h = match &self.source {
            Source::Preset(name) => preset(&grid, name)?,
            Source::Fourier { fourier } => fourier.support(&grid)?,
        };
        ConvexCurve::new(h.scale(scale)).map_err(|e| CliError::Convexity(e.to_string()))
    }
}

fn preset(grid: &ParamGrid, name: &str) -> Result<PeriodicFn, CliError> {
    match name {
        "paper-deltoid" => {
            let gamma = curves::deltoid(grid);
            // the support function must sweep M + 10 e_r for the explicit deltoid M
            let pts = gamma.points();
            let worst = grid
                .thetas()
                .enumerate()
                .map(|(k, t)| (pts.point(k) - (curves::deltoid_m(t) + 10.0 * Vec2::radial(t))).norm())
                .fold(0.0, f64::max);
            if worst > 1e-10 * pts.bbox_diameter() {
                return Err(CliError::Numeric(format!(
                    "deltoid preset deviates from its closed form by {worst:e}"
                )));
            }
            Ok(gamma.support().clone())
        }
        "circle" => Ok(PeriodicFn::constant(grid, 1.0)),
        "offset-circle" => Ok(curves::circle(grid, 1.0, OFFSET_CENTER).support().clone()),
        other => Err(CliError::BadSpec(format!(
            "source: unknown preset {other:?} (expected one of {})",
            PRESETS.join(", ")
        ))),
    }
}

impl Fourier {
    fn support(&self, grid: &ParamGrid) -> Result<PeriodicFn, CliError> {
        if !self.a0.is_finite() {
            return Err(CliError::BadSpec("source.fourier.a0 must be finite".into()));
        }
        for (field, terms) in [("cos", &self.cos), ("sin", &self.sin)] {
            for &(m, c) in terms {
                if m as usize >= grid.half() {
                    return Err(CliError::BadSpec(format!(
                        "source.fourier.{field}: frequency {m} not resolved by grid_n = {}",
                        grid.len()
                    )));
                }
                if !c.is_finite() {
                    return Err(CliError::BadSpec(format!(
                        "source.fourier.{field}: coefficient of frequency {m} is not finite"
                    )));
                }
            }
        }
        Ok(curves::fourier_support(grid, self.a0, &self.cos, &self.sin))
    }
}

/// Seeded random convex curve for `verify --random`.
pub fn random_curve(grid_n: usize, seed: u64) -> Result<ConvexCurve, CliError> {
    let grid = ParamGrid::new(grid_n)
        .map_err(|_| CliError::BadSpec(format!("grid_n: {grid_n} must be even and at least 16")))?;
    Ok(curves::random_convex(&grid, seed, RandomCurveParams::default()))
}
