//! Closed plane curves sampled on a periodic grid.

use crate::error::{Error, Result};
use crate::periodic::{ParamGrid, PeriodicFn};
use crate::vec2::Vec2;

/// Closed curve given by one point per grid angle. The point sequence is
/// implicitly cyclic; no convexity is assumed, so cusps are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricCurve {
    grid: ParamGrid,
    points: Vec<Vec2>,
}

impl ParametricCurve {
    pub fn new(grid: &ParamGrid, points: Vec<Vec2>) -> Result<Self> {
        if points.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: points.len(),
            });
        }
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            grid: grid.clone(),
            points,
        })
    }

    /// Panics if `f` produces a non-finite point.
    pub fn from_fn(grid: &ParamGrid, f: impl Fn(f64) -> Vec2) -> Self {
        Self::new(grid, grid.thetas().map(f).collect()).expect("sampled curve must be finite")
    }

    pub fn from_coords(x: &PeriodicFn, y: &PeriodicFn) -> Result<Self> {
        x.grid().check_same(y.grid())?;
        let points = x
            .values()
            .iter()
            .zip(y.values())
            .map(|(&x, &y)| Vec2::new(x, y))
            .collect();
        Self::new(x.grid(), points)
    }

    pub fn constant(grid: &ParamGrid, p: Vec2) -> Self {
        Self {
            grid: grid.clone(),
            points: vec![p; grid.len()],
        }
    }

    #[inline]
    pub fn grid(&self) -> &ParamGrid {
        &self.grid
    }

    #[inline]
    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    #[inline]
    pub fn point(&self, k: usize) -> Vec2 {
        self.points[k % self.points.len()]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn x(&self) -> PeriodicFn {
        PeriodicFn::from_values(&self.grid, self.points.iter().map(|p| p.x).collect())
            .expect("finite")
    }

    pub fn y(&self) -> PeriodicFn {
        PeriodicFn::from_values(&self.grid, self.points.iter().map(|p| p.y).collect())
            .expect("finite")
    }

    /// Coordinatewise spectral derivative with respect to θ.
    pub fn derivative(&self) -> Self {
        Self::from_coords(&self.x().derivative(), &self.y().derivative()).expect("same grid")
    }

    /// `self + w·other` pointwise.
    pub fn add_scaled(&self, weight: &PeriodicFn, other: &ParametricCurve) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        self.grid.check_same(weight.grid())?;
        let points = self
            .points
            .iter()
            .zip(&other.points)
            .zip(weight.values())
            .map(|((&p, &q), &w)| p + w * q)
            .collect();
        Self::new(&self.grid, points)
    }

    /// `self + s·other` pointwise.
    pub fn add_constant_multiple(&self, s: f64, other: &ParametricCurve) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        let points = self
            .points
            .iter()
            .zip(&other.points)
            .map(|(&p, &q)| p + s * q)
            .collect();
        Self::new(&self.grid, points)
    }

    pub fn translate(&self, t: Vec2) -> Self {
        Self {
            grid: self.grid.clone(),
            points: self.points.iter().map(|&p| p + t).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            grid: self.grid.clone(),
            points: self.points.iter().map(|&p| s * p).collect(),
        }
    }

    /// Pointwise bracket `[self(θ), other(θ)]`.
    pub fn bracket(&self, other: &ParametricCurve) -> Result<PeriodicFn> {
        self.grid.check_same(&other.grid)?;
        PeriodicFn::from_values(
            &self.grid,
            self.points
                .iter()
                .zip(&other.points)
                .map(|(p, q)| p.bracket(*q))
                .collect(),
        )
    }

    /// Largest pointwise distance to `other`.
    pub fn max_distance(&self, other: &ParametricCurve) -> Result<f64> {
        self.grid.check_same(&other.grid)?;
        Ok(self
            .points
            .iter()
            .zip(&other.points)
            .map(|(p, q)| (*p - *q).norm())
            .fold(0.0, f64::max))
    }

    /// Largest distance of a sample from `center`.
    pub fn max_radius_about(&self, center: Vec2) -> f64 {
        self.points
            .iter()
            .map(|p| (*p - center).norm())
            .fold(0.0, f64::max)
    }

    /// Diagonal of the axis-aligned bounding box.
    pub fn bbox_diameter(&self) -> f64 {
        let (mut lo, mut hi) = (
            Vec2::new(f64::INFINITY, f64::INFINITY),
            Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for p in &self.points {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (hi - lo).norm()
    }

    pub fn centroid(&self) -> Vec2 {
        let s = self
            .points
            .iter()
            .fold(Vec2::ZERO, |acc, &p| acc + p);
        (1.0 / self.len() as f64) * s
    }

    /// The first `n/2` samples, one tracing of a π-periodic curve.
    pub fn half_tracing(&self) -> &[Vec2] {
        &self.points[..self.grid.half()]
    }

    /// Largest `|c(θ+π) − c(θ)|`; zero for curves traced twice.
    pub fn antipodal_residual(&self) -> f64 {
        let h = self.grid.half();
        (0..h)
            .map(|k| (self.points[k] - self.points[k + h]).norm())
            .fold(0.0, f64::max)
    }
}

/// The curve `h e_r + h' e_θ` swept by a (generalized) support function `h`.
///
/// For `h + h'' > 0` this is the boundary of the convex body with support `h`;
/// otherwise it is a front with cusps where `h + h''` changes sign.
pub fn support_curve(h: &PeriodicFn) -> ParametricCurve {
    let grid = h.grid();
    let dh = h.derivative();
    let points = grid
        .thetas()
        .enumerate()
        .map(|(k, t)| h.get(k) * Vec2::radial(t) + dh.get(k) * Vec2::angular(t))
        .collect();
    ParametricCurve::new(grid, points).expect("finite support")
}
