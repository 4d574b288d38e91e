//! Uniform periodic grids and spectral calculus for 2π-periodic scalar functions.
//!
//! Every function of the angle θ is stored as samples on an equispaced grid
//! `θ_k = 2πk/n` with `n` even, so that the antipodal map `θ ↦ θ + π` is the
//! index rotation `k ↦ k + n/2`. Derivatives and antiderivatives act on the
//! trigonometric interpolant of the samples; the Nyquist mode is dropped.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Default number of samples.
pub const DEFAULT_GRID: usize = 512;

/// Relative tolerance on the mean of an integrand handed to [`PeriodicFn::antiderivative`].
pub const TOL_MEAN: f64 = 1e-10;

/// Relative tolerance on `|f(θ+π) + f(θ)|` for [`PeriodicFn::half_period_integral`].
pub const TOL_ANTI: f64 = 1e-9;
/// Fourier modes below this fraction of the largest one are treated as FFT
/// roundoff when differentiating, so that noise is not amplified by `k`.
pub const SPECTRAL_NOISE_FLOOR: f64 = 1e-14;

/// Equispaced grid on `[0, 2π)` with cached FFT plans.
#[derive(Clone)]
pub struct ParamGrid {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for ParamGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamGrid").field("n", &self.n).finish()
    }
}

impl PartialEq for ParamGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl ParamGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 16 || n % 2 != 0 {
            return Err(Error::InvalidGrid { n });
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn half(&self) -> usize {
        self.n / 2
    }

    /// Grid spacing `2π/n`.
    #[inline]
    pub fn step(&self) -> f64 {
        TAU / self.n as f64
    }

    #[inline]
    pub fn theta(&self, k: usize) -> f64 {
        TAU * k as f64 / self.n as f64
    }

    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.theta(k))
    }

    /// Index of the grid point nearest to `theta` (taken mod 2π).
    pub fn nearest_index(&self, theta: f64) -> usize {
        let t = theta.rem_euclid(TAU);
        ((t / self.step()).round() as usize) % self.n
    }

    pub(crate) fn check_same(&self, other: &ParamGrid) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GridMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Signed wavenumber of FFT bin `j`; `None` for the Nyquist bin.
    #[inline]
    fn wavenumber(&self, j: usize) -> Option<f64> {
        let n = self.n;
        if j < n / 2 {
            Some(j as f64)
        } else if j == n / 2 {
            None
        } else {
            Some(j as f64 - n as f64)
        }
    }

    fn spectrum(&self, values: &[f64]) -> Vec<Complex<f64>> {
        let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
        self.forward.process(&mut buf);
        buf
    }

    fn synthesize(&self, mut spec: Vec<Complex<f64>>) -> Vec<f64> {
        self.inverse.process(&mut spec);
        let scale = 1.0 / self.n as f64;
        spec.into_iter().map(|c| c.re * scale).collect()
    }
}

/// Samples of a real 2π-periodic function on a [`ParamGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicFn {
    grid: ParamGrid,
    values: Vec<f64>,
}

impl PeriodicFn {
    pub fn from_values(grid: &ParamGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }

    /// Samples `f` at every grid angle. Panics if `f` returns a non-finite value.
    pub fn from_fn(grid: &ParamGrid, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = grid.thetas().map(f).collect();
        Self::from_values(grid, values).expect("sampled function must be finite")
    }

    pub fn constant(grid: &ParamGrid, c: f64) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![c; grid.len()],
        }
    }

    pub fn zeros(grid: &ParamGrid) -> Self {
        Self::constant(grid, 0.0)
    }

    #[inline]
    pub fn grid(&self) -> &ParamGrid {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        self.values[k % self.values.len()]
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// `∫₀^{2π} f dθ` by the trapezoid rule, which is spectrally accurate for periodic f.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.step()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| v * s)
    }

    /// Maximum pointwise distance to `other`.
    pub fn max_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    /// `g(θ_k) = f(θ_k + π)`: rotation of the samples by `n/2`.
    pub fn antipodal_shift(&self) -> Self {
        let mut values = self.values.clone();
        values.rotate_left(self.grid.half());
        Self {
            grid: self.grid.clone(),
            values,
        }
    }

    /// π-periodic part `½(f(θ) + f(θ+π))`.
    pub fn even_part(&self) -> Self {
        let s = self.antipodal_shift();
        self.zip_with(&s, |a, b| 0.5 * (a + b)).expect("same grid")
    }

    /// Anti-π-periodic part `½(f(θ) − f(θ+π))`.
    pub fn odd_part(&self) -> Self {
        let s = self.antipodal_shift();
        self.zip_with(&s, |a, b| 0.5 * (a - b)).expect("same grid")
    }

    /// Largest `|f(θ_k + π) + f(θ_k)|`.
    pub fn anti_periodicity_residual(&self) -> f64 {
        let h = self.grid.half();
        (0..h)
            .map(|k| (self.values[k] + self.values[k + h]).abs())
            .fold(0.0, f64::max)
    }

    /// Largest `|f(θ_k + π) − f(θ_k)|`.
    pub fn periodicity_residual(&self) -> f64 {
        let h = self.grid.half();
        (0..h)
            .map(|k| (self.values[k] - self.values[k + h]).abs())
            .fold(0.0, f64::max)
    }

    /// Derivative of the trigonometric interpolant, sampled on the grid.
    pub fn derivative(&self) -> Self {
        let grid = &self.grid;
        let mut spec = grid.spectrum(&self.values);
        let floor = SPECTRAL_NOISE_FLOOR * spec.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for (j, c) in spec.iter_mut().enumerate() {
            *c = match grid.wavenumber(j) {
                Some(k) if c.norm() > floor => *c * Complex::new(0.0, k),
                Some(_) => Complex::new(0.0, 0.0),
                None => Complex::new(0.0, 0.0),
            };
        }
        Self {
            grid: grid.clone(),
            values: grid.synthesize(spec),
        }
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |f, _| f.derivative())
    }

    /// Zero-mean periodic antiderivative `G` with `G' = f`.
    pub fn antiderivative(&self) -> Result<Self> {
        let mean = self.mean();
        let tol = TOL_MEAN * self.max_abs().max(1.0);
        if mean.abs() > tol {
            return Err(Error::NonZeroMean { mean, tol });
        }
        Ok(self.antiderivative_unchecked())
    }

    fn antiderivative_unchecked(&self) -> Self {
        let grid = &self.grid;
        let mut spec = grid.spectrum(&self.values);
        for (j, c) in spec.iter_mut().enumerate() {
            *c = match grid.wavenumber(j) {
                Some(k) if k != 0.0 => *c / Complex::new(0.0, k),
                _ => Complex::new(0.0, 0.0),
            };
        }
        Self {
            grid: grid.clone(),
            values: grid.synthesize(spec),
        }
    }

    /// `F(θ) = ∫_θ^{θ+π} f(s) ds` for anti-π-periodic `f`.
    ///
    /// `f` is projected onto its anti-periodic part before integrating, so the
    /// result satisfies `F(θ+π) = −F(θ)` exactly.
    pub fn half_period_integral(&self) -> Result<Self> {
        let residual = self.anti_periodicity_residual();
        let tol = TOL_ANTI * self.max_abs().max(1.0);
        if residual > tol {
            return Err(Error::NotAntiPeriodic { residual, tol });
        }
        let g = self.odd_part().antiderivative_unchecked();
        Ok(g.antipodal_shift().sub(&g).expect("same grid"))
    }

    /// `F(θ) = ∫_θ^{θ+π} f(s) ds` for an arbitrary periodic `f`.
    pub fn forward_half_integral(&self) -> Self {
        let mean = self.mean();
        let g = self.map(|v| v - mean).antiderivative_unchecked();
        g.antipodal_shift()
            .zip_with(&g, |a, b| a - b + mean * PI)
            .expect("same grid")
    }

    pub fn interpolant(&self) -> TrigInterpolant {
        TrigInterpolant::new(self)
    }
}

/// Trigonometric interpolant of a [`PeriodicFn`], evaluable at any angle.
#[derive(Debug, Clone)]
pub struct TrigInterpolant {
    mean: f64,
    /// `(a_k, b_k)` for `k = 1..n/2`: f = mean + Σ a_k cos kθ + b_k sin kθ.
    coeffs: Vec<(f64, f64)>,
}

impl TrigInterpolant {
    pub fn new(f: &PeriodicFn) -> Self {
        let grid = f.grid();
        let n = grid.len();
        let spec = grid.spectrum(f.values());
        let inv_n = 1.0 / n as f64;
        let half = n / 2;
        let mut coeffs = Vec::with_capacity(half);
        for k in 1..half {
            let c = spec[k] * inv_n;
            coeffs.push((2.0 * c.re, -2.0 * c.im));
        }
        // Nyquist term as a pure cosine.
        coeffs.push((spec[half].re * inv_n, 0.0));
        Self {
            mean: spec[0].re * inv_n,
            coeffs,
        }
    }

    /// Value and first two derivatives at `theta`.
    pub fn eval_with_derivatives(&self, theta: f64) -> (f64, f64, f64) {
        let step = Complex::from_polar(1.0, theta);
        let mut z = step;
        let (mut f, mut df, mut ddf) = (self.mean, 0.0, 0.0);
        for (i, &(a, b)) in self.coeffs.iter().enumerate() {
            let k = (i + 1) as f64;
            let (c, s) = (z.re, z.im);
            f += a * c + b * s;
            df += k * (b * c - a * s);
            ddf -= k * k * (a * c + b * s);
            z *= step;
            if i % 32 == 31 {
                // resync against drift in the power recurrence
                z = Complex::from_polar(1.0, (i + 2) as f64 * theta);
            }
        }
        (f, df, ddf)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.eval_with_derivatives(theta).0
    }
}
