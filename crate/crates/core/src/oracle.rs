//! Slow, independent checkers for the spectral core.
//!
//! Nothing here touches the FFT path: derivatives are finite differences,
//! integrals are Newton-Cotes sums, refinement evaluates a naive DFT, and
//! geometric predicates work on polylines.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::minkowski::ConvexCurve;
use crate::periodic::PeriodicFn;
use crate::vec2::Vec2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylineOracleConfig {
    /// Grid refinement factor for polyline oracles.
    pub refine_factor: usize,
    /// Finite-difference step in radians, rounded to a whole number of grid steps.
    pub fd_step: f64,
}

impl PolylineOracleConfig {
    pub fn new(refine_factor: usize, fd_step: f64) -> Result<Self> {
        if refine_factor < 2 {
            return Err(Error::InvalidArgument(format!(
                "refine_factor must be at least 2, got {refine_factor}"
            )));
        }
        if !(fd_step > 0.0) {
            return Err(Error::InvalidArgument(format!("fd_step must be positive, got {fd_step}")));
        }
        Ok(Self {
            refine_factor,
            fd_step,
        })
    }
}

impl Default for PolylineOracleConfig {
    fn default() -> Self {
        Self {
            refine_factor: 10,
            fd_step: TAU / 512.0,
        }
    }
}

/// Central differences with step `cfg.fd_step` (a multiple of the grid spacing).
pub fn fd_derivative(f: &PeriodicFn, cfg: &PolylineOracleConfig) -> PeriodicFn {
    let n = f.len();
    let h = f.grid().step();
    let stride = ((cfg.fd_step / h).round() as usize).max(1);
    let values = (0..n)
        .map(|k| (f.get(k + stride) - f.get(k + n - stride)) / (2.0 * stride as f64 * h))
        .collect();
    PeriodicFn::from_values(f.grid(), values).expect("finite differences of finite data")
}

/// Signed shoelace area of a closed polyline.
pub fn polyline_area(points: &[Vec2]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    let n = points.len();
    Ok(0.5
        * (0..n)
            .map(|i| points[i].bracket(points[(i + 1) % n]))
            .sum::<f64>())
}

/// Zero-mean cumulative trapezoid antiderivative.
pub fn cumulative_trapezoid(f: &PeriodicFn) -> PeriodicFn {
    let h = f.grid().step();
    let mut acc = 0.0;
    let mut values = Vec::with_capacity(f.len());
    for k in 0..f.len() {
        values.push(acc);
        acc += 0.5 * h * (f.get(k) + f.get(k + 1));
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    PeriodicFn::from_values(f.grid(), values.into_iter().map(|v| v - mean).collect())
        .expect("finite")
}

fn simpson(samples: &[f64], h: f64) -> f64 {
    let m = samples.len() - 1;
    debug_assert!(m % 2 == 0 && m > 0);
    let inner: f64 = samples[1..m]
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v })
        .sum();
    h / 3.0 * (samples[0] + inner + samples[m])
}

fn half_samples(f: &PeriodicFn, k: usize) -> Vec<f64> {
    (0..=f.grid().half()).map(|j| f.get(k + j)).collect()
}

/// Composite Simpson over `[θ_k, θ_k + π]` on the grid samples; the last three
/// intervals use the 3/8 rule when `n/2` is odd.
pub fn simpson_half_integral(f: &PeriodicFn, k: usize) -> f64 {
    let s = half_samples(f, k);
    let h = f.grid().step();
    let m = s.len() - 1;
    if m % 2 == 0 {
        simpson(&s, h)
    } else {
        let tail = &s[m - 3..];
        simpson(&s[..=m - 3], h) + 3.0 * h / 8.0 * (tail[0] + 3.0 * tail[1] + 3.0 * tail[2] + tail[3])
    }
}

/// `∫_{θ_k}^{θ_k+π} f` by Richardson-extrapolated composite Simpson
/// (`(16 S_h − S_{2h})/15`, i.e. composite Boole) when `n/2` is divisible by 4,
/// plain composite Simpson otherwise.
pub fn quadrature_half_integral(f: &PeriodicFn, k: usize) -> f64 {
    let s = half_samples(f, k);
    let h = f.grid().step();
    let m = s.len() - 1;
    if m % 4 == 0 {
        let coarse: Vec<f64> = s.iter().step_by(2).copied().collect();
        (16.0 * simpson(&s, h) - simpson(&coarse, 2.0 * h)) / 15.0
    } else {
        simpson_half_integral(f, k)
    }
}

/// Trigonometric coefficients by a direct O(n²) DFT:
/// `f = a_0 + Σ_{m≥1} (a_m cos mθ + b_m sin mθ)`.
fn naive_coefficients(f: &PeriodicFn) -> (Vec<f64>, Vec<f64>) {
    let n = f.len();
    let half = n / 2;
    let mut a = vec![0.0; half + 1];
    let mut b = vec![0.0; half + 1];
    for m in 0..=half {
        let (mut sa, mut sb) = (0.0, 0.0);
        for k in 0..n {
            let phase = TAU * ((m * k) % n) as f64 / n as f64;
            sa += f.get(k) * phase.cos();
            sb += f.get(k) * phase.sin();
        }
        let w = if m == 0 || m == half { 1.0 } else { 2.0 };
        a[m] = w * sa / n as f64;
        b[m] = if m == half { 0.0 } else { w * sb / n as f64 };
    }
    (a, b)
}

/// Values and first derivatives of the trigonometric interpolant of `f` on a
/// grid `factor` times finer, evaluated term by term.
pub fn refine(f: &PeriodicFn, factor: usize) -> (Vec<f64>, Vec<f64>) {
    let (a, b) = naive_coefficients(f);
    let big_n = f.len() * factor;
    let mut values = Vec::with_capacity(big_n);
    let mut derivs = Vec::with_capacity(big_n);
    for j in 0..big_n {
        let t = TAU * j as f64 / big_n as f64;
        let (mut v, mut d) = (a[0], 0.0);
        for m in 1..a.len() {
            let (s, c) = (m as f64 * t).sin_cos();
            v += a[m] * c + b[m] * s;
            d += m as f64 * (b[m] * c - a[m] * s);
        }
        values.push(v);
        derivs.push(d);
    }
    (values, derivs)
}

/// Sign changes of an anti-π-periodic `f` over `[0, π)` on a refined grid.
pub fn refined_sign_changes(f: &PeriodicFn, factor: usize) -> usize {
    let (values, _) = refine(f, factor);
    let half = values.len() / 2;
    (0..half)
        .filter(|&j| (values[j] > 0.0) != (values[j + 1] > 0.0))
        .count()
}

/// Boundary polyline of a convex curve on a refined grid.
pub fn refined_boundary(gamma: &ConvexCurve, factor: usize) -> Vec<Vec2> {
    let (h, dh) = refine(gamma.support(), factor);
    let big_n = h.len();
    (0..big_n)
        .map(|j| {
            let t = TAU * j as f64 / big_n as f64;
            h[j] * Vec2::radial(t) + dh[j] * Vec2::angular(t)
        })
        .collect()
}

/// Point-in-convex-polygon test for a CCW polygon.
pub fn inside_convex_polygon(poly: &[Vec2], x: Vec2) -> bool {
    let n = poly.len();
    (0..n).all(|i| (poly[(i + 1) % n] - poly[i]).bracket(x - poly[i]) >= 0.0)
}

/// `‖X‖` for the convex body bounded by the CCW polygon `ball` (origin inside),
/// by bisection on `t ↦ X/t ∈ ball`.
pub fn polygon_gauge(ball: &[Vec2], x: Vec2) -> f64 {
    if x == Vec2::ZERO {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while !inside_convex_polygon(ball, (1.0 / hi) * x) {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if inside_convex_polygon(ball, (1.0 / mid) * x) {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Length of the closed polyline `points` in the dual norm `‖X‖_v = max_j [u_j, X]`,
/// with `ball_samples` dense samples of the ball boundary `u`.
pub fn dual_polyline_length(points: &[Vec2], ball_samples: &[Vec2]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| {
            let d = points[(i + 1) % n] - points[i];
            ball_samples
                .iter()
                .map(|u| u.bracket(d))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .sum()
}

/// Number of chords of `gamma` with midpoint `c`.
///
/// Reflects the refined boundary through `c` and counts its transversal
/// crossings with the boundary; every chord contributes two.
pub fn chord_midpoint_count(gamma: &ConvexCurve, c: Vec2, cfg: &PolylineOracleConfig) -> Result<usize> {
    let poly = refined_boundary(gamma, cfg.refine_factor);
    let n = poly.len();
    let diam = bbox_diameter(&poly);
    let dist = (0..n)
        .map(|i| segment_distance(c, poly[i], poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min);
    if dist <= 1e-8 * diam {
        return Err(Error::OnBoundary { distance: dist });
    }

    let locator = ConvexLocator::new(&poly);
    let reflected: Vec<Vec2> = poly.iter().map(|&p| 2.0 * c - p).collect();
    let depth: Vec<f64> = reflected.iter().map(|&r| locator.depth(r)).collect();
    if depth.iter().any(|d| d.abs() <= 1e-12 * diam) {
        return Err(Error::Tangency);
    }
    let mut crossings = 0;
    for k in 0..n {
        let (d0, d1) = (depth[k], depth[(k + 1) % n]);
        if (d0 > 0.0) != (d1 > 0.0) {
            let seg = (reflected[(k + 1) % n] - reflected[k]).norm();
            if (d1 - d0).abs() < 1e-6 * seg {
                return Err(Error::Tangency);
            }
            crossings += 1;
        }
    }
    if crossings % 2 != 0 {
        return Err(Error::Tangency);
    }
    Ok(crossings / 2)
}

fn bbox_diameter(points: &[Vec2]) -> f64 {
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (hi - lo).norm()
}

fn segment_distance(x: Vec2, p: Vec2, q: Vec2) -> f64 {
    let d = q - p;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return (x - p).norm();
    }
    let t = ((x - p).dot(d) / len2).clamp(0.0, 1.0);
    (x - (p + t * d)).norm()
}

/// Angular binary search in a CCW convex polygon around its vertex centroid.
struct ConvexLocator<'a> {
    poly: &'a [Vec2],
    center: Vec2,
    base: f64,
    angles: Vec<f64>,
}

impl<'a> ConvexLocator<'a> {
    fn new(poly: &'a [Vec2]) -> Self {
        let center = (1.0 / poly.len() as f64) * poly.iter().fold(Vec2::ZERO, |a, &p| a + p);
        let d0 = poly[0] - center;
        let base = d0.y.atan2(d0.x);
        let angles = poly
            .iter()
            .map(|&p| {
                let d = p - center;
                (d.y.atan2(d.x) - base).rem_euclid(TAU)
            })
            .collect();
        Self {
            poly,
            center,
            base,
            angles,
        }
    }

    /// Signed distance to the supporting line of the edge hit by the ray from
    /// the center through `x`; negative inside.
    fn depth(&self, x: Vec2) -> f64 {
        let d = x - self.center;
        if d == Vec2::ZERO {
            return f64::NEG_INFINITY;
        }
        let a = (d.y.atan2(d.x) - self.base).rem_euclid(TAU);
        let n = self.poly.len();
        let j = match self.angles.partition_point(|&t| t <= a) {
            0 => n - 1,
            p => p - 1,
        };
        let (p, q) = (self.poly[j], self.poly[(j + 1) % n]);
        let edge = q - p;
        -edge.bracket(x - p) / edge.norm()
    }
}
