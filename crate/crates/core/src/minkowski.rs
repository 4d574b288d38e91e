//! Minkowski-plane primitives: a centrally symmetric unit ball given by its
//! support function, the dual ball, the gauge norm, dual length, mixed area,
//! Minkowski curvature radius, evolutes and equidistants.
//!
//! Conventions: the ball boundary is `u(θ) = a e_r + a' e_θ`, so `u'` is a
//! non-negative multiple of `e_θ`. The dual boundary is `v = u'/[u,u']`, which
//! gives `[u,v] = 1` and `[u',v] = 0`. All lengths and areas are signed.

use std::f64::consts::FRAC_PI_2;

use crate::curve::{support_curve, ParametricCurve};
use crate::error::{Error, Result};
use crate::periodic::{ParamGrid, PeriodicFn, TrigInterpolant};
use crate::vec2::Vec2;

/// Relative tolerance on `a(θ+π) = a(θ)`.
pub const BALL_SYMMETRY_TOL: f64 = 1e-12;

/// Boundary frames of a [`SymmetricBall`].
#[derive(Debug, Clone, PartialEq)]
pub struct BallFrames {
    /// Ball boundary `u(θ)`.
    pub u: ParametricCurve,
    /// `u'(θ)`.
    pub du: ParametricCurve,
    /// Dual boundary `v(θ) = u'/[u,u']`.
    pub v: ParametricCurve,
    /// `v'(θ)`.
    pub dv: ParametricCurve,
    /// `[u, u']`.
    pub buu: PeriodicFn,
    /// `[v, v']`.
    pub bvv: PeriodicFn,
}

/// Centrally symmetric, strictly convex unit ball described by its π-periodic
/// support function `a(θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricBall {
    support: PeriodicFn,
    frames: BallFrames,
}

impl SymmetricBall {
    /// Validates `a > 0`, `a(θ+π) = a(θ)` and `a + a'' > 0`, then builds the frames.
    ///
    /// The stored support function is the exact π-periodic projection of `a`.
    pub fn new(a: PeriodicFn) -> Result<Self> {
        let scale = a.max_abs();
        if let Some(index) = a.values().iter().position(|&v| v <= 0.0) {
            return Err(Error::DegenerateBall {
                index,
                quantity: "a",
                value: a.get(index),
            });
        }
        let residual = a.periodicity_residual();
        if residual > BALL_SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric { residual });
        }
        let a = a.even_part();
        let curvature = a.add(&a.nth_derivative(2))?;
        if let Some(index) = curvature.values().iter().position(|&v| v <= 0.0) {
            return Err(Error::DegenerateBall {
                index,
                quantity: "a + a''",
                value: curvature.get(index),
            });
        }
        let frames = build_frames(&a)?;
        Ok(Self { support: a, frames })
    }

    /// Euclidean disc of radius `r` centered at the origin.
    pub fn euclidean(grid: &ParamGrid, r: f64) -> Result<Self> {
        Self::new(PeriodicFn::constant(grid, r))
    }

    #[inline]
    pub fn grid(&self) -> &ParamGrid {
        self.support.grid()
    }

    #[inline]
    pub fn support(&self) -> &PeriodicFn {
        &self.support
    }

    #[inline]
    pub fn frames(&self) -> &BallFrames {
        &self.frames
    }

    /// Area `A(u) = ½∫₀^{2π} [u,u'] dθ` of the ball.
    pub fn area(&self) -> f64 {
        0.5 * self.frames.buu.integral()
    }

    /// The homothetic ball `t·U`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.support.scale(t))
    }

    /// Ball whose boundary is the dual curve `v`, in tangent-angle parameterization.
    ///
    /// The tangent of `v` at parameter φ points along `−u(φ)`, so for each grid
    /// angle θ we solve `arg u(φ) = θ − π/2` on the interpolant of `a` and read
    /// off `b(θ) = ⟨v(φ), e_r(θ)⟩`.
    pub fn dual(&self) -> Result<Self> {
        let grid = self.grid();
        let interp = self.support.interpolant();
        let values = grid
            .thetas()
            .map(|theta| {
                let phi = solve_normal_angle(&interp, theta - FRAC_PI_2);
                let a = interp.eval(phi);
                (theta - phi).sin() / a
            })
            .collect();
        Self::new(PeriodicFn::from_values(grid, values)?)
    }

    /// Minkowski norm `‖X‖_u = max_θ ⟨X, e_r(θ)⟩ / a(θ)`.
    ///
    /// Grid maximum, one parabolic step, then a bracketed root solve of the
    /// stationarity condition on the trigonometric interpolant of `a`.
    pub fn gauge_norm(&self, x: Vec2) -> f64 {
        if x == Vec2::ZERO {
            return 0.0;
        }
        let grid = self.grid();
        let n = grid.len();
        let a = self.support.values();
        let ratio = |k: usize| x.dot(Vec2::radial(grid.theta(k))) / a[k % n];
        let (k, best) = (0..n)
            .map(|k| (k, ratio(k)))
            .fold((0, f64::NEG_INFINITY), |acc, cur| if cur.1 > acc.1 { cur } else { acc });

        let h = grid.step();
        let theta_k = grid.theta(k);
        let (gm, gp) = (ratio(k + n - 1), ratio(k + 1));
        let denom = gm - 2.0 * best + gp;
        let offset = if denom < 0.0 {
            (0.5 * (gm - gp) / denom).clamp(-1.0, 1.0)
        } else {
            0.0
        };

        let interp = self.support.interpolant();
        let g = |t: f64| x.dot(Vec2::radial(t)) / interp.eval(t);
        let dg = |t: f64| {
            let (a, da, _) = interp.eval_with_derivatives(t);
            (x.dot(Vec2::angular(t)) * a - x.dot(Vec2::radial(t)) * da) / (a * a)
        };
        let parabolic = g(theta_k + offset * h);
        let refined = illinois(dg, theta_k - h, theta_k + h)
            .map(g)
            .unwrap_or(parabolic);
        refined.max(parabolic).max(best)
    }
}

fn build_frames(a: &PeriodicFn) -> Result<BallFrames> {
    let grid = a.grid();
    let da = a.derivative();
    let dda = da.derivative();
    let u = support_curve(a);
    let rho = a.add(&dda)?;
    let buu = a.mul(&rho)?;
    if let Some(index) = buu.values().iter().position(|&v| v <= 0.0) {
        return Err(Error::DegenerateBall {
            index,
            quantity: "[u,u']",
            value: buu.get(index),
        });
    }
    let frame = |f: &dyn Fn(usize, f64) -> Vec2| {
        ParametricCurve::new(grid, grid.thetas().enumerate().map(|(k, t)| f(k, t)).collect())
    };
    // u' = (a + a'') e_θ, v = u'/[u,u'] = e_θ/a
    let du = frame(&|k, t| rho.get(k) * Vec2::angular(t))?;
    let v = frame(&|k, t| (1.0 / a.get(k)) * Vec2::angular(t))?;
    let dv = frame(&|k, t| {
        let ak = a.get(k);
        (-1.0 / ak) * Vec2::radial(t) + (-da.get(k) / (ak * ak)) * Vec2::angular(t)
    })?;
    let bvv = a.map(|x| 1.0 / (x * x));
    Ok(BallFrames {
        u,
        du,
        v,
        dv,
        buu,
        bvv,
    })
}

/// Finds φ with `φ + atan2(a'(φ), a(φ)) = target`, i.e. the parameter at which
/// the direction of `u(φ)` has polar angle `target`.
fn solve_normal_angle(interp: &TrigInterpolant, target: f64) -> f64 {
    // |atan2(a', a)| < π/2 because a > 0, so the root is bracketed.
    let (mut lo, mut hi) = (target - FRAC_PI_2, target + FRAC_PI_2);
    let mut phi = target;
    for _ in 0..100 {
        let (a, da, dda) = interp.eval_with_derivatives(phi);
        let r = phi + da.atan2(a) - target;
        if r.abs() < 1e-15 {
            break;
        }
        if r > 0.0 {
            hi = phi;
        } else {
            lo = phi;
        }
        let slope = a * (a + dda) / (a * a + da * da);
        let newton = phi - r / slope;
        phi = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < 1e-15 {
            break;
        }
    }
    phi
}

/// Root of `f` on `[lo, hi]` by the Illinois variant of regula falsi; `None`
/// when the endpoints do not bracket a sign change.
fn illinois(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let (mut f_lo, mut f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return None;
    }
    let mut side = 0i8;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        let fx = f(x);
        if fx == 0.0 || (hi - lo).abs() < 1e-15 {
            break;
        }
        if fx.signum() == f_hi.signum() {
            hi = x;
            f_hi = fx;
            if side == -1 {
                f_lo *= 0.5;
            }
            side = -1;
        } else {
            lo = x;
            f_lo = fx;
            if side == 1 {
                f_hi *= 0.5;
            }
            side = 1;
        }
        if (hi - lo).abs() < 1e-14 {
            break;
        }
    }
    Some(x)
}

/// Convex curve given by its support function `h`, with `h + h'' > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexCurve {
    support: PeriodicFn,
}

impl ConvexCurve {
    pub fn new(h: PeriodicFn) -> Result<Self> {
        let radius = h.add(&h.nth_derivative(2))?;
        if let Some(index) = radius.values().iter().position(|&v| v <= 0.0) {
            return Err(Error::NotConvex {
                index,
                quantity: "h + h''",
                value: radius.get(index),
            });
        }
        Ok(Self { support: h })
    }

    #[inline]
    pub fn grid(&self) -> &ParamGrid {
        self.support.grid()
    }

    #[inline]
    pub fn support(&self) -> &PeriodicFn {
        &self.support
    }

    /// Euclidean radius of curvature `h + h''`.
    pub fn curvature_radius(&self) -> PeriodicFn {
        self.support
            .add(&self.support.nth_derivative(2))
            .expect("same grid")
    }

    /// Boundary points `γ(θ) = h e_r + h' e_θ`; `γ'(θ)` points along `e_θ`.
    pub fn points(&self) -> ParametricCurve {
        support_curve(&self.support)
    }

    pub fn translated(&self, t: Vec2) -> Self {
        let grid = self.grid().clone();
        let shift = PeriodicFn::from_fn(&grid, |th| t.dot(Vec2::radial(th)));
        Self {
            support: self.support.add(&shift).expect("same grid"),
        }
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.support.scale(s))
    }
}

/// Signed dual length `L_v = ∫₀^{2π} λ dθ` with `λ = [u, c']`.
pub fn v_length(c: &ParametricCurve, ball: &SymmetricBall) -> Result<f64> {
    let lambda = ball.frames().u.bracket(&c.derivative())?;
    Ok(lambda.integral())
}

/// Mixed area `A(P,Q) = ½∫₀^{2π} [P, Q'] dθ`.
///
/// Curves traced twice over `[0, 2π)` get the same formula, so for a
/// π-periodic curve `A(M,M) = ∫₀^π [M, M'] dθ`.
pub fn mixed_area(p: &ParametricCurve, q: &ParametricCurve) -> Result<f64> {
    Ok(0.5 * p.bracket(&q.derivative())?.integral())
}

/// Signed Minkowski curvature radius `μ = [u, c'] / [u, u']`.
pub fn minkowski_curvature_radius(c: &ParametricCurve, ball: &SymmetricBall) -> Result<PeriodicFn> {
    let frames = ball.frames();
    let lambda = frames.u.bracket(&c.derivative())?;
    lambda.zip_with(&frames.buu, |l, b| l / b)
}

/// Minkowski evolute `c − μ u`.
pub fn evolute(c: &ParametricCurve, ball: &SymmetricBall) -> Result<ParametricCurve> {
    let mu = minkowski_curvature_radius(c, ball)?;
    c.add_scaled(&mu.scale(-1.0), &ball.frames().u)
}

/// Equidistant `c + s u`.
pub fn equidistant(c: &ParametricCurve, ball: &SymmetricBall, s: f64) -> Result<ParametricCurve> {
    c.add_constant_multiple(s, &ball.frames().u)
}

/// Checks that `c` is a strictly convex, positively oriented, simple closed curve:
/// `[c', c''] > 0` everywhere and the tangent turns exactly once.
pub fn validate_convexity(c: &ParametricCurve) -> Result<()> {
    let d1 = c.derivative();
    let d2 = d1.derivative();
    let k = d1.bracket(&d2)?;
    let scale = k.max_abs();
    if let Some(index) = k.values().iter().position(|&v| v <= 1e-12 * scale) {
        return Err(Error::NotConvex {
            index,
            quantity: "[c', c'']",
            value: k.get(index),
        });
    }
    let n = c.len();
    let turning: f64 = (0..n)
        .map(|i| {
            let (p, q) = (d1.point(i), d1.point(i + 1));
            p.bracket(q).atan2(p.dot(q))
        })
        .sum();
    if (turning - std::f64::consts::TAU).abs() > 1e-6 {
        return Err(Error::NotConvex {
            index: 0,
            quantity: "total turning",
            value: turning,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid() -> ParamGrid {
        ParamGrid::new(512).unwrap()
    }

    fn elliptic_ball(g: &ParamGrid) -> SymmetricBall {
        SymmetricBall::new(PeriodicFn::from_fn(g, |t| 1.0 + 0.2 * (2.0 * t).cos())).unwrap()
    }

    #[test]
    fn euclidean_frames() {
        let g = grid();
        let ball = SymmetricBall::euclidean(&g, 1.0).unwrap();
        let f = ball.frames();
        let er = ParametricCurve::from_fn(&g, Vec2::radial);
        let et = ParametricCurve::from_fn(&g, Vec2::angular);
        assert!(f.u.max_distance(&er).unwrap() < 1e-14);
        assert!(f.v.max_distance(&et).unwrap() < 1e-13);
        assert!(f.buu.map(|b| b - 1.0).max_abs() < 1e-12);
        assert!(f.bvv.map(|b| b - 1.0).max_abs() < 1e-12);
        assert!((ball.area() - PI).abs() < 1e-12);
    }

    #[test]
    fn frame_closed_forms_match_spectral_brackets() {
        let g = grid();
        let ball = elliptic_ball(&g);
        let a = ball.support();
        let dda = a.nth_derivative(2);
        let f = ball.frames();
        for k in 0..g.len() {
            let closed_buu = a.get(k) * (a.get(k) + dda.get(k));
            assert!((f.buu.get(k) - closed_buu).abs() < 1e-10);
            assert!((f.bvv.get(k) - 1.0 / (a.get(k) * a.get(k))).abs() < 1e-10);
            let closed_v = (1.0 / a.get(k)) * Vec2::angular(g.theta(k));
            assert!((f.v.point(k) - closed_v).norm() < 1e-10);
            assert!((f.u.point(k).bracket(f.v.point(k)) - 1.0).abs() < 1e-10);
            assert!(f.du.point(k).bracket(f.v.point(k)).abs() < 1e-10);
        }
    }

    #[test]
    fn ball_validation_errors() {
        let g = ParamGrid::new(64).unwrap();
        let neg = PeriodicFn::from_fn(&g, |t| (2.0 * t).cos());
        assert!(matches!(
            SymmetricBall::new(neg),
            Err(Error::DegenerateBall { quantity: "a", .. })
        ));
        let asym = PeriodicFn::from_fn(&g, |t| 1.0 + 0.1 * t.cos());
        assert!(matches!(SymmetricBall::new(asym), Err(Error::NotSymmetric { .. })));
        let flat = PeriodicFn::from_fn(&g, |t| 1.0 + 0.5 * (2.0 * t).cos());
        assert!(matches!(
            SymmetricBall::new(flat),
            Err(Error::DegenerateBall { quantity: "a + a''", .. })
        ));
    }

    #[test]
    fn dual_of_circles() {
        let g = ParamGrid::new(64).unwrap();
        let unit = SymmetricBall::euclidean(&g, 1.0).unwrap().dual().unwrap();
        assert!(unit.support().map(|b| b - 1.0).max_abs() < 1e-14);
        let r = SymmetricBall::euclidean(&g, 2.5).unwrap().dual().unwrap();
        assert!(r.support().map(|b| b - 0.4).max_abs() < 1e-14);
    }

    #[test]
    fn dual_is_an_involution() {
        let g = grid();
        let ball = elliptic_ball(&g);
        let back = ball.dual().unwrap().dual().unwrap();
        assert!(back.support().max_diff(ball.support()).unwrap() < 1e-8);
    }

    #[test]
    fn dual_support_is_gauge_of_rotated_direction() {
        let g = ParamGrid::new(256).unwrap();
        let ball = elliptic_ball(&g);
        let dual = ball.dual().unwrap();
        for k in (0..g.len()).step_by(17) {
            let expected = ball.gauge_norm(Vec2::angular(g.theta(k)));
            assert!((dual.support().get(k) - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn gauge_norm_examples() {
        let g = grid();
        let e = SymmetricBall::euclidean(&g, 1.0).unwrap();
        assert!((e.gauge_norm(Vec2::new(3.0, 4.0)) - 5.0).abs() < 1e-12);
        assert_eq!(e.gauge_norm(Vec2::ZERO), 0.0);
        let ball = elliptic_ball(&g);
        for k in (0..g.len()).step_by(7) {
            let p = ball.frames().u.point(k);
            assert!((ball.gauge_norm(p) - 1.0).abs() < 1e-8);
            assert!((ball.gauge_norm(3.0 * p) - 3.0).abs() < 3e-8);
        }
    }

    #[test]
    fn gauge_norm_off_grid_boundary_points() {
        // u at off-grid parameters, evaluated from the closed form of the support.
        let g = grid();
        let ball = elliptic_ball(&g);
        for &t in &[0.0123_f64, 0.77, 2.0001, 4.321] {
            let a = 1.0 + 0.2 * (2.0 * t).cos();
            let da = -0.4 * (2.0 * t).sin();
            let p = a * Vec2::radial(t) + da * Vec2::angular(t);
            assert!((ball.gauge_norm(p) - 1.0).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn circle_lengths_and_areas() {
        let g = grid();
        let e = SymmetricBall::euclidean(&g, 1.0).unwrap();
        let unit = ParametricCurve::from_fn(&g, Vec2::radial);
        assert!((v_length(&unit, &e).unwrap() - 2.0 * PI).abs() < 1e-12);
        assert!((mixed_area(&unit, &unit).unwrap() - PI).abs() < 1e-12);
        let c2 = unit.scale(2.0);
        let c3 = unit.scale(3.0).translate(Vec2::new(5.0, -1.0));
        assert!((mixed_area(&c2, &c3).unwrap() - 6.0 * PI).abs() < 1e-11);
        assert!((mixed_area(&c3, &c2).unwrap() - 6.0 * PI).abs() < 1e-11);
    }

    #[test]
    fn curvature_radius_and_evolute_of_circle() {
        let g = grid();
        let e = SymmetricBall::euclidean(&g, 1.0).unwrap();
        let center = Vec2::new(-2.0, 0.5);
        let c = ParametricCurve::from_fn(&g, |t| center + 1.5 * Vec2::radial(t));
        let mu = minkowski_curvature_radius(&c, &e).unwrap();
        assert!(mu.map(|m| m - 1.5).max_abs() < 1e-12);
        let ev = evolute(&c, &e).unwrap();
        assert!(ev.max_radius_about(center) < 1e-12);
    }

    #[test]
    fn equidistants_shift_radius_and_keep_evolute() {
        let g = grid();
        let ball = elliptic_ball(&g);
        let h = PeriodicFn::from_fn(&g, |t| 3.0 + 0.3 * (3.0 * t).sin() + 0.1 * (2.0 * t).cos());
        let gamma = ConvexCurve::new(h).unwrap().points();
        let mu = minkowski_curvature_radius(&gamma, &ball).unwrap();
        let shifted = equidistant(&gamma, &ball, 0.7).unwrap();
        let mu_shifted = minkowski_curvature_radius(&shifted, &ball).unwrap();
        assert!(mu_shifted.sub(&mu).unwrap().map(|d| d - 0.7).max_abs() < 1e-10);
        let e1 = evolute(&gamma, &ball).unwrap();
        let e2 = evolute(&equidistant(&gamma, &ball, 3.0).unwrap(), &ball).unwrap();
        assert!(e1.max_distance(&e2).unwrap() < 1e-9);
    }

    #[test]
    fn equidistant_composes_linearly() {
        let g = ParamGrid::new(64).unwrap();
        let ball = elliptic_ball(&g);
        let c = ParametricCurve::from_fn(&g, |t| Vec2::new(t.cos(), (2.0 * t).sin()));
        assert_eq!(equidistant(&c, &ball, 0.0).unwrap(), c);
        let twice = equidistant(&equidistant(&c, &ball, 0.5).unwrap(), &ball, 0.25).unwrap();
        let once = equidistant(&c, &ball, 0.75).unwrap();
        assert!(twice.max_distance(&once).unwrap() < 1e-15);
    }

    #[test]
    fn convex_curve_rejects_cusped_support() {
        let g = ParamGrid::new(64).unwrap();
        let h = PeriodicFn::from_fn(&g, |t| 1.0 + 0.5 * (3.0 * t).sin());
        assert!(matches!(ConvexCurve::new(h), Err(Error::NotConvex { .. })));
    }

    #[test]
    fn validate_convexity_accepts_ellipse_and_rejects_deltoid() {
        let g = ParamGrid::new(256).unwrap();
        let ellipse = ParametricCurve::from_fn(&g, |t| Vec2::new(2.0 * t.cos(), t.sin()));
        assert!(validate_convexity(&ellipse).is_ok());
        let deltoid = ParametricCurve::from_fn(&g, |t| {
            Vec2::new(2.0 * (2.0 * t).sin() - (4.0 * t).sin(), 2.0 * (2.0 * t).cos() + (4.0 * t).cos())
        });
        assert!(validate_convexity(&deltoid).is_err());
    }
}
