//! Width decomposition of a convex curve and the constructions built on it:
//! area evolute `M`, central symmetrization `u(γ)`, center symmetry set,
//! the involute `N`, cusp counts, signed areas, the diameter area split,
//! a containment predicate and the asymmetry measure.

use crate::curve::{support_curve, ParametricCurve};
use crate::error::{Error, Result};
use crate::minkowski::{self, ConvexCurve, SymmetricBall};
use crate::periodic::PeriodicFn;
use crate::vec2::Vec2;

/// Relative tolerance for `α(θ+π) = −α(θ)` at decomposition time.
pub const ALPHA_ANTI_TOL: f64 = 1e-10;

/// `γ = M + c0·u` with `u` a symmetric ball boundary parallel to `γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthDecomposition {
    pub gamma: ConvexCurve,
    pub ball: SymmetricBall,
    /// Area evolute, π-periodic (traced twice over the grid).
    pub m: ParametricCurve,
    /// `u`-curvature radius of `M`: `M' = α u'`.
    pub alpha: PeriodicFn,
    pub c0: f64,
}

impl WidthDecomposition {
    /// Equidistant `γ_c = M + c u`.
    pub fn equidistant(&self, c: f64) -> ParametricCurve {
        minkowski::equidistant(&self.m, &self.ball, c).expect("same grid")
    }

    /// The input curve reconstructed as `M + c0 u`.
    pub fn reconstruct(&self) -> ParametricCurve {
        self.equidistant(self.c0)
    }

    /// Same decomposition with the ball rescaled so that `γ = M + c0' u'`.
    pub fn at_level(&self, c0: f64) -> Result<Self> {
        decompose_at_level(&self.gamma, c0)
    }
}

/// Decomposition with `u = u(γ) = ½(γ(θ) − γ(θ+π))` and `c0 = 1`.
pub fn decompose(gamma: &ConvexCurve) -> Result<WidthDecomposition> {
    decompose_at_level(gamma, 1.0)
}

/// Decomposition normalized so the ball support has mean 1; `c0` is the mean of `h`.
///
/// For `h = c + (odd part)` this yields the Euclidean unit ball and `c0 = c`.
pub fn decompose_normalized(gamma: &ConvexCurve) -> Result<WidthDecomposition> {
    decompose_at_level(gamma, gamma.support().mean())
}

/// Decomposition with ball `u(γ)/c0`, so that `γ = M + c0 u`.
pub fn decompose_at_level(gamma: &ConvexCurve, c0: f64) -> Result<WidthDecomposition> {
    if !(c0 > 0.0 && c0.is_finite()) {
        return Err(Error::InvalidArgument(format!("level c0 must be positive, got {c0}")));
    }
    let h = gamma.support();
    let ball = SymmetricBall::new(h.even_part().scale(1.0 / c0))?;
    let m = support_curve(&h.odd_part());
    let frames = ball.frames();
    let alpha = frames
        .u
        .bracket(&m.derivative())?
        .zip_with(&frames.buu, |l, b| l / b)?;
    let residual = alpha.anti_periodicity_residual();
    let tol = ALPHA_ANTI_TOL * alpha.max_abs().max(1.0);
    if residual > tol {
        return Err(Error::NotAntiPeriodic { residual, tol });
    }
    Ok(WidthDecomposition {
        gamma: gamma.clone(),
        ball,
        m,
        alpha: alpha.odd_part(),
        c0,
    })
}

/// Center symmetry set: the Minkowski evolute of `γ` in its symmetrization ball.
pub fn css(gamma: &ConvexCurve) -> Result<ParametricCurve> {
    let dec = decompose(gamma)?;
    minkowski::evolute(&gamma.points(), &dec.ball)
}

/// `N = M + βv` together with `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvoluteResult {
    pub n: ParametricCurve,
    pub beta: PeriodicFn,
}

/// The `v`-involute of the area evolute.
pub fn involute(dec: &WidthDecomposition) -> Result<InvoluteResult> {
    let (n, beta) = u_to_v_involute(&dec.m, &dec.alpha, &dec.ball)?;
    Ok(InvoluteResult { n, beta })
}

/// `β = ½∫_θ^{θ+π} α[u,u']`, `N = M + βv`.
pub(crate) fn u_to_v_involute(
    m: &ParametricCurve,
    alpha: &PeriodicFn,
    ball: &SymmetricBall,
) -> Result<(ParametricCurve, PeriodicFn)> {
    let frames = ball.frames();
    let beta = alpha.mul(&frames.buu)?.half_period_integral()?.scale(0.5);
    let n = m.add_scaled(&beta, &frames.v)?;
    Ok((n, beta))
}

/// `α = −½∫_θ^{θ+π} β[v,v']`, `M = N + αu`.
pub(crate) fn v_to_u_involute(
    n: &ParametricCurve,
    beta: &PeriodicFn,
    ball: &SymmetricBall,
) -> Result<(ParametricCurve, PeriodicFn)> {
    let frames = ball.frames();
    let alpha = beta.mul(&frames.bvv)?.half_period_integral()?.scale(-0.5);
    let m = n.add_scaled(&alpha, &frames.u)?;
    Ok((m, alpha))
}

/// Number of sign changes of an anti-π-periodic function over `[0, π)`.
///
/// Samples with `|f| < 1e-12·max|f|` count as zero and take the sign of the
/// nearest nonzero sample to their left.
pub fn cusp_count(f: &PeriodicFn) -> Result<usize> {
    let n = f.len();
    let scale = f.max_abs();
    if scale == 0.0 {
        return Err(Error::DegenerateSignData { run: n });
    }
    let floor = 1e-12 * scale;
    let small: Vec<bool> = f.values().iter().map(|v| v.abs() < floor).collect();

    // longest cyclic run of near-zero samples
    let mut run = 0;
    let mut longest = 0;
    for k in 0..2 * n {
        if small[k % n] {
            run += 1;
            longest = longest.max(run.min(n));
        } else {
            run = 0;
        }
    }
    if longest >= n / 8 {
        return Err(Error::DegenerateSignData { run: longest });
    }

    let sign_at = |k: usize| -> bool {
        let mut j = k;
        loop {
            if !small[j] {
                return f.get(j) > 0.0;
            }
            j = (j + n - 1) % n;
        }
    };
    let half = n / 2;
    let signs: Vec<bool> = (0..=half).map(sign_at).collect();
    Ok(signs.windows(2).filter(|w| w[0] != w[1]).count())
}

/// Signed area `SA(c) = −A(c,c) = −½∫₀^{2π}[c, c'] dθ`.
pub fn signed_area(c: &ParametricCurve) -> f64 {
    -minkowski::mixed_area(c, c).expect("same grid")
}

/// Areas on either side of a diameter of a convex equidistant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaSplit {
    /// Region bounded by `γ_c(s)`, `s ∈ [θ, θ+π]`, and the diameter.
    pub a1: f64,
    /// `A(γ_c) − a1`.
    pub a2: f64,
    /// Grid index the requested angle was snapped to.
    pub index: usize,
}

/// Splits the area of `γ_c = M + c u` by the diameter at (the grid point nearest) `theta`.
pub fn area_split(dec: &WidthDecomposition, c: f64, theta: f64) -> Result<AreaSplit> {
    let sup = dec.alpha.max_abs();
    if c < sup {
        return Err(Error::NotConvex {
            index: 0,
            quantity: "c - sup|alpha|",
            value: c - sup,
        });
    }
    let grid = dec.m.grid();
    let k = grid.nearest_index(theta);
    let gc = dec.equidistant(c);
    let integrand = gc.bracket(&gc.derivative())?;
    let total = 0.5 * integrand.integral();
    let swept = integrand.forward_half_integral().get(k);
    // ∫_θ^{θ+π} [M(θ), γ_c'] = [M(θ), γ_c(θ+π) − γ_c(θ)]
    let chord = gc.point(k + grid.half()) - gc.point(k);
    let a1 = 0.5 * (swept - dec.m.point(k).bracket(chord));
    Ok(AreaSplit {
        a1,
        a2: total - a1,
        index: k,
    })
}

/// Even-odd containment of `x` in the region bounded by the closed polyline `boundary`.
pub fn region_contains(boundary: &[Vec2], x: Vec2) -> Result<bool> {
    if boundary.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: boundary.len(),
        });
    }
    let n = boundary.len();
    let (mut lo, mut hi) = (boundary[0], boundary[0]);
    for p in boundary {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let diam = (hi - lo).norm();
    let distance = (0..n)
        .map(|i| segment_distance(x, boundary[i], boundary[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min);
    if distance <= 1e-9 * diam {
        return Err(Error::OnBoundary { distance });
    }

    const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;
    let mut angle = 0.723_606_797_749_979_f64;
    'attempt: for _ in 0..64 {
        let dir = Vec2::radial(angle);
        let normal = Vec2::angular(angle);
        // rotate into a frame where the ray is the positive first axis
        let local = |p: Vec2| Vec2::new((p - x).dot(dir), (p - x).dot(normal));
        for p in boundary {
            let q = local(*p);
            if q.x > 0.0 && q.y.abs() <= 1e-12 * diam.max(f64::MIN_POSITIVE) {
                angle += GOLDEN_ANGLE;
                continue 'attempt;
            }
        }
        let mut inside = false;
        for i in 0..n {
            let (p, q) = (local(boundary[i]), local(boundary[(i + 1) % n]));
            if (p.y > 0.0) != (q.y > 0.0) {
                let t = p.y / (p.y - q.y);
                if p.x + t * (q.x - p.x) > 0.0 {
                    inside = !inside;
                }
            }
        }
        return Ok(inside);
    }
    Err(Error::OnBoundary { distance })
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

/// `4·c0·‖β‖∞`, the largest area difference across diameters of `γ`.
pub fn asymmetry_measure(dec: &WidthDecomposition) -> Result<f64> {
    let inv = involute(dec)?;
    Ok(4.0 * dec.c0 * inv.beta.max_abs())
}
