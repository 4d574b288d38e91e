//! Preset and randomly generated convex curves, all given by support functions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::minkowski::ConvexCurve;
use crate::periodic::{ParamGrid, PeriodicFn};
use crate::vec2::Vec2;

/// `h(θ) = 10 + sin 3θ`: the level-10 equidistant of the three-cusped area evolute
/// `M(θ) = (2 sin 2θ − sin 4θ, 2 cos 2θ + cos 4θ)` in the Euclidean plane.
pub fn deltoid(grid: &ParamGrid) -> ConvexCurve {
    deltoid_at_level(grid, 10.0)
}

/// `h(θ) = c + sin 3θ`; convex for `c > 8`.
pub fn deltoid_at_level(grid: &ParamGrid, c: f64) -> ConvexCurve {
    ConvexCurve::new(PeriodicFn::from_fn(grid, |t| c + (3.0 * t).sin()))
        .expect("deltoid equidistant is convex for c > 8")
}

/// Closed form of the deltoid area evolute.
pub fn deltoid_m(t: f64) -> Vec2 {
    Vec2::new(
        2.0 * (2.0 * t).sin() - (4.0 * t).sin(),
        2.0 * (2.0 * t).cos() + (4.0 * t).cos(),
    )
}

/// Closed form of its involute `N = M − (8/3) cos 3θ e_θ`.
pub fn deltoid_n(t: f64) -> Vec2 {
    Vec2::new(
        2.0 / 3.0 * (2.0 * t).sin() + 1.0 / 3.0 * (4.0 * t).sin(),
        2.0 / 3.0 * (2.0 * t).cos() - 1.0 / 3.0 * (4.0 * t).cos(),
    )
}

/// Circle of radius `r` centered at `center`.
pub fn circle(grid: &ParamGrid, r: f64, center: Vec2) -> ConvexCurve {
    ConvexCurve::new(PeriodicFn::from_fn(grid, |t| r + center.dot(Vec2::radial(t))))
        .expect("positive radius")
}

/// `h(θ) = a0 + Σ c_m cos mθ + Σ s_m sin mθ`.
pub fn fourier_support(grid: &ParamGrid, a0: f64, cos: &[(u32, f64)], sin: &[(u32, f64)]) -> PeriodicFn {
    PeriodicFn::from_fn(grid, |t| {
        let c: f64 = cos.iter().map(|&(m, a)| a * (m as f64 * t).cos()).sum();
        let s: f64 = sin.iter().map(|&(m, b)| b * (m as f64 * t).sin()).sum();
        a0 + c + s
    })
}

/// Shape of randomly drawn support functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomCurveParams {
    /// Highest harmonic.
    pub max_freq: u32,
    /// Fraction of `a0` spent on harmonics; must be below 1.
    pub budget: f64,
    /// Minimum share of the budget given to the third harmonic, which keeps
    /// the curve away from central symmetry.
    pub third_harmonic_share: f64,
    /// Include even harmonics (non-Euclidean symmetrization).
    pub even_harmonics: bool,
}

impl Default for RandomCurveParams {
    fn default() -> Self {
        Self {
            max_freq: 7,
            budget: 0.8,
            third_harmonic_share: 0.4,
            even_harmonics: true,
        }
    }
}

/// Seeded random convex curve with band-limited support function.
///
/// Harmonic `m` gets amplitude `r_m/(m²+1)` with `Σ|r_m| = budget·a0`, so
/// `h + h'' ≥ (1 − budget)·a0 > 0` by construction.
pub fn random_support(grid: &ParamGrid, seed: u64, params: RandomCurveParams) -> PeriodicFn {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a0: f64 = rng.gen_range(1.0..3.0);
    let freqs: Vec<u32> = (1..=params.max_freq.max(3))
        .filter(|&m| params.even_harmonics || m % 2 == 1)
        .collect();
    let mut weights: Vec<f64> = freqs.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let i3 = freqs.iter().position(|&m| m == 3).expect("third harmonic present");
    let rest = total - weights[i3];
    let share = params.third_harmonic_share;
    if weights[i3] / total < share {
        weights[i3] = share / (1.0 - share) * rest;
    }
    let total: f64 = weights.iter().sum();
    let mut cos = Vec::new();
    let mut sin = Vec::new();
    for (&m, w) in freqs.iter().zip(weights) {
        let r = params.budget * a0 * w / total;
        let amp = r / ((m * m + 1) as f64);
        let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        cos.push((m, amp * phase.cos()));
        sin.push((m, amp * phase.sin()));
    }
    fourier_support(grid, a0, &cos, &sin)
}

pub fn random_convex(grid: &ParamGrid, seed: u64, params: RandomCurveParams) -> ConvexCurve {
    ConvexCurve::new(random_support(grid, seed, params)).expect("convex by construction")
}
