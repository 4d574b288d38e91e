//! Iterated involutes `M₀ → N₁ → M₁ → …` and the central point of a convex curve.
//!
//! With `u`, `v` the ball and dual frames of a [`WidthDecomposition`]:
//!
//! ```text
//! β_{i+1} =  ½∫_θ^{θ+π} α_i [u,u'] ds      N_{i+1} = M_i + β_{i+1} v
//! α_{i+1} = −½∫_θ^{θ+π} β_{i+1} [v,v'] ds  M_{i+1} = N_{i+1} + α_{i+1} u
//! ```
//!
//! Each half step lowers the signed area by an energy term:
//! `SA(M_i) − SA(N_{i+1}) = ∫₀^π β²_{i+1}[v,v']` and
//! `SA(N_i) − SA(M_i) = ∫₀^π α²_i[u,u']`.

use crate::curve::ParametricCurve;
use crate::error::{Error, Result};
use crate::periodic::PeriodicFn;
use crate::symmetry::{self, cusp_count, signed_area, WidthDecomposition};
use crate::vec2::Vec2;

/// Default cap on the number of full steps.
pub const DEFAULT_MAX_STEPS: usize = 500;
/// Default stopping diameter for [`central_point`].
pub const DEFAULT_ABS_TOL: f64 = 1e-10;
/// Hard limit on requested steps.
pub const MAX_STEPS_LIMIT: usize = 10_000;
/// Cusp counts are not reported once `sup|M'|` falls below this fraction of `diam(γ)`.
pub const DEGENERACY_FLOOR: f64 = 1e-13;
/// Growth factor of a sup-norm over its initial value treated as a blow-up.
pub const BLOWUP_FACTOR: f64 = 1e6;

/// One full step of the iteration. Step 0 carries only `M₀` and `α₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub index: usize,
    pub alpha: PeriodicFn,
    pub beta: Option<PeriodicFn>,
    pub m: ParametricCurve,
    pub n: Option<ParametricCurve>,
    pub sa_m: f64,
    pub sa_n: Option<f64>,
    pub sup_alpha: f64,
    pub sup_beta: Option<f64>,
    pub cusps_m: Option<usize>,
    pub cusps_n: Option<usize>,
    pub bbox_diam_m: f64,
    /// `∫₀^π α_i² [u,u'] dθ`.
    pub alpha_energy: f64,
    /// `∫₀^π β_i² [v,v'] dθ`.
    pub beta_energy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub steps: Vec<StepRecord>,
    /// Stopped because `bbox_diam_m` fell below the requested tolerance.
    pub converged: bool,
}

impl IterationTrace {
    pub fn last(&self) -> &StepRecord {
        self.steps.last().expect("trace holds step 0")
    }

    /// `SA(M₀), SA(N₁), SA(M₁), SA(N₂), …`
    pub fn signed_area_sequence(&self) -> Vec<f64> {
        let mut out = vec![self.steps[0].sa_m];
        for s in &self.steps[1..] {
            out.extend(s.sa_n);
            out.push(s.sa_m);
        }
        out
    }

    /// Energy released by each half step, aligned with consecutive pairs of
    /// [`signed_area_sequence`](Self::signed_area_sequence).
    pub fn energy_sequence(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for s in &self.steps[1..] {
            out.extend(s.beta_energy);
            out.push(s.alpha_energy);
        }
        out
    }

    /// Largest `|drop − energy|` over all half steps.
    pub fn telescoping_residual(&self) -> f64 {
        let sa = self.signed_area_sequence();
        sa.windows(2)
            .zip(self.energy_sequence())
            .map(|(w, e)| ((w[0] - w[1]) - e).abs())
            .fold(0.0, f64::max)
    }
}

/// Result of [`central_point`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralPointResult {
    pub point: Vec2,
    pub iterations: usize,
    pub final_diameter: f64,
    pub converged: bool,
}

/// Runs exactly `k` full steps (fewer only if `M_i` collapses to a point).
pub fn iterate_involutes(dec: &WidthDecomposition, k: usize) -> Result<IterationTrace> {
    iterate_until(dec, k, 0.0)
}

/// Runs up to `k` full steps, stopping once `bbox_diam(M_i) < abs_tol`.
pub fn iterate_until(dec: &WidthDecomposition, k: usize, abs_tol: f64) -> Result<IterationTrace> {
    if k > MAX_STEPS_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "at most {MAX_STEPS_LIMIT} steps, got {k}"
        )));
    }
    let frames = dec.ball.frames();
    let floor = DEGENERACY_FLOOR * dec.gamma.points().bbox_diameter();
    let du_max = frames.du.max_radius_about(Vec2::ZERO);
    let dv_max = frames.dv.max_radius_about(Vec2::ZERO);
    let half_energy = |f: &PeriodicFn, w: &PeriodicFn| -> f64 {
        0.5 * f.mul(f).and_then(|f2| f2.mul(w)).expect("same grid").integral()
    };
    let cusps = |f: &PeriodicFn, sup: f64, speed: f64| -> Option<usize> {
        if sup * speed > floor {
            cusp_count(f).ok()
        } else {
            None
        }
    };

    let alpha0 = dec.alpha.clone();
    let sup_alpha0 = alpha0.max_abs();
    let m0 = dec.m.clone();
    let mut steps = vec![StepRecord {
        index: 0,
        sa_m: signed_area(&m0),
        sup_alpha: sup_alpha0,
        cusps_m: cusps(&alpha0, sup_alpha0, du_max),
        bbox_diam_m: m0.bbox_diameter(),
        alpha_energy: half_energy(&alpha0, &frames.buu),
        alpha: alpha0,
        beta: None,
        m: m0,
        n: None,
        sa_n: None,
        sup_beta: None,
        cusps_n: None,
        beta_energy: None,
    }];
    let mut sup_beta1 = None;
    let mut converged = steps[0].bbox_diam_m < abs_tol;

    for i in 1..=k {
        if converged {
            break;
        }
        let prev = steps.last().expect("non-empty");
        if prev.sup_alpha == 0.0 && i > 1 {
            break;
        }
        let (n, beta) = symmetry::u_to_v_involute(&prev.m, &prev.alpha, &dec.ball)?;
        let (m, alpha) = symmetry::v_to_u_involute(&n, &beta, &dec.ball)?;
        let sup_alpha = alpha.max_abs();
        let sup_beta = beta.max_abs();
        let beta_ref = *sup_beta1.get_or_insert(sup_beta);
        for (sup, reference) in [(sup_alpha, sup_alpha0), (sup_beta, beta_ref)] {
            if reference > 0.0 && sup > BLOWUP_FACTOR * reference || !sup.is_finite() {
                return Err(Error::NumericalBlowup {
                    step: i,
                    ratio: sup / reference,
                });
            }
        }
        let record = StepRecord {
            index: i,
            sa_m: signed_area(&m),
            sa_n: Some(signed_area(&n)),
            sup_alpha,
            sup_beta: Some(sup_beta),
            cusps_m: cusps(&alpha, sup_alpha, du_max),
            cusps_n: cusps(&beta, sup_beta, dv_max),
            bbox_diam_m: m.bbox_diameter(),
            alpha_energy: half_energy(&alpha, &frames.buu),
            beta_energy: Some(half_energy(&beta, &frames.bvv)),
            alpha,
            beta: Some(beta),
            m,
            n: Some(n),
        };
        converged = record.bbox_diam_m < abs_tol;
        steps.push(record);
    }
    Ok(IterationTrace { steps, converged })
}

/// Iterates until `bbox_diam(M_i) < abs_tol` and returns the centroid of the last `M_i`.
///
/// Fails with [`Error::NotConverged`], carrying the best estimate, when
/// `max_steps` is reached first.
pub fn central_point(
    dec: &WidthDecomposition,
    abs_tol: f64,
    max_steps: usize,
) -> Result<CentralPointResult> {
    if !(abs_tol > 0.0) {
        return Err(Error::InvalidArgument(format!("abs_tol must be positive, got {abs_tol}")));
    }
    let trace = iterate_until(dec, max_steps, abs_tol)?;
    let last = trace.last();
    let estimate = CentralPointResult {
        point: last.m.centroid(),
        iterations: last.index,
        final_diameter: last.bbox_diam_m,
        converged: trace.converged,
    };
    if trace.converged {
        Ok(estimate)
    } else {
        Err(Error::NotConverged { estimate })
    }
}

/// Constant-width equidistants `γ_i = M_i + c u` and `η_i = N_i + d v` along a trace.
///
/// `eta` has one entry per step `i ≥ 1`.
pub fn equidistant_sequences(
    trace: &IterationTrace,
    dec: &WidthDecomposition,
    c: f64,
    d: f64,
) -> Result<(Vec<ParametricCurve>, Vec<ParametricCurve>)> {
    let sup_alpha = trace.steps.iter().map(|s| s.sup_alpha).fold(0.0, f64::max);
    let sup_beta = trace
        .steps
        .iter()
        .filter_map(|s| s.sup_beta)
        .fold(0.0, f64::max);
    if c < sup_alpha {
        return Err(Error::NotConvex {
            index: 0,
            quantity: "c - sup|alpha_i|",
            value: c - sup_alpha,
        });
    }
    if d < sup_beta {
        return Err(Error::NotConvex {
            index: 0,
            quantity: "d - sup|beta_i|",
            value: d - sup_beta,
        });
    }
    let frames = dec.ball.frames();
    let gammas = trace
        .steps
        .iter()
        .map(|s| s.m.add_constant_multiple(c, &frames.u))
        .collect::<Result<Vec<_>>>()?;
    let etas = trace
        .steps
        .iter()
        .filter_map(|s| s.n.as_ref())
        .map(|n| n.add_constant_multiple(d, &frames.v))
        .collect::<Result<Vec<_>>>()?;
    Ok((gammas, etas))
}
