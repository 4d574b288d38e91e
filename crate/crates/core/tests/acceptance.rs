//! End-to-end acceptance checks at the default grid size.
//!
//! Runs without the libtest harness so that every criterion prints exactly
//! one PASS/FAIL line; the process exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cwidth::curves::{self, RandomCurveParams};
use cwidth::iteration::{iterate_involutes, iterate_until};
use cwidth::minkowski::{mixed_area, v_length};
use cwidth::oracle::{self, PolylineOracleConfig};
use cwidth::symmetry::{area_split, involute, region_contains, signed_area};
use cwidth::{
    central_point, decompose_normalized, ConvexCurve, Error, ParamGrid, ParametricCurve, PeriodicFn,
    SymmetricBall, Vec2, WidthDecomposition,
};

const N: usize = 512;

type Outcome = std::result::Result<String, String>;

fn grid() -> ParamGrid {
    ParamGrid::new(N).unwrap()
}

fn deltoid() -> WidthDecomposition {
    decompose_normalized(&curves::deltoid(&grid())).unwrap()
}

fn random_dec(seed: u64) -> WidthDecomposition {
    decompose_normalized(&curves::random_convex(&grid(), seed, RandomCurveParams::default())).unwrap()
}

fn err(e: Error) -> String {
    format!("error: {e}")
}

/// Accumulates the worst residual of a family of checks against one tolerance.
struct Worst {
    what: &'static str,
    residual: f64,
    tol: f64,
}

impl Worst {
    fn new(what: &'static str, tol: f64) -> Self {
        Self {
            what,
            residual: 0.0,
            tol,
        }
    }

    fn see(&mut self, r: f64) {
        if r.is_nan() || r > self.residual {
            self.residual = if r.is_nan() { f64::INFINITY } else { r };
        }
    }

    fn ok(&self) -> bool {
        self.residual <= self.tol
    }

    fn line(&self) -> String {
        format!("{} {:.3e} (tol {:.0e})", self.what, self.residual, self.tol)
    }
}

fn report(parts: &[&Worst]) -> Outcome {
    let text = parts.iter().map(|w| w.line()).collect::<Vec<_>>().join("; ");
    if parts.iter().all(|w| w.ok()) {
        Ok(text)
    } else {
        Err(text)
    }
}

fn deltoid_closed_forms() -> Outcome {
    let g = grid();
    let dec = deltoid();
    let inv = involute(&dec).map_err(err)?;
    let mut a = Worst::new("alpha", 1e-8);
    let mut b = Worst::new("beta", 1e-8);
    let mut n = Worst::new("N", 1e-8);
    for (k, t) in g.thetas().enumerate() {
        a.see((dec.alpha.get(k) + 8.0 * (3.0 * t).sin()).abs());
        b.see((inv.beta.get(k) + 8.0 / 3.0 * (3.0 * t).cos()).abs());
        n.see((inv.n.point(k) - curves::deltoid_n(t)).norm());
    }
    report(&[&a, &b, &n])
}

fn deltoid_signed_areas() -> Outcome {
    let dec = deltoid();
    let inv = involute(&dec).map_err(err)?;
    let sa_m = signed_area(&dec.m);
    let sa_n = signed_area(&inv.n);
    // right-hand side by an independent quadrature of the half-period integral
    let w = inv.beta.mul(&inv.beta).unwrap().mul(&dec.ball.frames().bvv).unwrap();
    let rhs = oracle::quadrature_half_integral(&w, 0);
    let mut m = Worst::new("SA(M)-4pi", 1e-8);
    m.see((sa_m - 4.0 * PI).abs());
    let mut nn = Worst::new("SA(N)-4pi/9", 1e-8);
    nn.see((sa_n - 4.0 * PI / 9.0).abs());
    let mut lhs = Worst::new("SA(M)-SA(N)-32pi/9", 1e-8);
    lhs.see((sa_m - sa_n - 32.0 * PI / 9.0).abs());
    let mut r = Worst::new("int beta^2[v,v']-32pi/9", 1e-8);
    r.see((rhs - 32.0 * PI / 9.0).abs());
    report(&[&m, &nn, &lhs, &r])
}

fn deltoid_contraction() -> Outcome {
    let dec = deltoid();
    let trace = iterate_involutes(&dec, 10).map_err(err)?;
    if trace.steps.len() != 11 {
        return Err(format!("expected 11 records, got {}", trace.steps.len()));
    }
    let mut sup = Worst::new("sup alpha ratio-1/9", 1e-6);
    let mut dist = Worst::new("max |M| ratio-1/9", 1e-6);
    for w in trace.steps.windows(2) {
        sup.see((w[1].sup_alpha / w[0].sup_alpha - 1.0 / 9.0).abs());
        let r0 = w[0].m.max_radius_about(Vec2::ZERO);
        let r1 = w[1].m.max_radius_about(Vec2::ZERO);
        dist.see((r1 / r0 - 1.0 / 9.0).abs());
    }
    report(&[&sup, &dist])
}

fn barbier() -> Outcome {
    let mut len = Worst::new("|L_v(gamma_c)-2A(u)c|/(1+A(u)c)", 1e-8);
    let mut m = Worst::new("|L_v(M)|", 1e-9);
    for seed in 0..20 {
        let dec = random_dec(seed);
        let area = dec.ball.area();
        let sup = dec.alpha.max_abs();
        for factor in [1.05, 1.7, 4.0] {
            let c = factor * sup;
            let l = v_length(&dec.equidistant(c), &dec.ball).map_err(err)?;
            len.see((l - 2.0 * area * c).abs() / (1.0 + area * c));
        }
        m.see(v_length(&dec.m, &dec.ball).map_err(err)?.abs());
    }
    report(&[&len, &m])
}

fn area_difference_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut law = Worst::new("|(A1-A2)-4c beta|/A(gamma_c)", 1e-5);
    let decs = std::iter::once(deltoid()).chain((100..105).map(random_dec));
    for dec in decs {
        let beta = involute(&dec).map_err(err)?.beta;
        let c = dec.c0;
        let gc = dec.equidistant(c);
        let area = mixed_area(&gc, &gc).map_err(err)?;
        for _ in 0..8 {
            let theta = rng.gen_range(0.0..2.0 * PI);
            let split = area_split(&dec, c, theta).map_err(err)?;
            let expected = 4.0 * c * beta.get(split.index);
            law.see(((split.a1 - split.a2) - expected).abs() / area);
        }
    }
    report(&[&law])
}

/// Samples of `inner` not adjacent to a zero of `offset` that fall outside the
/// region bounded by one tracing of `outer`.
fn escaped_samples(outer: &ParametricCurve, inner: &ParametricCurve, offset: &PeriodicFn) -> Result<usize, String> {
    let skip = 1e-6 * offset.max_abs();
    let mut bad = 0;
    for k in 0..inner.grid().half() {
        if offset.get(k).abs() <= skip {
            continue;
        }
        if !region_contains(outer.half_tracing(), inner.point(k)).map_err(err)? {
            bad += 1;
        }
    }
    Ok(bad)
}

fn containment_and_chords() -> Outcome {
    let mut escaped = 0usize;
    let mut tested_steps = 0usize;
    let decs: Vec<WidthDecomposition> = std::iter::once(deltoid()).chain((200..203).map(random_dec)).collect();
    for dec in &decs {
        let trace = iterate_involutes(dec, 5).map_err(err)?;
        for w in trace.steps.windows(2) {
            let (prev, next) = (&w[0], &w[1]);
            let (n, beta) = (next.n.as_ref().unwrap(), next.beta.as_ref().unwrap());
            escaped += escaped_samples(&prev.m, n, beta)?;
            escaped += escaped_samples(n, &next.m, &next.alpha)?;
            tested_steps += 1;
        }
    }

    // chord counts on the deltoid: probes between M and gamma, and points of N
    let cfg = PolylineOracleConfig::default();
    let dec = &decs[0];
    let inv = involute(dec).map_err(err)?;
    let mut exterior_ok = 0;
    let mut probes = 0;
    for j in 0..10 {
        let t = 0.31 + j as f64 * 2.0 * PI / 10.0;
        let c = (4.5 + 0.35 * j as f64) * Vec2::radial(t);
        if region_contains(dec.m.half_tracing(), c).map_err(err)? {
            return Err(format!("probe {c:?} is not exterior to M"));
        }
        probes += 1;
        if oracle::chord_midpoint_count(&dec.gamma, c, &cfg).map_err(err)? == 1 {
            exterior_ok += 1;
        }
    }
    let mut interior_ok = 0;
    let mut points = 0;
    let g = grid();
    for k in (0..g.len()).step_by(g.len() / 40) {
        if points == 10 {
            break;
        }
        // stay away from the cusps of N, where it touches M
        if inv.beta.get(k).abs() < 0.5 * inv.beta.max_abs() {
            continue;
        }
        points += 1;
        if oracle::chord_midpoint_count(&dec.gamma, inv.n.point(k), &cfg).map_err(err)? >= 3 {
            interior_ok += 1;
        }
    }
    let text = format!(
        "escaped samples {escaped} over {tested_steps} steps; exterior probes with 1 chord {exterior_ok}/{probes}; points of N with >=3 chords {interior_ok}/{points}"
    );
    if escaped == 0 && exterior_ok == 10 && probes == 10 && interior_ok == 10 && points == 10 {
        Ok(text)
    } else {
        Err(text)
    }
}

fn cusp_parity() -> Outcome {
    let mut violations = Vec::new();
    let mut counted = 0;
    for seed in 300..320 {
        let dec = random_dec(seed);
        let trace = iterate_involutes(&dec, 25).map_err(err)?;
        let mut seq = vec![trace.steps[0].cusps_m];
        for s in &trace.steps[1..] {
            seq.push(s.cusps_n);
            seq.push(s.cusps_m);
        }
        let seq: Vec<usize> = seq.into_iter().flatten().collect();
        counted += seq.len();
        if seq.iter().any(|&c| c < 3 || c % 2 == 0) {
            violations.push(format!("seed {seed}: parity {seq:?}"));
        } else if seq.windows(2).any(|w| w[1] > w[0]) {
            violations.push(format!("seed {seed}: increase {seq:?}"));
        }
    }
    if violations.is_empty() {
        Ok(format!("{counted} cusp counts above the floor, all odd, >=3, non-increasing"))
    } else {
        Err(violations.join("; "))
    }
}

fn telescoping() -> Outcome {
    let mut bound = Worst::new("max partial sum/SA(M0)-1", 1e-8);
    let mut mono = Worst::new("max SA increase/SA(M0)", 1e-14);
    let mut ident = Worst::new("max |drop-energy|/SA(M0)", 1e-8);
    let decs = std::iter::once(deltoid()).chain((400..405).map(random_dec));
    for dec in decs {
        let trace = iterate_involutes(&dec, 50).map_err(err)?;
        let sa = trace.signed_area_sequence();
        let sa0 = sa[0];
        let mut partial = 0.0;
        for e in trace.energy_sequence() {
            partial += e;
            bound.see((partial / sa0 - 1.0).max(0.0));
        }
        for w in sa.windows(2) {
            mono.see(((w[1] - w[0]) / sa0).max(0.0));
        }
        ident.see(trace.telescoping_residual() / sa0);
    }
    report(&[&bound, &mono, &ident])
}

fn random_ball(seed: u64) -> SymmetricBall {
    let h = curves::random_support(&grid(), seed, RandomCurveParams::default());
    SymmetricBall::new(h.even_part()).unwrap()
}

fn duality() -> Outcome {
    let mut uv = Worst::new("|[u,v]-1|", 1e-10);
    let mut inv = Worst::new("dual involution", 1e-8);
    for seed in 500..510 {
        let ball = random_ball(seed);
        let f = ball.frames();
        uv.see(f.u.bracket(&f.v).unwrap().map(|x| x - 1.0).max_abs());
        let back = ball.dual().and_then(|d| d.dual()).map_err(err)?;
        inv.see(back.support().max_diff(ball.support()).unwrap());
    }
    report(&[&uv, &inv])
}

fn convergence() -> Outcome {
    let mut diam = Worst::new("final bbox diam", 1e-10);
    let mut equi = Worst::new("translation equivariance", 1e-9);
    let mut deriv = Worst::new("max_j |alpha^(j)| final/initial", 1e-8);
    let mut steps = 0;
    let shift = Vec2::new(3.7, -2.1);
    for seed in 600..620 {
        let gamma = curves::random_convex(&grid(), seed, RandomCurveParams::default());
        let dec = decompose_normalized(&gamma).map_err(err)?;
        let cp = match central_point(&dec, 1e-10, 500) {
            Ok(cp) => cp,
            Err(Error::NotConverged { estimate }) => {
                return Err(format!("seed {seed} not converged, diameter {:.3e}", estimate.final_diameter))
            }
            Err(e) => return Err(err(e)),
        };
        steps = steps.max(cp.iterations);
        diam.see(cp.final_diameter);
        let moved = decompose_normalized(&gamma.translated(shift)).map_err(err)?;
        let cp2 = central_point(&moved, 1e-10, 500).map_err(err)?;
        equi.see((cp2.point - shift - cp.point).norm());

        let trace = iterate_until(&dec, 500, 1e-10).map_err(err)?;
        let (first, last) = (&trace.steps[0].alpha, &trace.last().alpha);
        for order in 1..=3 {
            let r = last.nth_derivative(order).max_abs() / first.nth_derivative(order).max_abs();
            deriv.see(r);
        }
    }
    report(&[&diam, &equi, &deriv]).map(|s| format!("{s}; at most {steps} steps"))
}

fn isoperimetric() -> Outcome {
    let mut ineq = Worst::new("max A(gamma_c)-c^2A(u)", 1e-8);
    let mut eq = Worst::new("symmetric |A(gamma_c)/(c^2A(u))-1|", 1e-6);
    for seed in 700..710 {
        let dec = random_dec(seed);
        let area = dec.ball.area();
        let sup = dec.alpha.max_abs();
        for factor in [1.05, 1.5, 3.0, 10.0] {
            let c = factor * sup;
            let gc = dec.equidistant(c);
            ineq.see(mixed_area(&gc, &gc).map_err(err)? - c * c * area);
        }
    }
    for seed in 720..725 {
        let h = curves::random_support(&grid(), seed, RandomCurveParams::default()).even_part();
        let center = Vec2::new(seed as f64 * 0.1, -1.0);
        let h = h.zip_with(&PeriodicFn::from_fn(&grid(), |t| center.dot(Vec2::radial(t))), |a, b| a + b).unwrap();
        let dec = decompose_normalized(&ConvexCurve::new(h).map_err(err)?).map_err(err)?;
        let area = dec.ball.area();
        for c in [0.5, dec.c0, 4.0] {
            let gc = dec.equidistant(c);
            eq.see((mixed_area(&gc, &gc).map_err(err)? / (c * c * area) - 1.0).abs());
        }
    }
    report(&[&ineq, &eq])
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("deltoid closed forms", deltoid_closed_forms),
        ("deltoid signed areas", deltoid_signed_areas),
        ("iteration contraction", deltoid_contraction),
        ("Barbier", barbier),
        ("area-difference law", area_difference_law),
        ("containment and nesting", containment_and_chords),
        ("cusp parity", cusp_parity),
        ("telescoping bound", telescoping),
        ("duality and frames", duality),
        ("convergence", convergence),
        ("isoperimetric", isoperimetric),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
