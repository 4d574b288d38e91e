use std::path::Path;

use serde::Serialize;

use cwidth::audit::{self, Check};
use cwidth::iteration::{iterate_involutes, iterate_until, DEFAULT_MAX_STEPS};
use cwidth::minkowski::{v_length, ConvexCurve};
use cwidth::symmetry::{asymmetry_measure, cusp_count, involute, signed_area, InvoluteResult};
use cwidth::{central_point, decompose_normalized, CentralPointResult, Error, WidthDecomposition};

use crate::output::{curve_csv, curve_layer, num, series_csv, svg, write_atomic, Layer};
use crate::CliError;

pub fn core_err(e: Error) -> CliError {
    match e {
        Error::NotConvex { .. } | Error::DegenerateBall { .. } => CliError::Convexity(e.to_string()),
        Error::InvalidGrid { .. } | Error::InvalidArgument(_) => CliError::BadSpec(e.to_string()),
        _ => CliError::Numeric(e.to_string()),
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
enum Cusps {
    Count(usize),
    Degenerate(&'static str),
}

#[derive(Debug, Serialize)]
struct Residual {
    residual: f64,
    tolerance: f64,
}

#[derive(Debug, Serialize)]
struct CentralPointJson {
    x: f64,
    y: f64,
    iterations: usize,
    converged: bool,
    final_diameter: f64,
}

impl From<CentralPointResult> for CentralPointJson {
    fn from(c: CentralPointResult) -> Self {
        Self {
            x: c.point.x,
            y: c.point.y,
            iterations: c.iterations,
            converged: c.converged,
            final_diameter: c.final_diameter,
        }
    }
}

#[derive(Debug, Serialize)]
struct CheckJson {
    name: &'static str,
    residual: f64,
    tolerance: f64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

impl From<&Check> for CheckJson {
    fn from(c: &Check) -> Self {
        Self {
            name: c.name,
            residual: c.residual,
            tolerance: c.tolerance,
            passed: c.passed,
            note: c.note.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
struct Report {
    grid_n: usize,
    c0: f64,
    ball_area: f64,
    #[serde(rename = "SA_M")]
    sa_m: f64,
    #[serde(rename = "SA_N")]
    sa_n: f64,
    #[serde(rename = "cusps_M")]
    cusps_m: Cusps,
    #[serde(rename = "cusps_N")]
    cusps_n: Cusps,
    asymmetry: f64,
    barbier: Residual,
    central_point: CentralPointJson,
    checks: Vec<CheckJson>,
}

fn cusps(dec: &WidthDecomposition, f: &cwidth::PeriodicFn) -> Cusps {
    if audit::is_degenerate(dec) {
        return Cusps::Degenerate("degenerate");
    }
    cusp_count(f).map_or(Cusps::Degenerate("degenerate"), Cusps::Count)
}

fn central_tol(gamma: &ConvexCurve, tol: f64) -> f64 {
    tol * gamma.points().bbox_diameter().max(1.0)
}

fn estimate(dec: &WidthDecomposition, tol: f64) -> Result<CentralPointResult, CliError> {
    match central_point(dec, tol, DEFAULT_MAX_STEPS) {
        Ok(c) => Ok(c),
        Err(Error::NotConverged { estimate }) => Ok(estimate),
        Err(e) => Err(core_err(e)),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let v = serde_json::to_value(value).map_err(|e| CliError::Numeric(e.to_string()))?;
    if let Some(path) = first_null(&v, String::new()) {
        return Err(CliError::Numeric(format!("report field {path} is not finite")));
    }
    let mut out = serde_json::to_vec_pretty(&v).map_err(|e| CliError::Numeric(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

fn first_null(v: &serde_json::Value, path: String) -> Option<String> {
    match v {
        serde_json::Value::Null => Some(path),
        serde_json::Value::Object(m) => m.iter().find_map(|(k, v)| first_null(v, format!("{path}.{k}"))),
        serde_json::Value::Array(a) => a.iter().enumerate().find_map(|(i, v)| first_null(v, format!("{path}[{i}]"))),
        _ => None,
    }
}

fn failed_names(checks: &[Check]) -> Option<String> {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    (!failed.is_empty()).then(|| failed.join(", "))
}

/// `γ`, `M`, `N` and the dual equidistant `N + c v`.
fn overlay_svg(dec: &WidthDecomposition, inv: &InvoluteResult) -> Result<String, CliError> {
    let gamma = dec.gamma.points();
    let eta = inv
        .n
        .add_constant_multiple(dec.c0, &dec.ball.frames().v)
        .map_err(core_err)?;
    Ok(svg(
        "M and N with their equidistants",
        &[
            curve_layer("gamma", "black", &gamma, false),
            curve_layer("eta", "gray", &eta, false),
            curve_layer("M", "crimson", &dec.m, true),
            curve_layer("N", "royalblue", &inv.n, true),
        ],
    ))
}

/// `M₀`, `N₁` and `M₁`.
fn iteration_svg(dec: &WidthDecomposition) -> Result<String, CliError> {
    let trace = iterate_involutes(dec, 1).map_err(core_err)?;
    let mut layers = vec![curve_layer("M0", "crimson", &trace.steps[0].m, true)];
    if let Some(step) = trace.steps.get(1) {
        layers.push(curve_layer("N1", "royalblue", step.n.as_ref().expect("step 1 has N"), true));
        layers.push(curve_layer("M1", "darkgreen", &step.m, true));
    }
    Ok(svg("Iterated involutes", &layers))
}

/// `γ` and `M` with the diameter of largest area difference.
fn split_svg(dec: &WidthDecomposition, inv: &InvoluteResult) -> String {
    let gamma = dec.gamma.points();
    let k = (0..gamma.len())
        .max_by(|&i, &j| inv.beta.get(i).abs().total_cmp(&inv.beta.get(j).abs()))
        .unwrap_or(0);
    let chord = [gamma.point(k), gamma.point(k + gamma.grid().half())];
    svg(
        "Diameter with the largest area difference",
        &[
            curve_layer("gamma", "black", &gamma, false),
            curve_layer("M", "crimson", &dec.m, true),
            Layer {
                label: "diameter",
                color: "darkorange",
                points: &chord,
                closed: false,
            },
        ],
    )
}

pub fn analyze(gamma: &ConvexCurve, out: &Path) -> Result<(), CliError> {
    let dec = decompose_normalized(gamma).map_err(core_err)?;
    let inv = involute(&dec).map_err(core_err)?;
    let checks = audit::run(gamma).map_err(core_err)?;
    let a_u = dec.ball.area();
    let lv = v_length(&gamma.points(), &dec.ball).map_err(core_err)?;
    let report = Report {
        grid_n: gamma.grid().len(),
        c0: dec.c0,
        ball_area: a_u,
        sa_m: signed_area(&dec.m),
        sa_n: signed_area(&inv.n),
        cusps_m: cusps(&dec, &dec.alpha),
        cusps_n: cusps(&dec, &inv.beta),
        asymmetry: asymmetry_measure(&dec).map_err(core_err)?,
        barbier: Residual {
            residual: (lv - 2.0 * a_u * dec.c0).abs(),
            tolerance: 1e-8 * (1.0 + a_u * dec.c0),
        },
        central_point: estimate(&dec, central_tol(gamma, 1e-10))?.into(),
        checks: checks.iter().map(CheckJson::from).collect(),
    };
    write_atomic(out, "report.json", &to_json(&report)?)?;
    write_atomic(out, "alpha.csv", series_csv(&dec.alpha).as_bytes())?;
    write_atomic(out, "beta.csv", series_csv(&inv.beta).as_bytes())?;
    write_atomic(out, "gamma.csv", curve_csv(&gamma.points()).as_bytes())?;
    write_atomic(out, "M.csv", curve_csv(&dec.m).as_bytes())?;
    write_atomic(out, "N.csv", curve_csv(&inv.n).as_bytes())?;
    write_atomic(out, "figure.svg", overlay_svg(&dec, &inv)?.as_bytes())?;
    match failed_names(&checks) {
        Some(names) => Err(CliError::Numeric(format!("invariants violated: {names}"))),
        None => Ok(()),
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn cusp_cell(c: Option<usize>) -> String {
    c.map_or_else(|| "degenerate".to_owned(), |c| c.to_string())
}

pub fn iterate(gamma: &ConvexCurve, out: &Path, k: usize, tol: f64) -> Result<(), CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::BadSpec(format!("--tol: {tol} must be positive")));
    }
    let dec = decompose_normalized(gamma).map_err(core_err)?;
    let trace = iterate_until(&dec, k, tol).map_err(core_err)?;
    let mut csv = String::from("i,SA_M,SA_N,sup_alpha,sup_beta,cusps_M,cusps_N,bbox_diam\n");
    for (i, s) in trace.steps.iter().enumerate() {
        let cusps_n = if i == 0 { String::new() } else { cusp_cell(s.cusps_n) };
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            s.index,
            num(s.sa_m),
            opt(s.sa_n),
            num(s.sup_alpha),
            opt(s.sup_beta),
            cusp_cell(s.cusps_m),
            cusps_n,
            num(s.bbox_diam_m)
        ));
    }
    let last = trace.last();
    let cp = CentralPointJson::from(CentralPointResult {
        point: last.m.centroid(),
        iterations: last.index,
        final_diameter: last.bbox_diam_m,
        converged: trace.converged,
    });
    write_atomic(out, "trace.csv", csv.as_bytes())?;
    write_atomic(out, "central_point.json", &to_json(&cp)?)?;
    write_atomic(out, "iteration.svg", iteration_svg(&dec)?.as_bytes())?;
    Ok(())
}

pub fn verify(gamma: &ConvexCurve) -> Result<(), CliError> {
    let checks = audit::run(gamma).map_err(core_err)?;
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    println!("{:<6} {:<width$}  {:>12}  {:>12}  note", "status", "invariant", "residual", "tolerance");
    for c in &checks {
        println!(
            "{:<6} {:<width$}  {:>12.3e}  {:>12.3e}  {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.residual,
            c.tolerance,
            c.note.as_deref().unwrap_or("")
        );
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("{passed}/{} invariants hold", checks.len());
    match failed_names(&checks) {
        Some(names) => Err(CliError::Numeric(format!("invariants violated: {names}"))),
        None => Ok(()),
    }
}

pub fn render(gamma: &ConvexCurve, out: &Path) -> Result<(), CliError> {
    let dec = decompose_normalized(gamma).map_err(core_err)?;
    let inv = involute(&dec).map_err(core_err)?;
    write_atomic(out, "figure.svg", overlay_svg(&dec, &inv)?.as_bytes())?;
    write_atomic(out, "split.svg", split_svg(&dec, &inv).as_bytes())?;
    write_atomic(out, "iteration.svg", iteration_svg(&dec)?.as_bytes())?;
    Ok(())
}
