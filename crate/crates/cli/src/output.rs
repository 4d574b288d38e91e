//! Atomic file output, CSV series and SVG figures.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use cwidth::{ParametricCurve, PeriodicFn, Vec2};

use crate::CliError;

/// Writes `contents` to `dir/name` through a temporary file and a rename.
pub fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.join(name).display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(dir.join(name)).map_err(|e| io(e.error))?;
    Ok(())
}

/// Round-trip representation of a double (17 significant digits).
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn series_csv(f: &PeriodicFn) -> String {
    let mut out = String::from("theta,value\n");
    for (k, t) in f.grid().thetas().enumerate() {
        writeln!(out, "{},{}", num(t), num(f.get(k))).unwrap();
    }
    out
}

pub fn curve_csv(c: &ParametricCurve) -> String {
    let mut out = String::from("theta,x,y\n");
    for (k, t) in c.grid().thetas().enumerate() {
        let p = c.point(k);
        writeln!(out, "{},{},{}", num(t), num(p.x), num(p.y)).unwrap();
    }
    out
}

pub struct Layer<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub points: &'a [Vec2],
    pub closed: bool,
}

/// Curve layer of `c`; doubly traced curves contribute one tracing.
pub fn curve_layer<'a>(label: &'a str, color: &'a str, c: &'a ParametricCurve, doubly_traced: bool) -> Layer<'a> {
    Layer {
        label,
        color,
        points: if doubly_traced { c.half_tracing() } else { c.points() },
        closed: true,
    }
}

/// Standalone SVG with one path per layer, y axis pointing up.
pub fn svg(title: &str, layers: &[Layer]) -> String {
    let (mut lo, mut hi) = (
        Vec2::new(f64::INFINITY, f64::INFINITY),
        Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for p in layers.iter().flat_map(|l| l.points) {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
    let pad = 0.05 * span;
    let size = 600.0;
    let s = size / (span + 2.0 * pad);
    let map = |p: &Vec2| ((p.x - lo.x + pad) * s, (hi.y - p.y + pad) * s);
    let (w, h) = ((hi.x - lo.x + 2.0 * pad) * s, (hi.y - lo.y + 2.0 * pad) * s);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", escape(title)).unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for layer in layers {
        let mut d = String::new();
        for (i, p) in layer.points.iter().enumerate() {
            let (x, y) = map(p);
            write!(d, "{}{x:.4},{y:.4}", if i == 0 { "M" } else { " L" }).unwrap();
        }
        if layer.closed {
            d.push_str(" Z");
        }
        writeln!(
            out,
            r#"<path id="{}" d="{d}" fill="none" stroke="{}" stroke-width="1.2"/>"#,
            escape(layer.label),
            layer.color
        )
        .unwrap();
    }
    for (i, layer) in layers.iter().enumerate() {
        writeln!(
            out,
            r#"<text x="10" y="{}" font-family="sans-serif" font-size="14" fill="{}">{}</text>"#,
            20 + 18 * i,
            layer.color,
            escape(layer.label)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
