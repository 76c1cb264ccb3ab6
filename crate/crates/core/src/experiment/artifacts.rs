use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::laws::LawSpec;

/// A written file and the SHA-256 of its bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Artifact {
    /// Path relative to the output directory.
    pub file: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Write `contents` to `dir/name` and return its checksum record.
pub fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<Artifact> {
    std::fs::write(dir.join(name), contents)?;
    Ok(Artifact {
        file: name.to_string(),
        sha256: sha256_hex(contents.as_bytes()),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    /// Normalised so that `Σ density · width = 1`.
    pub density: Vec<f64>,
}

/// Range covering both the law's support and every eigenvalue, padded by 5%.
pub fn plot_range(eigs: &[f64], law: &LawSpec) -> (f64, f64) {
    let (mut lo, mut hi) = law.support();
    for &x in eigs {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    let pad = 0.05 * (hi - lo).max(1e-9);
    (lo - pad, hi + pad)
}

pub fn histogram(eigs: &[f64], bins: usize, range: (f64, f64)) -> Histogram {
    let (lo, hi) = range;
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64).collect();
    let mut counts = vec![0usize; bins];
    for &x in eigs {
        let i = (((x - lo) / width).floor().max(0.0) as usize).min(bins - 1);
        counts[i] += 1;
    }
    let total = eigs.len().max(1) as f64;
    let density = counts.iter().map(|&c| c as f64 / (total * width)).collect();
    Histogram { edges, density }
}

pub fn histogram_csv(h: &Histogram) -> String {
    let mut out = String::from("bin_left,bin_right,density\n");
    for (i, d) in h.density.iter().enumerate() {
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e}",
            h.edges[i],
            h.edges[i + 1],
            d
        );
    }
    out
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

const SVG_W: f64 = 640.0;
const SVG_H: f64 = 400.0;
const MARGIN: f64 = 48.0;
const CURVE_POINTS: usize = 400;

/// Histogram bars with the law density drawn as a polyline over its whole
/// support; for Marchenko–Pastur the edges `a` and `b` are marked.
pub fn spectrum_svg(h: &Histogram, law: &LawSpec, title: &str) -> String {
    let (x0, x1) = (h.edges[0], h.edges[h.edges.len() - 1]);
    let (a, b) = law.support();
    let curve: Vec<(f64, f64)> = (0..=CURVE_POINTS)
        .map(|i| {
            let x = a + (b - a) * i as f64 / CURVE_POINTS as f64;
            (x, law.pdf(x))
        })
        .collect();
    let y_max = h
        .density
        .iter()
        .copied()
        .chain(curve.iter().map(|&(_, y)| y))
        .fold(0.0f64, f64::max)
        .max(1e-9)
        * 1.1;
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (SVG_W - 2.0 * MARGIN);
    let py = |y: f64| SVG_H - MARGIN - y / y_max * (SVG_H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_W}" height="{SVG_H}" viewBox="0 0 {SVG_W} {SVG_H}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        SVG_W / 2.0,
        escape_xml(title)
    );
    for (i, &d) in h.density.iter().enumerate() {
        let (l, r) = (px(h.edges[i]), px(h.edges[i + 1]));
        let top = py(d);
        let _ = writeln!(
            s,
            r##"<rect x="{l:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="#9ecae1" stroke="#3182bd" stroke-width="0.5"/>"##,
            (r - l).max(0.0),
            (py(0.0) - top).max(0.0)
        );
    }
    let points: Vec<String> = curve
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#d62728" stroke-width="2"/>"##,
        points.join(" ")
    );
    if let LawSpec::MarchenkoPastur { .. } = law {
        for edge in [a, b] {
            let _ = writeln!(
                s,
                r##"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="#555" stroke-dasharray="4 3"/>"##,
                px(edge),
                py(0.0),
                MARGIN
            );
        }
    }
    // axes and ticks
    let _ = writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="{0:.2}" x2="{1:.2}" y2="{0:.2}" stroke="black"/>"#,
        py(0.0),
        SVG_W - MARGIN
    );
    let _ = writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{:.2}" stroke="black"/>"#,
        py(0.0)
    );
    for i in 0..=4 {
        let x = x0 + (x1 - x0) * i as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="11">{x:.2}</text>"#,
            px(x),
            py(0.0) + 16.0
        );
        let y = y_max * i as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{y:.2}</text>"#,
            MARGIN - 4.0,
            py(y) + 4.0
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_integrates_to_one() {
        let eigs = [-1.9, -0.3, 0.0, 0.1, 1.2, 2.4];
        let range = plot_range(&eigs, &LawSpec::Semicircle);
        assert!(range.0 < -2.0 && range.1 > 2.4);
        let h = histogram(&eigs, 40, range);
        let total: f64 = h
            .density
            .iter()
            .zip(h.edges.windows(2))
            .map(|(d, e)| d * (e[1] - e[0]))
            .sum();
        assert!((total - 1.0).abs() < 1e-12);
        let csv = histogram_csv(&h);
        assert_eq!(csv.lines().count(), 41);
        assert!(csv.starts_with("bin_left,bin_right,density\n"));
    }

    #[test]
    fn svg_is_balanced() {
        let eigs = [0.2, 0.5, 0.9, 1.4, 2.1];
        let law = LawSpec::MarchenkoPastur { y: 0.5 };
        let h = histogram(&eigs, 10, plot_range(&eigs, &law));
        let svg = spectrum_svg(&h, &law, "a <b> & c");
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("a &lt;b&gt; &amp; c"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
    }

    #[test]
    fn sha256_reference() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
