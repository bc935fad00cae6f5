//! Deterministic text output: significant-digit formatting, CSV assembly,
//! and a dependency-free SVG overlay.

use std::fs;
use std::path::PathBuf;

use crate::AppError;

/// Formats with `sig` significant digits; plain decimal notation inside a
/// comfortable exponent window, scientific outside it. Identical inputs give
/// byte-identical output.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sig = sig.max(1);
    let mag = x.abs().log10().floor() as i32;
    if mag < -4 || mag > sig as i32 + 3 {
        format!("{:.*e}", sig - 1, x)
    } else {
        let decimals = (sig as i32 - 1 - mag).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}

/// Writes to the path, or stdout when none is given. LF line endings come
/// from the assembly side.
pub fn emit(path: Option<&PathBuf>, content: &str) -> Result<(), AppError> {
    match path {
        Some(path) => fs::write(path, content)
            .map_err(|err| AppError::Compute(format!("cannot write {}: {err}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Fixed-viewport overlay of the outer curve, the exact hole image, and the
/// dashed reference circle.
pub fn svg_overlay(
    outer: &[(f64, f64)],
    hole: &[(f64, f64)],
    circle_center: f64,
    circle_radius: f64,
) -> String {
    const SIZE: f64 = 800.0;
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let circle_box = [
        (circle_center - circle_radius, -circle_radius),
        (circle_center + circle_radius, circle_radius),
    ];
    for &(x, y) in outer.iter().chain(hole).chain(&circle_box) {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-12);
    let pad = 0.05 * span;
    let scale = SIZE / (span + 2.0 * pad);
    let center = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
    let tx = move |x: f64| (x - center.0) * scale + SIZE / 2.0;
    let ty = move |y: f64| SIZE / 2.0 - (y - center.1) * scale;

    let polyline = |pts: &[(f64, f64)], stroke: &str, dash: &str| {
        let mut coords = String::new();
        for &(x, y) in pts.iter().chain(pts.first()) {
            coords.push_str(&format!("{:.3},{:.3} ", tx(x), ty(y)));
        }
        format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\"{dash}/>\n",
            coords.trim_end()
        )
    };

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    svg.push_str(&polyline(outer, "#1a1a1a", ""));
    svg.push_str(&polyline(hole, "#1f77b4", ""));
    svg.push_str(&format!(
        "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.2\" stroke-dasharray=\"6 4\"/>\n",
        tx(circle_center),
        ty(0.0),
        circle_radius * scale
    ));
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0, 12), "0");
        assert_eq!(fmt_sig(0.25, 12), "0.250000000000");
        assert_eq!(fmt_sig(128.0, 6), "128.000");
        assert_eq!(fmt_sig(2.78015539389778, 12), "2.78015539390");
        assert_eq!(fmt_sig(1e-5, 12), "1.00000000000e-5");
        assert_eq!(fmt_sig(-0.115081528949526, 6), "-0.115082");
    }

    #[test]
    fn formatting_round_trips_within_last_digit() {
        for &x in &[0.115081528949526, 2.78015539389778, 161.250002885194, 1e-5, 3.2e9] {
            let printed = fmt_sig(x, 12);
            let back: f64 = printed.parse().unwrap();
            assert!((back - x).abs() <= 1e-11 * x.abs(), "{x} -> {printed} -> {back}");
        }
    }

    #[test]
    fn svg_contains_three_curves() {
        let square = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];
        let svg = svg_overlay(&square, &square, 3.0, 0.5);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.ends_with("</svg>\n"));
    }
}
