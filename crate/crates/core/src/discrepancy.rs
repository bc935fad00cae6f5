//! Deviation of the mapped inner circle from a true circle.
//!
//! The hole image `F(e + r1 e^{i theta})` differs from the ideal circle
//! `h + R e^{i theta}` by a complex discrepancy `Delta(theta)` of order
//! `eps^2`, where `eps = r1/e`. For the straight-edged hypotrochoid family
//! (`m = 1/n^2`) there is a closed form, a small-`eps` amplitude, and an
//! almost-touching-circles estimate; everything else goes through exact
//! sampling.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::composite::{CompositeMap, HoleTarget};
use crate::error::MapError;
use crate::outer_map::{straight_edge_m, HypotrochoidSpec, MapFamily};
use crate::search::golden_section_max;

/// Sampled discrepancy data with the refined maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    /// Angle of the maximum modulus.
    pub theta_star: f64,
    /// Maximum of `|Delta|`; never below any sampled value.
    pub delta_max: f64,
    /// Coarse scan `(theta, Delta)` over `[0, pi]`.
    pub samples: Vec<(f64, Complex64)>,
    /// Leading-order amplitude `eps^2/2 |C sum n(n+1) c_n / e^n|`.
    pub asymptotic_amplitude: f64,
    /// Almost-touching estimate, when the outer map is a straight-edged
    /// hypotrochoid.
    pub touching_estimate: Option<f64>,
}

/// Exact discrepancy `F(e + r1 e^{i theta}) - (h + R e^{i theta})`.
pub fn discrepancy_at(cm: &CompositeMap, theta: f64) -> Complex64 {
    let ideal = Complex64::new(cm.hole().center, 0.0)
        + Complex64::from_polar(cm.hole().radius, theta);
    cm.inner_hole_image(theta) - ideal
}

/// Closed-form discrepancy of the straight-edged hypotrochoid family:
/// `(C / (n^2 e^n)) [n eps e^{i theta} - 1 + (1 + eps e^{i theta})^{-n}]`.
pub fn closed_form(n: u32, scale: f64, e: f64, eps: f64, theta: f64) -> Complex64 {
    let phase = Complex64::from_polar(eps, theta);
    let nf = n as f64;
    let bracket = nf * phase - 1.0 + (Complex64::new(1.0, 0.0) + phase).powi(-(n as i32));
    scale / (nf * nf * e.powi(n as i32)) * bracket
}

/// Closed form evaluated with the geometry of `cm`; must agree with
/// [`discrepancy_at`] whenever it applies.
pub fn closed_form_at(cm: &CompositeMap, theta: f64) -> Result<Complex64, MapError> {
    match cm.outer().family() {
        MapFamily::Hypotrochoid { n, m } if (m * (n * n) as f64 - 1.0).abs() < 1e-12 => {
            Ok(closed_form(
                n,
                cm.outer().scale(),
                cm.circles().center,
                cm.hole().eccentric_ratio,
                theta,
            ))
        }
        _ => Err(MapError::WrongFamily),
    }
}

/// Coarse scan of `|Delta|` plus golden-section refinement of the best
/// bracket.
///
/// Real coefficients give `Delta(-theta) = conj(Delta(theta))`, so `|Delta|`
/// is even and the scan restricts to `[0, pi]`. The endpoint `theta = pi` is
/// always a sample: the touching analysis predicts the maximum there.
pub fn max_discrepancy(cm: &CompositeMap, coarse_samples: usize) -> DiscrepancyReport {
    assert!(coarse_samples >= 64, "coarse scan needs at least 64 samples");
    let modulus = |theta: f64| discrepancy_at(cm, theta).norm();

    let mut samples = Vec::with_capacity(coarse_samples);
    let mut best = (0usize, f64::NEG_INFINITY);
    for j in 0..coarse_samples {
        let theta = PI * j as f64 / (coarse_samples - 1) as f64;
        let delta = discrepancy_at(cm, theta);
        let value = delta.norm();
        if value > best.1 {
            best = (j, value);
        }
        samples.push((theta, delta));
    }

    let step = PI / (coarse_samples - 1) as f64;
    let lo = (samples[best.0].0 - step).max(0.0);
    let hi = (samples[best.0].0 + step).min(PI);
    let (mut theta_star, mut delta_max) = golden_section_max(modulus, lo, hi, 1e-10, 200);
    if best.1 > delta_max {
        theta_star = samples[best.0].0;
        delta_max = best.1;
    }

    // leading-order amplitude of the generic expansion
    let e = cm.circles().center;
    let eps = cm.hole().eccentric_ratio;
    let mut series = 0.0;
    let mut power = 1.0;
    for (i, &c) in cm.outer().coeffs().iter().enumerate() {
        let n = (i + 1) as f64;
        power /= e;
        series += n * (n + 1.0) * c * power;
    }
    let asymptotic_amplitude = 0.5 * eps * eps * (cm.outer().scale() * series).abs();

    let touching_estimate = match cm.outer().family() {
        MapFamily::Hypotrochoid { n, m } if (m * (n * n) as f64 - 1.0).abs() < 1e-12 => {
            Some(touching_max_discrepancy(n, cm.outer().scale(), cm.circles().radius))
        }
        _ => None,
    };

    DiscrepancyReport { theta_star, delta_max, samples, asymptotic_amplitude, touching_estimate }
}

/// Small-`eps` amplitude of the straight-edged family:
/// `C (n+1) eps^2 / (2 n e^n)`, the second-order term of the closed-form
/// bracket.
pub fn asymptotic_amplitude(n: u32, scale: f64, e: f64, eps: f64) -> f64 {
    let nf = n as f64;
    scale * (nf + 1.0) * eps * eps / (2.0 * nf * e.powi(n as i32))
}

/// Variant of [`asymptotic_amplitude`] with an extra `1/n^2` in the
/// prefactor; kept for numerical comparison only. The sampled maxima side
/// with [`asymptotic_amplitude`].
pub fn asymptotic_amplitude_alt(n: u32, scale: f64, e: f64, eps: f64) -> f64 {
    asymptotic_amplitude(n, scale, e, eps) / (n * n) as f64
}

/// Maximum discrepancy in the touching limit `s -> 0`, where `e = 1 + r1`
/// and the maximum sits at `theta = pi`:
/// `(C/n^2) [1 - ((n+1) r1 + 1) / (1 + r1)^(n+1)]`.
pub fn touching_max_discrepancy(n: u32, scale: f64, r1: f64) -> f64 {
    let nf = n as f64;
    scale / (nf * nf) * (1.0 - ((nf + 1.0) * r1 + 1.0) / (1.0 + r1).powi(n as i32 + 1))
}

/// Variant of [`touching_max_discrepancy`] with denominator exponent `n`
/// instead of `n + 1`; kept for numerical comparison only (it goes negative
/// for small `r1`, unlike the sampled maxima).
pub fn touching_max_discrepancy_alt(n: u32, scale: f64, r1: f64) -> f64 {
    let nf = n as f64;
    scale / (nf * nf) * (1.0 - ((nf + 1.0) * r1 + 1.0) / (1.0 + r1).powi(n as i32))
}

/// Upper envelope `C / n^2` of the touching maximum as `r1 -> infinity`.
pub fn touching_limit(n: u32, scale: f64) -> f64 {
    scale / (n * n) as f64
}

/// Hole radii of the reference discrepancy grid.
pub const REFERENCE_HOLE_RADII: [f64; 7] = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 128.0];
/// Axial gaps of the reference discrepancy grid.
pub const REFERENCE_GAPS: [f64; 3] = [1e-5, 0.1, 1.0];

/// One cell of the reference grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceCell {
    pub hole_radius: f64,
    pub gap: f64,
    pub eccentric_ratio: f64,
    pub delta_max: f64,
}

/// Builds the 7 x 3 reference grid for the square-edged two-lobe map
/// (`n = 2`, `m = 1/4`, outer radius 1, so `C = 0.8`), ordered by hole radius
/// then gap.
pub fn reference_table() -> Result<Vec<ReferenceCell>, MapError> {
    let scale = 1.0 / (1.0 + straight_edge_m(2));
    let spec = HypotrochoidSpec::straight_edged(2, scale)?;
    let mut rows = Vec::with_capacity(21);
    for &hole_radius in &REFERENCE_HOLE_RADII {
        for &gap in &REFERENCE_GAPS {
            let cm = CompositeMap::build(spec.to_map(), HoleTarget::gap(gap, hole_radius))?;
            let report = max_discrepancy(&cm, 720);
            rows.push(ReferenceCell {
                hole_radius,
                gap,
                eccentric_ratio: cm.hole().eccentric_ratio,
                delta_max: report.delta_max,
            });
        }
    }
    Ok(rows)
}
