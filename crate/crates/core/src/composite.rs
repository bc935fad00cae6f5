//! The composite map `z = F(f(zeta))` and its parameter solve.
//!
//! Given an outer map `F` and a target hole (center `h` on the positive real
//! axis, radius `R`), the w-plane circle data `(e, r1)` follow from the
//! residual equation `e + sum c_n / e^n = h / C` and the derivative relation
//! `R = Re F'(e) * r1`; the bilinear parameters then come from the circle
//! pair. The hole image is exactly `F(e + r1 e^{i theta})`, a near circle
//! whose deviation is quantified in [`crate::discrepancy`].

use num_complex::Complex64;

use crate::bilinear::{BilinearParams, CirclePairGeometry};
use crate::error::MapError;
use crate::outer_map::LaurentMap;

/// Slack for the annulus domain check of [`CompositeMap::eval`].
const ANNULUS_TOL: f64 = 1e-9;

/// Hole specification on the z plane. The center is restricted to the
/// positive real axis: for an off-axis center the hole equation would impose
/// two real conditions on the single real unknown `e`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HoleTarget {
    /// Hole center given directly.
    Center { h: f64, radius: f64 },
    /// Axial gap `d` from the curve point `F(1)` to the near hole rim,
    /// so `h = Re F(1) + d + radius`.
    Gap { d: f64, radius: f64 },
    /// Axial gap `d` measured from the reference point `x = anchor` instead
    /// of the curve point (used when a normalization length, not the curve
    /// itself, defines the gap).
    GapFrom { anchor: f64, d: f64, radius: f64 },
}

impl HoleTarget {
    pub fn center(h: f64, radius: f64) -> Self {
        Self::Center { h, radius }
    }

    pub fn gap(d: f64, radius: f64) -> Self {
        Self::Gap { d, radius }
    }

    pub fn gap_from(anchor: f64, d: f64, radius: f64) -> Self {
        Self::GapFrom { anchor, d, radius }
    }
}

/// Resolved z-plane hole data of a composite map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoleGeometry {
    /// Hole center `h` on the positive real axis.
    pub center: f64,
    /// Hole radius `R`.
    pub radius: f64,
    /// Eccentric ratio `r1 / e`; the small parameter controlling how circular
    /// the hole image is.
    pub eccentric_ratio: f64,
}

/// One node of an annulus grid image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridPoint {
    Finite(Complex64),
    /// The node fell within the pole tolerance; its image is at infinity.
    AtInfinity,
}

impl GridPoint {
    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            GridPoint::Finite(z) => Some(*z),
            GridPoint::AtInfinity => None,
        }
    }
}

/// The assembled composite map with all derived geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeMap {
    outer: LaurentMap,
    bilinear: BilinearParams,
    circles: CirclePairGeometry,
    hole: HoleGeometry,
}

/// Hole center `h = C (e + sum c_n / e^n)` by direct real accumulation.
pub fn hole_center(outer: &LaurentMap, e: f64) -> f64 {
    assert!(e > 1.0, "hole center needs e > 1");
    let mut sum = e;
    let mut power = 1.0;
    for &c in outer.coeffs() {
        power /= e;
        sum += c * power;
    }
    outer.scale() * sum
}

/// Hole radius `R = C (1 - sum n c_n / e^(n+1)) * r1`.
pub fn hole_radius(outer: &LaurentMap, e: f64, r1: f64) -> f64 {
    assert!(e > 1.0 + r1, "hole radius needs e > 1 + r1");
    outer.scale() * derivative_sum(outer, e) * r1
}

/// `1 - sum n c_n / e^(n+1)`, the real derivative factor at `w = e`.
fn derivative_sum(outer: &LaurentMap, e: f64) -> f64 {
    let mut sum = 1.0;
    let mut power = 1.0 / e;
    for (i, &c) in outer.coeffs().iter().enumerate() {
        power /= e;
        sum -= (i + 1) as f64 * c * power;
    }
    sum
}

/// Solves `e + sum c_n / e^n - h/C = 0` for the circle center `e`.
///
/// Runs the direct iteration `e_0 = h/C`, `e_k = h/C - sum c_n / e_{k-1}^n`
/// until the step drops below `1e-13 max(1, e)` and the residual below `tol`;
/// the iteration contracts whenever the root has `e` comfortably above 1 and
/// the coefficients decay. If it fails within `max_iter` steps a bisection on
/// `[1 + sum |c_n|, h/C + sum |c_n|]` takes over.
pub fn solve_e(outer: &LaurentMap, h: f64, tol: f64, max_iter: usize) -> Result<f64, MapError> {
    let ratio = h / outer.scale();
    let correction = |e: f64| -> f64 {
        let mut sum = 0.0;
        let mut power = 1.0;
        for &c in outer.coeffs() {
            power /= e;
            sum += c * power;
        }
        sum
    };
    let residual = |e: f64| e + correction(e) - ratio;

    let mut e = ratio;
    if e > 1.0 {
        for _ in 0..max_iter {
            let next = ratio - correction(e);
            if !(next > 1.0) || !next.is_finite() {
                break;
            }
            let step_ok = (next - e).abs() < 1e-13 * next.abs().max(1.0);
            e = next;
            if step_ok && residual(e).abs() < tol {
                return Ok(e);
            }
        }
    }

    let bound: f64 = outer.coeffs().iter().map(|c| c.abs()).sum();
    let (mut a, mut b) = (1.0 + bound, ratio + bound);
    if b <= a {
        return Err(MapError::NoRoot(format!(
            "hole center too close: bracket [{a}, {b}] is empty (h/C = {ratio})"
        )));
    }
    let mut fa = residual(a);
    if fa == 0.0 {
        return Ok(a);
    }
    if fa.signum() == residual(b).signum() {
        return Err(MapError::NoRoot(format!("no sign change on [{a}, {b}]")));
    }
    for _ in 0..256 {
        let mid = 0.5 * (a + b);
        if b - a < 1e-13 * mid.max(1.0) {
            return if residual(mid).abs() < tol {
                Ok(mid)
            } else {
                Err(MapError::NonConvergence(format!(
                    "bisection stalled at e = {mid}, residual {}",
                    residual(mid)
                )))
            };
        }
        let fm = residual(mid);
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Err(MapError::NonConvergence(format!(
        "bisection budget exhausted on [{a}, {b}]"
    )))
}

/// Circle radius `r1 = R / (C (1 - sum n c_n / e^(n+1)))`.
pub fn solve_r1(outer: &LaurentMap, e: f64, hole_radius: f64) -> Result<f64, MapError> {
    let denom = outer.scale() * derivative_sum(outer, e);
    if denom < 1e-12 {
        return Err(MapError::DegenerateDerivative { at: e });
    }
    Ok(hole_radius / denom)
}

impl CompositeMap {
    /// Solves the full chain target -> (e, r1) -> (lambda, rho1) and validates
    /// the result by substitution.
    pub fn build(outer: LaurentMap, target: HoleTarget) -> Result<Self, MapError> {
        let (h, radius) = match target {
            HoleTarget::Center { h, radius } => (h, radius),
            HoleTarget::Gap { d, radius } => {
                check_gap(d)?;
                let curve_point = outer.eval(Complex64::new(1.0, 0.0))?.re;
                (curve_point + d + radius, radius)
            }
            HoleTarget::GapFrom { anchor, d, radius } => {
                check_gap(d)?;
                (anchor + d + radius, radius)
            }
        };
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(MapError::BadShape(format!("hole radius must be positive, got {radius}")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(MapError::BadShape(format!(
                "hole center must lie on the positive real axis, got h = {h}"
            )));
        }
        let e = solve_e(&outer, h, 1e-12, 200)?;
        let r1 = solve_r1(&outer, e, radius)?;
        Self::from_parts(outer, e, r1, Some((h, radius)))
    }

    /// Assembles the map directly from w-plane circle data, deriving the
    /// z-plane hole from it.
    pub fn from_circle_pair(outer: LaurentMap, e: f64, r1: f64) -> Result<Self, MapError> {
        Self::from_parts(outer, e, r1, None)
    }

    fn from_parts(
        outer: LaurentMap,
        e: f64,
        r1: f64,
        target: Option<(f64, f64)>,
    ) -> Result<Self, MapError> {
        let (bilinear, circles) = BilinearParams::from_circle_pair(e, r1)?;
        let h_derived = hole_center(&outer, e);
        let r_derived = hole_radius(&outer, e, r1);
        let (h, radius) = target.unwrap_or((h_derived, r_derived));
        if (h_derived - h).abs() > 1e-10 * h.abs().max(1.0)
            || (r_derived - radius).abs() > 1e-10 * radius.abs().max(1.0)
        {
            return Err(MapError::Inconsistent(format!(
                "solved geometry reproduces h = {h_derived}, R = {r_derived}, target was h = {h}, R = {radius}"
            )));
        }
        let hole = HoleGeometry { center: h, radius, eccentric_ratio: r1 / e };
        Ok(Self { outer, bilinear, circles, hole })
    }

    pub fn outer(&self) -> &LaurentMap {
        &self.outer
    }

    pub fn bilinear(&self) -> &BilinearParams {
        &self.bilinear
    }

    pub fn circles(&self) -> &CirclePairGeometry {
        &self.circles
    }

    pub fn hole(&self) -> &HoleGeometry {
        &self.hole
    }

    /// Evaluates `z = F(f(zeta))` for `rho1 <= |zeta| <= 1`.
    pub fn eval(&self, zeta: Complex64) -> Result<Complex64, MapError> {
        let r = zeta.norm();
        if r < self.bilinear.rho1 - ANNULUS_TOL || r > 1.0 + ANNULUS_TOL {
            return Err(MapError::DomainViolation(format!(
                "|zeta| = {r} outside the annulus [{}, 1]",
                self.bilinear.rho1
            )));
        }
        let w = self.bilinear.eval(zeta)?;
        self.outer.eval(w)
    }

    /// Exact image of the circle `|w - e| = r1`, parameterized by the w-plane
    /// angle: `F(e + r1 e^{i theta})`. Traces the same point set as `eval` on
    /// `|zeta| = rho1`, up to reparameterization of the circle.
    pub fn inner_hole_image(&self, theta: f64) -> Complex64 {
        let w = Complex64::new(self.circles.center, 0.0)
            + Complex64::from_polar(self.circles.radius, theta);
        self.outer
            .eval(w)
            .expect("e - r1 > 1 keeps the circle outside the unit disk")
    }

    /// Image of a polar grid on the annulus: `rings` radii log-spaced in
    /// `[rho1, 1]` (inner boundary first) by `rays` uniform angles. Nodes
    /// within the pole tolerance come out as [`GridPoint::AtInfinity`].
    pub fn annulus_grid(&self, rings: usize, rays: usize) -> Vec<Vec<GridPoint>> {
        assert!(rings >= 2, "need at least the two boundary rings");
        assert!(rays >= 3, "need at least 3 rays");
        let rho1 = self.bilinear.rho1;
        let log_rho = rho1.ln();
        (0..rings)
            .map(|j| {
                // pin the endpoints so both boundary circles are exact
                let radius = if j == 0 {
                    rho1
                } else if j == rings - 1 {
                    1.0
                } else {
                    (log_rho * (1.0 - j as f64 / (rings - 1) as f64)).exp()
                };
                (0..rays)
                    .map(|k| {
                        let theta = 2.0 * std::f64::consts::PI * k as f64 / rays as f64;
                        match self.eval(Complex64::from_polar(radius, theta)) {
                            Ok(z) => GridPoint::Finite(z),
                            Err(MapError::PoleInput) => GridPoint::AtInfinity,
                            Err(err) => unreachable!(
                                "grid nodes lie inside the closed annulus: {err}"
                            ),
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

fn check_gap(d: f64) -> Result<(), MapError> {
    if !(d >= 0.0 && d.is_finite()) {
        return Err(MapError::BadShape(format!("axial gap must be nonnegative, got {d}")));
    }
    Ok(())
}
