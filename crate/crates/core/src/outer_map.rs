//! Laurent-series maps of the unit-circle exterior.
//!
//! `F(w) = C (w + sum_{n>=1} c_n / w^n)` with real coefficients, analytic for
//! `|w| > 1`. Two closed-form families are provided: hypotrochoids
//! `C (w + m / w^n)`, whose image of the unit circle is a rounded
//! `(n+1)`-lobed curve, and truncated series for the exterior of regular
//! polygons, whose kept powers are `w^(1-nk)`.

use num_complex::Complex64;

use crate::error::MapError;

/// Relative slack for the `|w| >= 1` domain check.
const DOMAIN_TOL: f64 = 1e-12;

/// Relative threshold under which the derivative counts as vanishing during
/// the construction-time grid check.
const DERIV_TOL: f64 = 1e-12;

/// Closed-form family behind a map, when one applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapFamily {
    /// User-supplied coefficient list.
    Generic,
    /// Single coefficient `c_n = m`.
    Hypotrochoid { n: u32, m: f64 },
    /// Truncated regular-polygon series.
    Polygon { sides: u32, terms: u32, rotated: bool },
}

/// A truncated Laurent map `F(w) = C (w + sum c_n / w^n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentMap {
    scale: f64,
    coeffs: Vec<f64>,
    family: MapFamily,
}

/// Neumaier-compensated accumulator; the series terms shrink once `|w| > 1`,
/// so left-to-right accumulation with a running correction is enough.
#[derive(Default, Clone, Copy)]
struct Compensated {
    sum: f64,
    correction: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.correction += (self.sum - t) + x;
        } else {
            self.correction += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.correction
    }
}

impl LaurentMap {
    /// Builds a map from a raw coefficient list; `coeffs[i]` multiplies
    /// `w^-(i+1)`. Fails if the derivative vanishes on the check circle
    /// `|w| = 1 + 1e-6`.
    pub fn new(scale: f64, coeffs: Vec<f64>) -> Result<Self, MapError> {
        Self::with_family(scale, coeffs, MapFamily::Generic)
    }

    /// `F(w) = C w`.
    pub fn scaled_identity(scale: f64) -> Result<Self, MapError> {
        Self::with_family(scale, Vec::new(), MapFamily::Generic)
    }

    fn with_family(scale: f64, coeffs: Vec<f64>, family: MapFamily) -> Result<Self, MapError> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(MapError::BadShape(format!("scale must be positive, got {scale}")));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(MapError::BadShape("non-finite coefficient".into()));
        }
        let map = Self { scale, coeffs, family };
        map.check_derivative_on_grid()?;
        Ok(map)
    }

    fn assemble(scale: f64, coeffs: Vec<f64>, family: MapFamily) -> Self {
        Self { scale, coeffs, family }
    }

    /// Derivative magnitudes on `|w| = 1 + 1e-6`; a zero there means the map
    /// fails to be conformal up to the boundary curve.
    fn check_derivative_on_grid(&self) -> Result<(), MapError> {
        let r = 1.0 + 1e-6;
        for j in 0..360 {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / 360.0;
            let w = Complex64::from_polar(r, theta);
            let d = self.derivative_unchecked(w);
            if d.norm() < DERIV_TOL * self.scale {
                return Err(MapError::BadShape(format!(
                    "derivative vanishes on |w| = 1 + 1e-6 near theta = {theta}"
                )));
            }
        }
        Ok(())
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Coefficient list; index `i` multiplies `w^-(i+1)`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `w^-n` (zero when absent).
    pub fn coefficient(&self, n: u32) -> f64 {
        if n == 0 {
            return 0.0;
        }
        self.coeffs.get(n as usize - 1).copied().unwrap_or(0.0)
    }

    pub fn family(&self) -> MapFamily {
        self.family
    }

    /// Same coefficients under a different scale factor.
    pub fn rescaled(&self, scale: f64) -> Result<Self, MapError> {
        Self::with_family(scale, self.coeffs.clone(), self.family)
    }

    fn check_domain(&self, w: Complex64) -> Result<(), MapError> {
        if w.norm() < 1.0 - DOMAIN_TOL {
            return Err(MapError::DomainViolation(format!(
                "|w| = {} lies inside the unit circle",
                w.norm()
            )));
        }
        Ok(())
    }

    /// Evaluates `C (w + sum c_n w^-n)`, terms accumulated in order of
    /// increasing `n` with compensation.
    pub fn eval(&self, w: Complex64) -> Result<Complex64, MapError> {
        self.check_domain(w)?;
        Ok(self.eval_unchecked(w))
    }

    fn eval_unchecked(&self, w: Complex64) -> Complex64 {
        let winv = w.inv();
        let mut power = Complex64::new(1.0, 0.0);
        let mut re = Compensated::default();
        let mut im = Compensated::default();
        re.add(w.re);
        im.add(w.im);
        for &c in &self.coeffs {
            power *= winv;
            if c != 0.0 {
                re.add(c * power.re);
                im.add(c * power.im);
            }
        }
        self.scale * Complex64::new(re.value(), im.value())
    }

    /// Evaluates `F'(w) = C (1 - sum n c_n w^-(n+1))`.
    pub fn derivative(&self, w: Complex64) -> Result<Complex64, MapError> {
        self.check_domain(w)?;
        Ok(self.derivative_unchecked(w))
    }

    fn derivative_unchecked(&self, w: Complex64) -> Complex64 {
        let winv = w.inv();
        let mut power = winv;
        let mut re = Compensated::default();
        let mut im = Compensated::default();
        re.add(1.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            power *= winv;
            if c != 0.0 {
                let factor = (i + 1) as f64 * c;
                re.add(-factor * power.re);
                im.add(-factor * power.im);
            }
        }
        self.scale * Complex64::new(re.value(), im.value())
    }

    /// Image of the unit circle at `samples` equispaced angles
    /// `theta_j = 2 pi j / samples`.
    pub fn sample_boundary(&self, samples: usize) -> Vec<Complex64> {
        assert!(samples >= 3, "need at least 3 boundary samples");
        (0..samples)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
                self.eval_unchecked(Complex64::from_polar(1.0, theta))
            })
            .collect()
    }

    /// Minimum and maximum of `|F|` over the sampled unit-circle image.
    pub fn radial_extent(&self, samples: usize) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for z in self.sample_boundary(samples) {
            let r = z.norm();
            lo = lo.min(r);
            hi = hi.max(r);
        }
        (lo, hi)
    }
}

/// The `m` value at which the lobed curve develops locally straight edges.
pub fn straight_edge_m(n: u32) -> f64 {
    assert!(n >= 1);
    1.0 / (n as f64 * n as f64)
}

/// Generalized binomial coefficient `alpha (alpha-1) ... (alpha-k+1) / k!`,
/// accumulated multiplicatively term by term.
pub fn generalized_binomial(alpha: f64, k: u32) -> f64 {
    let mut value = 1.0;
    for i in 0..k {
        value *= (alpha - i as f64) / (i + 1) as f64;
    }
    value
}

/// `F(w) = C (w + m / w^n)` with `|m| <= 1/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypotrochoidSpec {
    pub n: u32,
    pub m: f64,
    pub scale: f64,
}

impl HypotrochoidSpec {
    pub fn new(n: u32, m: f64, scale: f64) -> Result<Self, MapError> {
        if n < 1 {
            return Err(MapError::BadShape("hypotrochoid needs n >= 1".into()));
        }
        if !(m.is_finite() && m.abs() <= 1.0 / n as f64) {
            return Err(MapError::BadShape(format!(
                "hypotrochoid coefficient must satisfy |m| <= 1/n = {}, got {m}",
                1.0 / n as f64
            )));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(MapError::BadShape(format!("scale must be positive, got {scale}")));
        }
        Ok(Self { n, m, scale })
    }

    /// The locally straight-edged member `m = 1/n^2`.
    pub fn straight_edged(n: u32, scale: f64) -> Result<Self, MapError> {
        Self::new(n, straight_edge_m(n), scale)
    }

    pub fn to_map(&self) -> LaurentMap {
        let mut coeffs = vec![0.0; self.n as usize];
        coeffs[self.n as usize - 1] = self.m;
        // |m| <= 1/n keeps |F'| >= C (n+1) 1e-6 on the check circle, so no
        // grid check is needed here.
        LaurentMap::assemble(self.scale, coeffs, MapFamily::Hypotrochoid { n: self.n, m: self.m })
    }

    /// Radial bounds `(C (1 - |m|), C (1 + |m|))` of the boundary curve.
    pub fn bounds(&self) -> (f64, f64) {
        (self.scale * (1.0 - self.m.abs()), self.scale * (1.0 + self.m.abs()))
    }

    /// Extreme radii of curvature of the boundary curve: the minimum at
    /// `theta = 0` and the maximum at `theta = pi/(n+1)`.
    ///
    /// Returns `(r_min, r_max)`; `r_max` is infinite at the straight-edge
    /// member `|m| n^2 = 1`. Magnitudes are reported for negative `m`, whose
    /// curve is the positive-`m` one rotated by the half-lobe angle
    /// `pi/(n+1)`.
    pub fn curvature_extremes(&self) -> (f64, f64) {
        if self.m == 0.0 {
            return (self.scale, self.scale);
        }
        let (m, n) = (self.m.abs(), self.n as f64);
        let r_min = self.scale * (m * n - 1.0) * (m * n - 1.0) / (m * n * n + 1.0);
        let denom = m * n * n - 1.0;
        let r_max = if denom.abs() < 1e-12 {
            f64::INFINITY
        } else {
            self.scale * (m * n + 1.0) * (m * n + 1.0) / denom.abs()
        };
        (r_min, r_max)
    }
}

/// Truncated exterior map of a regular polygon with `sides` sides.
///
/// Keeps the series terms `k = 0..terms-1`; term `k >= 1` contributes the
/// coefficient `sigma^k binom(2/sides, k) / (1 - sides k)` at power
/// `w^-(sides k - 1)`, with `sigma = -1` for the vertex-on-axis orientation
/// and `sigma = +1` for the variant rotated by `pi/sides`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolygonSpec {
    pub sides: u32,
    pub terms: u32,
    pub scale: f64,
    pub rotated: bool,
}

impl PolygonSpec {
    pub fn new(sides: u32, terms: u32, scale: f64, rotated: bool) -> Result<Self, MapError> {
        if sides < 3 {
            return Err(MapError::BadShape(format!("polygon needs at least 3 sides, got {sides}")));
        }
        if terms < 1 {
            return Err(MapError::BadShape("series truncation needs at least 1 term".into()));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(MapError::BadShape(format!("scale must be positive, got {scale}")));
        }
        Ok(Self { sides, terms, scale, rotated })
    }

    pub fn to_map(&self) -> LaurentMap {
        let n = self.sides;
        let mut coeffs = if self.terms > 1 {
            vec![0.0; (n * (self.terms - 1)) as usize]
        } else {
            Vec::new()
        };
        for k in 1..self.terms {
            let sign = if self.rotated || k % 2 == 0 { 1.0 } else { -1.0 };
            let c = sign * generalized_binomial(2.0 / n as f64, k) / (1.0 - (n * k) as f64);
            coeffs[(n * k) as usize - 2] = c;
        }
        LaurentMap::assemble(
            self.scale,
            coeffs,
            MapFamily::Polygon { sides: self.sides, terms: self.terms, rotated: self.rotated },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square_lobed() -> LaurentMap {
        HypotrochoidSpec::new(2, 0.25, 0.8).unwrap().to_map()
    }

    #[test]
    fn identity_map_is_identity() {
        let map = LaurentMap::scaled_identity(1.0).unwrap();
        let z = map.eval(c(3.0, 4.0)).unwrap();
        assert!((z - c(3.0, 4.0)).norm() < 1e-15);
        assert!((map.derivative(c(2.0, 1.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn lobed_map_values() {
        let map = square_lobed();
        assert!((map.eval(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        // hole-center value at the solved circle center
        let e = 2.78015539389778;
        assert!((map.eval(c(e, 0.0)).unwrap() - c(2.25, 0.0)).norm() < 1e-12);
        // and at the 6-digit rounded center the value is 2.25 to ~4e-6
        assert!((map.eval(c(2.78016, 0.0)).unwrap().re - 2.25).abs() < 1e-5);
    }

    #[test]
    fn derivative_values() {
        let map = square_lobed();
        let e = 2.78015539389778;
        let d = map.derivative(c(e, 0.0)).unwrap();
        assert!((d.re - 0.781).abs() < 1e-3);
        // reciprocal relation against the solved hole radius
        let r1 = 0.319944533447028;
        assert!((d.re * r1 - 0.25).abs() < 1e-12);
    }

    #[test]
    fn derivative_cusp_on_boundary() {
        // the degenerate |m| = 1/n member has a boundary cusp at theta = 0
        let map = HypotrochoidSpec::new(1, 1.0, 1.0).unwrap().to_map();
        let d = map.derivative(c(1.0, 0.0)).unwrap();
        assert!(d.norm() < 1e-15);
    }

    #[test]
    fn rejects_interior_points() {
        let map = square_lobed();
        assert_eq!(map.eval(c(0.9, 0.0)).unwrap_err().name(), "DomainViolation");
        assert_eq!(map.derivative(c(0.0, 0.5)).unwrap_err().name(), "DomainViolation");
    }

    #[test]
    fn constructor_rejects_derivative_zero_on_check_circle() {
        // c1 chosen so F' vanishes at w = 1 + 1e-6 exactly
        let r = 1.0 + 1e-6;
        let err = LaurentMap::new(1.0, vec![r * r]).unwrap_err();
        assert_eq!(err.name(), "BadShape");
        // the boundary cusp member stays constructible
        assert!(LaurentMap::new(1.0, vec![1.0]).is_ok());
    }

    #[test]
    fn hypotrochoid_spec_validation() {
        assert!(HypotrochoidSpec::new(2, 0.6, 1.0).is_err());
        assert!(HypotrochoidSpec::new(2, 0.5, 1.0).is_ok());
        assert!(HypotrochoidSpec::new(2, 0.25, -1.0).is_err());
        let map = square_lobed();
        assert_eq!(map.coefficient(2), 0.25);
        assert_eq!(map.coefficient(1), 0.0);
        assert_eq!(map.family(), MapFamily::Hypotrochoid { n: 2, m: 0.25 });
    }

    #[test]
    fn circle_member_is_a_circle() {
        let spec = HypotrochoidSpec::new(3, 0.0, 2.0).unwrap();
        assert_eq!(spec.bounds(), (2.0, 2.0));
        let (lo, hi) = spec.to_map().radial_extent(720);
        assert!((lo - 2.0).abs() < 1e-14 && (hi - 2.0).abs() < 1e-14);
        assert_eq!(spec.curvature_extremes(), (2.0, 2.0));
    }

    #[test]
    fn bounds_use_coefficient_magnitude() {
        let pos = HypotrochoidSpec::new(2, 0.25, 0.8).unwrap().bounds();
        let neg = HypotrochoidSpec::new(2, -0.25, 0.8).unwrap().bounds();
        assert_eq!(pos, (0.6000000000000001, 1.0));
        assert_eq!(pos, neg);
    }

    #[test]
    fn curvature_extremes_reference_values() {
        let (r_min, r_max) = HypotrochoidSpec::new(2, 0.25, 0.8).unwrap().curvature_extremes();
        assert!((r_min - 0.1).abs() < 1e-15);
        assert!(r_max.is_infinite());
        let (_, r_max) = HypotrochoidSpec::new(3, 1.0 / 9.0, 1.0).unwrap().curvature_extremes();
        assert!(r_max.is_infinite());
    }

    /// Radius of curvature of the sampled boundary by central differences in
    /// theta; independent of the closed forms it checks.
    fn numeric_curvature(map: &LaurentMap, theta: f64) -> f64 {
        let h = 1e-4;
        let z = |t: f64| map.eval(Complex64::from_polar(1.0, t)).unwrap();
        let (zm, z0, zp) = (z(theta - h), z(theta), z(theta + h));
        let d1 = (zp - zm) / (2.0 * h);
        let d2 = (zp - 2.0 * z0 + zm) / (h * h);
        let cross = d1.re * d2.im - d1.im * d2.re;
        d1.norm().powi(3) / cross.abs()
    }

    #[test]
    fn curvature_matches_numeric_oracle() {
        let spec = HypotrochoidSpec::new(2, 0.1, 1.0).unwrap();
        let map = spec.to_map();
        let (r_min, r_max) = spec.curvature_extremes();
        assert!((r_min - 0.457142857142857).abs() < 1e-12);
        assert!((r_max - 2.4).abs() < 1e-12);

        let num_min = numeric_curvature(&map, 0.0);
        assert!((num_min - r_min).abs() / r_min < 1e-4, "numeric {num_min} vs {r_min}");
        let num_max = numeric_curvature(&map, PI / 3.0);
        assert!((num_max - r_max).abs() / r_max < 1e-4, "numeric {num_max} vs {r_max}");
    }

    #[test]
    fn straight_edge_values() {
        assert_eq!(straight_edge_m(1), 1.0);
        assert_eq!(straight_edge_m(2), 0.25);
        assert_eq!(straight_edge_m(4), 0.0625);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(generalized_binomial(0.37, 0), 1.0);
        assert!((generalized_binomial(0.5, 1) - 0.5).abs() < 1e-16);
        assert!((generalized_binomial(0.5, 2) + 0.125).abs() < 1e-16);
        assert!((generalized_binomial(2.0 / 3.0, 1) - 2.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn polygon_coefficients() {
        let map = PolygonSpec::new(4, 2, 1.0, false).unwrap().to_map();
        assert!((map.coefficient(3) - 1.0 / 6.0).abs() < 1e-15);
        let map = PolygonSpec::new(4, 3, 1.0, false).unwrap().to_map();
        assert!((map.coefficient(3) - 1.0 / 6.0).abs() < 1e-15);
        assert!((map.coefficient(7) - 1.0 / 56.0).abs() < 1e-15);
        // single-term truncation degenerates to the scaled identity
        let map = PolygonSpec::new(7, 1, 2.0, false).unwrap().to_map();
        assert!(map.coeffs().is_empty());
        // rotation flips the sign of odd-k terms
        let rot = PolygonSpec::new(4, 3, 1.0, true).unwrap().to_map();
        assert!((rot.coefficient(3) + 1.0 / 6.0).abs() < 1e-15);
        assert!((rot.coefficient(7) - 1.0 / 56.0).abs() < 1e-15);
    }

    #[test]
    fn polygon_needs_three_sides() {
        assert_eq!(PolygonSpec::new(2, 5, 1.0, false).unwrap_err().name(), "BadShape");
    }

    #[test]
    fn polygon_coefficients_decay() {
        for sides in [3u32, 4, 5] {
            let map = PolygonSpec::new(sides, 5, 1.0, false).unwrap().to_map();
            let mags: Vec<f64> =
                (1..5).map(|k| map.coefficient(sides * k - 1).abs()).collect();
            for pair in mags.windows(2) {
                assert!(pair[0] > pair[1], "sides={sides}: {mags:?}");
            }
        }
    }

    #[test]
    fn boundary_samples() {
        let map = LaurentMap::scaled_identity(1.0).unwrap();
        let pts = map.sample_boundary(4);
        let expect = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for (p, e) in pts.iter().zip(expect) {
            assert!((p - e).norm() < 1e-15);
        }

        let map = square_lobed();
        let pts = map.sample_boundary(4);
        assert!((pts[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((pts[1] - c(-0.2, 0.8)).norm() < 1e-15);
    }

    #[test]
    fn boundary_stays_within_radial_bounds() {
        for (n, m) in [(2u32, 0.25), (3, 1.0 / 9.0), (2, -0.25), (5, 0.19)] {
            let spec = HypotrochoidSpec::new(n, m, 0.8).unwrap();
            let (r_in, r_out) = spec.bounds();
            let map = spec.to_map();
            for z in map.sample_boundary(720) {
                let r = z.norm();
                assert!(r >= r_in - 1e-9 && r <= r_out + 1e-9, "n={n} m={m} r={r}");
            }
        }
    }

    #[test]
    fn polygon_rotational_symmetry() {
        for sides in [3u32, 4, 5, 6, 8] {
            let map = PolygonSpec::new(sides, 5, 1.0, false).unwrap().to_map();
            let omega = Complex64::from_polar(1.0, 2.0 * PI / sides as f64);
            for j in 0..64 {
                let w = Complex64::from_polar(1.0 + 0.05 * j as f64, 0.37 * j as f64);
                let lhs = map.eval(omega * w).unwrap();
                let rhs = omega * map.eval(w).unwrap();
                assert!((lhs - rhs).norm() < 1e-12, "sides={sides} j={j}");
            }
        }
    }

    #[test]
    fn negative_m_rotates_the_curve_by_a_half_lobe() {
        // F_{-m}(w) = e^{i phi} F_{+m}(e^{-i phi} w) with phi = pi/(n+1)
        for n in [2u32, 3, 4] {
            let m = 1.0 / (n * n) as f64;
            let plus = HypotrochoidSpec::new(n, m, 0.8).unwrap().to_map();
            let minus = HypotrochoidSpec::new(n, -m, 0.8).unwrap().to_map();
            let phi = PI / (n + 1) as f64;
            let rot = Complex64::from_polar(1.0, phi);
            for j in 0..48 {
                let w = Complex64::from_polar(1.0 + 0.04 * j as f64, 0.13 * j as f64);
                let lhs = minus.eval(w).unwrap();
                let rhs = rot * plus.eval(w / rot).unwrap();
                assert!((lhs - rhs).norm() < 1e-12, "n={n} j={j}");
            }
        }
    }

    #[test]
    fn rescaling_keeps_family() {
        let map = square_lobed().rescaled(2.0).unwrap();
        assert_eq!(map.scale(), 2.0);
        assert_eq!(map.family(), MapFamily::Hypotrochoid { n: 2, m: 0.25 });
        assert!((map.eval(c(1.0, 0.0)).unwrap().re - 2.5).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn real_coefficients_give_reflection_symmetry(
            r in 1.0f64..4.0,
            theta in 0.0f64..(2.0 * PI),
            m in -0.25f64..0.25,
        ) {
            let map = HypotrochoidSpec::new(2, m, 0.8).unwrap().to_map();
            let w = Complex64::from_polar(r, theta);
            let lhs = map.eval(w.conj()).unwrap().conj();
            let rhs = map.eval(w).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }

        #[test]
        fn derivative_matches_finite_difference(
            r in 1.1f64..3.0,
            theta in 0.0f64..(2.0 * PI),
        ) {
            let map = square_lobed();
            let w = Complex64::from_polar(r, theta);
            let h = 1e-6;
            let fd = (map.eval(w + h).unwrap() - map.eval(w - h).unwrap()) / (2.0 * h);
            let d = map.derivative(w).unwrap();
            prop_assert!((fd - d).norm() < 1e-8);
        }
    }
}
