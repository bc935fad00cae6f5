//! Real-parameter bilinear (Moebius) maps between the annulus plane and the
//! two-circle plane.
//!
//! The family `w = (zeta - lambda) / (lambda zeta - 1)` with `lambda > 1` is
//! an involution that carries `|zeta| = 1` onto `|w| = 1` and, for a suitable
//! inner radius `rho1 < 1/lambda`, the circle `|zeta| = rho1` onto
//! `|w - e| = r1` with `e > 1 + r1`. The annulus point `zeta = 1/lambda` goes
//! to infinity, which is what makes the image region unbounded.

use num_complex::Complex64;

use crate::error::MapError;

/// Relative pole tolerance: `|lambda zeta - 1| < POLE_TOL * lambda` counts as
/// evaluation at the preimage of infinity.
pub const POLE_TOL: f64 = 1e-14;

/// Parameters of the bilinear map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilinearParams {
    /// Map parameter; `lambda > 1`.
    pub lambda: f64,
    /// Inner annulus radius; `0 < rho1 < 1/lambda`.
    pub rho1: f64,
}

/// The two-circle geometry on the w plane: `|w| = 1` and `|w - e| = r1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePairGeometry {
    /// Center `e` of the second circle, on the positive real axis.
    pub center: f64,
    /// Radius `r1` of the second circle.
    pub radius: f64,
    /// Minimal spacing `s = e - 1 - r1` between the circles.
    pub spacing: f64,
}

impl CirclePairGeometry {
    /// Validates `e > 1 + r1 > 1` and records the spacing.
    pub fn new(center: f64, radius: f64) -> Result<Self, MapError> {
        if !(radius > 0.0 && center.is_finite() && radius.is_finite()) {
            return Err(MapError::BadShape(format!(
                "circle pair needs finite e and r1 > 0, got e = {center}, r1 = {radius}"
            )));
        }
        if center <= 1.0 + radius {
            return Err(MapError::OverlappingCircles { e: center, r1: radius });
        }
        Ok(Self { center, radius, spacing: center - 1.0 - radius })
    }

    /// Eccentric ratio `r1 / e`, always in (0, 1) for a valid pair.
    pub fn eccentric_ratio(&self) -> f64 {
        self.radius / self.center
    }
}

impl BilinearParams {
    /// Builds params directly, validating `lambda > 1` and `0 < rho1 < 1/lambda`.
    pub fn new(lambda: f64, rho1: f64) -> Result<Self, MapError> {
        if !(lambda > 1.0 && lambda.is_finite()) {
            return Err(MapError::BadShape(format!("lambda must exceed 1, got {lambda}")));
        }
        if !(rho1 > 0.0 && rho1 < 1.0 / lambda) {
            return Err(MapError::BadShape(format!(
                "rho1 must lie in (0, 1/lambda) = (0, {}), got {rho1}",
                1.0 / lambda
            )));
        }
        Ok(Self { lambda, rho1 })
    }

    /// Solves the inverse problem: find `(lambda, rho1)` sending `|zeta| = rho1`
    /// onto `|w - e| = r1`.
    ///
    /// `lambda` comes from the positive square-root branch of the quadratic in
    /// the circle-matching condition, `rho1` from back-substitution. The output
    /// is verified by substituting `+-rho1` and checking the images `e +- r1`;
    /// a branch mistake would trip the consistency error.
    pub fn from_circle_pair(e: f64, r1: f64) -> Result<(Self, CirclePairGeometry), MapError> {
        let geometry = CirclePairGeometry::new(e, r1)?;

        // Both discriminant factors are positive exactly when e > 1 + r1.
        let disc = (e * e - (1.0 + r1) * (1.0 + r1)) * (e * e - (1.0 - r1) * (1.0 - r1));
        let lambda = (e * e + 1.0 - r1 * r1 + disc.sqrt()) / (2.0 * e);
        let rho1 = (r1 + e - lambda) / (lambda * (r1 + e) - 1.0);
        let params = Self::new(lambda, rho1)?;

        let scale = (e + r1).abs().max(1.0);
        let outer = params.eval(Complex64::new(rho1, 0.0))?;
        let inner = params.eval(Complex64::new(-rho1, 0.0))?;
        if (outer - Complex64::new(e + r1, 0.0)).norm() > 1e-9 * scale
            || (inner - Complex64::new(e - r1, 0.0)).norm() > 1e-9 * scale
        {
            return Err(MapError::Inconsistent(format!(
                "substitution check failed: f({rho1}) = {outer}, f({}) = {inner}, expected {} and {}",
                -rho1,
                e + r1,
                e - r1
            )));
        }
        Ok((params, geometry))
    }

    /// The annulus point mapped to infinity.
    pub fn pole(&self) -> f64 {
        1.0 / self.lambda
    }

    /// Evaluates `w = (zeta - lambda) / (lambda zeta - 1)`.
    pub fn eval(&self, zeta: Complex64) -> Result<Complex64, MapError> {
        let denom = self.lambda * zeta - 1.0;
        if denom.norm() < POLE_TOL * self.lambda {
            return Err(MapError::PoleInput);
        }
        Ok((zeta - self.lambda) / denom)
    }

    /// Evaluates the inverse map. The family is an involution, so this is the
    /// same rational function applied to `w`.
    pub fn eval_inverse(&self, w: Complex64) -> Result<Complex64, MapError> {
        self.eval(w)
    }

    /// Derivative `(lambda^2 - 1) / (lambda zeta - 1)^2`; nonzero on the domain.
    pub fn derivative(&self, zeta: Complex64) -> Result<Complex64, MapError> {
        let denom = self.lambda * zeta - 1.0;
        if denom.norm() < POLE_TOL * self.lambda {
            return Err(MapError::PoleInput);
        }
        Ok(Complex64::new(self.lambda * self.lambda - 1.0, 0.0) / (denom * denom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn boundary_fixed_points() {
        // f(1) = -1 for every lambda, f(0) = lambda
        for lambda in [1.5, 2.0, 3.7] {
            let p = BilinearParams::new(lambda, 0.1).unwrap();
            let w1 = p.eval(c(1.0, 0.0)).unwrap();
            assert!((w1 - c(-1.0, 0.0)).norm() < 1e-15);
            let w0 = p.eval(c(0.0, 0.0)).unwrap();
            assert!((w0 - c(lambda, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn derivative_values() {
        let p = BilinearParams::new(2.0, 0.1).unwrap();
        // (4 - 1)/(-1)^2 = 3 at zeta = 0, (4 - 1)/(2 - 1)^2 = 3 at zeta = 1
        assert!((p.derivative(c(0.0, 0.0)).unwrap() - c(3.0, 0.0)).norm() < 1e-15);
        assert!((p.derivative(c(1.0, 0.0)).unwrap() - c(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn solves_reference_circle_pair() {
        // 40-digit evaluation of the square-root branch for e = 2, r1 = 0.5
        let (p, g) = BilinearParams::from_circle_pair(2.0, 0.5).unwrap();
        assert!((p.lambda - 1.82793442287247).abs() < 1e-12);
        assert!((p.rho1 - 0.1882623085101).abs() < 1e-12);
        assert!((g.spacing - 0.5).abs() < 1e-15);

        let image = p.eval(c(p.rho1, 0.0)).unwrap();
        assert!((image - c(2.5, 0.0)).norm() < 1e-12);
        let back = p.eval_inverse(c(2.5, 0.0)).unwrap();
        assert!((back - c(p.rho1, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn substitution_holds_on_second_reference_pair() {
        let (p, _) = BilinearParams::from_circle_pair(2.78016, 0.31993).unwrap();
        let image = p.eval(c(p.rho1, 0.0)).unwrap();
        assert!((image - c(2.78016 + 0.31993, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rejects_touching_circles() {
        let err = BilinearParams::from_circle_pair(1.5, 0.5).unwrap_err();
        assert_eq!(err.name(), "OverlappingCircles");
    }

    #[test]
    fn pole_is_detected() {
        let p = BilinearParams::new(2.0, 0.1).unwrap();
        assert_eq!(p.eval(c(0.5, 0.0)).unwrap_err(), MapError::PoleInput);
        assert_eq!(p.derivative(c(0.5, 0.0)).unwrap_err(), MapError::PoleInput);
        // just outside the tolerance band evaluation succeeds
        assert!(p.eval(c(0.5 + 1e-12, 0.0)).is_ok());
    }

    #[test]
    fn pole_lies_inside_annulus() {
        for (e, r1) in [(2.0, 0.5), (1.6, 0.2), (12.0, 10.0), (161.25, 160.0)] {
            let (p, _) = BilinearParams::from_circle_pair(e, r1).unwrap();
            assert!(p.rho1 < p.pole() && p.pole() < 1.0, "e={e} r1={r1}");
        }
    }

    #[test]
    fn unit_circle_maps_to_unit_circle() {
        let (p, _) = BilinearParams::from_circle_pair(2.0, 0.5).unwrap();
        for j in 0..360 {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / 360.0;
            let w = p.eval(Complex64::from_polar(1.0, theta)).unwrap();
            assert!((w.norm() - 1.0).abs() < 1e-12, "theta={theta}");
        }
    }

    #[test]
    fn inner_circle_maps_to_offset_circle() {
        let (e, r1) = (2.0, 0.5);
        let (p, _) = BilinearParams::from_circle_pair(e, r1).unwrap();
        for j in 0..360 {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / 360.0;
            let w = p.eval(Complex64::from_polar(p.rho1, theta)).unwrap();
            assert!(((w - c(e, 0.0)).norm() - r1).abs() < 1e-10, "theta={theta}");
        }
    }

    proptest! {
        #[test]
        fn involution_and_inverse_round_trip(
            r in 0.0f64..1.0,
            theta in 0.0f64..(2.0 * std::f64::consts::PI),
        ) {
            let (p, _) = BilinearParams::from_circle_pair(2.0, 0.5).unwrap();
            // spread radius across the open annulus
            let radius = p.rho1 + (1.0 - p.rho1) * (0.001 + 0.998 * r);
            let zeta = Complex64::from_polar(radius, theta);
            prop_assume!((zeta - c(p.pole(), 0.0)).norm() > 1e-2);

            let w = p.eval(zeta).unwrap();
            let twice = p.eval(w).unwrap();
            prop_assert!((twice - zeta).norm() < 1e-12);

            let back = p.eval_inverse(w).unwrap();
            prop_assert!((back - zeta).norm() < 1e-12);
        }

        #[test]
        fn derivative_never_vanishes(
            r in 0.0f64..1.0,
            theta in 0.0f64..(2.0 * std::f64::consts::PI),
            lambda in 1.01f64..8.0,
        ) {
            let p = BilinearParams { lambda, rho1: 0.5 / lambda };
            let radius = p.rho1 + (1.0 - p.rho1) * r;
            let zeta = Complex64::from_polar(radius, theta);
            if let Ok(d) = p.derivative(zeta) {
                prop_assert!(d.norm() > 0.0);
            }
        }
    }
}
