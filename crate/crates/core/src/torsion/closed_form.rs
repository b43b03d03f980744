//! Closed-form `α` for discs and annuli, and the Saint-Venant upper bound.

use super::TorsionError;
use crate::geometry::PlanarDomain;
use crate::scalar::Scalar;

/// `α` of the disc of radius `r`: `√(π/2)·r²`, from `u(z) = r² − |z|²`.
pub fn alpha_disc<T: Scalar>(radius: T) -> Result<T, TorsionError> {
    if !(radius.is_finite() && radius > T::zero()) {
        return Err(TorsionError::NonpositiveRadius(radius.to_f64_lossy()));
    }
    Ok(T::FRAC_PI_2().sqrt() * radius * radius)
}

/// `α` of the annulus `1 < |z| < r`:
/// `√((π/2)(r⁴ − 1 − (r² − 1)²/ln r))`.
pub fn alpha_annulus<T: Scalar>(r: T) -> Result<T, TorsionError> {
    if !(r.is_finite() && r > T::one()) {
        return Err(TorsionError::RadiusNotAboveOne(r.to_f64_lossy()));
    }
    Ok(annulus_rigidity(r).max(T::zero()).sqrt())
}

/// `(π/2)(r⁴ − 1 − (r² − 1)²/ln r)`.
///
/// Near `r = 1` the bracket cancels catastrophically; with `s = r² − 1` and
/// `ln r = ½ ln(1 + s)` it is rewritten as `s(s + 2) − 2s²/ln(1 + s)`, and for
/// small `s` the series `s³/6 − s⁴/12 + 19s⁵/360 − 3s⁶/80 + …` is used.
pub(crate) fn annulus_rigidity<T: Scalar>(r: T) -> T {
    let s = r * r - T::one();
    let bracket = if s < T::lit(1e-3) {
        let s3 = s * s * s;
        s3 * (T::lit(1.0 / 6.0)
            + s * (T::lit(-1.0 / 12.0) + s * (T::lit(19.0 / 360.0) + s * T::lit(-3.0 / 80.0))))
    } else {
        s * (s + T::lit(2.0)) - T::lit(2.0) * s * s / s.ln_1p()
    };
    T::FRAC_PI_2() * bracket
}

/// Saint-Venant's inequality `α_U ≤ V(U)/√(2π)` for simply connected `U`.
pub fn saint_venant_upper<T: Scalar>(domain: &PlanarDomain<T>) -> Result<T, TorsionError> {
    if !domain.is_simply_connected() {
        return Err(TorsionError::NotSimplyConnected(domain.kind()));
    }
    Ok(domain.area() / (T::lit(2.0) * T::PI()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn disc_values() {
        assert!((alpha_disc(1.0f64).unwrap() - 1.2533141373155003).abs() < 1e-15);
        assert!((alpha_disc(2.0f64).unwrap() - 5.0132565492620005).abs() < 1e-14);
        assert_eq!(alpha_disc(0.0), Err(TorsionError::NonpositiveRadius(0.0)));
    }

    #[test]
    fn annulus_values() {
        let direct = ((PI / 2.0) * (16.0 - 1.0 - 9.0 / 2f64.ln())).sqrt();
        let a = alpha_annulus(2.0).unwrap();
        assert!((a - direct).abs() < 1e-14);
        assert!((a - 1.7794168324766055).abs() < 1e-14, "{a}");
        assert!(alpha_annulus(1.0 + 1e-6).unwrap() < 1e-3);
        assert_eq!(alpha_annulus(1.0), Err(TorsionError::RadiusNotAboveOne(1.0)));
    }

    #[test]
    fn annulus_series_branch_is_continuous() {
        // both sides of the switch at s = 1e-3
        let below = annulus_rigidity((1.0f64 + 0.999e-3).sqrt());
        let above = annulus_rigidity((1.0f64 + 1.001e-3).sqrt());
        let mid = annulus_rigidity((1.0f64 + 1e-3).sqrt());
        assert!(below < mid && mid < above);
        let s: f64 = 2e-3;
        let direct = s * (s + 2.0) - 2.0 * s * s / s.ln_1p();
        let series = s.powi(3) / 6.0 - s.powi(4) / 12.0 + 19.0 / 360.0 * s.powi(5);
        assert!((direct - series).abs() / series < 1e-6);
        let switch = (1.0f64 + 1e-3).sqrt();
        let lo = annulus_rigidity(switch - 1e-12);
        let hi = annulus_rigidity(switch + 1e-12);
        assert!((hi - lo).abs() / hi < 1e-7);
    }

    #[test]
    fn saint_venant_values() {
        let disc = PlanarDomain::disc(1.0).unwrap();
        assert!((saint_venant_upper(&disc).unwrap() - (PI / 2.0).sqrt()).abs() < 1e-15);
        let sq = PlanarDomain::rectangle(1.0f64, 1.0).unwrap();
        assert!((saint_venant_upper(&sq).unwrap() - 0.3989422804014327).abs() < 1e-15);
        let ann = PlanarDomain::annulus(1.0, 2.0).unwrap();
        assert_eq!(saint_venant_upper(&ann), Err(TorsionError::NotSimplyConnected("annulus")));
    }
}
