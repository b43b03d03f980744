//! Lower bound for `‖N₁‖_e` on the worm domains `Ω_{β,r}`: the boundary
//! contains the annulus `1 < |z₂| < r` and the `z₁`-disc winds by a total
//! angle `2β log r`. For each admissible `η` the annulus `A_η` gives
//!
//! ```text
//! ‖N₁‖_e ≥ ((η²+1)/2 − (η²−1)/(2 log η)) · (π − 2β log η)/(π + 2β log η)
//! ```
//!
//! and the bound is the maximum over `1 < η < min(e^{π/(2β)}, r)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::optimize::scan_then_golden;
use crate::scalar::Scalar;
use crate::torsion::alpha_annulus;

/// Equispaced scan points before golden-section refinement.
pub const SCAN_POINTS: usize = 10_000;
/// Final golden-section bracket width.
pub const GOLDEN_WIDTH: f64 = 1e-10;
/// Distance kept from both open endpoints of the `η` interval.
pub const ENDPOINT_CLAMP: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WormError {
    #[error("eta = {eta} outside the admissible range (1, e^(pi/(2 beta))) for beta = {beta}")]
    EtaOutOfRange { eta: f64, beta: f64 },
    #[error("winding parameter beta must be positive and finite, got {0}")]
    InvalidBeta(f64),
    #[error("annulus radius r must exceed 1, got {0}")]
    InvalidRadius(f64),
}

/// Parameters of `Ω_{β,r}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WormParams<T> {
    beta: T,
    r: T,
}

impl<T: Scalar> WormParams<T> {
    pub fn new(beta: T, r: T) -> Result<Self, WormError> {
        if !(beta.is_finite() && beta > T::zero()) {
            return Err(WormError::InvalidBeta(beta.to_f64_lossy()));
        }
        if !(r.is_finite() && r > T::one()) {
            return Err(WormError::InvalidRadius(r.to_f64_lossy()));
        }
        Ok(Self { beta, r })
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn r(&self) -> T {
        self.r
    }

    /// `min(e^{π/(2β)}, r)`.
    pub fn eta_max(&self) -> T {
        (T::PI() / (T::lit(2.0) * self.beta)).exp().min(self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WormBoundResult<T> {
    pub eta_star: T,
    pub value: T,
    /// Open interval `(1, η_max)` the maximum was taken over.
    pub interval: (T, T),
    pub evaluations: usize,
}

/// `(η²+1)/2 − (η²−1)/(2 log η)` in a cancellation-free form: with
/// `s = η² − 1` it equals `1 + s/2 − s/ln(1+s)`, expanded as a series for
/// small `s`.
fn annulus_factor<T: Scalar>(eta: T) -> T {
    let s = eta * eta - T::one();
    if s < T::lit(1e-3) {
        // s²/12 − s³/24 + 19s⁴/720 − 3s⁵/160
        s * s * (T::lit(1.0 / 12.0) + s * (T::lit(-1.0 / 24.0) + s * (T::lit(19.0 / 720.0) + s * T::lit(-3.0 / 160.0))))
    } else {
        T::one() + s * T::lit(0.5) - s / s.ln_1p()
    }
}

fn winding_factor<T: Scalar>(eta: T, beta: T) -> T {
    let w = T::lit(2.0) * beta * eta.ln();
    (T::PI() - w) / (T::PI() + w)
}

/// The worm-domain objective at `η`; requires `η > 1` and `2β log η < π`.
pub fn worm_objective<T: Scalar>(eta: T, beta: T) -> Result<T, WormError> {
    if !(beta.is_finite() && beta > T::zero()) {
        return Err(WormError::InvalidBeta(beta.to_f64_lossy()));
    }
    if !(eta.is_finite() && eta > T::one() && T::lit(2.0) * beta * eta.ln() < T::PI()) {
        return Err(WormError::EtaOutOfRange { eta: eta.to_f64_lossy(), beta: beta.to_f64_lossy() });
    }
    Ok(annulus_factor(eta) * winding_factor(eta, beta))
}

/// Objective extended by zero outside the admissible interval.
fn objective_or_zero<T: Scalar>(eta: T, beta: T) -> T {
    worm_objective(eta, beta).unwrap_or(T::zero())
}

/// Maximizes [`worm_objective`] over `(1, min(e^{π/(2β)}, r))` by a dense scan
/// followed by golden-section refinement around the best scan point.
pub fn worm_lower_bound<T: Scalar>(params: &WormParams<T>) -> WormBoundResult<T> {
    let beta = params.beta;
    let eta_max = params.eta_max();
    let clamp = T::lit(ENDPOINT_CLAMP);
    let lo = T::one() + clamp;
    let hi = eta_max - clamp;
    if hi <= lo {
        // Interval narrower than the clamps; the objective is ~0 there.
        let mid = (T::one() + eta_max) * T::lit(0.5);
        return WormBoundResult {
            eta_star: mid,
            value: objective_or_zero(mid, beta),
            interval: (T::one(), eta_max),
            evaluations: 1,
        };
    }
    let best = scan_then_golden(|eta| objective_or_zero(eta, beta), lo, hi, SCAN_POINTS, T::lit(GOLDEN_WIDTH));
    WormBoundResult {
        eta_star: best.x,
        value: objective_or_zero(best.x, beta),
        interval: (T::one(), eta_max),
        evaluations: best.evaluations,
    }
}

/// `|α_{A_η}²/(π(η²−1)) − ((η²+1)/2 − (η²−1)/(2 log η))|`, which vanishes
/// identically; the annulus side goes through the closed-form `α`.
pub fn annulus_consistency<T: Scalar>(eta: T) -> Result<T, WormError> {
    if !(eta.is_finite() && eta > T::one()) {
        return Err(WormError::EtaOutOfRange { eta: eta.to_f64_lossy(), beta: 0.0 });
    }
    let alpha = alpha_annulus(eta).map_err(|_| WormError::EtaOutOfRange { eta: eta.to_f64_lossy(), beta: 0.0 })?;
    let two = T::lit(2.0);
    let e2 = eta * eta;
    let lhs = alpha * alpha / (T::PI() * (e2 - T::one()));
    let rhs = (e2 + T::one()) / two - (e2 - T::one()) / (two * eta.ln());
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objective_examples() {
        assert!(worm_objective(1.0 + 1e-8, 1.0).unwrap() < 1e-7);
        let v = worm_objective(2.0, 1e-9).unwrap();
        assert!((v - (2.5 - 3.0 / (2.0 * 2f64.ln()))).abs() < 1e-6);
        assert!((v - 0.335958).abs() < 1e-6);
        let edge = std::f64::consts::FRAC_PI_2.exp() - 1e-9;
        assert!(worm_objective(edge, 1.0).unwrap().abs() < 1e-8);
    }

    #[test]
    fn objective_rejects_out_of_range() {
        assert!(worm_objective(1.0, 1.0).is_err());
        assert!(worm_objective(0.5, 1.0).is_err());
        assert!(worm_objective(std::f64::consts::FRAC_PI_2.exp() + 1e-9, 1.0).is_err());
        assert!(worm_objective(2.0, 0.0).is_err());
    }

    #[test]
    fn annulus_factor_series_matches_direct_form() {
        for eta in [1.0004f64, 1.00049, 1.0006, 1.01] {
            let direct = (eta * eta + 1.0) / 2.0 - (eta * eta - 1.0) / (2.0 * eta.ln());
            let stable = annulus_factor(eta);
            assert!((direct - stable).abs() < 1e-11, "{eta}: {direct} vs {stable}");
        }
    }

    #[test]
    fn small_beta_peaks_at_r() {
        let res = worm_lower_bound(&WormParams::new(1e-9f64, 2.0).unwrap());
        assert!(res.eta_star > 2.0 - 1e-6 && res.eta_star < 2.0);
        assert!((res.value - 0.335958).abs() < 1e-6);
        assert_eq!(res.value, worm_objective(res.eta_star, 1e-9).unwrap());
    }

    #[test]
    fn large_beta_collapses() {
        let res = worm_lower_bound(&WormParams::new(1e3f64, 2.0).unwrap());
        assert!((res.interval.1 - (std::f64::consts::PI / 2000.0).exp()).abs() < 1e-15);
        assert!(res.value < 1e-5);
        assert!(res.eta_star > 1.0 && res.eta_star < res.interval.1);
    }

    #[test]
    fn params_validation() {
        assert!(WormParams::new(0.0, 2.0).is_err());
        assert!(WormParams::new(1.0, 1.0).is_err());
        assert!(WormParams::new(f64::INFINITY, 2.0).is_err());
    }

    #[test]
    fn consistency_examples() {
        for eta in [2.0, 1.1, 5.0] {
            assert!(annulus_consistency(eta).unwrap() < 1e-12, "{eta}");
        }
        assert!(annulus_consistency(1.0).is_err());
    }
}
