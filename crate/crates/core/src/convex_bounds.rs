//! Essential-norm lower bounds for the ∂̄-Neumann operator `N_q` on bounded
//! convex domains in `ℂⁿ`, driven by the analytic structure of the boundary.
//!
//! The boundary is described by the largest dimension `q_Ω` of affine analytic
//! varieties it contains, a finite list of `q_Ω`-dimensional polydiscs lying in
//! it, and (for `q_Ω = n − 1`) the torsion constants `α_M` of boundary
//! varieties. Every bound is a supremum over the supplied list, so it is only
//! as strong as the geometry the caller provides.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{factorial, Scalar};

/// Largest ambient dimension accepted; the constants underflow beyond it.
pub const MAX_DIMENSION: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("polyradius vector is empty")]
    EmptyRadiusVector,
    #[error("radius {index} is negative or not finite ({value})")]
    NegativeRadius { index: usize, value: f64 },
    #[error("radius {index} must be positive, got {value}")]
    NonpositiveRadius { index: usize, value: f64 },
    #[error("index out of range: n = {n}, q = {q}")]
    IndexOutOfRange { n: u32, q: u32 },
    #[error("diameter must be positive and finite, got {0}")]
    NonpositiveDiameter(f64),
    #[error("essential norms must be nonnegative, got {0}")]
    NegativeInput(f64),
    #[error("alpha value {index} is negative or not finite ({value})")]
    InvalidAlpha { index: usize, value: f64 },
    #[error("polydisc {index} has dimension {got}, expected q_variety = {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("polydisc center and polyradius lengths differ ({center} vs {radii})")]
    CenterRadiusMismatch { center: usize, radii: usize },
    #[error("no boundary polydiscs or admissible alpha values for q = {q} <= q_variety = {q_variety}")]
    MissingBoundaryData { q: u32, q_variety: u32 },
}

/// `D(w, r) = {z : |z_j − w_j| < r_j}`; centers are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Polydisc<T> {
    center: Vec<[T; 2]>,
    radii: Vec<T>,
}

impl<T: Scalar> Polydisc<T> {
    pub fn new(center: Vec<[T; 2]>, radii: Vec<T>) -> Result<Self, BoundsError> {
        if radii.is_empty() {
            return Err(BoundsError::EmptyRadiusVector);
        }
        if center.len() != radii.len() {
            return Err(BoundsError::CenterRadiusMismatch { center: center.len(), radii: radii.len() });
        }
        check_nonnegative(&radii)?;
        Ok(Self { center, radii })
    }

    pub fn dimension(&self) -> usize {
        self.radii.len()
    }

    pub fn center(&self) -> &[[T; 2]] {
        &self.center
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn beta(&self) -> T {
        beta(&self.radii).expect("validated on construction")
    }
}

fn check_nonnegative<T: Scalar>(radii: &[T]) -> Result<(), BoundsError> {
    for (index, r) in radii.iter().enumerate() {
        if !(r.is_finite() && *r >= T::zero()) {
            return Err(BoundsError::NegativeRadius { index, value: r.to_f64_lossy() });
        }
    }
    Ok(())
}

/// Size functional of a polydisc, `β = (∏ r_k)/√(Σ 1/r_k²)`, and `0` as soon
/// as any radius vanishes.
pub fn beta<T: Scalar>(radii: &[T]) -> Result<T, BoundsError> {
    if radii.is_empty() {
        return Err(BoundsError::EmptyRadiusVector);
    }
    check_nonnegative(radii)?;
    if radii.iter().any(|r| *r == T::zero()) {
        return Ok(T::zero());
    }
    let prod = radii.iter().fold(T::one(), |acc, r| acc * *r);
    let inv_sq = radii.iter().fold(T::zero(), |acc, r| acc + T::one() / (*r * *r));
    Ok(prod / inv_sq.sqrt())
}

fn check_index(n: u32, q: u32) -> Result<(), BoundsError> {
    if n > MAX_DIMENSION || q < 1 || q + 1 > n {
        Err(BoundsError::IndexOutOfRange { n, q })
    } else {
        Ok(())
    }
}

/// `((q+1)/(n+1))^a · ((n−q)/(n+1))^b`, evaluated as ratios so `f32` does not
/// overflow.
fn dimension_factor<T: Scalar>(n: u32, q: u32, a: i32, b: i32) -> T {
    let np1 = T::lit(f64::from(n + 1));
    let lead = T::lit(f64::from(q + 1)) / np1;
    let tail = T::lit(f64::from(n - q)) / np1;
    lead.powi(a) * tail.powi(b)
}

/// `3^{q−1}/2^{2q+1}`.
fn power_factor<T: Scalar>(q: u32) -> T {
    T::lit(3.0).powi(q as i32 - 1) / T::lit(2.0).powi(2 * q as i32 + 1)
}

/// Constant of the polydisc bound for `‖N_q‖_e`:
/// `C(n,q) = (q+1)^{2q+2}(n−q)^{2n−2q}/(n+1)^{2n+2} · 3^{q−1}/2^{2q+1}`.
pub fn neumann_constant<T: Scalar>(n: u32, q: u32) -> Result<T, BoundsError> {
    check_index(n, q)?;
    let (n_i, q_i) = (n as i32, q as i32);
    Ok(dimension_factor::<T>(n, q, 2 * q_i + 2, 2 * n_i - 2 * q_i) * power_factor::<T>(q))
}

/// Constant of the polydisc bound for `‖∂̄*N_q‖_e`:
/// `c(n,q) = (q+1)^{q+1}(n−q)^{n−q}/(n+1)^{n+1} · (3^{q−1}/2^{2q+1})^{1/2}`.
/// Squares to [`neumann_constant`].
pub fn dbar_star_constant<T: Scalar>(n: u32, q: u32) -> Result<T, BoundsError> {
    check_index(n, q)?;
    let (n_i, q_i) = (n as i32, q as i32);
    Ok(dimension_factor::<T>(n, q, q_i + 1, n_i - q_i) * power_factor::<T>(q).sqrt())
}

/// Which estimate produced a certificate. Serialized with the short labels
/// used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// `N_q` is compact: no boundary variety of dimension `≥ q`.
    #[serde(rename = "Thm1.i")]
    Compact,
    /// Polydiscs of dimension `q_Ω` in the boundary.
    #[serde(rename = "Thm1.ii")]
    Polydisc,
    /// `(n−1)`-dimensional boundary varieties and their `α_M`.
    #[serde(rename = "Thm1.iii")]
    HypersurfaceVariety,
    /// Discs in the boundary of a smooth convex domain in `ℂ²`.
    #[serde(rename = "CorC2")]
    BoundaryDisc,
    /// Worm domain annulus.
    #[serde(rename = "Worm")]
    Worm,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::Compact => "Thm1.i",
            Provenance::Polydisc => "Thm1.ii",
            Provenance::HypersurfaceVariety => "Thm1.iii",
            Provenance::BoundaryDisc => "CorC2",
            Provenance::Worm => "Worm",
        }
    }
}

/// A certified lower bound `‖N_q‖_e ≥ value`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCertificate<T> {
    pub target: String,
    pub q: u32,
    pub value: T,
    pub provenance: Provenance,
    /// Scalar inputs the value was computed from, in evaluation order.
    pub inputs_echo: Vec<(String, T)>,
}

fn target_label(q: u32) -> String {
    format!("essential norm of N_{q}")
}

/// Bounded convex domain in `ℂⁿ` described through its boundary geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexDomainSpec<T> {
    n: u32,
    q_variety: u32,
    diameter: T,
    boundary_polydiscs: Vec<Polydisc<T>>,
    boundary_alpha_values: Vec<T>,
    smooth_boundary: bool,
}

impl<T: Scalar> ConvexDomainSpec<T> {
    pub fn new(
        n: u32,
        q_variety: u32,
        diameter: T,
        boundary_polydiscs: Vec<Polydisc<T>>,
        boundary_alpha_values: Vec<T>,
        smooth_boundary: bool,
    ) -> Result<Self, BoundsError> {
        if !(1..=MAX_DIMENSION).contains(&n) || q_variety + 1 > n {
            return Err(BoundsError::IndexOutOfRange { n, q: q_variety });
        }
        if !(diameter.is_finite() && diameter > T::zero()) {
            return Err(BoundsError::NonpositiveDiameter(diameter.to_f64_lossy()));
        }
        for (index, p) in boundary_polydiscs.iter().enumerate() {
            if p.dimension() != q_variety as usize {
                return Err(BoundsError::DimensionMismatch {
                    index,
                    expected: q_variety as usize,
                    got: p.dimension(),
                });
            }
        }
        for (index, a) in boundary_alpha_values.iter().enumerate() {
            if !(a.is_finite() && *a >= T::zero()) {
                return Err(BoundsError::InvalidAlpha { index, value: a.to_f64_lossy() });
            }
        }
        Ok(Self { n, q_variety, diameter, boundary_polydiscs, boundary_alpha_values, smooth_boundary })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q_variety(&self) -> u32 {
        self.q_variety
    }

    pub fn diameter(&self) -> T {
        self.diameter
    }

    pub fn boundary_polydiscs(&self) -> &[Polydisc<T>] {
        &self.boundary_polydiscs
    }

    pub fn boundary_alpha_values(&self) -> &[T] {
        &self.boundary_alpha_values
    }

    pub fn smooth_boundary(&self) -> bool {
        self.smooth_boundary
    }
}

/// Lower bound for `‖N_q‖_e` on a bounded convex domain, `1 ≤ q ≤ n`.
///
/// * `q > q_Ω`, or `q_Ω = 0`: `N_q` is compact and the bound is `0`.
/// * `1 ≤ q ≤ q_Ω ≤ n − 1`: `C(n, q_Ω)/τ^{2q_Ω} · max β²` over the polydiscs.
/// * additionally `q_Ω = n − 1` with smooth boundary:
///   `(n−1)!/(π^{n−1} τ^{2n−2}) · max α_M²`.
///
/// When both of the last two apply the larger certificate is returned.
pub fn convex_lower_bound<T: Scalar>(
    spec: &ConvexDomainSpec<T>,
    q: u32,
) -> Result<BoundCertificate<T>, BoundsError> {
    let (n, qv, tau) = (spec.n, spec.q_variety, spec.diameter);
    if q < 1 || q > n {
        return Err(BoundsError::IndexOutOfRange { n, q });
    }
    let base_echo = vec![
        ("n".to_string(), T::lit(f64::from(n))),
        ("q_variety".to_string(), T::lit(f64::from(qv))),
        ("diameter".to_string(), tau),
    ];
    if q > qv || qv == 0 {
        return Ok(BoundCertificate {
            target: target_label(q),
            q,
            value: T::zero(),
            provenance: Provenance::Compact,
            inputs_echo: base_echo,
        });
    }

    let polydisc_cert = if spec.boundary_polydiscs.is_empty() {
        None
    } else {
        let max_beta_sq = spec
            .boundary_polydiscs
            .iter()
            .map(|p| {
                let b = p.beta();
                b * b
            })
            .fold(T::zero(), T::max);
        let c = neumann_constant::<T>(n, qv)?;
        let value = c / tau.powi(2 * qv as i32) * max_beta_sq;
        let mut echo = base_echo.clone();
        echo.push(("constant".to_string(), c));
        echo.push(("max_beta_sq".to_string(), max_beta_sq));
        Some(BoundCertificate { target: target_label(q), q, value, provenance: Provenance::Polydisc, inputs_echo: echo })
    };

    let variety_cert = if qv + 1 == n && spec.smooth_boundary && !spec.boundary_alpha_values.is_empty() {
        let max_alpha_sq = spec.boundary_alpha_values.iter().map(|a| *a * *a).fold(T::zero(), T::max);
        let m = (n - 1) as i32;
        let value = factorial::<T>(n - 1) / (T::PI().powi(m) * tau.powi(2 * m)) * max_alpha_sq;
        let mut echo = base_echo;
        echo.push(("max_alpha_sq".to_string(), max_alpha_sq));
        Some(BoundCertificate {
            target: target_label(q),
            q,
            value,
            provenance: Provenance::HypersurfaceVariety,
            inputs_echo: echo,
        })
    } else {
        None
    };

    match (polydisc_cert, variety_cert) {
        (Some(a), Some(b)) => Ok(if b.value > a.value { b } else { a }),
        (Some(a), None) | (None, Some(a)) => Ok(a),
        (None, None) => Err(BoundsError::MissingBoundaryData { q, q_variety: qv }),
    }
}

/// `‖N_1‖_e ≥ r⁴/(2τ²)` for a smooth bounded convex domain in `ℂ²` whose
/// boundary contains an affine disc of radius `r`.
pub fn disc_boundary_bound<T: Scalar>(disc_radius: T, diameter: T) -> Result<BoundCertificate<T>, BoundsError> {
    if !(disc_radius.is_finite() && disc_radius >= T::zero()) {
        return Err(BoundsError::NegativeRadius { index: 0, value: disc_radius.to_f64_lossy() });
    }
    if !(diameter.is_finite() && diameter > T::zero()) {
        return Err(BoundsError::NonpositiveDiameter(diameter.to_f64_lossy()));
    }
    let value = disc_radius.powi(4) / (T::lit(2.0) * diameter * diameter);
    Ok(BoundCertificate {
        target: target_label(1),
        q: 1,
        value,
        provenance: Provenance::BoundaryDisc,
        inputs_echo: vec![("disc_radius".to_string(), disc_radius), ("diameter".to_string(), diameter)],
    })
}

/// `α_{D(0,r)} ≥ √(3^{n−1}πⁿ/2^{2n−1}) · β_{D(0,r)}` for a polydisc with all
/// radii positive.
pub fn alpha_polydisc_lower<T: Scalar>(radii: &[T]) -> Result<T, BoundsError> {
    if radii.is_empty() {
        return Err(BoundsError::EmptyRadiusVector);
    }
    for (index, r) in radii.iter().enumerate() {
        if !(r.is_finite() && *r > T::zero()) {
            return Err(BoundsError::NonpositiveRadius { index, value: r.to_f64_lossy() });
        }
    }
    let n = radii.len() as i32;
    let scale = (T::lit(3.0).powi(n - 1) * T::PI().powi(n) / T::lit(2.0).powi(2 * n - 1)).sqrt();
    Ok(scale * beta(radii)?)
}

/// Upper bound `α_U ≤ (τ^{n+1}/n)·√(e πⁿ/(n−1)!)` for a bounded pseudoconvex
/// `U ⊂ ℂⁿ` of diameter `τ`, from comparing with the `L²` norm estimate of
/// `N_n` on the product with a small disc.
pub fn product_domain_alpha_upper<T: Scalar>(n: u32, diameter: T) -> Result<T, BoundsError> {
    if !(1..=MAX_DIMENSION).contains(&n) {
        return Err(BoundsError::IndexOutOfRange { n, q: n });
    }
    if !(diameter.is_finite() && diameter > T::zero()) {
        return Err(BoundsError::NonpositiveDiameter(diameter.to_f64_lossy()));
    }
    let nf = T::lit(f64::from(n));
    let root = (T::E() * T::PI().powi(n as i32) / factorial::<T>(n - 1)).sqrt();
    Ok(diameter.powi(n as i32 + 1) / nf * root)
}

/// `‖N_q‖_e = (‖∂̄*N_q‖_e⁴ + ‖∂̄*N_{q+1}‖_e⁴)^{1/2}`.
pub fn neumann_from_dbar_star<T: Scalar>(a_q: T, a_q1: T) -> Result<T, BoundsError> {
    for a in [a_q, a_q1] {
        if !(a.is_finite() && a >= T::zero()) {
            return Err(BoundsError::NegativeInput(a.to_f64_lossy()));
        }
    }
    Ok((a_q.powi(4) + a_q1.powi(4)).sqrt())
}

/// JSON form of [`ConvexDomainSpec`]:
/// `{"n":2,"q_variety":1,"diameter":2.0,"smooth":true,"polydiscs":[{"center":[[0,0]],"radii":[1.0]}],"alpha_values":[1.2533]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvexSpecJson {
    pub n: u32,
    pub q_variety: u32,
    pub diameter: f64,
    #[serde(default)]
    pub smooth: bool,
    #[serde(default)]
    pub polydiscs: Vec<PolydiscJson>,
    #[serde(default)]
    pub alpha_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolydiscJson {
    pub center: Vec<[f64; 2]>,
    pub radii: Vec<f64>,
}

impl ConvexSpecJson {
    pub fn to_spec<T: Scalar>(&self) -> Result<ConvexDomainSpec<T>, BoundsError> {
        let polydiscs = self
            .polydiscs
            .iter()
            .map(|p| {
                Polydisc::new(
                    p.center.iter().map(|[re, im]| [T::lit(*re), T::lit(*im)]).collect(),
                    p.radii.iter().map(|r| T::lit(*r)).collect(),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        ConvexDomainSpec::new(
            self.n,
            self.q_variety,
            T::lit(self.diameter),
            polydiscs,
            self.alpha_values.iter().map(|a| T::lit(*a)).collect(),
            self.smooth,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    fn disc_at_origin(r: f64) -> Polydisc<f64> {
        Polydisc::new(vec![[0.0, 0.0]], vec![r]).unwrap()
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&[0.0]).unwrap(), 0.0);
        assert!(close(beta(&[1.0, 1.0]).unwrap(), 1.0 / 2f64.sqrt(), 1e-15));
        assert!(close(beta(&[1.0, 2.0]).unwrap(), 2.0 / 1.25f64.sqrt(), 1e-15));
        assert_eq!(beta(&[1.0, 0.0, 3.0]).unwrap(), 0.0);
        assert_eq!(beta::<f64>(&[]), Err(BoundsError::EmptyRadiusVector));
        assert!(matches!(beta(&[1.0, -1.0]), Err(BoundsError::NegativeRadius { index: 1, .. })));
    }

    #[test]
    fn constant_examples() {
        assert!(close(neumann_constant::<f64>(2, 1).unwrap(), 2.0 / 729.0, 1e-14));
        assert!(close(neumann_constant::<f64>(3, 2).unwrap(), 729.0 / 65536.0 * 3.0 / 32.0, 1e-14));
        assert!(neumann_constant::<f64>(2, 2).is_err());
        assert!(neumann_constant::<f64>(2, 0).is_err());
        assert!(neumann_constant::<f64>(21, 1).is_err());
        assert!(close(dbar_star_constant::<f64>(2, 1).unwrap(), (2.0f64 / 729.0).sqrt(), 1e-14));
        assert!(close(dbar_star_constant::<f64>(3, 1).unwrap(), 1.0 / 16.0 / 8f64.sqrt(), 1e-14));
    }

    #[test]
    fn f32_constants_do_not_overflow() {
        let c: f32 = neumann_constant(20, 10).unwrap();
        assert!(c.is_finite() && c > 0.0);
    }

    #[test]
    fn compact_case_is_zero() {
        let spec = ConvexDomainSpec::new(2, 0, 2.0, vec![], vec![], false).unwrap();
        let cert = convex_lower_bound(&spec, 1).unwrap();
        assert_eq!(cert.value, 0.0);
        assert_eq!(cert.provenance, Provenance::Compact);
        let spec = ConvexDomainSpec::new(3, 1, 2.0, vec![], vec![], false).unwrap();
        assert_eq!(convex_lower_bound(&spec, 2).unwrap().provenance, Provenance::Compact);
    }

    #[test]
    fn polydisc_case() {
        let spec = ConvexDomainSpec::new(2, 1, 2.0, vec![disc_at_origin(1.0)], vec![], false).unwrap();
        let cert = convex_lower_bound(&spec, 1).unwrap();
        assert_eq!(cert.provenance, Provenance::Polydisc);
        assert!(close(cert.value, 1.0 / 1458.0, 1e-14));
    }

    #[test]
    fn variety_case_and_max() {
        let alpha = std::f64::consts::FRAC_PI_2.sqrt();
        let spec = ConvexDomainSpec::new(2, 1, 2.0, vec![], vec![alpha], true).unwrap();
        let cert = convex_lower_bound(&spec, 1).unwrap();
        assert_eq!(cert.provenance, Provenance::HypersurfaceVariety);
        assert!(close(cert.value, 0.125, 1e-14));
        // both apply: the variety bound wins here
        let spec = ConvexDomainSpec::new(2, 1, 2.0, vec![disc_at_origin(1.0)], vec![alpha], true).unwrap();
        assert_eq!(convex_lower_bound(&spec, 1).unwrap().provenance, Provenance::HypersurfaceVariety);
        // not smooth: alpha values are ignored
        let spec = ConvexDomainSpec::new(2, 1, 2.0, vec![disc_at_origin(1.0)], vec![alpha], false).unwrap();
        assert_eq!(convex_lower_bound(&spec, 1).unwrap().provenance, Provenance::Polydisc);
    }

    #[test]
    fn missing_data_and_bad_specs() {
        let spec = ConvexDomainSpec::new(2, 1, 2.0, vec![], vec![], true).unwrap();
        assert_eq!(
            convex_lower_bound(&spec, 1),
            Err(BoundsError::MissingBoundaryData { q: 1, q_variety: 1 })
        );
        // alpha values alone do not apply when q_variety < n − 1
        let spec = ConvexDomainSpec::new(3, 1, 2.0, vec![], vec![1.0], true).unwrap();
        assert!(convex_lower_bound(&spec, 1).is_err());
        assert!(convex_lower_bound(&spec, 0).is_err());
        assert!(convex_lower_bound(&spec, 4).is_err());
        assert!(ConvexDomainSpec::new(2, 2, 2.0, vec![], vec![], true).is_err());
        assert!(ConvexDomainSpec::<f64>::new(2, 1, 0.0, vec![], vec![], true).is_err());
        assert!(ConvexDomainSpec::new(2, 1, 1.0, vec![], vec![-1.0], true).is_err());
        let bidisc = Polydisc::new(vec![[0.0, 0.0], [0.0, 0.0]], vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            ConvexDomainSpec::new(2, 1, 1.0, vec![bidisc], vec![], true),
            Err(BoundsError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn disc_boundary_examples() {
        assert!(close(disc_boundary_bound(1.0, 2.0).unwrap().value, 0.125, 1e-15));
        assert_eq!(disc_boundary_bound(0.0, 2.0).unwrap().value, 0.0);
        assert!(close(disc_boundary_bound(1.0, 1.0).unwrap().value, 0.5, 1e-15));
        assert!(disc_boundary_bound(1.0, 0.0).is_err());
        assert_eq!(disc_boundary_bound(1.0, 1.0).unwrap().provenance.label(), "CorC2");
    }

    #[test]
    fn polydisc_alpha_examples() {
        let a1 = alpha_polydisc_lower(&[1.0]).unwrap();
        assert!(close(a1, std::f64::consts::FRAC_PI_2.sqrt(), 1e-15));
        let a2 = alpha_polydisc_lower(&[1.0, 1.0]).unwrap();
        let expected = (3.0 * std::f64::consts::PI.powi(2) / 8.0).sqrt() / 2f64.sqrt();
        assert!(close(a2, expected, 1e-15));
        assert!((a2 - 1.36035).abs() < 1e-5);
        assert!(matches!(alpha_polydisc_lower(&[0.0]), Err(BoundsError::NonpositiveRadius { .. })));
    }

    #[test]
    fn product_domain_examples() {
        let e = std::f64::consts::E;
        let pi = std::f64::consts::PI;
        let u1 = product_domain_alpha_upper(1, 2.0).unwrap();
        assert!(close(u1, 4.0 * (e * pi).sqrt(), 1e-15));
        assert!((u1 - 11.689129).abs() < 1e-6);
        assert!(u1 > std::f64::consts::FRAC_PI_2.sqrt());
        let u2 = product_domain_alpha_upper(2, 2.0).unwrap();
        assert!(close(u2, 4.0 * (e * pi * pi).sqrt(), 1e-15));
        assert!((u2 - 20.718443).abs() < 1e-6);
        assert!(product_domain_alpha_upper(0, 2.0).is_err());
        assert!(product_domain_alpha_upper(1, -2.0).is_err());
    }

    #[test]
    fn range_formula_examples() {
        assert_eq!(neumann_from_dbar_star(0.7, 0.0).unwrap(), 0.7f64.powi(2));
        assert_eq!(neumann_from_dbar_star(0.0, 0.0).unwrap(), 0.0);
        assert!(close(neumann_from_dbar_star(1.0, 1.0).unwrap(), 2f64.sqrt(), 1e-15));
        assert_eq!(neumann_from_dbar_star(-1.0, 0.0), Err(BoundsError::NegativeInput(-1.0)));
    }

    #[test]
    fn spec_json_parses() {
        let json = r#"{"n":2,"q_variety":1,"diameter":2.0,"smooth":true,
            "polydiscs":[{"center":[[0,0]],"radii":[1.0]}],"alpha_values":[1.2533]}"#;
        let parsed: ConvexSpecJson = serde_json::from_str(json).unwrap();
        let spec: ConvexDomainSpec<f64> = parsed.to_spec().unwrap();
        assert_eq!(spec.boundary_polydiscs().len(), 1);
        assert!(spec.smooth_boundary());
        let minimal: ConvexSpecJson = serde_json::from_str(r#"{"n":2,"q_variety":0,"diameter":1}"#).unwrap();
        assert!(minimal.polydiscs.is_empty() && !minimal.smooth);
    }
}
