//! Exact small computations around the Hankel operator `H_{z̄}` on Bergman
//! spaces of the disc and bidisc, and the comparison of the resulting bound
//! for `‖N₁‖_e` on the bidisc with the exact value `4/j₀,₁²`.
//!
//! Disc moments are `∫_𝔻 |z|^{2m} dV = π/(m+1)`. All moment arithmetic is
//! carried out in exact rationals (the factor `π` cancels in every ratio) and
//! converted to floating point only at the end.

use num_rational::Ratio;
use thiserror::Error;

use crate::convex_bounds::neumann_from_dbar_star;
use crate::scalar::Scalar;

/// Largest monomial degree handled exactly in `i128` rationals.
pub const MAX_DEGREE: i64 = 1_000_000;

type Q = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HankelError {
    #[error("monomial degree must be nonnegative, got {0}")]
    NegativeDegree(i64),
    #[error("monomial degree {0} exceeds the exact-arithmetic limit")]
    DegreeTooLarge(i64),
    #[error("multiplicity check needs K >= 1, got {0}")]
    EmptyMultiplicityCheck(usize),
    #[error("bisection tolerance must lie in (0, 1e-2), got {0}")]
    ToleranceOutOfRange(f64),
}

/// `∫_𝔻 |z|^{2m} dV / π`.
fn disc_moment(m: i128) -> Q {
    Q::new(1, m + 1)
}

/// Exact eigenvalue of `H*_{z̄}H_{z̄}` on the monomial `z^j` of `A²(𝔻)`.
///
/// `P(z̄ z^j) = (j/(j+1)) z^{j−1}`, so
/// `‖H z^j‖² = ‖z̄ z^j‖² − (j/(j+1))² ‖z^{j−1}‖²`, and the eigenvalue is that
/// divided by `‖z^j‖²`.
pub fn hankel_disc_eigenvalue_exact(j: i64) -> Result<Q, HankelError> {
    if j < 0 {
        return Err(HankelError::NegativeDegree(j));
    }
    if j > MAX_DEGREE {
        return Err(HankelError::DegreeTooLarge(j));
    }
    let j = i128::from(j);
    let symbol_sq = disc_moment(j + 1);
    let projected_sq = if j == 0 {
        Q::from_integer(0)
    } else {
        let coeff = disc_moment(j) / disc_moment(j - 1);
        coeff * coeff * disc_moment(j - 1)
    };
    Ok((symbol_sq - projected_sq) / disc_moment(j))
}

pub fn hankel_disc_eigenvalue<T: Scalar>(j: i64) -> Result<T, HankelError> {
    hankel_disc_eigenvalue_exact(j).map(ratio_to)
}

fn ratio_to<T: Scalar>(q: Q) -> T {
    // Numerators and denominators stay far below 2^53 for the degrees allowed.
    T::lit(*q.numer() as f64) / T::lit(*q.denom() as f64)
}

/// Eigenvalues of `H*_{z̄}H_{z̄}` on `z⁰ … z^N` for the disc.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelSpectrum<T> {
    pub max_degree: usize,
    pub eigenvalues: Vec<T>,
    /// `‖H_{z̄}‖ = √(max λ_j)`.
    pub norm: T,
    /// `‖H_{z̄₁}‖_e` on the bidisc.
    pub essential_norm_bidisc: T,
}

impl<T: Scalar> HankelSpectrum<T> {
    pub fn compute(max_degree: usize) -> Result<Self, HankelError> {
        let eigenvalues = (0..=max_degree as i64)
            .map(hankel_disc_eigenvalue::<T>)
            .collect::<Result<Vec<_>, _>>()?;
        let top = eigenvalues.iter().copied().fold(T::zero(), T::max);
        let bidisc = hankel_bidisc_essential_norm::<T>(1)?;
        Ok(Self { max_degree, eigenvalues, norm: top.sqrt(), essential_norm_bidisc: bidisc.essential_norm })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BidiscHankel<T> {
    pub essential_norm: T,
    /// Eigenvalue of `H*_{z̄₁}H_{z̄₁}` on `1·z₂^k`, `k = 0..K−1`.
    pub copies: Vec<T>,
    /// Number of copies equal to `1/2` exactly.
    pub confirmed: usize,
}

/// `‖H_{z̄₁}‖_e = 1/√2` on `A²(𝔻²)`.
///
/// `H_{z̄₁}(f(z₁) z₂^k) = (H_{z̄} f)(z₁) z₂^k`, so every `z₂^k` carries a copy
/// of the disc eigenvalue `λ₀ = 1/2`; infinitely many copies put `1/2` in the
/// essential spectrum of `H*H`. The first `K` copies are checked exactly.
pub fn hankel_bidisc_essential_norm<T: Scalar>(k: usize) -> Result<BidiscHankel<T>, HankelError> {
    if k == 0 {
        return Err(HankelError::EmptyMultiplicityCheck(0));
    }
    let lambda0 = hankel_disc_eigenvalue_exact(0)?;
    let half = Q::new(1, 2);
    let mut copies = Vec::with_capacity(k);
    let mut confirmed = 0;
    for m in 0..k as i128 {
        // Tensor norms: ‖H(1)·z₂^m‖² / ‖1·z₂^m‖², π² cancels.
        let num = lambda0 * disc_moment(0) * disc_moment(m);
        let den = disc_moment(0) * disc_moment(m);
        let ratio = num / den;
        if ratio == half {
            confirmed += 1;
        }
        copies.push(ratio_to::<T>(ratio));
    }
    let essential_norm = if confirmed == k { T::FRAC_1_SQRT_2() } else { T::nan() };
    Ok(BidiscHankel { essential_norm, copies, confirmed })
}

/// `J₀(x) = Σ (−1)^m (x/2)^{2m}/(m!)²`, truncated once a term drops below
/// `cutoff` in magnitude.
pub fn bessel_j0_series<T: Scalar>(x: T, cutoff: T) -> T {
    let q = x * x * T::lit(0.25);
    let mut term = T::one();
    let mut sum = term;
    let mut m = 1u32;
    while term.abs() >= cutoff && m < 500 {
        let mf = T::lit(f64::from(m));
        term = -term * q / (mf * mf);
        sum = sum + term;
        m += 1;
    }
    sum
}

/// First positive zero `j₀,₁` of `J₀`, by bisection on `[2, 3]` to within `tol`.
pub fn bessel_j0_first_zero<T: Scalar>(tol: T) -> Result<T, HankelError> {
    if !(tol > T::zero() && tol < T::lit(1e-2)) {
        return Err(HankelError::ToleranceOutOfRange(tol.to_f64_lossy()));
    }
    let cutoff = tol * T::lit(1e-3);
    let f = |x: T| bessel_j0_series(x, cutoff);
    let (mut lo, mut hi) = (T::lit(2.0), T::lit(3.0));
    let mut f_lo = f(lo);
    // Midpoint is within (hi − lo)/2 of the root.
    while (hi - lo) * T::lit(0.5) > tol {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if (f_mid > T::zero()) == (f_lo > T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * T::lit(0.5))
}

/// Lower bound and exact value of `‖N₁‖_e` on the bidisc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BidiscComparison<T> {
    /// `‖H_{z̄₁}‖_e²`, from `‖N₁‖_e = ‖∂̄*N₁‖_e² ≥ ‖H_{z̄₁}‖_e²`.
    pub lower_bound: T,
    /// `4/j₀,₁²`, the inverse bottom of the spectrum of `□₁`.
    pub exact: T,
    pub j01: T,
}

pub fn bidisc_n1_comparison<T: Scalar>() -> BidiscComparison<T> {
    let h = hankel_bidisc_essential_norm::<T>(1).expect("K = 1 is valid").essential_norm;
    // ∂̄*N₂ is compact on domains in ℂ², so the second argument is 0.
    let lower_bound = neumann_from_dbar_star(h, T::zero()).expect("nonnegative inputs");
    let tol = T::lit(1e-12).max(T::epsilon() * T::lit(8.0));
    let j01 = bessel_j0_first_zero(tol).expect("tolerance in range");
    let exact = T::lit(4.0) / (j01 * j01);
    debug_assert!(exact > lower_bound);
    BidiscComparison { lower_bound, exact, j01 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(hankel_disc_eigenvalue_exact(0).unwrap(), Q::new(1, 2));
        assert_eq!(hankel_disc_eigenvalue_exact(1).unwrap(), Q::new(1, 6));
        assert_eq!(hankel_disc_eigenvalue_exact(10).unwrap(), Q::new(1, 132));
        assert_eq!(hankel_disc_eigenvalue_exact(-1), Err(HankelError::NegativeDegree(-1)));
        assert!(hankel_disc_eigenvalue_exact(MAX_DEGREE).is_ok());
        assert!(hankel_disc_eigenvalue_exact(MAX_DEGREE + 1).is_err());
    }

    #[test]
    fn spectrum_invariants() {
        let s = HankelSpectrum::<f64>::compute(50).unwrap();
        assert_eq!(s.eigenvalues[0], 0.5);
        assert!(s.eigenvalues.windows(2).all(|w| w[1] < w[0]));
        assert!(s.eigenvalues.iter().all(|l| *l > 0.0 && *l <= 0.5));
        assert_eq!(s.norm, std::f64::consts::FRAC_1_SQRT_2);
        assert_eq!(s.essential_norm_bidisc, std::f64::consts::FRAC_1_SQRT_2);
        let s0 = HankelSpectrum::<f64>::compute(0).unwrap();
        assert_eq!(s0.norm, std::f64::consts::FRAC_1_SQRT_2);
    }

    #[test]
    fn bidisc_copies() {
        let b = hankel_bidisc_essential_norm::<f64>(5).unwrap();
        assert_eq!(b.confirmed, 5);
        assert!(b.copies.iter().all(|c| *c == 0.5));
        assert_eq!(b.essential_norm, std::f64::consts::FRAC_1_SQRT_2);
        assert!(hankel_bidisc_essential_norm::<f64>(0).is_err());
    }

    #[test]
    fn bessel_zero_coarse_and_fine() {
        let coarse: f64 = bessel_j0_first_zero(1e-3).unwrap();
        assert!((coarse - 2.4048).abs() < 1e-3);
        let fine: f64 = bessel_j0_first_zero(1e-10).unwrap();
        assert!((fine - 2.4048255577).abs() < 1e-10);
        assert!(bessel_j0_first_zero(0.5f64).is_err());
        assert!(bessel_j0_first_zero(0.0f64).is_err());
    }

    #[test]
    fn comparison_values() {
        let c = bidisc_n1_comparison::<f64>();
        assert!((c.lower_bound - 0.5).abs() < 1e-15);
        assert!((c.exact - 0.69159).abs() < 1e-4);
        assert!(c.exact > c.lower_bound);
        assert!((c.j01 * c.j01 * c.exact - 4.0).abs() < 1e-10);
    }
}
