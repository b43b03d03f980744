//! Numerical and exact computations for lower bounds on the essential norm of
//! the ∂̄-Neumann operator: planar torsion functions, convex-domain bounds,
//! worm-domain bounds and a Hankel-operator oracle on the disc and bidisc.
//!
//! Every routine is generic over [`scalar::Scalar`] (implemented for `f32` and
//! `f64`); the aliases below fix the scalar to `f64`, with `F32` variants for
//! single precision.

pub mod convex_bounds;
pub mod geometry;
pub mod hankel_oracle;
pub mod optimize;
pub mod scalar;
pub mod torsion;
pub mod worm_bounds;

pub use convex_bounds::{BoundsError, Provenance};
pub use geometry::{DomainSpec, GeometryError};
pub use hankel_oracle::HankelError;
pub use scalar::Scalar;
pub use torsion::TorsionError;
pub use worm_bounds::WormError;

pub type Point = geometry::Point<f64>;
pub type PlanarDomain = geometry::PlanarDomain<f64>;
pub type GridField = torsion::GridField<f64>;
pub type TorsionField = torsion::TorsionField<f64>;
pub type AlphaEstimate = torsion::AlphaEstimate<f64>;
pub type ConvergenceStudy = torsion::ConvergenceStudy<f64>;
pub type Polydisc = convex_bounds::Polydisc<f64>;
pub type ConvexDomainSpec = convex_bounds::ConvexDomainSpec<f64>;
pub type BoundCertificate = convex_bounds::BoundCertificate<f64>;
pub type WormParams = worm_bounds::WormParams<f64>;
pub type WormBoundResult = worm_bounds::WormBoundResult<f64>;
pub type HankelSpectrum = hankel_oracle::HankelSpectrum<f64>;
pub type BidiscComparison = hankel_oracle::BidiscComparison<f64>;

pub type PlanarDomainF32 = geometry::PlanarDomain<f32>;
pub type TorsionFieldF32 = torsion::TorsionField<f32>;
pub type AlphaEstimateF32 = torsion::AlphaEstimate<f32>;
pub type PolydiscF32 = convex_bounds::Polydisc<f32>;
pub type ConvexDomainSpecF32 = convex_bounds::ConvexDomainSpec<f32>;
pub type WormParamsF32 = worm_bounds::WormParams<f32>;
pub type HankelSpectrumF32 = hankel_oracle::HankelSpectrum<f32>;
