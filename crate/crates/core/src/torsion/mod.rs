//! Torsion function and the square root of torsional rigidity, `α_Ω`.
//!
//! The torsion function solves `u_{zz̄} = −1` in Ω (equivalently `Δu = −4`)
//! with `u = 0` on the boundary. Integration by parts gives
//! `‖u_z‖² = ∫u`, and `α_Ω = ∫u / ‖u_z‖ = ‖u_z‖ = √(∫u)`.
//!
//! The numerical route is a uniform grid with a symmetric cut-cell 5-point
//! Laplacian (boundary value imposed at the exact crossing of each grid line),
//! solved by preconditioned conjugate gradients.

mod cg;
pub mod closed_form;
pub mod grid;
mod quadrature;

use thiserror::Error;

use crate::geometry::{PlanarDomain, Point};
use crate::scalar::Scalar;

pub use closed_form::{alpha_annulus, alpha_disc, saint_venant_upper};
pub use grid::Grid;
use grid::CutCells;

/// Relative residual the linear solve must reach.
pub const SOLVER_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TorsionError {
    #[error("grid spacing must be positive and finite, got {0}")]
    InvalidSpacing(f64),
    #[error("grid at spacing {0} has no interior node")]
    NoInteriorNodes(f64),
    #[error("grid at spacing {0} exceeds the node limit")]
    GridTooLarge(f64),
    #[error("conjugate gradients stopped after {iterations} iterations at relative residual {residual:e}")]
    SolverDiverged { iterations: usize, residual: f64 },
    #[error("radius must be positive, got {0}")]
    NonpositiveRadius(f64),
    #[error("annulus outer radius must exceed 1, got {0}")]
    RadiusNotAboveOne(f64),
    #[error("test function vanishes identically on the interior nodes")]
    ZeroTestFunction,
    #[error("test field grid has {got} values, expected {expected}")]
    FieldShapeMismatch { expected: usize, got: usize },
    #[error("Saint-Venant's inequality requires a simply connected domain, got {0}")]
    NotSimplyConnected(&'static str),
}

/// Values on the nodes of a [`Grid`], row-major in `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField<T> {
    pub grid: Grid<T>,
    pub values: Vec<T>,
}

impl<T: Scalar> GridField<T> {
    pub fn new(grid: Grid<T>, values: Vec<T>) -> Result<Self, TorsionError> {
        if values.len() != grid.len() {
            return Err(TorsionError::FieldShapeMismatch { expected: grid.len(), got: values.len() });
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: Grid<T>, mut f: impl FnMut(Point<T>) -> T) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                values.push(f(grid.node(i, j)));
            }
        }
        Self { grid, values }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[self.grid.index(i, j)]
    }

    /// Rows of `x,y,v`, newline terminated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,u\n");
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                let p = self.grid.node(i, j);
                out.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e}\n",
                    p.x.to_f64_lossy(),
                    p.y.to_f64_lossy(),
                    self.get(i, j).to_f64_lossy()
                ));
            }
        }
        out
    }
}

/// Grid sample of the torsion function together with its integral and the
/// discrete `‖u_z‖²`.
#[derive(Debug, Clone)]
pub struct TorsionField<T> {
    pub field: GridField<T>,
    pub domain: PlanarDomain<T>,
    /// Quadrature of `∫_Ω u`.
    pub integral_u: T,
    /// Discrete `‖u_z‖² = ¼‖∇u‖²`.
    pub grad_norm_sq: T,
    pub interior_nodes: usize,
    pub iterations: usize,
    pub relative_residual: T,
}

impl<T: Scalar> TorsionField<T> {
    pub fn spacing(&self) -> T {
        self.field.grid.spacing
    }

    pub fn origin(&self) -> Point<T> {
        self.field.grid.origin
    }

    /// `√(∫u)`.
    pub fn alpha(&self) -> T {
        self.integral_u.sqrt()
    }

    /// `|∫u − ‖u_z‖²| / ∫u`; zero in exact arithmetic.
    pub fn lemma_defect(&self) -> T {
        (self.integral_u - self.grad_norm_sq).abs() / self.integral_u
    }

    /// Value at the grid node closest to `p`.
    pub fn value_near(&self, p: Point<T>) -> T {
        let g = &self.field.grid;
        let fi = ((p.x - g.origin.x) / g.spacing).round();
        let fj = ((p.y - g.origin.y) / g.spacing).round();
        let i = fi.max(T::zero()).to_usize().unwrap_or(0).min(g.nx - 1);
        let j = fj.max(T::zero()).to_usize().unwrap_or(0).min(g.ny - 1);
        self.field.get(i, j)
    }
}

fn check_spacing<T: Scalar>(h: T) -> Result<(), TorsionError> {
    if h.is_finite() && h > T::zero() {
        Ok(())
    } else {
        Err(TorsionError::InvalidSpacing(h.to_f64_lossy()))
    }
}

fn cut_cells<T: Scalar>(domain: &PlanarDomain<T>, h: T) -> Result<CutCells<T>, TorsionError> {
    check_spacing(h)?;
    let grid = Grid::covering(domain, h).ok_or(TorsionError::GridTooLarge(h.to_f64_lossy()))?;
    Ok(CutCells::build(domain, grid))
}

/// Residual target for the linear solve; `f32` cannot reach `1e−10`.
fn solver_tolerance<T: Scalar>() -> T {
    T::lit(SOLVER_TOLERANCE).max(T::epsilon() * T::lit(1000.0))
}

/// Solves `Δ_h u = −4` with zero boundary values on the grid of spacing `h`.
pub fn solve_torsion<T: Scalar>(
    domain: &PlanarDomain<T>,
    spacing: T,
) -> Result<TorsionField<T>, TorsionError> {
    let cells = cut_cells(domain, spacing)?;
    if cells.nodes.is_empty() {
        return Err(TorsionError::NoInteriorNodes(spacing.to_f64_lossy()));
    }
    let op = cg::CutCellLaplacian::assemble(&cells);
    let rhs = vec![T::lit(4.0) * spacing * spacing; op.len()];
    let mut x = vec![T::zero(); op.len()];
    let max_iter = 50 * (cells.grid.len() as f64).sqrt().ceil() as usize + 1000;
    let out = cg::pcg(&op, &rhs, &mut x, solver_tolerance(), max_iter);
    if !out.converged {
        return Err(TorsionError::SolverDiverged {
            iterations: out.iterations,
            residual: out.relative_residual.to_f64_lossy(),
        });
    }

    let mut values = vec![T::zero(); cells.grid.len()];
    for (u, &k) in cells.nodes.iter().enumerate() {
        values[k] = x[u];
    }
    let integral_u = quadrature::integral(&cells, &values);
    let grad_norm_sq = quadrature::grad_norm_sq(&cells, &values) * T::lit(0.25);
    Ok(TorsionField {
        field: GridField { grid: cells.grid, values },
        domain: domain.clone(),
        integral_u,
        grad_norm_sq,
        interior_nodes: cells.nodes.len(),
        iterations: out.iterations,
        relative_residual: out.relative_residual,
    })
}

/// Result of [`alpha_numeric`].
#[derive(Debug, Clone)]
pub struct AlphaEstimate<T> {
    pub alpha: T,
    pub error_estimate: T,
    /// `√(∫u)` at the requested spacing.
    pub alpha_coarse: T,
    /// `√(∫u)` at half the spacing, when refined.
    pub alpha_fine: Option<T>,
    /// Finest field solved.
    pub field: TorsionField<T>,
}

/// `α_Ω ≈ √(∫u)`.
///
/// With `refine`, solves at `h` and `h/2` and returns the order-2 Richardson
/// value `fine + (fine − coarse)/3` with `|coarse − fine|` as the error
/// estimate. Without it, the estimate is `|√(∫u) − √(‖u_z‖²)|`, the gap
/// between the two sides of the integration-by-parts identity.
pub fn alpha_numeric<T: Scalar>(
    domain: &PlanarDomain<T>,
    spacing: T,
    refine: bool,
) -> Result<AlphaEstimate<T>, TorsionError> {
    let coarse = solve_torsion(domain, spacing)?;
    let a_coarse = coarse.alpha();
    if !refine {
        let err = (a_coarse - coarse.grad_norm_sq.sqrt()).abs();
        return Ok(AlphaEstimate {
            alpha: a_coarse,
            error_estimate: err,
            alpha_coarse: a_coarse,
            alpha_fine: None,
            field: coarse,
        });
    }
    let fine = solve_torsion(domain, spacing * T::lit(0.5))?;
    let a_fine = fine.alpha();
    Ok(AlphaEstimate {
        alpha: a_fine + (a_fine - a_coarse) / T::lit(3.0),
        error_estimate: (a_coarse - a_fine).abs(),
        alpha_coarse: a_coarse,
        alpha_fine: Some(a_fine),
        field: fine,
    })
}

/// `2∫χ / ‖∇χ‖` for a grid test field. Values of `chi` on or outside the
/// boundary are ignored (taken as zero), so the result never exceeds `α_Ω`
/// beyond discretization error.
pub fn rayleigh_quotient<T: Scalar>(
    domain: &PlanarDomain<T>,
    chi: &GridField<T>,
) -> Result<T, TorsionError> {
    let cells = CutCells::build(domain, chi.grid);
    let mut values = vec![T::zero(); chi.grid.len()];
    for &k in &cells.nodes {
        values[k] = chi.values[k];
    }
    if values.iter().all(|v| *v == T::zero()) {
        return Err(TorsionError::ZeroTestFunction);
    }
    let integral = quadrature::integral(&cells, &values);
    let grad = quadrature::grad_norm_sq(&cells, &values).sqrt();
    if grad == T::zero() {
        return Err(TorsionError::ZeroTestFunction);
    }
    Ok(T::lit(2.0) * integral / grad)
}

/// `alpha_numeric` at `h`, `h/2`, `h/4` (unrefined) and the empirical order
/// `log₂(|a_h − a_{h/2}| / |a_{h/2} − a_{h/4}|)`.
#[derive(Debug, Clone)]
pub struct ConvergenceStudy<T> {
    pub spacings: [T; 3],
    pub alphas: [T; 3],
    pub lemma_defects: [T; 3],
    pub order: T,
}

pub fn convergence_study<T: Scalar>(
    domain: &PlanarDomain<T>,
    spacing: T,
) -> Result<ConvergenceStudy<T>, TorsionError> {
    let half = T::lit(0.5);
    let spacings = [spacing, spacing * half, spacing * half * half];
    let mut alphas = [T::zero(); 3];
    let mut defects = [T::zero(); 3];
    for (k, h) in spacings.iter().enumerate() {
        let f = solve_torsion(domain, *h)?;
        alphas[k] = f.alpha();
        defects[k] = f.lemma_defect();
    }
    let d1 = (alphas[0] - alphas[1]).abs();
    let d2 = (alphas[1] - alphas[2]).abs();
    let order = (d1 / d2).log2();
    Ok(ConvergenceStudy { spacings, alphas, lemma_defects: defects, order })
}
