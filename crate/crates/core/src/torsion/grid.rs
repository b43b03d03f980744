//! Uniform Cartesian grids over a planar domain and their cut-cell data.

use crate::geometry::{PlanarDomain, Point};
use crate::scalar::Scalar;

/// Smallest boundary arm, as a fraction of the spacing. Arms shorter than this
/// are clamped so the stencil weight `1/θ` stays finite.
pub(crate) const MIN_ARM: f64 = 1e-6;

/// Hard cap on the number of grid nodes.
pub const MAX_NODES: usize = 50_000_000;

/// Node layout `x_i = origin.x + i·h`, `y_j = origin.y + j·h`, row-major in `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    pub origin: Point<T>,
    pub spacing: T,
    pub nx: usize,
    pub ny: usize,
}

impl<T: Scalar> Grid<T> {
    /// Grid of spacing `h` anchored one spacing below the lower-left corner of
    /// the domain's bounding box, extending at least one spacing past the
    /// upper-right corner. Every border node is therefore exterior.
    ///
    /// Returns `None` when the grid would exceed [`MAX_NODES`].
    pub fn covering(domain: &PlanarDomain<T>, h: T) -> Option<Self> {
        let bb = domain.bounding_box();
        let nx = (bb.width() / h).ceil().to_usize()?.checked_add(3)?;
        let ny = (bb.height() / h).ceil().to_usize()?.checked_add(3)?;
        if nx.checked_mul(ny)? > MAX_NODES {
            return None;
        }
        let origin = Point::new(bb.min.x - h, bb.min.y - h);
        Some(Self { origin, spacing: h, nx, ny })
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    #[inline]
    pub fn node(&self, i: usize, j: usize) -> Point<T> {
        Point::new(
            self.origin.x + T::from_usize_lossy(i) * self.spacing,
            self.origin.y + T::from_usize_lossy(j) * self.spacing,
        )
    }

    /// Neighbor of node `(i, j)` in direction `dir`, if it exists.
    #[inline]
    pub(crate) fn neighbor(&self, i: usize, j: usize, dir: Dir) -> Option<(usize, usize)> {
        match dir {
            Dir::East => (i + 1 < self.nx).then(|| (i + 1, j)),
            Dir::West => i.checked_sub(1).map(|i| (i, j)),
            Dir::North => (j + 1 < self.ny).then(|| (i, j + 1)),
            Dir::South => j.checked_sub(1).map(|j| (i, j)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Dir {
    East = 0,
    West = 1,
    North = 2,
    South = 3,
}

impl Dir {
    pub(crate) const ALL: [Dir; 4] = [Dir::East, Dir::West, Dir::North, Dir::South];

    pub(crate) fn opposite(self) -> Dir {
        match self {
            Dir::East => Dir::West,
            Dir::West => Dir::East,
            Dir::North => Dir::South,
            Dir::South => Dir::North,
        }
    }
}

pub(crate) const NO_UNKNOWN: usize = usize::MAX;

/// Interior node classification, boundary arm lengths and quadrature weights
/// for one (domain, grid) pair.
#[derive(Debug, Clone)]
pub(crate) struct CutCells<T> {
    pub grid: Grid<T>,
    /// Unknown index per node, `NO_UNKNOWN` for nodes on or outside the boundary.
    pub unknown: Vec<usize>,
    /// Grid index of each unknown.
    pub nodes: Vec<usize>,
    /// Arm length in units of `h` for each unknown and direction; `1` when the
    /// neighbor is interior, the boundary crossing fraction otherwise.
    pub arms: Vec<[T; 4]>,
    /// Fraction of each node's dual cell `[x ± h/2] × [y ± h/2]` inside the domain.
    pub fraction: Vec<T>,
}

impl<T: Scalar> CutCells<T> {
    pub fn build(domain: &PlanarDomain<T>, grid: Grid<T>) -> Self {
        let n = grid.len();
        let mut phi = Vec::with_capacity(n);
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                phi.push(domain.signed_distance(grid.node(i, j)));
            }
        }

        let mut unknown = vec![NO_UNKNOWN; n];
        let mut nodes = Vec::new();
        for (k, p) in phi.iter().enumerate() {
            if *p < T::zero() {
                unknown[k] = nodes.len();
                nodes.push(k);
            }
        }

        let min_arm = T::lit(MIN_ARM);
        let mut arms = Vec::with_capacity(nodes.len());
        for &k in &nodes {
            let (i, j) = (k % grid.nx, k / grid.nx);
            let mut a = [T::one(); 4];
            for dir in Dir::ALL {
                // The padding layer guarantees an exterior neighbor exists.
                let (ni, nj) = grid.neighbor(i, j, dir).expect("interior node on grid edge");
                let nk = grid.index(ni, nj);
                if phi[nk] >= T::zero() {
                    let theta = if phi[nk] == T::zero() {
                        T::one()
                    } else {
                        crossing_fraction(domain, grid.node(i, j), grid.node(ni, nj), phi[k], phi[nk])
                    };
                    a[dir as usize] = theta.max(min_arm);
                }
            }
            arms.push(a);
        }

        let band = grid.spacing * T::lit(std::f64::consts::FRAC_1_SQRT_2);
        let fraction = (0..n)
            .map(|k| {
                if phi[k] <= -band {
                    T::one()
                } else if phi[k] >= band {
                    T::zero()
                } else {
                    cell_fraction(domain, grid.node(k % grid.nx, k / grid.nx), grid.spacing)
                }
            })
            .collect();

        Self { grid, unknown, nodes, arms, fraction }
    }

    pub fn is_interior(&self, k: usize) -> bool {
        self.unknown[k] != NO_UNKNOWN
    }
}

/// Fraction `t ∈ (0, 1]` along the segment `a → b` at which the signed distance
/// changes sign, with `phi_a < 0 < phi_b`. Bisection on the exact distance.
fn crossing_fraction<T: Scalar>(
    domain: &PlanarDomain<T>,
    a: Point<T>,
    b: Point<T>,
    phi_a: T,
    phi_b: T,
) -> T {
    debug_assert!(phi_a < T::zero() && phi_b > T::zero());
    let (mut lo, mut hi) = (T::zero(), T::one());
    let tol = T::epsilon() * T::lit(4.0);
    for _ in 0..64 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) * T::lit(0.5);
        let p = Point::new(a.x + (b.x - a.x) * mid, a.y + (b.y - a.y) * mid);
        if domain.signed_distance(p) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * T::lit(0.5)
}

const SUBCELLS: usize = 4;

/// Inside fraction of the dual cell centered at `c`, from `SUBCELLS²` sub-cells
/// each weighted by the clamped linear profile `½ − φ/h_sub`.
fn cell_fraction<T: Scalar>(domain: &PlanarDomain<T>, c: Point<T>, h: T) -> T {
    let s = T::from_usize_lossy(SUBCELLS);
    let hs = h / s;
    let half = T::lit(0.5);
    let mut acc = T::zero();
    for a in 0..SUBCELLS {
        for b in 0..SUBCELLS {
            let p = Point::new(
                c.x - h * half + (T::from_usize_lossy(a) + half) * hs,
                c.y - h * half + (T::from_usize_lossy(b) + half) * hs,
            );
            let phi = domain.signed_distance(p);
            acc = acc + (half - phi / hs).max(T::zero()).min(T::one());
        }
    }
    acc / (s * s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covering_grid_is_anchored_and_padded() {
        let d = PlanarDomain::disc(1.0).unwrap();
        let g = Grid::covering(&d, 0.25).unwrap();
        assert_eq!(g.nx, 11);
        assert_eq!(g.ny, 11);
        assert_eq!(g.node(5, 5), Point::new(0.0, 0.0));
        assert_eq!(g.node(10, 10), Point::new(1.25, 1.25));
        assert!(d.signed_distance(g.node(0, 5)) > 0.0);
    }

    #[test]
    fn arms_on_disc_match_analytic_crossings() {
        let d = PlanarDomain::disc(1.0).unwrap();
        let g: Grid<f64> = Grid::covering(&d, 0.3).unwrap();
        let cc = CutCells::build(&d, g);
        for (u, &k) in cc.nodes.iter().enumerate() {
            let (i, j) = (k % g.nx, k / g.nx);
            let p = g.node(i, j);
            // East arm: solve (x + t h)^2 + y^2 = 1 for t.
            let east = cc.arms[u][Dir::East as usize];
            if east < 1.0 {
                let t = ((1.0 - p.y * p.y).sqrt() - p.x) / 0.3;
                assert!((east - t).abs() < 1e-12, "{east} vs {t}");
            }
        }
    }

    #[test]
    fn fractions_of_square_aligned_with_grid() {
        let d = PlanarDomain::rectangle(1.0, 1.0).unwrap();
        let g = Grid::covering(&d, 0.125).unwrap();
        let cc = CutCells::build(&d, g);
        let h2 = 0.125 * 0.125;
        let area: f64 = cc.fraction.iter().sum::<f64>() * h2;
        assert!((area - 1.0).abs() < 1e-12, "{area}");
    }

    #[test]
    fn fractions_of_disc_approximate_area() {
        let d = PlanarDomain::disc(1.0).unwrap();
        let h = 1.0 / 32.0;
        let cc = CutCells::build(&d, Grid::covering(&d, h).unwrap());
        let area: f64 = cc.fraction.iter().sum::<f64>() * h * h;
        assert!((area - std::f64::consts::PI).abs() < 1e-3, "{area}");
    }
}
