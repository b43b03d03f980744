//! Conjugate gradients for the cut-cell Laplacian, preconditioned with a
//! modified incomplete Cholesky factorization (MIC(0)) in natural ordering.

use super::grid::{CutCells, Dir, NO_UNKNOWN};
use crate::scalar::Scalar;

/// Symmetric cut-cell 5-point operator scaled by `h²`:
/// `(A u)_i = Σ_d u_i/θ_d − Σ_{interior nbrs} u_j`.
///
/// A boundary arm of length `θh` contributes `(0 − u_i)/(θh)` to the flux
/// difference, so the boundary value is imposed exactly at the crossing. Each
/// interior edge contributes the same `−1` to both rows, which keeps the
/// matrix symmetric positive definite.
#[derive(Debug, Clone)]
pub(crate) struct CutCellLaplacian<T> {
    pub diag: Vec<T>,
    /// Interior neighbors of each unknown, `NO_UNKNOWN` padded.
    pub nbrs: Vec<[usize; 4]>,
}

impl<T: Scalar> CutCellLaplacian<T> {
    pub fn assemble(cells: &CutCells<T>) -> Self {
        let g = &cells.grid;
        let mut diag = Vec::with_capacity(cells.nodes.len());
        let mut nbrs = Vec::with_capacity(cells.nodes.len());
        for (u, &k) in cells.nodes.iter().enumerate() {
            let (i, j) = (k % g.nx, k / g.nx);
            let arms = &cells.arms[u];
            let mut d = T::zero();
            let mut nb = [NO_UNKNOWN; 4];
            for dir in Dir::ALL {
                d = d + T::one() / arms[dir as usize];
                let (ni, nj) = g.neighbor(i, j, dir).expect("interior node on grid edge");
                nb[dir as usize] = cells.unknown[g.index(ni, nj)];
            }
            diag.push(d);
            nbrs.push(nb);
        }
        Self { diag, nbrs }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn apply(&self, x: &[T], y: &mut [T]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = self.diag[i] * x[i];
            for &n in &self.nbrs[i] {
                if n != NO_UNKNOWN {
                    acc = acc - x[n];
                }
            }
            *yi = acc;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CgOutcome<T> {
    pub iterations: usize,
    pub relative_residual: T,
    pub converged: bool,
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + *x * *y)
}

const MIC_TAU: f64 = 0.97;
const MIC_SAFETY: f64 = 0.25;

/// `M = (F + E) F⁻¹ (F + E)ᵀ` with `E` the strictly lower part of `A` and `F`
/// diagonal; `precon[k] = 1/√F_k`.
pub(crate) struct Mic0<T> {
    precon: Vec<T>,
}

impl<T: Scalar> Mic0<T> {
    pub fn factor(a: &CutCellLaplacian<T>) -> Self {
        let n = a.len();
        let tau = T::lit(MIC_TAU);
        let safety = T::lit(MIC_SAFETY);
        let mut precon = vec![T::zero(); n];
        for k in 0..n {
            let [_, w, _, s] = a.nbrs[k];
            let mut e = a.diag[k];
            // Couplings are −1 for every interior neighbor.
            if w != NO_UNKNOWN {
                let pw = precon[w];
                e = e - pw * pw;
                if a.nbrs[w][Dir::North as usize] != NO_UNKNOWN {
                    e = e - tau * pw * pw;
                }
            }
            if s != NO_UNKNOWN {
                let ps = precon[s];
                e = e - ps * ps;
                if a.nbrs[s][Dir::East as usize] != NO_UNKNOWN {
                    e = e - tau * ps * ps;
                }
            }
            if e < safety * a.diag[k] {
                e = a.diag[k];
            }
            precon[k] = T::one() / e.sqrt();
        }
        Self { precon }
    }

    pub fn apply(&self, a: &CutCellLaplacian<T>, r: &[T], z: &mut [T]) {
        let n = r.len();
        let p = &self.precon;
        for k in 0..n {
            let [_, w, _, s] = a.nbrs[k];
            let mut t = r[k];
            if w != NO_UNKNOWN {
                t = t + p[w] * z[w];
            }
            if s != NO_UNKNOWN {
                t = t + p[s] * z[s];
            }
            z[k] = t * p[k];
        }
        for k in (0..n).rev() {
            let [e, _, nn, _] = a.nbrs[k];
            let mut t = z[k];
            if e != NO_UNKNOWN {
                t = t + p[k] * z[e];
            }
            if nn != NO_UNKNOWN {
                t = t + p[k] * z[nn];
            }
            z[k] = t * p[k];
        }
    }
}

/// Solves `A x = b` starting from `x`. Stops when `‖b − A x‖ ≤ tol·‖b‖` or
/// after `max_iter` iterations.
pub(crate) fn pcg<T: Scalar>(
    a: &CutCellLaplacian<T>,
    b: &[T],
    x: &mut [T],
    tol: T,
    max_iter: usize,
) -> CgOutcome<T> {
    let n = a.len();
    let b_norm = dot(b, b).sqrt();
    if b_norm == T::zero() {
        x.iter_mut().for_each(|v| *v = T::zero());
        return CgOutcome { iterations: 0, relative_residual: T::zero(), converged: true };
    }

    let m = Mic0::factor(a);
    let mut r = vec![T::zero(); n];
    let mut z = vec![T::zero(); n];
    let mut p = vec![T::zero(); n];
    let mut ap = vec![T::zero(); n];
    let mut iterations = 0;

    // Restart from the true residual whenever the recurrence claims
    // convergence; the recurrence can drift below the true residual.
    loop {
        a.apply(x, &mut r);
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri = *bi - *ri;
        }
        let mut res = dot(&r, &r).sqrt() / b_norm;
        if res <= tol || !res.is_finite() || iterations >= max_iter {
            return CgOutcome { iterations, relative_residual: res, converged: res <= tol };
        }
        m.apply(a, &r, &mut z);
        p.copy_from_slice(&z);
        let mut rz = dot(&r, &z);
        while iterations < max_iter && res > tol && res.is_finite() {
            a.apply(&p, &mut ap);
            let alpha = rz / dot(&p, &ap);
            let mut rr = T::zero();
            for i in 0..n {
                x[i] = x[i] + alpha * p[i];
                r[i] = r[i] - alpha * ap[i];
                rr = rr + r[i] * r[i];
            }
            res = rr.sqrt() / b_norm;
            m.apply(a, &r, &mut z);
            let rz_next = dot(&r, &z);
            let beta = rz_next / rz;
            rz = rz_next;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
            iterations += 1;
        }
    }
}
