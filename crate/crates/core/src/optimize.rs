//! Bounded one-dimensional maximization.

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum<T> {
    pub x: T,
    pub value: T,
    pub evaluations: usize,
}

/// Golden-section search for a maximum of `f` on `[a, b]`, stopping once the
/// bracket is narrower than `width`. Assumes `f` is unimodal on the bracket.
pub fn golden_section_max<T: Scalar>(mut f: impl FnMut(T) -> T, a: T, b: T, width: T) -> Maximum<T> {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evaluations = 2;
    // Bounded by the float resolution of the bracket as well as `width`.
    while hi - lo > width && evaluations < 400 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
        evaluations += 1;
    }
    let (x, value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    Maximum { x, value, evaluations }
}

/// Evaluates `f` at `points` equispaced nodes of `[a, b]` (endpoints
/// included) and refines the best node by golden-section search inside its
/// neighboring cells. Ties in the scan resolve to the smaller abscissa.
pub fn scan_then_golden<T: Scalar>(mut f: impl FnMut(T) -> T, a: T, b: T, points: usize, width: T) -> Maximum<T> {
    let points = points.max(2);
    let step = (b - a) / T::from_usize_lossy(points - 1);
    let at = |k: usize| if k == points - 1 { b } else { a + step * T::from_usize_lossy(k) };
    let mut best_k = 0;
    let mut best = f(at(0));
    for k in 1..points {
        let v = f(at(k));
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let lo = at(best_k.saturating_sub(1));
    let hi = at((best_k + 1).min(points - 1));
    let refined = golden_section_max(&mut f, lo, hi, width);
    let evaluations = points + refined.evaluations;
    if refined.value > best {
        Maximum { x: refined.x, value: refined.value, evaluations }
    } else {
        Maximum { x: at(best_k), value: best, evaluations }
    }
}
