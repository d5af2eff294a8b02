//! Scalar convex calculus on the half-line.
//!
//! All potentials in this crate are radial, `ζ(v) = φ(|v|)`, so conjugates
//! and infimal convolutions reduce to operations on convex profiles over
//! `[0, ∞)`: the optimal split in `f □ g` is collinear with `v`, and the
//! conjugate of a radial function is radial with profile `φ*`.

mod conjugate;
mod grid;
mod infconv;
mod sampled;
mod subdiff;

pub use conjugate::{legendre_transform, legendre_transform_exhaustive, resolve_dual};
pub use grid::{DualGrid, Grid, DEFAULT_POINTS, DEFAULT_R_MAX};
pub use infconv::{inf_convolve_direct, inf_convolve_via_conjugate, yosida};
pub use sampled::{SampledFunction, Tail, CONVEXITY_TOL};
pub use subdiff::SubdiffInterval;

use crate::error::{Result, RheoError};

/// `∂f(v)` of the piecewise-linear interpolant, as `[left slope, right slope]`.
///
/// The profile is extended evenly through the origin, so `∂f(0)` is the
/// symmetric interval `[−f'(0+), f'(0+)]`. At the end of a bounded domain
/// the right end is `+∞` (normal cone).
pub fn subdifferential(f: &SampledFunction, v: f64) -> Result<SubdiffInterval> {
    let out_of_range = RheoError::OutOfRange { value: v, lo: 0.0, hi: f.domain_end() };
    if !(v >= 0.0) || f.eval(v)? == f64::INFINITY {
        return Err(out_of_range);
    }
    let slopes = f.slopes();
    let last = f.finite_sup() - 1;
    let right_of = |i: usize| -> f64 {
        if i < last {
            slopes[i]
        } else if f.is_bounded() {
            f64::INFINITY
        } else {
            f.right_slope()
        }
    };
    match f.grid().node_at(v) {
        Some(0) => {
            let r = right_of(0);
            Ok(SubdiffInterval::new(-r, r))
        }
        Some(i) => Ok(SubdiffInterval::new(slopes[i - 1], right_of(i))),
        None => {
            let k = slopes[f.grid().segment(v)];
            Ok(SubdiffInterval::point(k))
        }
    }
}

/// `f(v) + f*(s) − s·v`; non-negative by the Fenchel–Young inequality and
/// zero exactly when `s ∈ ∂f(v)`.
pub fn fenchel_young_residual(f: &SampledFunction, fstar: &SampledFunction, v: f64, s: f64) -> Result<f64> {
    let a = f.eval(v)?;
    let b = fstar.eval(s)?;
    if a.is_infinite() || b.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(a + b - s * v)
}
