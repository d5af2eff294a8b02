//! Discrete Legendre–Fenchel transform on the half-line.
//!
//! The transform computed here is the exact conjugate of the
//! piecewise-linear interpolant `f̂` of the samples, extended past the grid
//! by the function's [`Tail`]. With an affine tail `f̂*` is `+∞` beyond the
//! last chord slope, which is how support bounds such as the unit ball of
//! `|·|` come out exactly instead of as large finite numbers.

use super::grid::{DualGrid, Grid, DEFAULT_POINTS, DEFAULT_R_MAX};
use super::sampled::{SampledFunction, Tail};
use crate::error::{invalid, Result};

/// Relative slack when deciding whether a dual node is past the last slope.
const SLOPE_TOL: f64 = 1e-12;

/// `f*(s) = sup_v { s·v − f(v) }` on the requested dual grid, evaluated by a
/// single monotone sweep (the maximizing node never moves left as `s` grows).
pub fn legendre_transform(f: &SampledFunction, dual: &DualGrid) -> Result<SampledFunction> {
    let grid = resolve_dual(f, dual)?;
    transform_with(f, grid, sweep)
}

/// Reference path: exhaustive scan over every finite node for every slope.
pub fn legendre_transform_exhaustive(f: &SampledFunction, dual: &DualGrid) -> Result<SampledFunction> {
    let grid = resolve_dual(f, dual)?;
    transform_with(f, grid, exhaustive)
}

/// Fills `out[k] = max_i (s[k]·x[i] − f[i])` for nodes `x`, values `f`, slopes `s`.
type Kernel = fn(&[f64], &[f64], &[f64], &mut [f64]);

fn transform_with(f: &SampledFunction, grid: Grid, kernel: Kernel) -> Result<SampledFunction> {
    let n = f.finite_sup();
    let x = &f.grid().nodes()[..n];
    let fv = &f.values()[..n];
    let s = grid.nodes();

    // Finite part of the dual axis.
    let cutoff = if f.is_bounded() {
        s.len()
    } else {
        let slope = f.right_slope().max(0.0);
        let limit = slope * (1.0 + SLOPE_TOL) + f64::MIN_POSITIVE;
        s.partition_point(|&si| si <= limit)
    };
    let mut values = vec![f64::INFINITY; s.len()];
    kernel(x, fv, &s[..cutoff], &mut values[..cutoff]);

    if cutoff == 0 {
        return invalid("dual grid lies entirely outside the conjugate's domain");
    }
    let tail = if !f.is_bounded() && cutoff == s.len() && grid.end() >= f.right_slope() * (1.0 - SLOPE_TOL) {
        Tail::Infinite
    } else {
        Tail::Affine
    };
    SampledFunction::new(grid, values, tail)
}

fn sweep(x: &[f64], f: &[f64], s: &[f64], out: &mut [f64]) {
    let mut j = 0;
    for (k, &sk) in s.iter().enumerate() {
        let mut best = sk * x[j] - f[j];
        while j + 1 < x.len() {
            let next = sk * x[j + 1] - f[j + 1];
            if next < best {
                break;
            }
            best = next;
            j += 1;
        }
        out[k] = best;
    }
}

fn exhaustive(x: &[f64], f: &[f64], s: &[f64], out: &mut [f64]) {
    for (k, &sk) in s.iter().enumerate() {
        out[k] = x.iter().zip(f).map(|(&xj, &fj)| sk * xj - fj).fold(f64::NEG_INFINITY, f64::max);
    }
}

/// Builds the dual grid requested by `dual` for the function `f`.
pub fn resolve_dual(f: &SampledFunction, dual: &DualGrid) -> Result<Grid> {
    match dual {
        DualGrid::Auto => Grid::uniform(auto_end(f), DEFAULT_POINTS),
        DualGrid::AutoPoints(points) => Grid::uniform(auto_end(f), *points),
        DualGrid::Uniform { s_max, points } => Grid::uniform(*s_max, *points),
        DualGrid::Explicit(nodes) => Grid::from_nodes(nodes.clone()),
        DualGrid::Breakpoints => Grid::from_nodes(breakpoints(&[f])),
    }
}

fn auto_end(f: &SampledFunction) -> f64 {
    if f.is_bounded() {
        DEFAULT_R_MAX.max(f.right_slope())
    } else {
        f.right_slope().max(0.0)
    }
}

/// Sorted, de-duplicated chord slopes of all `fs`, starting at 0 and cut at
/// the smallest right slope among unbounded functions (their conjugates are
/// `+∞` beyond it). When every function has a bounded domain one extra node
/// past the last slope carries the final affine piece of the conjugate.
pub(crate) fn breakpoints(fs: &[&SampledFunction]) -> Vec<f64> {
    let cap = fs.iter().filter(|f| !f.is_bounded()).map(|f| f.right_slope()).fold(f64::INFINITY, f64::min);
    let mut slopes: Vec<f64> = fs.iter().flat_map(|f| f.slopes()).filter(|&k| k > 0.0 && k <= cap).collect();
    if cap.is_finite() && cap > 0.0 {
        slopes.push(cap);
    }
    slopes.sort_by(f64::total_cmp);
    let top = slopes.last().copied().unwrap_or(0.0);
    let merge = 1e-13 * top.max(f64::MIN_POSITIVE);
    let mut nodes = vec![0.0];
    for k in slopes {
        let last = *nodes.last().unwrap();
        if k - last > merge {
            nodes.push(k);
        } else if k == cap && last != cap {
            // keep the exact cap so the +∞ cut lands on a node
            *nodes.last_mut().unwrap() = k;
        }
    }
    if cap.is_infinite() {
        let last = *nodes.last().unwrap();
        nodes.push(if last > 0.0 { 2.0 * last } else { 1.0 });
    }
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(r: f64, n: usize) -> SampledFunction {
        SampledFunction::from_fn(Grid::uniform(r, n).unwrap(), |v| 0.5 * v * v).unwrap()
    }

    #[test]
    fn quadratic_is_self_conjugate() {
        let f = quad(4.0, 513);
        let fs = legendre_transform(&f, &DualGrid::Uniform { s_max: 4.0, points: 513 }).unwrap();
        assert!((fs.eval(1.0).unwrap() - 0.5).abs() < 1e-14);
        // 4 is past the last chord slope 4 - h/2
        assert_eq!(fs.eval(4.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn abs_conjugates_to_ball_indicator() {
        let f = SampledFunction::from_fn(Grid::uniform(5.0, 101).unwrap(), |v| v).unwrap();
        let fs = legendre_transform(&f, &DualGrid::Uniform { s_max: 2.0, points: 201 }).unwrap();
        for (&s, &v) in fs.grid().nodes().iter().zip(fs.values()) {
            if s <= 1.0 {
                assert!(v.abs() < 1e-14, "f*({s}) = {v}");
            } else {
                assert_eq!(v, f64::INFINITY);
            }
        }
    }

    #[test]
    fn sweep_matches_exhaustive() {
        let f = SampledFunction::from_fn(Grid::uniform(10.0, 2048).unwrap(), |v| 0.75 * v.powf(4.0 / 3.0)).unwrap();
        let a = legendre_transform(&f, &DualGrid::Auto).unwrap();
        let b = legendre_transform_exhaustive(&f, &DualGrid::Auto).unwrap();
        let scale = f.scale();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn breakpoint_grid_bounded_tail() {
        let f = SampledFunction::indicator_of_origin(Grid::uniform(1.0, 5).unwrap()).unwrap();
        let fs = legendre_transform(&f, &DualGrid::Breakpoints).unwrap();
        assert_eq!(fs.grid().nodes(), &[0.0, 1.0]);
        assert_eq!(fs.values(), &[0.0, 0.0]);
        assert_eq!(fs.tail(), Tail::Affine);
    }

    #[test]
    fn zero_function_conjugates_to_origin_indicator() {
        let f = SampledFunction::from_fn(Grid::uniform(1.0, 5).unwrap(), |_| 0.0).unwrap();
        let fs = legendre_transform(&f, &DualGrid::Breakpoints).unwrap();
        assert_eq!(fs.grid().nodes(), &[0.0]);
        assert!(fs.is_bounded());
    }

    #[test]
    fn rejects_bad_dual_grid() {
        let f = quad(1.0, 5);
        assert!(legendre_transform(&f, &DualGrid::Explicit(vec![])).is_err());
        assert!(legendre_transform(&f, &DualGrid::Explicit(vec![0.0, 0.5, 0.2])).is_err());
    }
}
