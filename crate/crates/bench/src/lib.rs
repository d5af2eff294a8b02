//! Shared fixtures for the benchmarks.

use rheokit_core::convex::{Grid, SampledFunction};
use rheokit_core::rheology::ThreeElementParams;
use rheokit_core::{Potential, RheoExpr};

/// Norton–Hoff profile `¾ v^{4/3}` on `[0, 10]`.
pub fn power_law_profile(points: usize) -> SampledFunction {
    let grid = Grid::uniform(10.0, points).expect("valid grid");
    Potential::power_law(1.0, 3.0).and_then(|p| p.sample(&grid)).expect("power law samples are convex")
}

/// `|v|` and `½v²` on a shared grid.
pub fn huber_pair(points: usize) -> (SampledFunction, SampledFunction) {
    let grid = Grid::uniform(4.0, points).expect("valid grid");
    let abs = SampledFunction::from_fn(grid.clone(), |v| v).expect("convex");
    let quad = SampledFunction::from_fn(grid, |v| 0.5 * v * v).expect("convex");
    (abs, quad)
}

/// Serial dashpot with a cubic Norton–Hoff element.
pub fn dif_dsl_expr() -> RheoExpr {
    RheoExpr::Serial(vec![
        RheoExpr::Leaf(Potential::Dashpot { viscosity: 1.0 }),
        RheoExpr::Leaf(Potential::PowerLaw { coeff: 1.0, exponent: 3.0 }),
    ])
}

/// The serial–parallel three-element body, the deepest nesting in common use.
pub fn serial_parallel_expr() -> RheoExpr {
    ThreeElementParams { sigma_a: 1.3, d2: 2.0, d3: 0.7 }.to_serial_parallel().expr()
}
