use super::conjugate::{breakpoints, legendre_transform};
use super::grid::{DualGrid, Grid};
use super::sampled::{SampledFunction, Tail};
use crate::error::{invalid, Result};

/// Brings `g` onto `f`'s grid unless both already share it.
fn on_common_grid(f: &SampledFunction, g: &SampledFunction) -> Result<SampledFunction> {
    if f.grid() == g.grid() || f.grid().same_uniform(g.grid()) {
        Ok(g.clone())
    } else {
        g.resample(f.grid())
    }
}

fn result_tail(f: &SampledFunction, g: &SampledFunction) -> Tail {
    if f.is_bounded() && g.is_bounded() {
        Tail::Infinite
    } else {
        Tail::Affine
    }
}

/// `[f □ g](v) = min_{0 ≤ ṽ ≤ v} f(ṽ) + g(v − ṽ)` over grid splits.
///
/// On a shared uniform grid this is the exact infimal convolution of the
/// piecewise-linear interpolants at every node. `g` is resampled onto
/// `f`'s grid first when the grids differ.
pub fn inf_convolve_direct(f: &SampledFunction, g: &SampledFunction) -> Result<SampledFunction> {
    if !f.grid().is_uniform() {
        return invalid("direct infimal convolution needs a uniform grid");
    }
    let g = on_common_grid(f, g)?;
    let (fv, gv) = (f.values(), g.values());
    let (nf, ng) = (f.finite_sup(), g.finite_sup());
    let values: Vec<f64> = (0..fv.len())
        .map(|i| {
            // splits with both parts inside the finite domains
            let lo = i.saturating_sub(ng - 1);
            let hi = i.min(nf - 1);
            (lo..=hi).map(|j| fv[j] + gv[i - j]).fold(f64::INFINITY, f64::min)
        })
        .collect();
    SampledFunction::new(f.grid().clone(), values, result_tail(f, &g))
}

/// `(f* + g*)*`, computed on the union of both functions' slope breakpoints
/// so that each transform is exact; agrees with [`inf_convolve_direct`] to
/// roundoff on a shared uniform grid.
pub fn inf_convolve_via_conjugate(f: &SampledFunction, g: &SampledFunction) -> Result<SampledFunction> {
    let g = on_common_grid(f, g)?;
    let dual = DualGrid::Explicit(breakpoints(&[f, &g]));
    let fs = legendre_transform(f, &dual)?;
    let gs = legendre_transform(&g, &dual)?;
    let sum: Vec<f64> = fs.values().iter().zip(gs.values()).map(|(a, b)| a + b).collect();
    let tail = if f.is_bounded() && g.is_bounded() { Tail::Affine } else { Tail::Infinite };
    let sum = SampledFunction::new(fs.grid().clone(), sum, tail)?;
    let mut out = legendre_transform(&sum, &DualGrid::Explicit(f.grid().nodes().to_vec()))?;
    if out.tail() != result_tail(f, &g) {
        out = SampledFunction::from_parts_unchecked(out.grid().clone(), out.values().to_vec(), result_tail(f, &g));
    }
    Ok(out)
}

/// Moreau–Yosida envelope `inf_ṽ f(ṽ) + |ṽ − v|² / (2ε)`, i.e. the infimal
/// convolution with a quadratic of modulus `1/ε`.
pub fn yosida(f: &SampledFunction, eps: f64) -> Result<SampledFunction> {
    if !(eps > 0.0) || !eps.is_finite() {
        return invalid(format!("Yosida parameter must be positive, got {eps}"));
    }
    let q = quadratic(f.grid(), 1.0 / eps)?;
    inf_convolve_direct(f, &q)
}

fn quadratic(grid: &Grid, modulus: f64) -> Result<SampledFunction> {
    SampledFunction::from_fn(grid.clone(), |v| 0.5 * modulus * v * v)
}
