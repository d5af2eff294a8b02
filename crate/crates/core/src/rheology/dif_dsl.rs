use crate::convex::SubdiffInterval;
use crate::error::{invalid, Result, RheoError};
use crate::solve::{invert_graph, Bisection};

/// Closed-form evaluation (n ∈ {1, 2, 3, ∞}) or numerical root finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    Closed,
    Numeric,
}

/// Stress of a linear dashpot `D_dif` in series with a Norton–Hoff element
/// `(D_dsl, n)`, i.e. the root `σ ≥ 0` of `D_dsl⁻ⁿσⁿ + σ/D_dif = ε`.
/// `n = ∞` is the perfectly plastic limit `min(D_dif ε, D_dsl)`.
pub fn serial_dif_dsl_stress(d_dif: f64, d_dsl: f64, n: f64, eps: f64, mode: SolveMode) -> Result<f64> {
    for (name, v) in [("D_dif", d_dif), ("D_dsl", d_dsl)] {
        if !(v > 0.0 && v.is_finite()) {
            return invalid(format!("{name} must be positive and finite, got {v}"));
        }
    }
    if !(n > 0.0) {
        return invalid(format!("exponent must be positive, got {n}"));
    }
    if !(eps >= 0.0 && eps.is_finite()) {
        return invalid(format!("strain-rate magnitude must be non-negative, got {eps}"));
    }
    if eps == 0.0 {
        return Ok(0.0);
    }
    if n == f64::INFINITY {
        return Ok((d_dif * eps).min(d_dsl));
    }
    match mode {
        SolveMode::Closed if n == 1.0 => Ok(d_dif * d_dsl / (d_dif + d_dsl) * eps),
        SolveMode::Closed if n == 2.0 => Ok(quadratic_root(d_dif, d_dsl, eps)),
        SolveMode::Closed if n == 3.0 => Ok(cardano_root(d_dif, d_dsl, eps)),
        SolveMode::Closed => Err(RheoError::Unsupported(format!("no closed form for n = {n}; use the numeric mode"))),
        SolveMode::Numeric => {
            let rate = |s: f64| Ok(SubdiffInterval::point((s / d_dsl).powf(n) + s / d_dif));
            let s = invert_graph(rate, eps, &Bisection::plain())?;
            Ok(s.midpoint())
        }
    }
}

/// `S(ε) = √(D⁴/(4D_dif²) + εD²) − D²/(2D_dif)`, evaluated as
/// `εD² / (√(…) + D²/(2D_dif))` to avoid cancellation at small `ε`.
fn quadratic_root(d_dif: f64, d_dsl: f64, eps: f64) -> f64 {
    let d2 = d_dsl * d_dsl;
    let half = d2 / (2.0 * d_dif);
    eps * d2 / ((half * half + eps * d2).sqrt() + half)
}

/// Real root of `x³ + px = q` with `p = D³/D_dif`, `q = εD³` by Cardano's
/// formula `x = ∛u₁ + ∛u₂`, `u₁,₂ = q/2 ± √(q²/4 + p³/27)`.
///
/// `u₂` is taken from `u₁u₂ = −p³/27` and the sum of cube roots as
/// `q / (c₁² − c₁c₂ + c₂²)`, which is the same number without the
/// cancellation between `c₁` and `c₂ < 0`.
fn cardano_root(d_dif: f64, d_dsl: f64, eps: f64) -> f64 {
    let d3 = d_dsl * d_dsl * d_dsl;
    let p = d3 / d_dif;
    let q = eps * d3;
    let p3 = p / 3.0;
    let u1 = 0.5 * q + (0.25 * q * q + p3 * p3 * p3).sqrt();
    let u2 = -(p3 * p3 * p3) / u1;
    let (c1, c2) = (u1.cbrt(), u2.cbrt());
    q / (c1 * c1 - c1 * c2 + c2 * c2)
}

/// Cardano's formula exactly as written, signed real cube roots included.
pub fn cardano_verbatim(d_dif: f64, d_dsl: f64, eps: f64) -> f64 {
    let d3 = d_dsl * d_dsl * d_dsl;
    let root = (eps * eps / 4.0 * d3 * d3 + d3 * d3 * d3 / (27.0 * d_dif.powi(3))).sqrt();
    (eps / 2.0 * d3 + root).cbrt() + (eps / 2.0 * d3 - root).cbrt()
}
