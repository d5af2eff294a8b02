//! Closed-form catalog of radial dissipation potentials.
//!
//! Every potential is stored by its radial profile on `r = |ε| ≥ 0` (or
//! `r = |σ|` for conjugate-side objects). Stress laws are reported as
//! magnitudes; the vector law `σ = μ_eff(|ε|) ε` is up to the caller.

use crate::convex::{legendre_transform, subdifferential, DualGrid, Grid, SampledFunction, SubdiffInterval};
use crate::error::{invalid, Result};
use crate::solve::{invert_graph, Bisection};

/// A radial convex dissipation potential.
#[derive(Debug, Clone, PartialEq)]
pub enum Potential {
    /// Linear viscosity `½ D r²`.
    Dashpot { viscosity: f64 },
    /// Perfect plasticity `σ_A r`.
    PerfectPlastic { yield_stress: f64 },
    /// Norton–Hoff power law `n/(n+1) D r^{1+1/n}`; stress `D r^{1/n}`.
    PowerLaw { coeff: f64, exponent: f64 },
    /// `σ_A|·| □ ½D|·|²`: quadratic up to `σ_A/D`, affine beyond.
    Huber { yield_stress: f64, viscosity: f64 },
    /// `½ D⁻¹ r²` on `[0, σ_A]`, `+∞` outside; the conjugate of `Huber`.
    QuadPlusBall { inv_viscosity: f64, yield_stress: f64 },
    /// Indicator of `[0, radius]`; the conjugate of `PerfectPlastic`.
    BallIndicator { radius: f64 },
    /// Numerically sampled profile, normalized to vanish at 0.
    Sampled(SampledFunction),
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        invalid(format!("{name} must be positive and finite, got {x}"))
    }
}

fn check_arg(r: f64) -> Result<()> {
    if r >= 0.0 {
        Ok(())
    } else {
        invalid(format!("radial argument must be non-negative, got {r}"))
    }
}

impl Potential {
    pub fn dashpot(viscosity: f64) -> Result<Self> {
        positive("viscosity", viscosity)?;
        Ok(Potential::Dashpot { viscosity })
    }

    pub fn perfect_plastic(yield_stress: f64) -> Result<Self> {
        positive("yield stress", yield_stress)?;
        Ok(Potential::PerfectPlastic { yield_stress })
    }

    /// Power law with `n = ∞` degenerates to perfect plasticity with `σ_A = D`.
    pub fn power_law(coeff: f64, exponent: f64) -> Result<Self> {
        positive("power-law coefficient", coeff)?;
        if exponent == f64::INFINITY {
            return Potential::perfect_plastic(coeff);
        }
        positive("power-law exponent", exponent)?;
        Ok(Potential::PowerLaw { coeff, exponent })
    }

    pub fn huber(yield_stress: f64, viscosity: f64) -> Result<Self> {
        positive("yield stress", yield_stress)?;
        positive("viscosity", viscosity)?;
        Ok(Potential::Huber { yield_stress, viscosity })
    }

    pub fn quad_plus_ball(inv_viscosity: f64, yield_stress: f64) -> Result<Self> {
        positive("inverse viscosity", inv_viscosity)?;
        positive("yield stress", yield_stress)?;
        Ok(Potential::QuadPlusBall { inv_viscosity, yield_stress })
    }

    pub fn ball_indicator(radius: f64) -> Result<Self> {
        positive("radius", radius)?;
        Ok(Potential::BallIndicator { radius })
    }

    pub fn sampled(f: SampledFunction) -> Self {
        Potential::Sampled(f.normalized())
    }

    /// Re-checks the modulus invariants (useful after building variants directly).
    pub fn validate(&self) -> Result<()> {
        match *self {
            Potential::Dashpot { viscosity } => positive("viscosity", viscosity),
            Potential::PerfectPlastic { yield_stress } => positive("yield stress", yield_stress),
            Potential::PowerLaw { coeff, exponent } => {
                positive("power-law coefficient", coeff)?;
                positive("power-law exponent", exponent)
            }
            Potential::Huber { yield_stress, viscosity } => {
                positive("yield stress", yield_stress)?;
                positive("viscosity", viscosity)
            }
            Potential::QuadPlusBall { inv_viscosity, yield_stress } => {
                positive("inverse viscosity", inv_viscosity)?;
                positive("yield stress", yield_stress)
            }
            Potential::BallIndicator { radius } => positive("radius", radius),
            Potential::Sampled(_) => Ok(()),
        }
    }

    /// Potential density at radius `r`; `+∞` past a bounded support.
    pub fn value(&self, r: f64) -> Result<f64> {
        check_arg(r)?;
        Ok(match *self {
            Potential::Dashpot { viscosity } => 0.5 * viscosity * r * r,
            Potential::PerfectPlastic { yield_stress } => yield_stress * r,
            Potential::PowerLaw { coeff, exponent } => {
                exponent / (exponent + 1.0) * coeff * r.powf(1.0 + 1.0 / exponent)
            }
            Potential::Huber { yield_stress, viscosity } => {
                if r <= yield_stress / viscosity {
                    0.5 * viscosity * r * r
                } else {
                    yield_stress * r - 0.5 * yield_stress * yield_stress / viscosity
                }
            }
            Potential::QuadPlusBall { inv_viscosity, yield_stress } => {
                if r <= yield_stress {
                    0.5 * inv_viscosity * r * r
                } else {
                    f64::INFINITY
                }
            }
            Potential::BallIndicator { radius } => {
                if r <= radius {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Potential::Sampled(ref f) => return f.eval(r),
        })
    }

    /// Radial (sub)derivative as a magnitude interval. At `r = 0` the
    /// symmetric set `[−a, a]` is reported as `[0, a]`; past a bounded
    /// support the result is the saturated marker `[+∞, +∞]`.
    pub fn dvalue(&self, r: f64) -> Result<SubdiffInterval> {
        check_arg(r)?;
        let p = SubdiffInterval::point;
        Ok(match *self {
            Potential::Dashpot { viscosity } => p(viscosity * r),
            Potential::PerfectPlastic { yield_stress } => {
                if r == 0.0 {
                    SubdiffInterval::new(0.0, yield_stress)
                } else {
                    p(yield_stress)
                }
            }
            Potential::PowerLaw { coeff, exponent } => p(coeff * r.powf(1.0 / exponent)),
            Potential::Huber { yield_stress, viscosity } => p((viscosity * r).min(yield_stress)),
            Potential::QuadPlusBall { inv_viscosity, yield_stress } => {
                boundary_cone(r, yield_stress, inv_viscosity * r.min(yield_stress))
            }
            Potential::BallIndicator { radius } => boundary_cone(r, radius, 0.0),
            Potential::Sampled(ref f) => {
                if r > f.grid().end() {
                    return Ok(if f.is_bounded() { SubdiffInterval::saturated() } else { p(f.right_slope()) });
                }
                if f.eval(r)?.is_infinite() {
                    return Ok(SubdiffInterval::saturated());
                }
                let d = subdifferential(f, r)?;
                SubdiffInterval::new(d.lo.max(0.0), d.hi)
            }
        })
    }

    /// The closed-form convex conjugate; sampled profiles fall back to a
    /// numerical Legendre transform on the default dual grid.
    pub fn conjugate(&self) -> Potential {
        match *self {
            Potential::Dashpot { viscosity } => Potential::Dashpot { viscosity: 1.0 / viscosity },
            Potential::PerfectPlastic { yield_stress } => Potential::BallIndicator { radius: yield_stress },
            // n/(n+1)·D·r^{1+1/n} ↦ r^{1+n} / ((1+n) Dⁿ), again a power law
            Potential::PowerLaw { coeff, exponent } => {
                Potential::PowerLaw { coeff: coeff.powf(-exponent), exponent: 1.0 / exponent }
            }
            Potential::Huber { yield_stress, viscosity } => {
                Potential::QuadPlusBall { inv_viscosity: 1.0 / viscosity, yield_stress }
            }
            Potential::QuadPlusBall { inv_viscosity, yield_stress } => {
                Potential::Huber { yield_stress, viscosity: 1.0 / inv_viscosity }
            }
            Potential::BallIndicator { radius } => Potential::PerfectPlastic { yield_stress: radius },
            Potential::Sampled(ref f) => Potential::Sampled(
                legendre_transform(f, &DualGrid::Auto)
                    .expect("default dual grid of a validated sampled function")
                    .normalized(),
            ),
        }
    }

    /// Conjugate derivative `ζ*'(σ)`: the strain rate (magnitude) carried
    /// by this element under stress `σ ≥ 0`.
    pub fn conjugate_dvalue(&self, sigma: f64) -> Result<SubdiffInterval> {
        check_arg(sigma)?;
        match *self {
            Potential::PowerLaw { coeff, exponent } => {
                Ok(SubdiffInterval::point(power_law_strain_rate(coeff, exponent, sigma)))
            }
            Potential::Sampled(_) => invert_graph(|r| self.dvalue(r), sigma, &Bisection::default()),
            _ => self.conjugate().dvalue(sigma),
        }
    }

    /// Stress bound above which the conjugate is `+∞` (plastic cap), if any.
    pub fn stress_cap(&self) -> Option<f64> {
        match *self {
            Potential::PerfectPlastic { yield_stress } | Potential::Huber { yield_stress, .. } => Some(yield_stress),
            Potential::Sampled(ref f) if !f.is_bounded() => Some(f.right_slope()),
            _ => None,
        }
    }

    /// Samples the profile on `grid`.
    pub fn sample(&self, grid: &Grid) -> Result<SampledFunction> {
        let values = grid.nodes().iter().map(|&r| self.value(r)).collect::<Result<Vec<_>>>()?;
        SampledFunction::new(grid.clone(), values, crate::convex::Tail::Affine)
    }

    /// Effective viscosity `stress/r` in the limit `r → 0⁺`: `+∞` for a
    /// yield offset or a sub-linear stress, `0` for a super-linear one.
    pub fn rest_viscosity(&self) -> f64 {
        match *self {
            Potential::Dashpot { viscosity } | Potential::Huber { viscosity, .. } => viscosity,
            Potential::PerfectPlastic { .. } => f64::INFINITY,
            Potential::PowerLaw { coeff, exponent } => {
                if exponent > 1.0 {
                    f64::INFINITY
                } else if exponent < 1.0 {
                    0.0
                } else {
                    coeff
                }
            }
            Potential::QuadPlusBall { inv_viscosity, .. } => inv_viscosity,
            Potential::BallIndicator { .. } => 0.0,
            Potential::Sampled(ref f) => {
                if f.len() < 2 || f.finite_sup() < 2 {
                    return 0.0;
                }
                let x1 = f.grid().nodes()[1];
                2.0 * (f.values()[1] - f.values()[0]) / (x1 * x1)
            }
        }
    }
}

fn boundary_cone(r: f64, bound: f64, inside: f64) -> SubdiffInterval {
    if r < bound {
        SubdiffInterval::point(inside)
    } else if r == bound {
        SubdiffInterval::new(inside, f64::INFINITY)
    } else {
        SubdiffInterval::saturated()
    }
}

/// Inverse Norton–Hoff law `ε = D⁻ⁿ σⁿ` for `σ = D ε^{1/n}`.
pub fn power_law_strain_rate(coeff: f64, exponent: f64, sigma: f64) -> f64 {
    (sigma / coeff).powf(exponent)
}

/// Overstress flow rule `ε = φ'(max(0, σ − σ_A))` with flow function
/// `φ(x) = D⁻¹ x^{1+n}/(1+n)`: zero below yield, `D⁻¹(σ − σ_A)ⁿ` above.
pub fn overstress_flow(viscosity: f64, exponent: f64, yield_stress: f64, sigma: f64) -> Result<f64> {
    positive("viscosity", viscosity)?;
    positive("flow exponent", exponent)?;
    if !(yield_stress >= 0.0) || !(sigma >= 0.0) {
        return invalid("yield stress and stress must be non-negative");
    }
    let over = (sigma - yield_stress).max(0.0);
    Ok(over.powf(exponent) / viscosity)
}

/// A regularized yield-stress law evaluated at strain-rate magnitude `ε`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedStress {
    pub stress: f64,
    /// Set when `ε = 0` and `stress` is the continuous limit `σ_A`.
    pub rest_limit: bool,
}

fn regularized(yield_stress: f64, eps: f64, law: impl Fn(f64) -> f64) -> Result<RegularizedStress> {
    positive("yield stress", yield_stress)?;
    if !(eps >= 0.0) {
        return invalid(format!("strain-rate magnitude must be non-negative, got {eps}"));
    }
    Ok(RegularizedStress { stress: if eps == 0.0 { yield_stress } else { law(eps) }, rest_limit: eps == 0.0 })
}

/// Papanastasiou fluid: `σ = σ_A (1 + c εⁿ)^{1/n}`.
pub fn papanastasiou_stress(yield_stress: f64, c: f64, exponent: f64, eps: f64) -> Result<RegularizedStress> {
    if !(c >= 0.0) {
        return invalid("regularization constant must be non-negative");
    }
    positive("exponent", exponent)?;
    regularized(yield_stress, eps, |e| yield_stress * (1.0 + c * e.powf(exponent)).powf(1.0 / exponent))
}

/// Casson fluid: `σ = σ_A (1 + c ε)^{1/2}`.
pub fn casson_stress(yield_stress: f64, c: f64, eps: f64) -> Result<RegularizedStress> {
    if !(c >= 0.0) {
        return invalid("regularization constant must be non-negative");
    }
    regularized(yield_stress, eps, |e| yield_stress * (1.0 + c * e).sqrt())
}
