use super::RheoExpr;
use crate::error::{invalid, Result};
use crate::potentials::Potential;

/// Parallel–serial three-element body: a plastic slider in series with a
/// dashpot `D₂`, both in parallel with a dashpot `D₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeElementParams {
    pub sigma_a: f64,
    pub d2: f64,
    pub d3: f64,
}

/// Serial–parallel three-element body: a plastic slider in parallel with a
/// dashpot `D̃₃`, both in series with a dashpot `D̃₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SerialParallelParams {
    pub sigma_a: f64,
    pub d2: f64,
    pub d3: f64,
}

fn check(sigma_a: f64, d2: f64, d3: f64) -> Result<()> {
    for (name, v) in [("yield stress", sigma_a), ("D2", d2), ("D3", d3)] {
        if !(v > 0.0 && v.is_finite()) {
            return invalid(format!("{name} must be positive and finite, got {v}"));
        }
    }
    Ok(())
}

impl ThreeElementParams {
    pub fn new(sigma_a: f64, d2: f64, d3: f64) -> Result<Self> {
        check(sigma_a, d2, d3)?;
        Ok(ThreeElementParams { sigma_a, d2, d3 })
    }

    /// The serial–parallel body with the same stress response.
    pub fn to_serial_parallel(&self) -> SerialParallelParams {
        let (sigma_a, d2, d3) = map_params(self.sigma_a, self.d2, self.d3);
        SerialParallelParams { sigma_a, d2, d3 }
    }

    /// Strain rate at which the slider starts to move.
    pub fn switch_rate(&self) -> f64 {
        self.sigma_a / self.d2
    }

    /// Closed-form stress: `(D₂+D₃)ε` before the switch, `σ_A + D₃ε` after.
    pub fn stress(&self, eps: f64) -> f64 {
        if eps <= self.switch_rate() {
            (self.d2 + self.d3) * eps
        } else {
            self.sigma_a + self.d3 * eps
        }
    }

    pub fn expr(&self) -> RheoExpr {
        RheoExpr::Parallel(vec![
            RheoExpr::Serial(vec![
                RheoExpr::Leaf(Potential::PerfectPlastic { yield_stress: self.sigma_a }),
                RheoExpr::Leaf(Potential::Dashpot { viscosity: self.d2 }),
            ]),
            RheoExpr::Leaf(Potential::Dashpot { viscosity: self.d3 }),
        ])
    }
}

impl SerialParallelParams {
    pub fn new(sigma_a: f64, d2: f64, d3: f64) -> Result<Self> {
        check(sigma_a, d2, d3)?;
        Ok(SerialParallelParams { sigma_a, d2, d3 })
    }

    pub fn expr(&self) -> RheoExpr {
        RheoExpr::Serial(vec![
            RheoExpr::Parallel(vec![
                RheoExpr::Leaf(Potential::PerfectPlastic { yield_stress: self.sigma_a }),
                RheoExpr::Leaf(Potential::Dashpot { viscosity: self.d3 }),
            ]),
            RheoExpr::Leaf(Potential::Dashpot { viscosity: self.d2 }),
        ])
    }
}

/// Closed-form stress of the parallel–serial body.
pub fn three_element_stress(p: &ThreeElementParams, eps: f64) -> Result<f64> {
    if !(eps >= 0.0) {
        return invalid(format!("strain-rate magnitude must be non-negative, got {eps}"));
    }
    Ok(p.stress(eps))
}

fn map_params(sigma_a: f64, d2: f64, d3: f64) -> (f64, f64, f64) {
    let k = 1.0 + d3 / d2;
    (sigma_a * k, d2 + d3, d3 * k)
}

/// Parameters `(σ̃_A, D̃₂, D̃₃)` of the serial–parallel body equivalent to
/// the parallel–serial one with `(σ_A, D₂, D₃)`. `D₃ = 0` is accepted as the
/// degenerate two-element limit.
pub fn map_serial_parallel_params(sigma_a: f64, d2: f64, d3: f64) -> Result<(f64, f64, f64)> {
    if !(sigma_a > 0.0 && d2 > 0.0 && d3 >= 0.0) || !(sigma_a + d2 + d3).is_finite() {
        return invalid("need sigma_a > 0, D2 > 0, D3 >= 0, all finite");
    }
    Ok(map_params(sigma_a, d2, d3))
}
