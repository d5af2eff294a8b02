//! Spatially homogeneous generalized Maxwell rheology.
//!
//! An elastic spring `φ(e) = ½E e²` in series with viscoplastic elements:
//! `ė_el = ε(t) − Σᵢ ζᵢ*'(σ)` with `σ = E e_el`.

use crate::convex::SubdiffInterval;
use crate::error::{invalid, Result, RheoError};
use crate::potentials::Potential;
use crate::rheology::RheoExpr;
use crate::solve::{invert_graph, Bisection};

#[derive(Debug, Clone, PartialEq)]
pub struct MaxwellModel {
    pub elastic_modulus: f64,
    pub elements: Vec<Potential>,
}

impl MaxwellModel {
    pub fn new(elastic_modulus: f64, elements: Vec<Potential>) -> Result<Self> {
        let m = MaxwellModel { elastic_modulus, elements };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.elastic_modulus > 0.0 && self.elastic_modulus.is_finite()) {
            return invalid(format!("elastic modulus must be positive, got {}", self.elastic_modulus));
        }
        if self.elements.is_empty() {
            return invalid("a Maxwell model needs at least one flow element");
        }
        self.elements.iter().try_for_each(Potential::validate)
    }

    /// Inelastic strain-rate magnitude at stress magnitude `sigma`.
    pub fn flow_rate(&self, sigma: f64) -> Result<SubdiffInterval> {
        self.elements.iter().try_fold(SubdiffInterval::point(0.0), |acc, p| Ok(acc + p.conjugate_dvalue(sigma)?))
    }

    /// Smallest stress bound imposed by plastically capped elements.
    pub fn stress_cap(&self) -> Option<f64> {
        self.elements.iter().filter_map(Potential::stress_cap).reduce(f64::min)
    }

    /// The flow elements alone, as a serial network.
    pub fn flow_expr(&self) -> Result<RheoExpr> {
        RheoExpr::serial(self.elements.iter().cloned().map(RheoExpr::Leaf).collect())
    }

    fn clamp(&self, e: f64) -> f64 {
        match self.stress_cap() {
            Some(cap) if (self.elastic_modulus * e).abs() > cap => (cap / self.elastic_modulus).copysign(e),
            _ => e,
        }
    }

    /// One backward-Euler step `e⁺ = e + dt (ε − Σ ζᵢ*'(E e⁺))`, followed by
    /// the return map onto `|E e⁺| ≤ σ_A`.
    pub fn step(&self, e_el: f64, eps: f64, dt: f64) -> Result<f64> {
        check_step(e_el, eps, dt)?;
        let trial = e_el + dt * eps;
        let e = self.elastic_modulus;
        // odd, strictly increasing in e⁺, so solve on magnitudes
        let graph = |m: f64| -> Result<SubdiffInterval> {
            let r = self.flow_rate(e * m)?;
            Ok(SubdiffInterval::new(m + dt * r.lo, m + dt * r.hi))
        };
        let m = invert_graph(graph, trial.abs(), &Bisection::default())
            .map_err(|err| RheoError::Integrator(err.to_string()))?;
        if !m.lo.is_finite() {
            return Err(RheoError::Integrator(format!("implicit step from e_el = {e_el} has no solution")));
        }
        Ok(self.clamp(m.lo.copysign(trial)))
    }

    /// Forward-Euler step with the same return map; for small `dt` only.
    pub fn step_explicit(&self, e_el: f64, eps: f64, dt: f64) -> Result<f64> {
        check_step(e_el, eps, dt)?;
        let sigma = self.elastic_modulus * e_el;
        let r = self.flow_rate(sigma.abs())?.lo;
        if !r.is_finite() {
            return Err(RheoError::Integrator(format!("stress {sigma} outside the admissible range")));
        }
        Ok(self.clamp(e_el + dt * (eps - r.copysign(sigma))))
    }
}

fn check_step(e_el: f64, eps: f64, dt: f64) -> Result<()> {
    if !(dt > 0.0 && dt.is_finite()) {
        return invalid(format!("time step must be positive, got {dt}"));
    }
    if !e_el.is_finite() || !eps.is_finite() {
        return invalid("state and strain rate must be finite");
    }
    Ok(())
}

/// Piecewise-constant strain-rate program: `(t_end, ε)` segments. The last
/// rate is held past the final segment.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveProgram {
    segments: Vec<(f64, f64)>,
}

impl DriveProgram {
    pub fn new(segments: Vec<(f64, f64)>) -> Result<Self> {
        if segments.is_empty() {
            return invalid("drive program without segments");
        }
        let mut prev = 0.0;
        for (i, &(t, eps)) in segments.iter().enumerate() {
            if !(t > prev) || !t.is_finite() {
                return invalid(format!("segment {i}: end times must be positive and strictly increasing"));
            }
            if !eps.is_finite() {
                return invalid(format!("segment {i}: strain rate must be finite"));
            }
            prev = t;
        }
        Ok(DriveProgram { segments })
    }

    pub fn constant(eps: f64) -> Result<Self> {
        DriveProgram::new(vec![(f64::MAX, eps)])
    }

    pub fn segments(&self) -> &[(f64, f64)] {
        &self.segments
    }

    /// Rate in force at time `t`.
    pub fn rate_at(&self, t: f64) -> f64 {
        self.segments.iter().find(|&&(end, _)| t < end).unwrap_or(self.segments.last().unwrap()).1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub t: f64,
    /// Rate applied over the step ending at `t`.
    pub eps: f64,
    pub e_el: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimeSeries {
    pub rows: Vec<Row>,
}

impl TimeSeries {
    pub fn last(&self) -> Option<&Row> {
        self.rows.last()
    }

    pub fn max_abs_stress(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.sigma.abs()))
    }
}

/// Integrates from `e_el0` at `t = 0` to `t_end` with backward Euler. The
/// last step is shortened to land on `t_end`.
pub fn simulate(model: &MaxwellModel, drive: &DriveProgram, dt: f64, t_end: f64, e_el0: f64) -> Result<TimeSeries> {
    model.validate()?;
    if !(dt > 0.0) || !(t_end >= dt) || !t_end.is_finite() {
        return invalid(format!("need 0 < dt <= t_end, got dt = {dt}, t_end = {t_end}"));
    }
    if !e_el0.is_finite() {
        return invalid("initial elastic strain must be finite");
    }
    let steps = (t_end / dt - 1e-9).ceil() as usize;
    let e = model.elastic_modulus;
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(Row { t: 0.0, eps: drive.rate_at(0.0), e_el: e_el0, sigma: e * e_el0 });
    let (mut t, mut state) = (0.0, e_el0);
    for k in 1..=steps {
        let t_next = if k == steps { t_end } else { k as f64 * dt };
        let eps = drive.rate_at(0.5 * (t + t_next));
        state = model.step(state, eps, t_next - t)?;
        t = t_next;
        rows.push(Row { t, eps, e_el: state, sigma: e * state });
    }
    Ok(TimeSeries { rows })
}

/// Runs a constant-rate drive until `|dσ/dt| < rate_tol` and returns the
/// stress reached.
pub fn steady_state(model: &MaxwellModel, eps: f64, dt: f64, rate_tol: f64, max_steps: usize) -> Result<f64> {
    let mut state = 0.0;
    for _ in 0..max_steps {
        let next = model.step(state, eps, dt)?;
        let rate = model.elastic_modulus * (next - state).abs() / dt;
        state = next;
        if rate < rate_tol {
            return Ok(model.elastic_modulus * state);
        }
    }
    Err(RheoError::Integrator(format!("no steady state within {max_steps} steps")))
}
