//! Command bodies, independent of argument parsing.

use rayon::prelude::*;
use serde::Serialize;

use crate::document::SimulationDocument;
use crate::CliError;
use rheokit_core::maxwell;
use rheokit_core::rheology::{
    map_serial_parallel_params, serial_dif_dsl_stress, FormulaId, SolveMode, ThreeElementParams, ViscosityFormula,
};
use rheokit_core::{Grid, Potential, RheoExpr};

/// `samples` uniformly spaced points on `[lo, hi]`, both ends included.
pub fn linspace(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let last = (samples - 1) as f64;
    (0..samples).map(|i| if i + 1 == samples { hi } else { lo + (hi - lo) * (i as f64 / last) }).collect()
}

fn check_range(lo: f64, hi: f64, samples: usize) -> Result<(), CliError> {
    if !(lo >= 0.0) || !(hi > lo) || !hi.is_finite() {
        return Err(CliError::Input(format!("need 0 <= eps-min < eps-max, got [{lo}, {hi}]")));
    }
    if samples < 2 {
        return Err(CliError::Input(format!("need at least 2 samples, got {samples}")));
    }
    Ok(())
}

// ---------------------------------------------------------------- curve

pub const CURVE_HEADER: [&str; 3] = ["eps", "mu_eff", "sigma"];

/// `(ε, μ_eff, σ)` rows of a model, sampled in parallel.
pub fn curve(model: &RheoExpr, eps_min: f64, eps_max: f64, samples: usize) -> Result<Vec<Vec<f64>>, CliError> {
    check_range(eps_min, eps_max, samples)?;
    linspace(eps_min, eps_max, samples)
        .into_par_iter()
        .map(|eps| {
            let s = model.stress_of_strain_rate(eps)?;
            let sigma = if eps == 0.0 { s.lo } else { s.midpoint() };
            let mu = if eps == 0.0 { model.rest_viscosity() } else { sigma / eps };
            Ok(vec![eps, mu, sigma])
        })
        .collect()
}

// -------------------------------------------------------------- compare

/// Parameters of the diffusion/dislocation comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareParams {
    pub d_dif: f64,
    pub d_dsl: f64,
    pub exponents: Vec<f64>,
    pub eps: Vec<f64>,
}

impl CompareParams {
    /// `D_dif = D_dsl = 1`, `n ∈ {2, 3, ∞}`, `ε = 3.4k/200` for `k = 1..=200`.
    pub fn fig6() -> Self {
        CompareParams {
            d_dif: 1.0,
            d_dsl: 1.0,
            exponents: vec![2.0, 3.0, f64::INFINITY],
            eps: (1..=200).map(|k| 3.4 * k as f64 / 200.0).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.d_dif > 0.0 && self.d_dsl > 0.0 && (self.d_dif + self.d_dsl).is_finite()) {
            return Err(CliError::Input("D_dif and D_dsl must be positive".into()));
        }
        if self.exponents.is_empty() || self.exponents.iter().any(|&n| !(n > 0.0)) {
            return Err(CliError::Input("exponents must be a non-empty list of positive numbers".into()));
        }
        if self.eps.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
            return Err(CliError::Input("comparison strain rates must be positive".into()));
        }
        Ok(())
    }
}

/// Column suffix for an exponent: `n2`, `n3`, `inf`, `n2.5`.
pub fn exponent_label(n: f64) -> String {
    if n.is_infinite() {
        "inf".to_owned()
    } else {
        format!("n{n}")
    }
}

pub fn compare_header(exponents: &[f64]) -> Vec<String> {
    let mut h = vec!["eps".to_owned()];
    for prefix in ["mu_rig", "mu_emp", "sig_rig", "sig_emp"] {
        h.extend(exponents.iter().map(|&n| format!("{prefix}_{}", exponent_label(n))));
    }
    h
}

/// Rigorous serial stress: closed forms where available, numeric otherwise;
/// `n = ∞` is the visco-perfectly-plastic min formula.
pub fn rigorous_stress(d_dif: f64, d_dsl: f64, n: f64, eps: f64) -> Result<f64, CliError> {
    if n.is_infinite() {
        let mu = ViscosityFormula::VpMin { sigma_a: d_dsl, d: d_dif }.eval(eps)?;
        return Ok(mu * eps);
    }
    match serial_dif_dsl_stress(d_dif, d_dsl, n, eps, SolveMode::Closed) {
        Err(rheokit_core::RheoError::Unsupported(_)) => {
            Ok(serial_dif_dsl_stress(d_dif, d_dsl, n, eps, SolveMode::Numeric)?)
        }
        r => Ok(r?),
    }
}

/// One comparison row at strain rate `eps`, in [`compare_header`] order.
pub fn compare_row(p: &CompareParams, eps: f64) -> Result<Vec<f64>, CliError> {
    let k = p.exponents.len();
    let mut row = vec![0.0; 1 + 4 * k];
    row[0] = eps;
    for (i, &n) in p.exponents.iter().enumerate() {
        let sig_rig = rigorous_stress(p.d_dif, p.d_dsl, n, eps)?;
        let mu_emp = ViscosityFormula::EmpDifDsl { d_dif: p.d_dif, d_dsl: p.d_dsl, n }.eval(eps)?;
        row[1 + i] = sig_rig / eps;
        row[1 + k + i] = mu_emp;
        row[1 + 2 * k + i] = sig_rig;
        row[1 + 3 * k + i] = mu_emp * eps;
    }
    Ok(row)
}

pub fn compare(p: &CompareParams) -> Result<Vec<Vec<f64>>, CliError> {
    p.validate()?;
    p.eps.par_iter().map(|&eps| compare_row(p, eps)).collect()
}

// ---------------------------------------------------------- equivalence

pub const EQUIVALENCE_POINTS: usize = 1000;
pub const EQUIVALENCE_RTOL: f64 = 1e-10;
pub const EMPIRICAL_PROBES: [f64; 3] = [0.5, 1.0, 2.0];

#[derive(Debug, Clone, Serialize)]
pub struct ThreeParams {
    pub sigma_a: f64,
    #[serde(rename = "D2")]
    pub d2: f64,
    #[serde(rename = "D3")]
    pub d3: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalProbe {
    pub eps: f64,
    pub emp_var1: f64,
    pub emp_var2: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub params: ThreeParams,
    pub mapped: ThreeParams,
    pub grid_points: usize,
    pub eps_max: f64,
    pub rigorous_max_deviation: f64,
    pub tolerance: f64,
    pub rigorous_equivalent: bool,
    pub empirical: Vec<EmpiricalProbe>,
    pub empirical_differs: bool,
}

/// Compares the parallel–serial and serial–parallel three-element bodies
/// under the parameter map, rigorously on a 1000-point grid over
/// `[0, 4σ_A/D₂]` and empirically at a few probe rates.
pub fn equivalence(sigma_a: f64, d2: f64, d3: f64) -> Result<EquivalenceReport, CliError> {
    let p = ThreeElementParams::new(sigma_a, d2, d3)?;
    let (ts, t2, t3) = map_serial_parallel_params(sigma_a, d2, d3)?;
    let a = p.expr();
    let b = p.to_serial_parallel().expr();
    let eps_max = 4.0 * p.switch_rate();
    let deviation = linspace(0.0, eps_max, EQUIVALENCE_POINTS)
        .into_par_iter()
        .map(|eps| {
            let x = a.stress_of_strain_rate(eps)?.midpoint();
            let y = b.stress_of_strain_rate(eps)?.midpoint();
            Ok((x - y).abs())
        })
        .collect::<Result<Vec<f64>, CliError>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let tolerance = EQUIVALENCE_RTOL * (sigma_a + d2 + d3);

    let v1 = ViscosityFormula::from_id(FormulaId::EmpVar1, &[sigma_a, d2, d3])?;
    let v2 = ViscosityFormula::from_id(FormulaId::EmpVar2, &[ts, t2, t3])?;
    let empirical = EMPIRICAL_PROBES
        .iter()
        .map(|&eps| {
            let (x, y) = (v1.eval(eps)?, v2.eval(eps)?);
            Ok(EmpiricalProbe { eps, emp_var1: x, emp_var2: y, deviation: (x - y).abs() })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let empirical_differs = empirical.iter().any(|e| e.deviation > 0.0);

    Ok(EquivalenceReport {
        params: ThreeParams { sigma_a, d2, d3 },
        mapped: ThreeParams { sigma_a: ts, d2: t2, d3: t3 },
        grid_points: EQUIVALENCE_POINTS,
        eps_max,
        rigorous_max_deviation: deviation,
        tolerance,
        rigorous_equivalent: deviation < tolerance,
        empirical,
        empirical_differs,
    })
}

// ------------------------------------------------------------- conjugate

pub const CONJUGATE_HEADER: [&str; 2] = ["sigma", "zeta_star"];

/// `(σ, ζ*(σ))` rows of a leaf model's conjugate on `[0, sigma_max]`.
pub fn conjugate(model: &RheoExpr, sigma_max: f64, samples: usize) -> Result<Vec<Vec<f64>>, CliError> {
    let RheoExpr::Leaf(p) = model else {
        return Err(CliError::Input("conjugate needs a leaf model; composites are available through `curve`".into()));
    };
    if !(sigma_max > 0.0 && sigma_max.is_finite()) || samples < 2 {
        return Err(CliError::Input("need sigma-max > 0 and at least 2 samples".into()));
    }
    let c: Potential = p.conjugate();
    let grid = Grid::uniform(sigma_max, samples)?;
    grid.nodes().iter().map(|&s| Ok(vec![s, c.value(s)?])).collect()
}

// -------------------------------------------------------------- simulate

pub const SIMULATE_HEADER: [&str; 4] = ["t", "eps", "e_el", "sigma"];

pub fn simulate(doc: &SimulationDocument, dt: f64, t_end: f64) -> Result<Vec<Vec<f64>>, CliError> {
    let ts = maxwell::simulate(&doc.model, &doc.drive, dt, t_end, doc.e_el0)?;
    Ok(ts.rows.iter().map(|r| vec![r.t, r.eps, r.e_el, r.sigma]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_model;

    #[test]
    fn linspace_hits_both_ends() {
        let v = linspace(0.01, 3.4, 100);
        assert_eq!(v.len(), 100);
        assert_eq!(v[0], 0.01);
        assert_eq!(v[99], 3.4);
    }

    #[test]
    fn curve_of_serial_dashpot_plastic() {
        let m = parse_model(
            r#"{"node":"serial","children":[
                {"node":"leaf","potential":{"kind":"dashpot","D":1}},
                {"node":"leaf","potential":{"kind":"plastic","sigma_a":1}}]}"#,
        )
        .unwrap();
        let rows = curve(&m, 0.0, 4.0, 9).unwrap();
        let at2 = &rows[4];
        assert_eq!(at2[0], 2.0);
        assert!((at2[1] - 0.5).abs() < 1e-12 && (at2[2] - 1.0).abs() < 1e-12);
        assert_eq!(rows[0][1], 1.0);
        assert!(curve(&m, 1.0, 1.0, 9).is_err());
        assert!(curve(&m, 0.0, 1.0, 1).is_err());
    }

    #[test]
    fn compare_layout_and_values() {
        let p = CompareParams::fig6();
        let h = compare_header(&p.exponents);
        assert_eq!(&h[..4], &["eps", "mu_rig_n2", "mu_rig_n3", "mu_rig_inf"]);
        assert_eq!(h.len(), 13);
        let row = compare_row(&p, 2.0).unwrap();
        assert!((row[2] - 0.5).abs() < 1e-14);
        assert!((row[3] - 0.5).abs() < 1e-14);
        assert!((row[7] - 1.0).abs() < 1e-14);
        let row = compare_row(&p, 1.0).unwrap();
        assert!((row[6] - 0.5).abs() < 1e-15);
        let p = CompareParams { exponents: vec![2.5], ..CompareParams::fig6() };
        assert_eq!(compare(&p).unwrap().len(), 200);
    }

    #[test]
    fn equivalence_report() {
        let r = equivalence(1.0, 1.0, 1.0).unwrap();
        assert_eq!((r.mapped.sigma_a, r.mapped.d2, r.mapped.d3), (2.0, 2.0, 2.0));
        assert!(r.rigorous_equivalent);
        assert!((r.empirical[1].deviation - 1.0 / 6.0).abs() < 1e-12);
        let r = equivalence(1.0, 1.0, 1e-12).unwrap();
        assert!(r.empirical.iter().all(|e| e.deviation < 1e-9));
    }

    #[test]
    fn conjugates_of_leaves() {
        let huber = parse_model(r#"{"node":"leaf","potential":{"kind":"huber","sigma_a":1,"D":1}}"#).unwrap();
        let rows = conjugate(&huber, 2.0, 5).unwrap();
        assert_eq!(rows[2], vec![1.0, 0.5]);
        assert_eq!(rows[3][1], f64::INFINITY);
        let dash = parse_model(r#"{"node":"leaf","potential":{"kind":"dashpot","D":2}}"#).unwrap();
        assert_eq!(conjugate(&dash, 2.0, 3).unwrap()[2], vec![2.0, 1.0]);
        let serial =
            parse_model(r#"{"node":"serial","children":[{"node":"leaf","potential":{"kind":"dashpot","D":1}}]}"#)
                .unwrap();
        assert!(matches!(conjugate(&serial, 1.0, 3), Err(CliError::Input(_))));
    }
}
