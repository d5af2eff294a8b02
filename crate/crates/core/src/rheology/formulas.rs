use crate::error::{invalid, Result};

/// Identifiers of the closed-form effective-viscosity family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    VpMin,
    BinghamSum,
    ThreeElement,
    MultiElement,
    EmpVar1,
    EmpVar2,
    HbMin,
    EmpDifDsl,
    EmpHarmonicGeneral,
}

impl FormulaId {
    pub const ALL: [FormulaId; 9] = [
        FormulaId::VpMin,
        FormulaId::BinghamSum,
        FormulaId::ThreeElement,
        FormulaId::MultiElement,
        FormulaId::EmpVar1,
        FormulaId::EmpVar2,
        FormulaId::HbMin,
        FormulaId::EmpDifDsl,
        FormulaId::EmpHarmonicGeneral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::VpMin => "VP_MIN",
            FormulaId::BinghamSum => "BINGHAM_SUM",
            FormulaId::ThreeElement => "THREE_ELEMENT",
            FormulaId::MultiElement => "MULTI_ELEMENT",
            FormulaId::EmpVar1 => "EMP_VAR1",
            FormulaId::EmpVar2 => "EMP_VAR2",
            FormulaId::HbMin => "HB_MIN",
            FormulaId::EmpDifDsl => "EMP_DIF_DSL",
            FormulaId::EmpHarmonicGeneral => "EMP_HARMONIC_GENERAL",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        FormulaId::ALL.into_iter().find(|id| id.name().eq_ignore_ascii_case(name))
    }
}

/// A closed-form effective viscosity `μ(ε)`, `ε = |ε| > 0`.
///
/// Exponents `n` may be `f64::INFINITY`, the perfectly plastic limit.
#[derive(Debug, Clone, PartialEq)]
pub enum ViscosityFormula {
    /// `min(D, σ_A/ε)`
    VpMin { sigma_a: f64, d: f64 },
    /// `D + σ_A/ε`
    BinghamSum { sigma_a: f64, d: f64 },
    /// `min(σ_A/ε, D₂) + D₃`
    ThreeElement { sigma_a: f64, d2: f64, d3: f64 },
    /// `Σᵢ min(σ_A,ᵢ/ε, D₂,ᵢ) + D₃`
    MultiElement { sigma_a: Vec<f64>, d2: Vec<f64>, d3: f64 },
    /// `(ε/σ_A + 1/D₂)⁻¹ + D₃`
    EmpVar1 { sigma_a: f64, d2: f64, d3: f64 },
    /// `(1/(σ̃_A/ε + D̃₃) + 1/D̃₂)⁻¹`
    EmpVar2 { sigma_a: f64, d2: f64, d3: f64 },
    /// `min(σ_A/ε, D/ε^{1−1/n})`
    HbMin { sigma_a: f64, d: f64, n: f64 },
    /// `1/(1/D_dif + ε^{1−1/n}/D_dsl)`
    EmpDifDsl { d_dif: f64, d_dsl: f64, n: f64 },
    /// `(Σᵢ μᵢ(ε)⁻¹)⁻¹`
    EmpHarmonicGeneral(Vec<ViscosityFormula>),
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        invalid(format!("{name} must be positive and finite, got {v}"))
    }
}

fn non_negative(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        invalid(format!("{name} must be non-negative and finite, got {v}"))
    }
}

fn exponent(v: f64) -> Result<()> {
    if v > 0.0 {
        Ok(())
    } else {
        invalid(format!("exponent must be positive (or inf), got {v}"))
    }
}

/// `ε^{1−1/n}`, read as `ε` for `n = ∞`.
fn thinning(eps: f64, n: f64) -> f64 {
    eps.powf(1.0 - 1.0 / n)
}

impl ViscosityFormula {
    /// Builds a formula from a flat parameter list.
    ///
    /// `MULTI_ELEMENT` expects `σ_A,1, D₂,1, …, σ_A,m, D₂,m, D₃`. The general
    /// harmonic combination has no flat form; build it from its parts.
    pub fn from_id(id: FormulaId, params: &[f64]) -> Result<Self> {
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                invalid(format!("{} takes {k} parameters, got {}", id.name(), params.len()))
            }
        };
        let f = match id {
            FormulaId::VpMin | FormulaId::BinghamSum => {
                arity(2)?;
                let (sigma_a, d) = (params[0], params[1]);
                if id == FormulaId::VpMin {
                    ViscosityFormula::VpMin { sigma_a, d }
                } else {
                    ViscosityFormula::BinghamSum { sigma_a, d }
                }
            }
            FormulaId::ThreeElement | FormulaId::EmpVar1 | FormulaId::EmpVar2 => {
                arity(3)?;
                let (sigma_a, d2, d3) = (params[0], params[1], params[2]);
                match id {
                    FormulaId::ThreeElement => ViscosityFormula::ThreeElement { sigma_a, d2, d3 },
                    FormulaId::EmpVar1 => ViscosityFormula::EmpVar1 { sigma_a, d2, d3 },
                    _ => ViscosityFormula::EmpVar2 { sigma_a, d2, d3 },
                }
            }
            FormulaId::MultiElement => {
                if params.len() < 3 || params.len() % 2 == 0 {
                    return invalid(format!("MULTI_ELEMENT takes 2m + 1 parameters (m >= 1), got {}", params.len()));
                }
                let (pairs, d3) = params.split_at(params.len() - 1);
                ViscosityFormula::MultiElement {
                    sigma_a: pairs.iter().step_by(2).copied().collect(),
                    d2: pairs.iter().skip(1).step_by(2).copied().collect(),
                    d3: d3[0],
                }
            }
            FormulaId::HbMin => {
                arity(3)?;
                ViscosityFormula::HbMin { sigma_a: params[0], d: params[1], n: params[2] }
            }
            FormulaId::EmpDifDsl => {
                arity(3)?;
                ViscosityFormula::EmpDifDsl { d_dif: params[0], d_dsl: params[1], n: params[2] }
            }
            FormulaId::EmpHarmonicGeneral => {
                return invalid("EMP_HARMONIC_GENERAL is built from a list of formulas, not numbers")
            }
        };
        f.validate()?;
        Ok(f)
    }

    pub fn id(&self) -> FormulaId {
        match self {
            ViscosityFormula::VpMin { .. } => FormulaId::VpMin,
            ViscosityFormula::BinghamSum { .. } => FormulaId::BinghamSum,
            ViscosityFormula::ThreeElement { .. } => FormulaId::ThreeElement,
            ViscosityFormula::MultiElement { .. } => FormulaId::MultiElement,
            ViscosityFormula::EmpVar1 { .. } => FormulaId::EmpVar1,
            ViscosityFormula::EmpVar2 { .. } => FormulaId::EmpVar2,
            ViscosityFormula::HbMin { .. } => FormulaId::HbMin,
            ViscosityFormula::EmpDifDsl { .. } => FormulaId::EmpDifDsl,
            ViscosityFormula::EmpHarmonicGeneral(_) => FormulaId::EmpHarmonicGeneral,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ViscosityFormula::VpMin { sigma_a, d } | ViscosityFormula::BinghamSum { sigma_a, d } => {
                positive("yield stress", *sigma_a)?;
                positive("viscosity", *d)
            }
            ViscosityFormula::ThreeElement { sigma_a, d2, d3 }
            | ViscosityFormula::EmpVar1 { sigma_a, d2, d3 }
            | ViscosityFormula::EmpVar2 { sigma_a, d2, d3 } => {
                positive("yield stress", *sigma_a)?;
                positive("D2", *d2)?;
                non_negative("D3", *d3)
            }
            ViscosityFormula::MultiElement { sigma_a, d2, d3 } => {
                if sigma_a.is_empty() || sigma_a.len() != d2.len() {
                    return invalid("MULTI_ELEMENT needs equally many yield stresses and viscosities");
                }
                sigma_a.iter().try_for_each(|&s| positive("yield stress", s))?;
                d2.iter().try_for_each(|&d| positive("D2", d))?;
                non_negative("D3", *d3)
            }
            ViscosityFormula::HbMin { sigma_a, d, n } => {
                positive("yield stress", *sigma_a)?;
                positive("power-law coefficient", *d)?;
                exponent(*n)
            }
            ViscosityFormula::EmpDifDsl { d_dif, d_dsl, n } => {
                positive("D_dif", *d_dif)?;
                positive("D_dsl", *d_dsl)?;
                exponent(*n)
            }
            ViscosityFormula::EmpHarmonicGeneral(parts) => {
                if parts.is_empty() {
                    return invalid("harmonic combination of no viscosities");
                }
                parts.iter().try_for_each(ViscosityFormula::validate)
            }
        }
    }

    /// `μ(ε)` for `ε > 0`.
    pub fn eval(&self, eps: f64) -> Result<f64> {
        if !(eps > 0.0) || !eps.is_finite() {
            return invalid(format!("strain-rate magnitude must be positive, got {eps}"));
        }
        Ok(match self {
            ViscosityFormula::VpMin { sigma_a, d } => d.min(sigma_a / eps),
            ViscosityFormula::BinghamSum { sigma_a, d } => d + sigma_a / eps,
            ViscosityFormula::ThreeElement { sigma_a, d2, d3 } => (sigma_a / eps).min(*d2) + d3,
            ViscosityFormula::MultiElement { sigma_a, d2, d3 } => {
                sigma_a.iter().zip(d2).map(|(s, d)| (s / eps).min(*d)).sum::<f64>() + d3
            }
            ViscosityFormula::EmpVar1 { sigma_a, d2, d3 } => 1.0 / (eps / sigma_a + 1.0 / d2) + d3,
            ViscosityFormula::EmpVar2 { sigma_a, d2, d3 } => 1.0 / (1.0 / (sigma_a / eps + d3) + 1.0 / d2),
            ViscosityFormula::HbMin { sigma_a, d, n } => (sigma_a / eps).min(d / thinning(eps, *n)),
            ViscosityFormula::EmpDifDsl { d_dif, d_dsl, n } => 1.0 / (1.0 / d_dif + thinning(eps, *n) / d_dsl),
            ViscosityFormula::EmpHarmonicGeneral(parts) => {
                let mut inv = 0.0;
                for p in parts {
                    inv += 1.0 / p.eval(eps)?;
                }
                1.0 / inv
            }
        })
    }
}

/// `(Σᵢ μᵢ(ε)⁻¹)⁻¹` for arbitrary viscosity laws evaluated at the total rate.
pub fn harmonic_viscosity(mus: &[&dyn Fn(f64) -> f64], eps: f64) -> Result<f64> {
    if mus.is_empty() {
        return invalid("harmonic combination of no viscosities");
    }
    Ok(1.0 / mus.iter().map(|mu| 1.0 / mu(eps)).sum::<f64>())
}

/// `(Σᵢ 1/Dᵢ)⁻¹`, the serial combination of linear dashpots.
pub fn harmonic_mean_linear(ds: &[f64]) -> Result<f64> {
    if ds.is_empty() {
        return invalid("harmonic mean of an empty list");
    }
    ds.iter().try_for_each(|&d| positive("viscosity", d))?;
    Ok(1.0 / ds.iter().map(|d| 1.0 / d).sum::<f64>())
}
