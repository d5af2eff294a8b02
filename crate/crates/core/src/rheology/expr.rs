use crate::convex::SubdiffInterval;
use crate::error::{invalid, Result, RheoError};
use crate::potentials::Potential;
use crate::solve::{invert_graph, Bisection};

/// A network of dissipative elements.
///
/// `Parallel` children share the strain rate and add their stresses (sum
/// of potentials); `Serial` children share the stress and add their strain
/// rates (infimal convolution of potentials).
#[derive(Debug, Clone, PartialEq)]
pub enum RheoExpr {
    Leaf(Potential),
    Parallel(Vec<RheoExpr>),
    Serial(Vec<RheoExpr>),
}

/// How [`RheoExpr::mu_eff`] treats a zero strain rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtRest {
    Reject,
    /// Return the limit `ε → 0⁺`, which is `+∞` under a yield offset.
    Limit,
}

impl RheoExpr {
    pub fn leaf(p: Potential) -> Self {
        RheoExpr::Leaf(p)
    }

    pub fn parallel(children: Vec<RheoExpr>) -> Result<Self> {
        let e = RheoExpr::Parallel(children);
        e.validate()?;
        Ok(e)
    }

    pub fn serial(children: Vec<RheoExpr>) -> Result<Self> {
        let e = RheoExpr::Serial(children);
        e.validate()?;
        Ok(e)
    }

    /// Checks moduli, non-empty composites and that every serial node has
    /// a child able to absorb any strain rate.
    pub fn validate(&self) -> Result<()> {
        match self {
            RheoExpr::Leaf(p) => p.validate(),
            RheoExpr::Parallel(cs) | RheoExpr::Serial(cs) => {
                if cs.is_empty() {
                    return invalid("composite node without children");
                }
                cs.iter().try_for_each(RheoExpr::validate)?;
                if matches!(self, RheoExpr::Serial(_)) && !cs.iter().any(RheoExpr::is_compliant) {
                    return invalid(
                        "serial node needs a child with strictly increasing, unbounded strain-rate response",
                    );
                }
                Ok(())
            }
        }
    }

    /// True when the strain rate as a function of stress is strictly
    /// increasing and reaches every rate.
    pub fn is_compliant(&self) -> bool {
        match self {
            RheoExpr::Leaf(p) => match p {
                Potential::Dashpot { .. } | Potential::PowerLaw { .. } | Potential::Huber { .. } => true,
                Potential::Sampled(f) => !f.is_bounded() && f.slopes().windows(2).all(|w| w[1] > w[0]),
                _ => false,
            },
            RheoExpr::Parallel(cs) => cs.iter().all(RheoExpr::is_compliant),
            RheoExpr::Serial(cs) => cs.iter().any(RheoExpr::is_compliant),
        }
    }

    pub fn children(&self) -> &[RheoExpr] {
        match self {
            RheoExpr::Leaf(_) => &[],
            RheoExpr::Parallel(cs) | RheoExpr::Serial(cs) => cs,
        }
    }

    /// Strain-rate magnitude carried at stress magnitude `sigma`. A lower end
    /// of `+∞` flags a stress the network cannot sustain.
    pub fn strain_rate_of_stress(&self, sigma: f64) -> Result<SubdiffInterval> {
        if !(sigma >= 0.0) {
            return invalid(format!("stress magnitude must be non-negative, got {sigma}"));
        }
        match self {
            RheoExpr::Leaf(p) => p.conjugate_dvalue(sigma),
            RheoExpr::Serial(cs) => sum(cs, |c| c.strain_rate_of_stress(sigma)),
            RheoExpr::Parallel(_) => invert_graph(|e| self.stress_of_strain_rate(e), sigma, &Bisection::default()),
        }
    }

    /// Stress magnitude at strain-rate magnitude `eps`.
    pub fn stress_of_strain_rate(&self, eps: f64) -> Result<SubdiffInterval> {
        if !(eps >= 0.0) {
            return invalid(format!("strain-rate magnitude must be non-negative, got {eps}"));
        }
        match self {
            RheoExpr::Leaf(p) => p.dvalue(eps),
            RheoExpr::Parallel(cs) => sum(cs, |c| c.stress_of_strain_rate(eps)),
            RheoExpr::Serial(_) => {
                let s = invert_graph(|s| self.strain_rate_of_stress(s), eps, &Bisection::default())?;
                if s.is_saturated() {
                    return Err(RheoError::NoConvergence(format!(
                        "no stress carries strain rate {eps} through the serial node"
                    )));
                }
                Ok(s)
            }
        }
    }

    /// Effective viscosity `σ(ε)/ε`.
    pub fn mu_eff(&self, eps: f64, at_rest: AtRest) -> Result<f64> {
        if eps == 0.0 {
            return match at_rest {
                AtRest::Limit => Ok(self.rest_viscosity()),
                AtRest::Reject => invalid("effective viscosity at zero strain rate needs the limit flag"),
            };
        }
        if !(eps > 0.0) {
            return invalid(format!("strain-rate magnitude must be positive, got {eps}"));
        }
        Ok(self.stress_of_strain_rate(eps)?.midpoint() / eps)
    }

    /// `lim_{ε→0⁺} σ(ε)/ε`.
    pub fn rest_viscosity(&self) -> f64 {
        match self {
            RheoExpr::Leaf(p) => p.rest_viscosity(),
            RheoExpr::Parallel(cs) => cs.iter().map(RheoExpr::rest_viscosity).sum(),
            RheoExpr::Serial(cs) => 1.0 / cs.iter().map(|c| 1.0 / c.rest_viscosity()).sum::<f64>(),
        }
    }
}

fn sum<F>(cs: &[RheoExpr], f: F) -> Result<SubdiffInterval>
where
    F: Fn(&RheoExpr) -> Result<SubdiffInterval>,
{
    cs.iter().try_fold(SubdiffInterval::point(0.0), |acc, c| Ok(acc + f(c)?))
}
