use crate::error::{invalid, Result};

/// Number of nodes in a default sampling grid.
pub const DEFAULT_POINTS: usize = 2048;
/// Right end of the default primal grid.
pub const DEFAULT_R_MAX: f64 = 10.0;

/// Sampling nodes on the half-line, starting at 0 and strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    nodes: Vec<f64>,
    uniform: bool,
}

impl Grid {
    /// `points` equally spaced nodes on `[0, r_max]`. A single point (or
    /// `r_max == 0`) yields the degenerate grid `{0}`.
    pub fn uniform(r_max: f64, points: usize) -> Result<Grid> {
        if points == 0 {
            return invalid("grid needs at least one point");
        }
        if !(r_max >= 0.0) || !r_max.is_finite() {
            return invalid(format!("grid end must be finite and non-negative, got {r_max}"));
        }
        if points == 1 || r_max == 0.0 {
            return Ok(Grid { nodes: vec![0.0], uniform: true });
        }
        let last = (points - 1) as f64;
        let nodes = (0..points).map(|i| r_max * (i as f64 / last)).collect();
        Ok(Grid { nodes, uniform: true })
    }

    /// Arbitrary nodes; must start at 0 and increase strictly.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Grid> {
        if nodes.is_empty() {
            return invalid("empty grid");
        }
        if nodes[0] != 0.0 {
            return invalid(format!("grid must start at 0, starts at {}", nodes[0]));
        }
        if let Some(w) = nodes.windows(2).find(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return invalid(format!("grid not strictly increasing at {} -> {}", w[0], w[1]));
        }
        Ok(Grid { nodes, uniform: false })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn end(&self) -> f64 {
        *self.nodes.last().expect("grids are never empty")
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    /// Index of the segment `[x_i, x_{i+1}]` holding `x`, clamped to the grid.
    pub(crate) fn segment(&self, x: f64) -> usize {
        let n = self.nodes.len();
        if n < 2 {
            return 0;
        }
        let i = self.nodes.partition_point(|&node| node <= x);
        i.saturating_sub(1).min(n - 2)
    }

    /// Node index within a relative distance of `x`, if any.
    pub(crate) fn node_at(&self, x: f64) -> Option<usize> {
        let tol = 1e-12 * self.end().max(1.0);
        let i = self.nodes.partition_point(|&node| node < x - tol);
        (i < self.nodes.len() && (self.nodes[i] - x).abs() <= tol).then_some(i)
    }

    pub(crate) fn same_uniform(&self, other: &Grid) -> bool {
        self.uniform
            && other.uniform
            && self.len() == other.len()
            && (self.end() - other.end()).abs() <= 1e-14 * self.end().max(1.0)
    }
}

/// How the dual (slope / stress) axis of a Legendre transform is sampled.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum DualGrid {
    /// [`DEFAULT_POINTS`] uniform samples on `[0, S]`, `S` the right slope of
    /// the function at its grid end ([`DEFAULT_R_MAX`] for bounded domains).
    #[default]
    Auto,
    /// `points` uniform samples on `[0, S]` with `S` chosen as for `Auto`.
    AutoPoints(usize),
    Uniform {
        s_max: f64,
        points: usize,
    },
    Explicit(Vec<f64>),
    /// The chord slopes of the piecewise-linear interpolant. The transform
    /// is then exact at every dual node, and a second transform back onto
    /// the primal grid reproduces the input up to roundoff.
    Breakpoints,
}
