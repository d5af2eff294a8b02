use super::grid::Grid;
use crate::error::{invalid, Result, RheoError};

/// Relative tolerance on discrete second differences in the convexity check.
pub const CONVEXITY_TOL: f64 = 1e-12;

/// What a sampled function does past its last grid node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// Continues affinely with the slope of the last finite segment.
    Affine,
    /// Jumps to `+∞` right after the last finite node.
    Infinite,
}

/// A convex function on the half-line sampled at the nodes of a [`Grid`].
///
/// Values are finite on the prefix `[0, finite_sup)` of the grid and `+∞`
/// on the rest. Between nodes the function is read as its piecewise-linear
/// interpolant; past the grid end it follows its [`Tail`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<f64>,
    finite_sup: usize,
    tail: Tail,
}

impl SampledFunction {
    /// Validates shape, the finite-prefix layout, convexity and that the
    /// minimum sits at the origin.
    pub fn new(grid: Grid, values: Vec<f64>, tail: Tail) -> Result<Self> {
        if values.len() != grid.len() {
            return invalid(format!("{} values for a grid of {} nodes", values.len(), grid.len()));
        }
        if values.iter().any(|v| v.is_nan() || *v == f64::NEG_INFINITY) {
            return invalid("values must be finite or +inf");
        }
        let finite_sup = values.iter().take_while(|v| v.is_finite()).count();
        if finite_sup == 0 {
            return invalid("function must be finite at the origin");
        }
        if values[finite_sup..].iter().any(|v| v.is_finite()) {
            return invalid("+inf values must form a tail of the grid");
        }
        let f = SampledFunction { grid, values, finite_sup, tail };
        f.check_shape()?;
        Ok(f)
    }

    /// Samples `func` at every node. `+∞` results mark the end of the domain.
    pub fn from_fn<F: Fn(f64) -> f64>(grid: Grid, func: F) -> Result<Self> {
        let values = grid.nodes().iter().map(|&x| func(x)).collect();
        SampledFunction::new(grid, values, Tail::Affine)
    }

    /// The indicator of `{0}`: zero at the origin, `+∞` everywhere else.
    pub fn indicator_of_origin(grid: Grid) -> Result<Self> {
        let mut values = vec![f64::INFINITY; grid.len()];
        values[0] = 0.0;
        SampledFunction::new(grid, values, Tail::Infinite)
    }

    fn check_shape(&self) -> Result<()> {
        let x = self.grid.nodes();
        let f = &self.values[..self.finite_sup];
        let scale = self.scale();
        let tol = CONVEXITY_TOL * scale;
        if let Some(i) = (1..f.len()).find(|&i| f[i] < f[0] - tol) {
            return invalid(format!("minimum not at the origin: f({}) = {} < f(0) = {}", x[i], f[i], f[0]));
        }
        for i in 1..f.len().saturating_sub(1) {
            // cross-multiplied second difference, roundoff-consistent on
            // non-uniform grids
            let cross = (f[i + 1] - f[i]) * (x[i] - x[i - 1]) - (f[i] - f[i - 1]) * (x[i + 1] - x[i]);
            if cross < -tol * (x[i + 1] - x[i - 1]) {
                return invalid(format!("not convex around x = {}", x[i]));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn finite_sup(&self) -> usize {
        self.finite_sup
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when the effective domain ends at a finite point.
    pub fn is_bounded(&self) -> bool {
        self.finite_sup < self.values.len() || self.tail == Tail::Infinite
    }

    /// Last node with a finite value.
    pub fn domain_end(&self) -> f64 {
        self.grid.nodes()[self.finite_sup - 1]
    }

    /// Largest finite magnitude; never below `f64::MIN_POSITIVE`.
    pub fn scale(&self) -> f64 {
        self.values[..self.finite_sup].iter().fold(f64::MIN_POSITIVE, |m, v| m.max(v.abs()))
    }

    /// Chord slopes over the finite part of the grid.
    pub fn slopes(&self) -> Vec<f64> {
        let x = self.grid.nodes();
        let f = &self.values;
        (0..self.finite_sup.saturating_sub(1)).map(|i| (f[i + 1] - f[i]) / (x[i + 1] - x[i])).collect()
    }

    /// Slope of the last finite segment; zero for a single finite node.
    pub fn right_slope(&self) -> f64 {
        let n = self.finite_sup;
        if n < 2 {
            return 0.0;
        }
        let x = self.grid.nodes();
        (self.values[n - 1] - self.values[n - 2]) / (x[n - 1] - x[n - 2])
    }

    /// Piecewise-linear value at `x`; `+∞` beyond the effective domain.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let end = self.grid.end();
        if !(x >= 0.0) || x > end * (1.0 + 1e-14) {
            return Err(RheoError::OutOfRange { value: x, lo: 0.0, hi: end });
        }
        if let Some(i) = self.grid.node_at(x) {
            return Ok(self.values[i]);
        }
        let i = self.grid.segment(x);
        let nodes = self.grid.nodes();
        let (x0, x1) = (nodes[i], nodes[i + 1]);
        let (f0, f1) = (self.values[i], self.values[i + 1]);
        if !f0.is_finite() || !f1.is_finite() {
            return Ok(f64::INFINITY);
        }
        let t = (x - x0) / (x1 - x0);
        Ok(f0 + t * (f1 - f0))
    }

    /// Re-samples onto `grid`. Nodes past the end of `self`'s grid follow
    /// the tail; an affine tail cannot be extended that way and errors.
    pub fn resample(&self, grid: &Grid) -> Result<SampledFunction> {
        let end = self.grid.end();
        let mut values = Vec::with_capacity(grid.len());
        for &x in grid.nodes() {
            if x <= end * (1.0 + 1e-14) {
                values.push(self.eval(x.min(end))?);
            } else if self.is_bounded() {
                values.push(f64::INFINITY);
            } else {
                return invalid(format!("incompatible grids: target reaches {x} beyond the sampled range [0, {end}]"));
            }
        }
        SampledFunction::new(grid.clone(), values, self.tail)
    }

    /// Shifts values so that `f(0) = 0`.
    pub fn normalized(&self) -> SampledFunction {
        let f0 = self.values[0];
        let mut out = self.clone();
        for v in out.values.iter_mut().take(self.finite_sup) {
            *v -= f0;
        }
        out
    }

    pub(crate) fn from_parts_unchecked(grid: Grid, values: Vec<f64>, tail: Tail) -> Self {
        let finite_sup = values.iter().take_while(|v| v.is_finite()).count().max(1);
        SampledFunction { grid, values, finite_sup, tail }
    }
}
