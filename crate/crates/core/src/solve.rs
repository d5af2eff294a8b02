//! Bracketed bisection on monotone (possibly set-valued) scalar graphs.
//!
//! Every stress/strain-rate inversion in the crate reduces to the same
//! problem: given a nondecreasing graph `x ↦ [lo(x), hi(x)]` on `x ≥ 0`
//! and a target `y`, find the set `{x ≥ 0 : y ∈ [lo(x), hi(x)]}`. Its
//! endpoints are `inf{x : hi(x) ≥ y}` and `sup{x : lo(x) ≤ y}`, both of
//! which are located by bisection on a monotone predicate.

use crate::error::{Result, RheoError};
use crate::SubdiffInterval;

/// Number of bracket doublings before giving up.
pub const MAX_DOUBLINGS: usize = 1024;
/// Cap on bisection steps once a bracket is found; enough for plain halving
/// to resolve a root anywhere in the double range.
pub const MAX_BISECTIONS: usize = 1200;
/// Plain halvings taken after accelerated steps stall twice in a row.
const HALVINGS_AFTER_STALL: usize = 4;

/// Tolerances for [`invert_graph`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    /// Relative bracket width at which the search stops.
    pub rel_tol: f64,
    pub max_iter: usize,
    /// Right end of the initial bracket `[0, initial]`, grown by doubling.
    pub initial: f64,
    /// Take Illinois (modified regula falsi) steps inside the bracket,
    /// falling back to halving whenever they stall. Plain halving when off.
    pub accelerate: bool,
}

impl Default for Bisection {
    fn default() -> Self {
        Bisection { rel_tol: 2.0 * f64::EPSILON, max_iter: MAX_BISECTIONS, initial: 1.0, accelerate: true }
    }
}

impl Bisection {
    /// Plain halving, the reference path.
    pub fn plain() -> Self {
        Bisection { accelerate: false, ..Bisection::default() }
    }
}

/// Where a search for a predicate switch ended up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Switch {
    /// The predicate turns true at (approximately) this abscissa.
    At(f64),
    /// The predicate stayed false through every doubling.
    Never,
}

impl Bisection {
    /// Smallest `x ≥ 0` at which the nondecreasing predicate `pred` holds.
    pub fn first_true<P>(&self, mut pred: P) -> Result<Switch>
    where
        P: FnMut(f64) -> Result<bool>,
    {
        let opts = Bisection { accelerate: false, ..*self };
        opts.first_crossing(|x| Ok(if pred(x)? { 1.0 } else { -1.0 }), false)
    }

    /// Smallest `x ≥ 0` with `h(x) ≥ 0` (`h(x) > 0` when `strict`), for a
    /// nondecreasing `h` that may take the value `+∞`.
    pub fn first_crossing<H>(&self, mut h: H, strict: bool) -> Result<Switch>
    where
        H: FnMut(f64) -> Result<f64>,
    {
        let holds = |v: f64| if strict { v > 0.0 } else { v >= 0.0 };
        let f0 = h(0.0)?;
        if holds(f0) {
            return Ok(Switch::At(0.0));
        }
        let (mut a, mut fa) = (0.0, f0);
        let mut b = self.initial;
        let mut fb = f64::NAN;
        for _ in 0..MAX_DOUBLINGS {
            if !b.is_finite() {
                return Ok(Switch::Never);
            }
            fb = h(b)?;
            if holds(fb) {
                break;
            }
            a = b;
            fa = fb;
            b *= 2.0;
        }
        if !holds(fb) {
            return Ok(Switch::Never);
        }

        // 1 when b moved last, -1 when a did
        let mut last_side = 0i8;
        let (mut stalls, mut halvings) = (0u32, 0usize);
        for _ in 0..self.max_iter {
            let width = b - a;
            if width <= self.rel_tol * b {
                return Ok(Switch::At(0.5 * (a + b)));
            }
            let mid = a + 0.5 * width;
            let mut x = mid;
            let accelerated = self.accelerate && halvings == 0 && fa.is_finite() && fb.is_finite() && fb > fa;
            if accelerated {
                let step = 0.5 * self.rel_tol * b;
                x = (b - fb * (width / (fb - fa))).clamp(a + step, b - step);
            }
            if x <= a || x >= b {
                return Ok(Switch::At(0.5 * (a + b)));
            }
            let fx = h(x)?;
            if holds(fx) {
                b = x;
                fb = fx;
                if last_side == 1 {
                    fa *= 0.5;
                }
                last_side = 1;
            } else {
                a = x;
                fa = fx;
                if last_side == -1 {
                    fb *= 0.5;
                }
                last_side = -1;
            }
            if !accelerated {
                halvings = halvings.saturating_sub(1);
            } else if b - a <= 0.5 * width {
                stalls = 0;
            } else {
                stalls += 1;
                if stalls == 2 {
                    stalls = 0;
                    halvings = HALVINGS_AFTER_STALL;
                }
            }
        }
        // Squeezed against the origin: the switch sits at zero to within
        // the resolution of the bracket.
        if a == 0.0 {
            return Ok(Switch::At(0.0));
        }
        Err(RheoError::NoConvergence(format!("bracket [{a}, {b}] still open after {} iterations", self.max_iter)))
    }
}

/// Solves `target ∈ graph(x)` for `x ≥ 0`, where `graph` is a nondecreasing
/// set-valued map. Returns the full solution interval; an upper end of
/// `+∞` means the graph never rises above `target`, a lower end of `+∞`
/// means `target` is never reached (saturation).
pub fn invert_graph<G>(graph: G, target: f64, opts: &Bisection) -> Result<SubdiffInterval>
where
    G: Fn(f64) -> Result<SubdiffInterval>,
{
    if target.is_nan() {
        return Err(RheoError::InvalidInput("NaN target".into()));
    }
    let lo = match opts.first_crossing(|x| Ok(graph(x)?.hi - target), false)? {
        Switch::At(x) => x,
        Switch::Never => f64::INFINITY,
    };
    if lo.is_infinite() {
        return Ok(SubdiffInterval::saturated());
    }
    // Cheap probe for the common single-valued case.
    let probe = if lo > 0.0 { lo + 4.0 * opts.rel_tol * lo } else { f64::MIN_POSITIVE };
    if probe > lo && graph(probe)?.lo > target {
        return Ok(SubdiffInterval::point(lo));
    }
    let hi = match opts.first_crossing(|x| Ok(graph(x)?.lo - target), true)? {
        Switch::At(x) => x,
        Switch::Never => f64::INFINITY,
    };
    let hi = hi.max(lo);
    // Both ends of a single-valued inverse converge on the same root; collapse
    // them so regular points come back as points.
    if hi.is_finite() && hi - lo <= 8.0 * opts.rel_tol * hi.abs().max(f64::MIN_POSITIVE) {
        let mid = 0.5 * (lo + hi);
        return Ok(SubdiffInterval::point(mid));
    }
    Ok(SubdiffInterval::new(lo, hi))
}
