use std::fmt;
use std::ops::Add;

/// A closed interval `[lo, hi]` standing for a set-valued scalar
/// (sub)derivative. `hi = +∞` marks a normal cone at a support boundary;
/// `[+∞, +∞]` marks a saturated (unreachable) response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubdiffInterval {
    pub lo: f64,
    pub hi: f64,
}

impl SubdiffInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        SubdiffInterval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        SubdiffInterval { lo: x, hi: x }
    }

    pub fn saturated() -> Self {
        SubdiffInterval::point(f64::INFINITY)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_saturated(&self) -> bool {
        self.lo == f64::INFINITY
    }

    pub fn midpoint(&self) -> f64 {
        if self.hi.is_infinite() {
            return if self.lo.is_infinite() && self.lo < 0.0 { 0.0 } else { self.hi };
        }
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lo - tol && x <= self.hi + tol
    }

    pub fn scale(self, k: f64) -> Self {
        debug_assert!(k >= 0.0);
        SubdiffInterval { lo: self.lo * k, hi: self.hi * k }
    }
}

impl Add for SubdiffInterval {
    type Output = SubdiffInterval;

    fn add(self, rhs: Self) -> Self {
        SubdiffInterval { lo: self.lo + rhs.lo, hi: self.hi + rhs.hi }
    }
}

impl fmt::Display for SubdiffInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}
