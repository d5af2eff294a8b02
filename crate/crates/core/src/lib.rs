//! Convex-analysis toolkit for viscoplastic rheologies.
//!
//! Dissipation potentials of viscous and plastic elements are combined in
//! parallel (sum) and in series (infimal convolution). The crate evaluates
//! the resulting stress laws and effective viscosities, compares them with
//! common empirical formulas and integrates 0D Maxwell-type models in time.

pub mod convex;
pub mod error;
pub mod maxwell;
pub mod potentials;
pub mod rheology;
pub mod solve;

pub use convex::{DualGrid, Grid, SampledFunction, SubdiffInterval, Tail};
pub use error::{Result, RheoError};
pub use maxwell::{DriveProgram, MaxwellModel, TimeSeries};
pub use potentials::Potential;
pub use rheology::{RheoExpr, ThreeElementParams};
