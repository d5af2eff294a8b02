//! Serial and parallel composition of dissipative elements, rigorous
//! stress/strain-rate solvers and closed-form effective viscosities.

mod dif_dsl;
mod expr;
mod formulas;
mod three_element;

pub use dif_dsl::{cardano_verbatim, serial_dif_dsl_stress, SolveMode};
pub use expr::{AtRest, RheoExpr};
pub use formulas::{harmonic_mean_linear, harmonic_viscosity, FormulaId, ViscosityFormula};
pub use three_element::{map_serial_parallel_params, three_element_stress, SerialParallelParams, ThreeElementParams};
