//! Checkers for the equivalent finiteness conditions on a measure, the
//! integral bound for positive parts of differences of subharmonic
//! functions, and the intermediate inequalities used to prove it.

mod auxiliary;
mod report;
mod theorem;

use crate::measure::Grid;
use crate::quadrature::QuadSpec;

pub use auxiliary::{
    green_bound, poisson_jensen_rhs, poisson_kernel_bound, verify_lemma3, verify_poisson_jensen, PoissonJensen,
};
pub use report::{CheckKind, CheckReport, TightBound, Verdict, DEFAULT_TOLERANCE};
pub use theorem::{
    atom_witnesses, check_corollary, check_statement_i, check_statement_ii, check_statement_iv, check_statement_v,
    falsify_statement_iii, r_star, random_points_in_ball, witness_family,
};

/// Shared numerical settings of the checkers.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOptions {
    pub quad: QuadSpec,
    pub grid: Grid,
    /// Absolute slack of inequality verdicts.
    pub tolerance: f64,
    /// Tolerance of residual checks.
    pub residual_tolerance: f64,
    /// Also evaluate the sharper bound with the auxiliary radius.
    pub tight: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            quad: QuadSpec::default(),
            grid: Grid::default(),
            tolerance: DEFAULT_TOLERANCE,
            residual_tolerance: 1e-6,
            tight: false,
        }
    }
}
