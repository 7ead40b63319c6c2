//! Lamination parameters of step-function layups, an exact constructive
//! convex combination of two layups, and the interleaving sequence whose
//! parameters converge while its pointwise values do not.
//!
//! All angles are radians inside the library; files and reports use
//! degrees.

pub mod commands;
pub mod convexity;
pub mod counterexample;
pub mod error;
pub mod io;
pub mod laminate;
pub mod lamparams;
pub mod report;

pub use convexity::{
    convex_combine, moment_split, split_moments, verify_combination, CombinationReport,
    IntervalSplit,
};
pub use counterexample::{
    bezout_solve, convergence_table, find_n_in_region, oscillation_witness, residue_solutions,
    theta_n_build, theta_n_eval, Coordinate, LimitOrientation, Rational, WitnessTable,
};
pub use error::{Error, Result};
pub use io::{load_laminate, save_laminate, LaminateFile};
pub use laminate::{moments, normalize_breakpoints, refine, MomentTriple, RefinedPair, StepLaminate};
pub use lamparams::{lamination_parameters, quadrature_oracle, LamParams};
pub use report::{Report, Verdict};
