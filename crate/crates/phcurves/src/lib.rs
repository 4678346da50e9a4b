//! Planar Pythagorean-hodograph curves of degree seven: G² Hermite
//! interpolation with prescribed arc length, single-segment and two-segment
//! (biarc) constructions, spline assembly, and convergence benchmarks.

pub mod bench;
pub mod biarc;
pub mod cli;
pub mod cpoly;
pub mod error;
pub mod phcurve;
pub mod quad;
pub mod real;
pub mod singleph;
pub mod spline;

pub use biarc::{interpolate, FreeParams, HermiteData, Interpolation, PHBiarc, SignBranch};
pub use cpoly::{chi, BernsteinPoly, Complex};
pub use error::{Error, Result};
pub use phcurve::{hodograph, CurveSample, PHSegment7, PreimageCubic};
pub use real::{Dd, Real};
pub use singleph::{SinglePHProblem, SinglePHSolution};
pub use bench::{
    circle_spline, decay_table, e_err, optimize_beta, optimize_lambda, reparam_phi,
    sample_hermite, AnalyticCurve, BetaOpt, CircleStudy, ErrorReport, FittedCurve, LambdaOpt,
    Method, QuinticPhi,
};
pub use spline::{G2Spline, SplineNode};
