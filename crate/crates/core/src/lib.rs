//! Goodness-of-fit tests built on the distribution of `p(X)`.

pub mod approx;
pub mod density;
pub mod error;
pub mod rearranged;
pub mod stats;
pub mod suites;

pub use approx::{build, ChebPiece, Extremum, ExtremumKind, Interval, PiecewiseFn};
pub use density::{Cdf, Density, DensityKind, Level, SampleSet, Step};
pub use error::{Error, Result};
pub use rearranged::{Atom, Direction, MonotonePiece, RearrangedDF};
pub use stats::{Hypothesis, KuiperResult, TestReport, WResult};
pub use suites::ExampleSuite;
