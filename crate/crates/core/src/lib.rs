//! Exact computations around mirror symmetry for the quintic, WDVV counts of
//! plane curves, Hurwitz covers of an elliptic curve, finite A∞-structures and
//! theta-function products on the two-torus.

pub mod ainfty;
pub mod fukaya_torus;
pub mod hurwitz;
pub mod linalg;
pub mod mirror_quintic;
pub mod picard_fuchs;
pub mod quantum_p2;
pub mod rational;
pub mod series;

pub use rational::Rational;
pub use series::{LogSeries, SeriesError, TruncatedSeries};
