//! Exact truncated series arithmetic: univariate in `q`, and bivariate in
//! `(z, q)` with finite Laurent `z`-support per `q`-degree.

mod qseries;
mod zqseries;

pub use qseries::QSeries;
pub use zqseries::ZQSeries;
