//! Exact arithmetic for truncated q-series, weighted partition-statistic
//! tables, rank/crank moments and their symmetrized variants, smallest-parts
//! counts, and coefficient-level verification of the identities relating them.
//!
//! Everything is computed over arbitrary-precision rationals (integers in
//! most paths); there is no floating point and no tolerance anywhere. Each
//! series carries its truncation order `Q`, and operations on mismatched
//! orders panic instead of silently re-truncating — silent truncation is the
//! classic source of false verifications.

pub mod error;
pub mod identities;
pub mod moments;
pub mod partitions;
pub mod qfunctions;
pub mod series;

pub use error::CoreError;
pub use identities::{BaileyPair, Mismatch, Status, VerificationReport};
pub use moments::{SStarTriangle, ScanCell, ScanReport, ScanViolation};
pub use partitions::{Cap, Partition, StatKind, StatTable};
pub use series::{QSeries, ZQSeries};
