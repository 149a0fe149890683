//! Thermodynamic growth model toolkit.
//!
//! Global wealth is the running integral of real GDP and is held in a fixed
//! ratio to primary power production. This crate fits that ratio and the
//! rate of return on historical series and projects wealth, power and GDP
//! forward in closed form.

pub mod error;
pub mod forecast;
pub mod ingest;
pub mod model;
pub mod report;
pub mod series;
pub mod units;

pub use error::{Error, Result};
pub use series::{AnnualSeries, Interpolation, WealthInit, WealthSeries, YearWindow};
pub use units::{Unit, SECONDS_PER_YEAR};
