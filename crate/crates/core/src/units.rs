//! Physical and monetary units carried by every series.
//!
//! Monetary quantities are inflation-adjusted 2005 US dollars at market
//! exchange rates. Power is primary power production from all sources.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Seconds in a Julian year. The only constant used to convert between
/// Watts and dollars per year.
pub const SECONDS_PER_YEAR: f64 = 3.15569e7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    /// Terawatts (1e12 J/s).
    PowerTerawatt,
    /// Trillion 2005 USD per year.
    GdpTrillionUsd2005PerYear,
    /// Trillion 2005 USD.
    WealthTrillionUsd2005,
    /// Watts per thousand 2005 USD.
    WattsPerThousandUsd2005,
    /// A rate, as a fraction per year (0.0214 rather than 2.14 %).
    PerYearFraction,
    /// 2005 USD per Joule.
    Usd2005PerJoule,
    Years,
    Dimensionless,
}

impl Unit {
    pub const ALL: [Unit; 8] = [
        Unit::PowerTerawatt,
        Unit::GdpTrillionUsd2005PerYear,
        Unit::WealthTrillionUsd2005,
        Unit::WattsPerThousandUsd2005,
        Unit::PerYearFraction,
        Unit::Usd2005PerJoule,
        Unit::Years,
        Unit::Dimensionless,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Unit::PowerTerawatt => "power_terawatt",
            Unit::GdpTrillionUsd2005PerYear => "gdp_trillion_usd2005_per_year",
            Unit::WealthTrillionUsd2005 => "wealth_trillion_usd2005",
            Unit::WattsPerThousandUsd2005 => "watts_per_thousand_usd2005",
            Unit::PerYearFraction => "per_year_fraction",
            Unit::Usd2005PerJoule => "usd2005_per_joule",
            Unit::Years => "years",
            Unit::Dimensionless => "dimensionless",
        }
    }

    /// Quantities that are only meaningful when strictly positive.
    pub fn requires_positive(self) -> bool {
        matches!(
            self,
            Unit::PowerTerawatt | Unit::GdpTrillionUsd2005PerYear | Unit::WattsPerThousandUsd2005
        )
    }

    /// Wealth is zero at the start of an integral from the epoch, never below.
    pub fn requires_non_negative(self) -> bool {
        self == Unit::WealthTrillionUsd2005
    }

    /// Unit of the time integral of a per-year rate.
    pub fn integrated(self) -> Result<Unit> {
        match self {
            Unit::GdpTrillionUsd2005PerYear => Ok(Unit::WealthTrillionUsd2005),
            Unit::PerYearFraction => Ok(Unit::Dimensionless),
            other => Err(Error::Domain(format!("{other} is not a per-year rate"))),
        }
    }

    /// Result unit and scale factor for `self / other`.
    pub fn quotient(self, other: Unit) -> Result<(Unit, f64)> {
        use Unit::*;
        let rule = match (self, other) {
            (a, b) if a == b => (Dimensionless, 1.0),
            (PowerTerawatt, WealthTrillionUsd2005) => (WattsPerThousandUsd2005, 1e3),
            (GdpTrillionUsd2005PerYear, WealthTrillionUsd2005) => (PerYearFraction, 1.0),
            (GdpTrillionUsd2005PerYear, PowerTerawatt) => (Usd2005PerJoule, 1.0 / SECONDS_PER_YEAR),
            (PerYearFraction, WattsPerThousandUsd2005) => {
                (Usd2005PerJoule, 1e3 / SECONDS_PER_YEAR)
            }
            (PowerTerawatt, WattsPerThousandUsd2005) => (WealthTrillionUsd2005, 1e3),
            (left, right) => return Err(Error::IncompatibleUnits { left, right }),
        };
        Ok(rule)
    }

    /// Result unit and scale factor for `self * other`.
    pub fn product(self, other: Unit) -> Result<(Unit, f64)> {
        use Unit::*;
        let rule = match (self, other) {
            (Dimensionless, u) | (u, Dimensionless) => (u, 1.0),
            (WattsPerThousandUsd2005, WealthTrillionUsd2005)
            | (WealthTrillionUsd2005, WattsPerThousandUsd2005) => (PowerTerawatt, 1e-3),
            (PerYearFraction, WealthTrillionUsd2005) | (WealthTrillionUsd2005, PerYearFraction) => {
                (GdpTrillionUsd2005PerYear, 1.0)
            }
            (WattsPerThousandUsd2005, Usd2005PerJoule) | (Usd2005PerJoule, WattsPerThousandUsd2005) => {
                (PerYearFraction, 1e-3 * SECONDS_PER_YEAR)
            }
            (Usd2005PerJoule, PowerTerawatt) | (PowerTerawatt, Usd2005PerJoule) => {
                (GdpTrillionUsd2005PerYear, SECONDS_PER_YEAR)
            }
            (PerYearFraction, Years) | (Years, PerYearFraction) => (Dimensionless, 1.0),
            (left, right) => return Err(Error::IncompatibleUnits { left, right }),
        };
        Ok(rule)
    }

    pub fn expect(self, expected: Unit) -> Result<()> {
        if self == expected {
            Ok(())
        } else {
            Err(Error::UnitMismatch {
                expected,
                found: self,
            })
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Unit::ALL
            .into_iter()
            .find(|u| u.token() == s)
            .ok_or_else(|| Error::UnknownUnit(s.to_string()))
    }
}

/// A unit token as it may appear in a file header. Display units such as
/// `percent_per_year` are converted to their canonical unit on load.
pub fn parse_file_unit(token: &str) -> Result<(Unit, f64)> {
    match token {
        "percent_per_year" => Ok((Unit::PerYearFraction, 0.01)),
        other => Ok((other.parse()?, 1.0)),
    }
}
