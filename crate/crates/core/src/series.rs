//! Year-indexed series and the numerical primitives the model is built on.

use crate::error::{Error, Result};
use crate::units::Unit;

/// Interpolation scheme used when resampling a series onto a new grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interpolation {
    /// Linear in `ln(value)`; exact for exponentials. Values must be positive.
    LogLinear,
    Linear,
}

/// A real-valued series on strictly increasing integer years.
///
/// Gaps between years are allowed. Operations that need an annual grid
/// (integration, differencing) report [`Error::Gap`] instead of guessing.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnualSeries {
    years: Vec<i32>,
    values: Vec<f64>,
    unit: Unit,
    label: String,
}

impl AnnualSeries {
    /// Builds a series from `(year, value)` points, which are sorted first.
    pub fn new(
        label: impl Into<String>,
        unit: Unit,
        points: impl IntoIterator<Item = (i32, f64)>,
    ) -> Result<Self> {
        let mut points: Vec<(i32, f64)> = points.into_iter().collect();
        points.sort_by_key(|p| p.0);
        let label = label.into();
        for w in points.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Validation(format!(
                    "{label}: duplicate year {}",
                    w[0].0
                )));
            }
        }
        for &(year, value) in &points {
            if !value.is_finite() {
                return Err(Error::Validation(format!(
                    "{label}: non-finite value at {year}"
                )));
            }
            if unit.requires_positive() && value <= 0.0 {
                return Err(Error::Validation(format!(
                    "{label}: {unit} must be strictly positive, got {value} at {year}"
                )));
            }
            if unit.requires_non_negative() && value < 0.0 {
                return Err(Error::Validation(format!(
                    "{label}: {unit} must not be negative, got {value} at {year}"
                )));
            }
        }
        let (years, values) = points.into_iter().unzip();
        Ok(Self {
            years,
            values,
            unit,
            label,
        })
    }

    pub fn years(&self) -> &[i32] {
        &self.years
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn len(&self) -> usize {
        self.years.len()
    }

    pub fn is_empty(&self) -> bool {
        self.years.is_empty()
    }

    pub fn first_year(&self) -> Option<i32> {
        self.years.first().copied()
    }

    pub fn last_year(&self) -> Option<i32> {
        self.years.last().copied()
    }

    pub fn points(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.years.iter().copied().zip(self.values.iter().copied())
    }

    pub fn get(&self, year: i32) -> Option<f64> {
        self.years
            .binary_search(&year)
            .ok()
            .map(|i| self.values[i])
    }

    /// Value at `year`, or an out-of-range error naming the coverage.
    pub fn value_at(&self, year: i32) -> Result<f64> {
        self.get(year).ok_or_else(|| self.range_error(year))
    }

    fn range_error(&self, year: i32) -> Error {
        Error::OutOfRange {
            year,
            first: self.first_year().unwrap_or(0),
            last: self.last_year().unwrap_or(0),
        }
    }

    /// True when every year between the first and last is present.
    pub fn is_dense(&self) -> bool {
        self.first_gap().is_none()
    }

    fn first_gap(&self) -> Option<i32> {
        self.years
            .windows(2)
            .find(|w| w[1] != w[0] + 1)
            .map(|w| w[0] + 1)
    }

    /// Points with `start <= year <= end`.
    pub fn window(&self, start: i32, end: i32) -> Result<AnnualSeries> {
        let points: Vec<_> = self
            .points()
            .filter(|&(y, _)| y >= start && y <= end)
            .collect();
        if points.is_empty() {
            return Err(Error::OutOfRange {
                year: start,
                first: self.first_year().unwrap_or(0),
                last: self.last_year().unwrap_or(0),
            });
        }
        Ok(Self {
            years: points.iter().map(|p| p.0).collect(),
            values: points.iter().map(|p| p.1).collect(),
            unit: self.unit,
            label: self.label.clone(),
        })
    }

    /// Applies `f` to every value, keeping years and tagging the result with `unit`.
    pub fn map_values(&self, unit: Unit, f: impl Fn(f64) -> f64) -> Result<AnnualSeries> {
        AnnualSeries::new(
            self.label.clone(),
            unit,
            self.points().map(|(y, v)| (y, f(v))),
        )
    }

    pub fn scaled(&self, k: f64) -> Result<AnnualSeries> {
        self.map_values(self.unit, |v| v * k)
    }

    fn zip_with(
        &self,
        other: &AnnualSeries,
        unit: Unit,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<AnnualSeries> {
        if self.years != other.years {
            return Err(Error::Validation(format!(
                "`{}` and `{}` are not on the same years",
                self.label, other.label
            )));
        }
        AnnualSeries::new(
            format!("{}:{}", self.label, other.label),
            unit,
            self.years
                .iter()
                .zip(self.values.iter().zip(&other.values))
                .map(|(&y, (&a, &b))| (y, f(a, b))),
        )
    }

    pub fn checked_add(&self, other: &AnnualSeries) -> Result<AnnualSeries> {
        other.unit.expect(self.unit)?;
        self.zip_with(other, self.unit, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &AnnualSeries) -> Result<AnnualSeries> {
        other.unit.expect(self.unit)?;
        self.zip_with(other, self.unit, |a, b| a - b)
    }

    /// Pointwise quotient with unit conversion, e.g. power / wealth in W per k$.
    pub fn checked_div(&self, other: &AnnualSeries) -> Result<AnnualSeries> {
        let (unit, k) = self.unit.quotient(other.unit)?;
        if let Some((y, _)) = other.points().find(|&(_, v)| v == 0.0) {
            return Err(Error::Domain(format!(
                "division by zero in `{}` at {y}",
                other.label
            )));
        }
        self.zip_with(other, unit, |a, b| k * a / b)
    }

    /// Pointwise product with unit conversion.
    pub fn checked_mul(&self, other: &AnnualSeries) -> Result<AnnualSeries> {
        let (unit, k) = self.unit.product(other.unit)?;
        self.zip_with(other, unit, |a, b| k * a * b)
    }

    pub fn mean(&self) -> Option<f64> {
        (!self.is_empty()).then(|| self.values.iter().sum::<f64>() / self.len() as f64)
    }

    /// Population standard deviation.
    pub fn std_dev(&self) -> Option<f64> {
        let mean = self.mean()?;
        let var = self.values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / self.len() as f64;
        Some(var.sqrt())
    }

    /// Combines two series of the same unit. Where both cover a year, `self` wins.
    pub fn merged_over(&self, fallback: &AnnualSeries) -> Result<AnnualSeries> {
        fallback.unit.expect(self.unit)?;
        let extra = fallback.points().filter(|&(y, _)| self.get(y).is_none());
        AnnualSeries::new(self.label.clone(), self.unit, self.points().chain(extra))
    }

    fn require_dense(&self, what: &str) -> Result<()> {
        if self.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "{what} needs at least 2 points, `{}` has {}",
                self.label,
                self.len()
            )));
        }
        match self.first_gap() {
            Some(missing) => Err(Error::Gap { missing }),
            None => Ok(()),
        }
    }
}

/// An inclusive range of calendar years, written `START:END`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct YearWindow {
    pub start: i32,
    pub end: i32,
}

impl YearWindow {
    pub fn new(start: i32, end: i32) -> Result<Self> {
        if start > end {
            return Err(Error::Config(format!("window start {start} is after end {end}")));
        }
        Ok(Self { start, end })
    }

    pub fn years(self) -> Vec<i32> {
        year_range(self.start, self.end)
    }

    pub fn contains(self, year: i32) -> bool {
        (self.start..=self.end).contains(&year)
    }

    /// Checks that `series` has data at or beyond both ends of the window.
    pub fn check_covered_by(self, series: &AnnualSeries) -> Result<()> {
        match (series.first_year(), series.last_year()) {
            (Some(first), Some(last)) if first <= self.start && last >= self.end => Ok(()),
            (Some(first), Some(last)) => Err(Error::OutOfRange {
                year: if first > self.start { self.start } else { self.end },
                first,
                last,
            }),
            _ => Err(Error::InsufficientData(format!("`{}` is empty", series.label))),
        }
    }
}

impl std::fmt::Display for YearWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

impl std::str::FromStr for YearWindow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("window `{s}` is not START:END"));
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        YearWindow::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
    }
}

/// An annual grid covering `start..=end`.
pub fn year_range(start: i32, end: i32) -> Vec<i32> {
    (start..=end).collect()
}

/// Resamples `series` onto `grid`. Knots are reproduced exactly.
pub fn interpolate(
    series: &AnnualSeries,
    grid: &[i32],
    mode: Interpolation,
) -> Result<AnnualSeries> {
    let (first, last) = match (series.first_year(), series.last_year()) {
        (Some(f), Some(l)) => (f, l),
        _ => {
            return Err(Error::InsufficientData(format!(
                "cannot interpolate empty series `{}`",
                series.label
            )))
        }
    };
    if mode == Interpolation::LogLinear {
        if let Some((y, v)) = series.points().find(|&(_, v)| v <= 0.0) {
            return Err(Error::Domain(format!(
                "log-linear interpolation of `{}` needs positive values, got {v} at {y}",
                series.label
            )));
        }
    }
    let years = series.years();
    let values = series.values();
    let mut out = Vec::with_capacity(grid.len());
    for &year in grid {
        if year < first || year > last {
            return Err(Error::OutOfRange { year, first, last });
        }
        let value = match years.binary_search(&year) {
            Ok(i) => values[i],
            Err(i) => {
                let (y0, y1) = (years[i - 1], years[i]);
                let (v0, v1) = (values[i - 1], values[i]);
                let w = f64::from(year - y0) / f64::from(y1 - y0);
                match mode {
                    Interpolation::Linear => v0 + w * (v1 - v0),
                    Interpolation::LogLinear => (v0.ln() + w * (v1.ln() - v0.ln())).exp(),
                }
            }
        };
        out.push((year, value));
    }
    AnnualSeries::new(series.label.clone(), series.unit, out)
}

/// Trapezoidal running integral of a per-year rate, starting at `from_year`
/// with value `initial`.
pub fn cumulative_integral(
    series: &AnnualSeries,
    from_year: i32,
    initial: f64,
) -> Result<AnnualSeries> {
    let unit = series.unit.integrated()?;
    let last = series
        .last_year()
        .ok_or_else(|| Error::InsufficientData("cannot integrate an empty series".into()))?;
    if from_year > last || series.get(from_year).is_none() {
        return Err(series.range_error(from_year));
    }
    let tail = series.window(from_year, last)?;
    if let Some(missing) = tail.first_gap() {
        return Err(Error::Gap { missing });
    }
    let mut total = initial;
    let mut out = Vec::with_capacity(tail.len());
    out.push((from_year, initial));
    for w in tail.values.windows(2).zip(&tail.years[1..]) {
        let (pair, &year) = w;
        total += 0.5 * (pair[0] + pair[1]);
        out.push((year, total));
    }
    AnnualSeries::new(format!("integral({})", series.label), unit, out)
}

/// `d ln(value) / dt` by centered differences, one-sided at the endpoints.
pub fn log_derivative(series: &AnnualSeries) -> Result<AnnualSeries> {
    series.require_dense("log_derivative")?;
    if let Some((y, v)) = series.points().find(|&(_, v)| v <= 0.0) {
        return Err(Error::Domain(format!(
            "log_derivative of `{}` needs positive values, got {v} at {y}",
            series.label
        )));
    }
    let logs: Vec<f64> = series.values.iter().map(|v| v.ln()).collect();
    let n = logs.len();
    let slopes = (0..n).map(|i| match i {
        0 => logs[1] - logs[0],
        i if i == n - 1 => logs[n - 1] - logs[n - 2],
        i => 0.5 * (logs[i + 1] - logs[i - 1]),
    });
    AnnualSeries::new(
        format!("dln({})", series.label),
        Unit::PerYearFraction,
        series.years.iter().copied().zip(slopes),
    )
}

/// Centered moving average over `window_years`.
///
/// Odd windows weight `2h+1` points equally. Even windows span `h = w/2`
/// on each side with half weight on the two outermost points, so the
/// kernel stays centered on the output year. Near the edges the half-width
/// shrinks to the distance to the nearest end and the kernel becomes uniform.
pub fn rolling_mean(series: &AnnualSeries, window_years: usize) -> Result<AnnualSeries> {
    if window_years == 0 {
        return Err(Error::Domain("rolling window must be at least 1 year".into()));
    }
    if series.is_empty() {
        return Err(Error::InsufficientData("rolling mean of empty series".into()));
    }
    if let Some(missing) = series.first_gap() {
        return Err(Error::Gap { missing });
    }
    let v = &series.values;
    let n = v.len();
    let half = window_years / 2;
    let even = window_years % 2 == 0;
    let smoothed = (0..n).map(|i| {
        let reach = half.min(i).min(n - 1 - i);
        if reach == half && even && half > 0 {
            let inner: f64 = v[i + 1 - half..i + half].iter().sum();
            (inner + 0.5 * (v[i - half] + v[i + half])) / window_years as f64
        } else {
            let span = &v[i - reach..=i + reach];
            span.iter().sum::<f64>() / span.len() as f64
        }
    });
    AnnualSeries::new(
        series.label.clone(),
        series.unit,
        series.years.iter().copied().zip(smoothed),
    )
}

/// Wealth series initialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WealthInit {
    /// Integrated from the first year of a (possibly sparse) historical GDP record.
    IntegratedFromEpoch,
    /// Anchored to power production through a known power-to-wealth ratio.
    CalibratedFromLambda,
}

/// Cumulative real GDP, annual, with information on how it was anchored.
#[derive(Debug, Clone, PartialEq)]
pub struct WealthSeries {
    series: AnnualSeries,
    init_mode: WealthInit,
    init_year: i32,
    init_value: f64,
}

impl WealthSeries {
    pub fn new(series: AnnualSeries, init_mode: WealthInit) -> Result<Self> {
        series.unit.expect(Unit::WealthTrillionUsd2005)?;
        let (init_year, init_value) = series
            .points()
            .next()
            .ok_or_else(|| Error::InsufficientData("empty wealth series".into()))?;
        Ok(Self {
            series,
            init_mode,
            init_year,
            init_value,
        })
    }

    pub fn series(&self) -> &AnnualSeries {
        &self.series
    }

    pub fn init_mode(&self) -> WealthInit {
        self.init_mode
    }

    pub fn init_year(&self) -> i32 {
        self.init_year
    }

    pub fn init_value(&self) -> f64 {
        self.init_value
    }
}
