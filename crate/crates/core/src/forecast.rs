//! Closed-form projections of wealth, power, GDP and rate of return.
//!
//! With a constant innovation rate `1/τ`, the rate of return grows as
//! `η(t) = η₀ e^{t/τ}` and wealth follows
//! `C(t) = C₀ exp(η₀ τ (e^{t/τ} − 1))`. Without innovation this reduces to
//! `C₀ e^{η₀ t}`.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::series::{log_derivative, rolling_mean, AnnualSeries};
use crate::units::Unit;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    /// Wealth at the start, trillion 2005 USD.
    pub c0: f64,
    /// Rate of return at the start, per-year fraction.
    pub eta0: f64,
    /// Characteristic innovation time in years; `None` means no innovation.
    pub tau_eta: Option<f64>,
    /// Power-to-wealth ratio, W per thousand 2005 USD.
    pub lambda0: f64,
    pub start_year: i32,
    pub horizon_years: u32,
    pub step_years: f64,
}

impl Scenario {
    pub fn new(c0: f64, eta0: f64, lambda0: f64, start_year: i32) -> Self {
        Self {
            c0,
            eta0,
            tau_eta: None,
            lambda0,
            start_year,
            horizon_years: 10,
            step_years: 1.0,
        }
    }

    pub fn with_tau_eta(mut self, tau_eta: Option<f64>) -> Self {
        self.tau_eta = tau_eta;
        self
    }

    pub fn with_horizon(mut self, years: u32) -> Self {
        self.horizon_years = years;
        self
    }

    pub fn with_step(mut self, step_years: f64) -> Self {
        self.step_years = step_years;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("c0", self.c0)?;
        positive("eta0", self.eta0)?;
        positive("lambda0", self.lambda0)?;
        positive("step_years", self.step_years)?;
        if let Some(tau) = self.tau_eta {
            if tau == 0.0 || !tau.is_finite() {
                return Err(Error::Domain(format!(
                    "tau_eta must be finite and nonzero, got {tau}"
                )));
            }
        }
        Ok(())
    }

    /// Wealth after `t` years.
    pub fn wealth_at(&self, t: f64) -> f64 {
        self.c0 * self.log_growth(t).exp()
    }

    /// Rate of return after `t` years.
    pub fn eta_at(&self, t: f64) -> f64 {
        match self.tau_eta {
            Some(tau) => self.eta0 * (t / tau).exp(),
            None => self.eta0,
        }
    }

    /// `ln(C(t)/C₀)`.
    pub fn log_growth(&self, t: f64) -> f64 {
        match self.tau_eta {
            Some(tau) => self.eta0 * tau * (t / tau).exp_m1(),
            None => self.eta0 * t,
        }
    }

    fn step_count(&self) -> usize {
        (f64::from(self.horizon_years) / self.step_years + 1e-9).floor() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForecastRow {
    /// Years since the scenario start.
    pub elapsed: f64,
    pub wealth: f64,
    pub power: f64,
    pub gdp: f64,
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForecastPath {
    pub rows: Vec<ForecastRow>,
    pub scenario: Scenario,
}

impl ForecastPath {
    pub fn year_of(&self, row: &ForecastRow) -> f64 {
        f64::from(self.scenario.start_year) + row.elapsed
    }

    pub fn last(&self) -> &ForecastRow {
        self.rows.last().expect("a path has at least the initial row")
    }

    fn column(&self, label: &str, unit: Unit, pick: impl Fn(&ForecastRow) -> f64) -> Result<AnnualSeries> {
        let step = self.scenario.step_years;
        if step.fract() != 0.0 {
            return Err(Error::Config(format!(
                "a {step}-year step does not fall on calendar years"
            )));
        }
        AnnualSeries::new(
            label,
            unit,
            self.rows
                .iter()
                .map(|r| (self.scenario.start_year + r.elapsed.round() as i32, pick(r))),
        )
    }

    pub fn wealth(&self) -> Result<AnnualSeries> {
        self.column("wealth", Unit::WealthTrillionUsd2005, |r| r.wealth)
    }

    pub fn power(&self) -> Result<AnnualSeries> {
        self.column("power", Unit::PowerTerawatt, |r| r.power)
    }

    pub fn gdp(&self) -> Result<AnnualSeries> {
        self.column("gdp", Unit::GdpTrillionUsd2005PerYear, |r| r.gdp)
    }

    pub fn eta(&self) -> Result<AnnualSeries> {
        self.column("eta", Unit::PerYearFraction, |r| r.eta)
    }
}

fn build_path(scenario: &Scenario, eval: impl Fn(f64) -> (f64, f64)) -> Result<ForecastPath> {
    let mut rows = Vec::with_capacity(scenario.step_count() + 1);
    for k in 0..=scenario.step_count() {
        let elapsed = k as f64 * scenario.step_years;
        let (wealth, eta) = eval(elapsed);
        let power = scenario.lambda0 * wealth * 1e-3;
        let gdp = eta * wealth;
        if ![wealth, eta, power, gdp].iter().all(|v| v.is_finite()) {
            return Err(Error::HorizonOverflow {
                year: f64::from(scenario.start_year) + elapsed,
            });
        }
        rows.push(ForecastRow {
            elapsed,
            wealth,
            power,
            gdp,
            eta,
        });
    }
    Ok(ForecastPath {
        rows,
        scenario: *scenario,
    })
}

/// Evaluates the super-exponential solution at every step of the horizon.
pub fn forecast(scenario: &Scenario) -> Result<ForecastPath> {
    scenario.validate()?;
    build_path(scenario, |t| (scenario.wealth_at(t), scenario.eta_at(t)))
}

/// Pure exponential growth at constant `η₀`. The scenario must not carry an innovation time.
pub fn forecast_limit_exponential(scenario: &Scenario) -> Result<ForecastPath> {
    scenario.validate()?;
    if scenario.tau_eta.is_some() {
        return Err(Error::Config(
            "the exponential limit applies to scenarios without innovation".into(),
        ));
    }
    build_path(scenario, |t| {
        (scenario.c0 * (scenario.eta0 * t).exp(), scenario.eta0)
    })
}

/// The same solution written with doubling times:
/// `C(t) = C₀ 2^{δη/(δC ln2) (2^{t/δη} − 1)}`, `η(t) = η₀ 2^{t/δη}`.
pub fn forecast_base2(scenario: &Scenario) -> Result<ForecastPath> {
    scenario.validate()?;
    let times = doubling_times(scenario.eta0, scenario.tau_eta)?;
    let delta_c = times.delta_c;
    build_path(scenario, |t| match times.delta_eta {
        Some(delta_eta) => {
            let coefficient = delta_eta / (delta_c * LN_2);
            let doublings = (t / delta_eta).exp2();
            (
                scenario.c0 * (coefficient * (doublings - 1.0)).exp2(),
                scenario.eta0 * doublings,
            )
        }
        None => (scenario.c0 * (t / delta_c).exp2(), scenario.eta0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoublingTimes {
    /// Years for wealth to double at the current rate of return.
    pub delta_c: f64,
    /// Years for the rate of return to double at the current innovation rate.
    pub delta_eta: Option<f64>,
}

pub fn doubling_times(eta: f64, tau_eta: Option<f64>) -> Result<DoublingTimes> {
    if !(eta > 0.0) {
        return Err(Error::Domain(format!(
            "doubling time needs a positive rate of return, got {eta}"
        )));
    }
    Ok(DoublingTimes {
        delta_c: LN_2 / eta,
        delta_eta: tau_eta.map(|tau| tau * LN_2),
    })
}

/// Doubling times through time from a rate-of-return series.
///
/// Both `η` and its local log-slope are smoothed with a centered running
/// mean of `window_years`. Years whose smoothed slope is not positive have
/// no rate-of-return doubling time and are left out of the second series.
pub fn doubling_time_series(
    eta_series: &AnnualSeries,
    window_years: usize,
) -> Result<(AnnualSeries, AnnualSeries)> {
    if eta_series.len() < window_years.max(2) {
        return Err(Error::InsufficientData(format!(
            "a {window_years}-year window needs at least {} points, found {}",
            window_years.max(2),
            eta_series.len()
        )));
    }
    let slope = log_derivative(eta_series)?;
    let eta_smooth = rolling_mean(eta_series, window_years)?;
    let slope_smooth = rolling_mean(&slope, window_years)?;
    let mut delta_c = Vec::with_capacity(eta_series.len());
    let mut delta_eta = Vec::new();
    for ((year, eta), (_, s)) in eta_smooth.points().zip(slope_smooth.points()) {
        let times = doubling_times(eta, (s > 0.0).then(|| 1.0 / s))?;
        delta_c.push((year, times.delta_c));
        if let Some(d) = times.delta_eta {
            delta_eta.push((year, d));
        }
    }
    Ok((
        AnnualSeries::new("delta_c_years", Unit::Years, delta_c)?,
        AnnualSeries::new("delta_eta_years", Unit::Years, delta_eta)?,
    ))
}
