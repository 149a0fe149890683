//! Wealth accumulation, the power-to-wealth constant, rate of return,
//! energy productivity, innovation and GDP growth.
//!
//! Wealth `C` is the running integral of real GDP `Y`. Primary power `a`
//! is tied to it by `a = λC`, so the rate of return `η = Y/C` is also the
//! growth rate of both `C` and `a`, and `η = λf` with `f = Y/a`.

use crate::error::{Error, Result};
use crate::series::{
    cumulative_integral, interpolate, log_derivative, year_range, AnnualSeries, Interpolation,
    WealthInit, WealthSeries, YearWindow,
};
use crate::units::{Unit, SECONDS_PER_YEAR};

/// Power-to-wealth ratio used to anchor wealth when nothing else is known,
/// in Watts per thousand 2005 USD.
pub const DEFAULT_LAMBDA: f64 = 7.1;

/// How the power-to-wealth ratio anchors the level of wealth.
#[derive(Debug, Clone, PartialEq)]
pub enum LambdaAnchor {
    /// `C(start) = a(start) / λ₀`.
    AtStart(f64),
    /// Least-squares offset against `a(y) / λ(y)` at every year where a
    /// measured ratio is available inside the window.
    Measured(AnnualSeries),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub power: AnnualSeries,
    pub lambda: LambdaAnchor,
}

/// Resamples `series` onto the annual grid of `window` (log-linear).
pub fn annualize(series: &AnnualSeries, window: YearWindow) -> Result<AnnualSeries> {
    window.check_covered_by(series)?;
    interpolate(series, &window.years(), Interpolation::LogLinear)
}

/// Builds annual wealth over `window` by integrating GDP.
///
/// In integrated mode the integral starts at the first year of the merged
/// historical and annual GDP record. In calibrated mode the level is fixed
/// from power production and the power-to-wealth ratio.
pub fn build_wealth(
    gdp: &AnnualSeries,
    historical_gdp: Option<&AnnualSeries>,
    mode: WealthInit,
    calibration: Option<&Calibration>,
    window: YearWindow,
) -> Result<WealthSeries> {
    gdp.unit().expect(Unit::GdpTrillionUsd2005PerYear)?;
    let series = match mode {
        WealthInit::IntegratedFromEpoch => {
            let historical = historical_gdp.ok_or_else(|| {
                Error::Config("integrated wealth needs a historical GDP series".into())
            })?;
            let merged = gdp.merged_over(historical)?;
            let epoch = merged.first_year().unwrap_or(window.start);
            if epoch >= window.start {
                return Err(Error::Config(format!(
                    "historical GDP starts in {epoch}, it must precede the window start {}",
                    window.start
                )));
            }
            window.check_covered_by(&merged)?;
            let dense = interpolate(&merged, &year_range(epoch, window.end), Interpolation::LogLinear)?;
            cumulative_integral(&dense, epoch, 0.0)?.window(window.start, window.end)?
        }
        WealthInit::CalibratedFromLambda => {
            let cal = calibration.ok_or_else(|| {
                Error::Config("calibrated wealth needs power production and λ".into())
            })?;
            let dense = annualize(gdp, window)?;
            let increments = cumulative_integral(&dense, window.start, 0.0)?;
            let start = calibrated_start(cal, &increments, window)?;
            increments.map_values(Unit::WealthTrillionUsd2005, |v| v + start)?
        }
    };
    WealthSeries::new(series.with_label("wealth"), mode)
}

fn calibrated_start(cal: &Calibration, increments: &AnnualSeries, window: YearWindow) -> Result<f64> {
    cal.power.unit().expect(Unit::PowerTerawatt)?;
    let power = annualize(&cal.power, window)?;
    match &cal.lambda {
        LambdaAnchor::AtStart(lambda0) => {
            if !(*lambda0 > 0.0 && lambda0.is_finite()) {
                return Err(Error::Domain(format!("λ₀ must be positive, got {lambda0}")));
            }
            Ok(power.value_at(window.start)? * 1e3 / lambda0)
        }
        LambdaAnchor::Measured(ratio) => {
            ratio.unit().expect(Unit::WattsPerThousandUsd2005)?;
            let offsets: Vec<f64> = ratio
                .points()
                .filter(|&(y, _)| window.contains(y))
                .map(|(y, r)| -> Result<f64> {
                    Ok(power.value_at(y)? * 1e3 / r - increments.value_at(y)?)
                })
                .collect::<Result<_>>()?;
            if offsets.is_empty() {
                return Err(Error::Config(format!(
                    "no measured power-to-wealth ratio inside {window}"
                )));
            }
            Ok(offsets.iter().sum::<f64>() / offsets.len() as f64)
        }
    }
}

/// Energy productivity `f = Y/a` in dollars per Joule, on the years both series share.
pub fn energy_productivity(gdp: &AnnualSeries, power: &AnnualSeries) -> Result<AnnualSeries> {
    let common: Vec<i32> = gdp
        .years()
        .iter()
        .copied()
        .filter(|&y| power.get(y).is_some())
        .collect();
    if common.is_empty() {
        return Err(Error::InsufficientData("GDP and power share no years".into()));
    }
    let pick = |s: &AnnualSeries| {
        AnnualSeries::new(s.label(), s.unit(), common.iter().map(|&y| (y, s.get(y).unwrap())))
    };
    Ok(pick(gdp)?.checked_div(&pick(power)?)?.with_label("energy_productivity"))
}

/// `η = λf` with λ in W per thousand dollars and f in dollars per Joule.
pub fn rate_of_return_from_productivity(lambda: f64, productivity: f64) -> f64 {
    lambda * 1e-3 * productivity * SECONDS_PER_YEAR
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelFit {
    pub lambda_series: AnnualSeries,
    pub lambda_mean: f64,
    /// Population standard deviation of λ divided by its mean.
    pub lambda_rel_std: f64,
    pub eta_series: AnnualSeries,
    pub f_series: AnnualSeries,
    pub gdp: AnnualSeries,
    pub power: AnnualSeries,
    pub wealth: WealthSeries,
    pub window: YearWindow,
}

impl ModelFit {
    pub fn eta_mean(&self) -> f64 {
        self.eta_series.mean().unwrap_or(f64::NAN)
    }

    pub fn f_mean(&self) -> f64 {
        self.f_series.mean().unwrap_or(f64::NAN)
    }

    /// Mean of the centered log-growth rate of GDP over the window.
    pub fn observed_gdp_growth(&self) -> Result<f64> {
        Ok(log_derivative(&self.gdp)?.mean().unwrap_or(f64::NAN))
    }
}

/// Pointwise λ = a/C over `window`, with η = Y/C and f = Y/a alongside.
pub fn fit_lambda(
    gdp: &AnnualSeries,
    power: &AnnualSeries,
    wealth: &WealthSeries,
    window: YearWindow,
) -> Result<ModelFit> {
    window.check_covered_by(wealth.series())?;
    let wealth_w = wealth.series().window(window.start, window.end)?;
    if !wealth_w.is_dense() {
        return Err(Error::Gap {
            missing: wealth_w.years().windows(2).find(|w| w[1] != w[0] + 1).map_or(window.start, |w| w[0] + 1),
        });
    }
    let power = annualize(power, window)?.with_label("power");
    let gdp = annualize(gdp, window)?.with_label("gdp");
    let lambda_series = power.checked_div(&wealth_w)?.with_label("lambda");
    let eta_series = gdp.checked_div(&wealth_w)?.with_label("eta");
    let f_series = energy_productivity(&gdp, &power)?;
    let lambda_mean = lambda_series.mean().unwrap_or(f64::NAN);
    let lambda_rel_std = lambda_series.std_dev().unwrap_or(f64::NAN) / lambda_mean;
    Ok(ModelFit {
        lambda_series,
        lambda_mean,
        lambda_rel_std,
        eta_series,
        f_series,
        gdp,
        power,
        wealth: wealth.clone(),
        window,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnovationFit {
    /// Slope of `ln η` against calendar year.
    pub innovation_rate: f64,
    /// `1 / innovation_rate`; absent when the slope is zero.
    pub tau_eta: Option<f64>,
    pub eta_mean: f64,
    pub fit_window: YearWindow,
    /// Root mean square residual of `ln η` about the trend.
    pub residual_rms: f64,
    center_year: f64,
    log_eta_center: f64,
}

impl InnovationFit {
    /// Fitted trend value of `ln η` at `year`.
    pub fn log_eta_trend(&self, year: f64) -> f64 {
        self.log_eta_center + self.innovation_rate * (year - self.center_year)
    }
}

/// Slopes smaller than this are treated as no innovation.
const ZERO_SLOPE: f64 = 1e-12;

/// Ordinary least squares of `ln η` on year over the points inside `window`.
pub fn fit_innovation(eta: &AnnualSeries, window: YearWindow) -> Result<InnovationFit> {
    let points: Vec<(f64, f64)> = eta
        .points()
        .filter(|&(y, _)| window.contains(y))
        .map(|(y, v)| (f64::from(y), v))
        .collect();
    if points.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "innovation fit needs at least 3 points in {window}, found {}",
            points.len()
        )));
    }
    if let Some(&(y, v)) = points.iter().find(|p| p.1 <= 0.0) {
        return Err(Error::Domain(format!("η must be positive, got {v} at {y}")));
    }
    let n = points.len() as f64;
    let eta_mean = points.iter().map(|p| p.1).sum::<f64>() / n;
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let mut slope = sxy / sxx;
    if slope.abs() < ZERO_SLOPE {
        slope = 0.0;
    }
    let residual_rms = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - y_mean - slope * (x - x_mean)).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(InnovationFit {
        innovation_rate: slope,
        tau_eta: (slope != 0.0).then(|| 1.0 / slope),
        eta_mean,
        fit_window: window,
        residual_rms,
        center_year: x_mean,
        log_eta_center: y_mean,
    })
}

/// GDP growth as rate of return plus innovation rate, all per-year fractions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthDecomposition {
    pub rate_of_return: f64,
    pub innovation_rate: f64,
    pub predicted_gdp_growth: f64,
}

impl GrowthDecomposition {
    pub fn new(rate_of_return: f64, innovation_rate: f64) -> Self {
        Self {
            rate_of_return,
            innovation_rate,
            predicted_gdp_growth: rate_of_return + innovation_rate,
        }
    }
}

pub fn gdp_growth_decomposition(
    fit: &ModelFit,
    innovation: &InnovationFit,
) -> Result<GrowthDecomposition> {
    if fit.window != innovation.fit_window {
        return Err(Error::Config(format!(
            "λ fit covers {} but innovation fit covers {}",
            fit.window, innovation.fit_window
        )));
    }
    Ok(GrowthDecomposition::new(
        innovation.eta_mean,
        innovation.innovation_rate,
    ))
}

/// A complete fit: wealth, λ, innovation and the growth decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub fit: ModelFit,
    pub innovation: InnovationFit,
    pub decomposition: GrowthDecomposition,
}

pub fn analyze(
    gdp: &AnnualSeries,
    power: &AnnualSeries,
    wealth: &WealthSeries,
    window: YearWindow,
) -> Result<Analysis> {
    let fit = fit_lambda(gdp, power, wealth, window)?;
    let innovation = fit_innovation(&fit.eta_series, window)?;
    let decomposition = gdp_growth_decomposition(&fit, &innovation)?;
    Ok(Analysis {
        fit,
        innovation,
        decomposition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::builtin_table1;
    use proptest::prelude::*;

    fn series(unit: Unit, pts: impl IntoIterator<Item = (i32, f64)>) -> AnnualSeries {
        AnnualSeries::new("s", unit, pts).unwrap()
    }

    fn w(start: i32, end: i32) -> YearWindow {
        YearWindow::new(start, end).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn calibrated_start_from_lambda0() {
        let t = builtin_table1();
        let cal = Calibration {
            power: t.power.clone(),
            lambda: LambdaAnchor::AtStart(6.4),
        };
        let wealth = build_wealth(&t.gdp, None, WealthInit::CalibratedFromLambda, Some(&cal), w(1970, 2009)).unwrap();
        assert!(rel(wealth.init_value(), 1125.0) < 1e-12);
        assert_eq!(wealth.init_year(), 1970);
        assert_eq!(wealth.series().value_at(1970).unwrap(), wealth.init_value());
        // 15.3 / 1125 = 1.36 %/yr against printed 1.37
        assert!((15.3 / wealth.init_value() * 100.0 - 1.36).abs() < 0.005);
    }

    #[test]
    fn calibrated_2009_state() {
        let t = builtin_table1();
        let cal = Calibration {
            power: t.power.clone(),
            lambda: LambdaAnchor::AtStart(7.0),
        };
        let wealth = build_wealth(&t.gdp, None, WealthInit::CalibratedFromLambda, Some(&cal), w(2009, 2009)).unwrap();
        assert!(rel(wealth.init_value(), 2300.0) < 1e-12);
        let eta = 49.1 / wealth.init_value() * 100.0;
        assert!((eta - 2.14).abs() <= 0.01 + 1e-9);
    }

    #[test]
    fn wealth_configuration_errors() {
        let t = builtin_table1();
        assert!(matches!(
            build_wealth(&t.gdp, None, WealthInit::CalibratedFromLambda, None, w(1970, 2009)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            build_wealth(&t.gdp, None, WealthInit::IntegratedFromEpoch, None, w(1970, 2009)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn integrated_wealth_includes_history() {
        let gdp = series(Unit::GdpTrillionUsd2005PerYear, (1970..=1980).map(|y| (y, 10.0)));
        let hist = series(Unit::GdpTrillionUsd2005PerYear, [(1900, 10.0), (1950, 10.0)]);
        let wealth = build_wealth(&gdp, Some(&hist), WealthInit::IntegratedFromEpoch, None, w(1970, 1980)).unwrap();
        assert_eq!(wealth.init_mode(), WealthInit::IntegratedFromEpoch);
        assert!((wealth.init_value() - 700.0).abs() < 1e-9);
        assert!((wealth.series().value_at(1980).unwrap() - 800.0).abs() < 1e-9);
    }

    #[test]
    fn wealth_is_non_decreasing() {
        let t = builtin_table1();
        let cal = Calibration {
            power: t.power.clone(),
            lambda: LambdaAnchor::Measured(t.power_over_wealth.clone()),
        };
        let wealth = build_wealth(&t.gdp, None, WealthInit::CalibratedFromLambda, Some(&cal), w(1970, 2009)).unwrap();
        assert!(wealth.series().values().windows(2).all(|p| p[1] > p[0]));
    }

    #[test]
    fn lambda_of_exact_proportional_power() {
        let wealth_s = series(Unit::WealthTrillionUsd2005, (2000..=2020).map(|y| (y, 1000.0 * 1.02f64.powi(y - 2000))));
        let power = wealth_s.map_values(Unit::PowerTerawatt, |c| 7.1 * c / 1e3).unwrap();
        let gdp = wealth_s.map_values(Unit::GdpTrillionUsd2005PerYear, |c| 0.02 * c).unwrap();
        let wealth = WealthSeries::new(wealth_s.clone(), WealthInit::CalibratedFromLambda).unwrap();
        let fit = fit_lambda(&gdp, &power, &wealth, w(2000, 2020)).unwrap();
        assert!(rel(fit.lambda_mean, 7.1) < 1e-12);
        assert!(fit.lambda_rel_std < 1e-12);

        let doubled = WealthSeries::new(wealth_s.scaled(2.0).unwrap(), WealthInit::CalibratedFromLambda).unwrap();
        let fit2 = fit_lambda(&gdp, &power, &doubled, w(2000, 2020)).unwrap();
        assert!(rel(fit2.lambda_mean, fit.lambda_mean / 2.0) < 1e-12);

        assert!(matches!(
            fit_lambda(&gdp, &power, &wealth, w(2010, 2030)),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn innovation_of_exact_exponential() {
        let eta = series(Unit::PerYearFraction, (1970..=2009).map(|y| (y, 0.0137 * (0.0093 * f64::from(y - 1970)).exp())));
        let fit = fit_innovation(&eta, w(1970, 2009)).unwrap();
        assert!((fit.innovation_rate - 0.0093).abs() < 1e-10);
        assert!(rel(fit.tau_eta.unwrap(), 1.0 / 0.0093) < 1e-9);
        for end in [1970.0, 2009.0] {
            let observed = eta.value_at(end as i32).unwrap().ln();
            assert!((fit.log_eta_trend(end) - observed).abs() <= fit.residual_rms + 1e-12);
        }
    }

    #[test]
    fn innovation_of_printed_rate_row() {
        let t = builtin_table1();
        let fit = fit_innovation(&t.rate_of_return, w(1970, 2009)).unwrap();
        let endpoint_oracle = (2.14f64 / 1.37).ln() / 39.0;
        assert!((endpoint_oracle - 0.0114).abs() < 1e-4);
        assert!((0.008..=0.013).contains(&fit.innovation_rate), "{}", fit.innovation_rate);
    }

    #[test]
    fn innovation_edge_cases() {
        let flat = series(Unit::PerYearFraction, (1970..=1980).map(|y| (y, 0.02)));
        let fit = fit_innovation(&flat, w(1970, 1980)).unwrap();
        assert_eq!(fit.innovation_rate, 0.0);
        assert_eq!(fit.tau_eta, None);

        let neg = series(Unit::PerYearFraction, [(1970, 0.01), (1971, -0.01), (1972, 0.01)]);
        assert!(matches!(fit_innovation(&neg, w(1970, 1972)), Err(Error::Domain(_))));
        let short = series(Unit::PerYearFraction, [(1970, 0.01), (1971, 0.01)]);
        assert!(matches!(fit_innovation(&short, w(1970, 1972)), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn decomposition_sums() {
        let d = GrowthDecomposition::new(0.0187, 0.0093);
        assert!((d.predicted_gdp_growth * 100.0 - 2.80).abs() < 1e-12);
        assert_eq!(GrowthDecomposition::new(0.0187, 0.0).predicted_gdp_growth, 0.0187);
    }

    #[test]
    fn decomposition_rejects_mismatched_windows() {
        let t = builtin_table1();
        let cal = Calibration { power: t.power.clone(), lambda: LambdaAnchor::AtStart(6.4) };
        let wealth = build_wealth(&t.gdp, None, WealthInit::CalibratedFromLambda, Some(&cal), w(1970, 2009)).unwrap();
        let fit = fit_lambda(&t.gdp, &t.power, &wealth, w(1970, 2009)).unwrap();
        let inn = fit_innovation(&fit.eta_series, w(1980, 2009)).unwrap();
        assert!(matches!(gdp_growth_decomposition(&fit, &inn), Err(Error::Config(_))));
    }

    #[test]
    fn productivity_examples() {
        let gdp = series(Unit::GdpTrillionUsd2005PerYear, [(1970, 15.3)]);
        let power = series(Unit::PowerTerawatt, [(1970, 7.2)]);
        let f = energy_productivity(&gdp, &power).unwrap();
        let oracle = 15.3e12 / 3.15569e7 / 7.2e12;
        assert!(rel(f.values()[0], oracle) < 1e-14);
        assert!((f.values()[0] - 6.73e-8).abs() < 0.01e-8);

        let f2 = energy_productivity(&gdp.scaled(2.0).unwrap(), &power).unwrap();
        assert_eq!(f2.values()[0], 2.0 * f.values()[0]);

        // η/λ consistency
        let oracle: f64 = (0.0187 / 3.15569e7) / 7.1e-3;
        assert!((oracle - 8.34e-8).abs() < 0.01e-8);
        assert!(rel(rate_of_return_from_productivity(7.1, oracle), 0.0187) < 1e-14);
    }

    proptest! {
        #[test]
        fn eta_equals_lambda_times_f(
            growth in 0.0f64..0.05, c0 in 100.0f64..5000.0, lam in 3.0f64..12.0, n in 5i32..50
        ) {
            let gdp = series(Unit::GdpTrillionUsd2005PerYear, (0..n).map(|i| (2000 + i, 0.02 * c0 * (growth * f64::from(i)).exp())));
            let power = series(Unit::PowerTerawatt, (0..n).map(|i| (2000 + i, lam * c0 / 1e3 * (1.0 + 0.01 * f64::from(i % 3)))));
            let cal = Calibration { power: power.clone(), lambda: LambdaAnchor::AtStart(lam) };
            let window = w(2000, 2000 + n - 1);
            let wealth = build_wealth(&gdp, None, WealthInit::CalibratedFromLambda, Some(&cal), window).unwrap();
            let fit = fit_lambda(&gdp, &power, &wealth, window).unwrap();
            let implied = fit.lambda_series.checked_mul(&fit.f_series).unwrap();
            prop_assert_eq!(implied.unit(), Unit::PerYearFraction);
            for (a, b) in implied.values().iter().zip(fit.eta_series.values()) {
                prop_assert!(rel(*a, *b) < 1e-12);
            }
        }

        #[test]
        fn gdp_scaling_keeps_eta_in_integrated_mode(k in 0.1f64..10.0) {
            let gdp = series(Unit::GdpTrillionUsd2005PerYear, (1970..=2000).map(|y| (y, 10.0 * 1.03f64.powi(y - 1970))));
            let hist = series(Unit::GdpTrillionUsd2005PerYear, [(1800, 0.5), (1900, 2.0), (1950, 5.0)]);
            let power = series(Unit::PowerTerawatt, (1970..=2000).map(|y| (y, 5.0 + 0.1 * f64::from(y - 1970))));
            let window = w(1970, 2000);
            let base = build_wealth(&gdp, Some(&hist), WealthInit::IntegratedFromEpoch, None, window).unwrap();
            let scaled = build_wealth(&gdp.scaled(k).unwrap(), Some(&hist.scaled(k).unwrap()), WealthInit::IntegratedFromEpoch, None, window).unwrap();
            let f0 = fit_lambda(&gdp, &power, &base, window).unwrap();
            let f1 = fit_lambda(&gdp.scaled(k).unwrap(), &power, &scaled, window).unwrap();
            for (a, b) in f0.eta_series.values().iter().zip(f1.eta_series.values()) {
                prop_assert!(rel(*b, *a) < 1e-12);
            }
            prop_assert!(rel(f1.lambda_mean, f0.lambda_mean / k) < 1e-12);
        }

        #[test]
        fn power_locked_to_wealth_grows_at_same_rate(lam in 1.0f64..20.0, g in 0.001f64..0.06) {
            let c = series(Unit::WealthTrillionUsd2005, (0..30).map(|i| (1990 + i, 500.0 * (g * f64::from(i)).exp() + f64::from(i))));
            let a = c.map_values(Unit::PowerTerawatt, |v| lam * v / 1e3).unwrap();
            let ga = log_derivative(&a).unwrap();
            let gc = log_derivative(&c).unwrap();
            for (x, y) in ga.values().iter().zip(gc.values()) {
                prop_assert!(rel(*x, *y) < 1e-12);
            }
        }

        #[test]
        fn innovation_recovers_tau(tau in 10.0f64..500.0, eta0 in 0.001f64..0.05) {
            let eta = series(Unit::PerYearFraction, (1950..=2010).map(|y| (y, eta0 * (f64::from(y - 1950) / tau).exp())));
            let fit = fit_innovation(&eta, w(1950, 2010)).unwrap();
            prop_assert!(rel(fit.tau_eta.unwrap(), tau) < 1e-8);
        }
    }
}
