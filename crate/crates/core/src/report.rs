//! Command implementations: each command renders its files in memory and
//! then writes them to the output directory.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::forecast::{doubling_time_series, forecast, ForecastPath, Scenario};
use crate::ingest::{
    builtin_table1, format_significant, write_series, DatasetManifest, Delimiter, Precision,
    Table1, TableWriter, TABLE1_YEARS,
};
use crate::model::{analyze, build_wealth, Analysis, Calibration, LambdaAnchor, DEFAULT_LAMBDA};
use crate::series::{AnnualSeries, WealthInit, YearWindow};
use crate::units::Unit;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Significant digits for values in output files.
pub const VALUE_DIGITS: usize = 12;
/// Significant digits for deviation columns.
pub const DEVIATION_DIGITS: usize = 4;
/// Running-mean window for doubling times.
pub const DOUBLING_WINDOW_YEARS: usize = 10;
pub const DEFAULT_HORIZON_YEARS: u32 = 10;

/// Span of the bundled table.
pub const TABLE1_WINDOW: YearWindow = YearWindow {
    start: 1970,
    end: 2009,
};

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    BuiltinTable1,
    Files(DatasetManifest),
}

/// Innovation time used by `forecast`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum TauSetting {
    /// Take `τη` from the innovation fit.
    #[default]
    Fitted,
    /// No innovation: pure exponential growth.
    Disabled,
    Years(f64),
}

impl std::str::FromStr for TauSetting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fit" | "fitted" => Ok(TauSetting::Fitted),
            "none" | "inf" | "infinity" => Ok(TauSetting::Disabled),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite() && *v != 0.0)
                .map(TauSetting::Years)
                .ok_or_else(|| {
                    Error::Config(format!(
                        "--tau-eta expects years, `none` or `fit`, got `{s}`"
                    ))
                }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScenarioOverrides {
    pub eta0: Option<f64>,
    pub tau_eta: TauSetting,
    pub horizon_years: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub data: DataSource,
    pub fit_window: Option<YearWindow>,
    /// Anchors wealth to `a(start)/λ₀` instead of the default calibration.
    pub lambda0: Option<f64>,
    pub forecast: ScenarioOverrides,
    pub output_dir: PathBuf,
    pub output_format: Delimiter,
    pub index_1970: bool,
}

impl RunConfig {
    pub fn builtin(output_dir: impl Into<PathBuf>) -> Self {
        Self {
            data: DataSource::BuiltinTable1,
            fit_window: None,
            lambda0: None,
            forecast: ScenarioOverrides::default(),
            output_dir: output_dir.into(),
            output_format: Delimiter::Comma,
            index_1970: false,
        }
    }

    fn extension(&self) -> &'static str {
        match self.output_format {
            Delimiter::Comma => "csv",
            Delimiter::Tab => "tsv",
        }
    }
}

/// Fitted state shared by every command.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub analysis: Analysis,
    pub table1: Option<Table1>,
    pub wealth_note: String,
}

fn overlap_window(a: &AnnualSeries, b: &AnnualSeries) -> Result<YearWindow> {
    let start = a.first_year().max(b.first_year());
    let end = a.last_year().min(b.last_year());
    match (start, end) {
        (Some(s), Some(e)) if s <= e => YearWindow::new(s, e),
        _ => Err(Error::InsufficientData("GDP and power do not overlap".into())),
    }
}

/// Loads the inputs, builds wealth and runs every fit over the window.
pub fn prepare(config: &RunConfig, window: Option<YearWindow>) -> Result<Prepared> {
    let window = window.or(config.fit_window);
    match &config.data {
        DataSource::BuiltinTable1 => {
            let t = builtin_table1();
            let window = window.unwrap_or(TABLE1_WINDOW);
            let (lambda, wealth_note) = match config.lambda0 {
                Some(l) => (
                    LambdaAnchor::AtStart(l),
                    format!("calibrated_from_lambda: C({}) = a/λ0, λ0 = {l}", window.start),
                ),
                None => (
                    LambdaAnchor::Measured(t.power_over_wealth.clone()),
                    "calibrated_from_lambda: least-squares anchor to measured power/wealth".into(),
                ),
            };
            let cal = Calibration {
                power: t.power.clone(),
                lambda,
            };
            let wealth = build_wealth(&t.gdp, None, WealthInit::CalibratedFromLambda, Some(&cal), window)?;
            let analysis = analyze(&t.gdp, &t.power, &wealth, window)?;
            Ok(Prepared {
                analysis,
                table1: Some(t),
                wealth_note,
            })
        }
        DataSource::Files(manifest) => {
            let data = manifest.load()?;
            let window = match window {
                Some(w) => w,
                None => overlap_window(&data.gdp, &data.power)?,
            };
            let (wealth, wealth_note) = match &data.historical_gdp {
                Some(hist) => (
                    build_wealth(&data.gdp, Some(hist), WealthInit::IntegratedFromEpoch, None, window)?,
                    format!(
                        "integrated_from_epoch: from {}",
                        hist.first_year().unwrap_or(window.start)
                    ),
                ),
                None => {
                    let l = config.lambda0.unwrap_or(DEFAULT_LAMBDA);
                    let cal = Calibration {
                        power: data.power.clone(),
                        lambda: LambdaAnchor::AtStart(l),
                    };
                    (
                        build_wealth(&data.gdp, None, WealthInit::CalibratedFromLambda, Some(&cal), window)?,
                        format!("calibrated_from_lambda: C({}) = a/λ0, λ0 = {l}", window.start),
                    )
                }
            };
            let analysis = analyze(&data.gdp, &data.power, &wealth, window)?;
            Ok(Prepared {
                analysis,
                table1: None,
                wealth_note,
            })
        }
    }
}

/// A rendered output file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

fn header(command: &str, prepared: &Prepared) -> Vec<String> {
    vec![
        format!("thermogrowth {VERSION}"),
        format!("command: {command}"),
        format!("window: {}", prepared.analysis.fit.window),
        format!("wealth: {}", prepared.wealth_note),
    ]
}

fn sig(x: f64) -> String {
    format_significant(x, VALUE_DIGITS)
}

pub fn render_fit(config: &RunConfig, prepared: &Prepared) -> Result<Vec<OutputFile>> {
    let Analysis {
        fit,
        innovation,
        decomposition,
    } = &prepared.analysis;
    let lambda_file = write_series(
        &fit.lambda_series,
        &header("fit", prepared),
        Precision::Significant(VALUE_DIGITS),
        config.output_format,
    );
    let pct = |x: f64| sig(100.0 * x);
    let mut s = String::new();
    for line in header("fit", prepared) {
        let _ = writeln!(s, "# {line}");
    }
    let wealth = fit.wealth.series();
    let _ = writeln!(s, "wealth_start_trillion_usd2005 = {}", sig(fit.wealth.init_value()));
    let _ = writeln!(
        s,
        "wealth_end_trillion_usd2005 = {}",
        sig(wealth.value_at(fit.window.end)?)
    );
    let _ = writeln!(s, "lambda_mean_w_per_thousand_usd2005 = {}", sig(fit.lambda_mean));
    let _ = writeln!(s, "lambda_rel_std = {}", sig(fit.lambda_rel_std));
    let _ = writeln!(s, "f_mean_usd2005_per_joule = {}", sig(fit.f_mean()));
    let _ = writeln!(s, "eta_mean_pct_per_year = {}", pct(decomposition.rate_of_return));
    let _ = writeln!(s, "innovation_rate_pct_per_year = {}", pct(decomposition.innovation_rate));
    let _ = writeln!(
        s,
        "tau_eta_years = {}",
        innovation.tau_eta.map_or_else(|| "none".to_string(), sig)
    );
    let _ = writeln!(s, "innovation_residual_rms = {}", sig(innovation.residual_rms));
    let _ = writeln!(
        s,
        "predicted_gdp_growth_pct_per_year = {}",
        pct(decomposition.predicted_gdp_growth)
    );
    let _ = writeln!(
        s,
        "observed_gdp_growth_pct_per_year = {}",
        pct(fit.observed_gdp_growth()?)
    );
    let _ = writeln!(
        s,
        "decomposition = {} + {} = {} %/yr",
        pct(decomposition.rate_of_return),
        pct(decomposition.innovation_rate),
        pct(decomposition.predicted_gdp_growth)
    );
    Ok(vec![
        OutputFile {
            name: format!("lambda_series.{}", config.extension()),
            contents: lambda_file,
        },
        OutputFile {
            name: "summary.txt".into(),
            contents: s,
        },
    ])
}

/// Scenario seeded from the last year of the fit window, with overrides applied.
pub fn resolve_scenario(config: &RunConfig, prepared: &Prepared) -> Result<Scenario> {
    let fit = &prepared.analysis.fit;
    let end = fit.window.end;
    let printed = prepared
        .table1
        .as_ref()
        .filter(|_| config.lambda0.is_none() && TABLE1_YEARS.contains(&end));
    let (c0, eta0, lambda0) = match printed {
        Some(t) => (
            t.implied_wealth()?.value_at(end)?,
            t.rate_of_return.value_at(end)?,
            t.power_over_wealth.value_at(end)?,
        ),
        None => (
            fit.wealth.series().value_at(end)?,
            fit.eta_series.value_at(end)?,
            fit.lambda_series.value_at(end)?,
        ),
    };
    let tau_eta = match config.forecast.tau_eta {
        TauSetting::Fitted => prepared.analysis.innovation.tau_eta,
        TauSetting::Disabled => None,
        TauSetting::Years(y) => Some(y),
    };
    let scenario = Scenario::new(c0, config.forecast.eta0.unwrap_or(eta0), lambda0, end)
        .with_tau_eta(tau_eta)
        .with_horizon(config.forecast.horizon_years.unwrap_or(DEFAULT_HORIZON_YEARS));
    scenario.validate()?;
    Ok(scenario)
}

pub fn render_forecast_path(config: &RunConfig, path: &ForecastPath, mut meta: Vec<String>) -> Result<OutputFile> {
    let s = &path.scenario;
    meta.push(format!(
        "scenario: c0={} eta0={} tau_eta={} lambda0={} start_year={} horizon_years={} step_years={}",
        sig(s.c0),
        sig(s.eta0),
        s.tau_eta.map_or_else(|| "none".to_string(), sig),
        sig(s.lambda0),
        s.start_year,
        s.horizon_years,
        sig(s.step_years)
    ));
    let mut w = meta.into_iter().fold(TableWriter::new(config.output_format), |w, m| w.meta(m))
        .column("wealth", Unit::WealthTrillionUsd2005, VALUE_DIGITS)
        .column("power", Unit::PowerTerawatt, VALUE_DIGITS)
        .column("gdp", Unit::GdpTrillionUsd2005PerYear, VALUE_DIGITS)
        .column("eta", Unit::PerYearFraction, VALUE_DIGITS);
    let years = path.wealth()?;
    for (row, year) in path.rows.iter().zip(years.years()) {
        w.row(*year, vec![Some(row.wealth), Some(row.power), Some(row.gdp), Some(row.eta)]);
    }
    Ok(OutputFile {
        name: format!("forecast.{}", config.extension()),
        contents: w.render(),
    })
}

pub fn render_forecast(config: &RunConfig, prepared: &Prepared) -> Result<Vec<OutputFile>> {
    let scenario = resolve_scenario(config, prepared)?;
    let path = forecast(&scenario)?;
    Ok(vec![render_forecast_path(config, &path, header("forecast", prepared))?])
}

pub fn render_table1(config: &RunConfig, prepared: &Prepared) -> Result<Vec<OutputFile>> {
    let fit = &prepared.analysis.fit;
    let printed = builtin_table1();
    let wealth = fit.wealth.series();
    let base = wealth.value_at(TABLE1_WINDOW.start)?;
    let mut w = header("table1", prepared)
        .into_iter()
        .fold(TableWriter::new(config.output_format), |w, m| w.meta(m))
        .meta("*_dev columns: absolute deviation from the printed table")
        .column("power", Unit::PowerTerawatt, VALUE_DIGITS)
        .column("power_dev", Unit::PowerTerawatt, DEVIATION_DIGITS)
        .column("power_over_wealth", Unit::WattsPerThousandUsd2005, VALUE_DIGITS)
        .column("power_over_wealth_dev", Unit::WattsPerThousandUsd2005, DEVIATION_DIGITS)
        .column("gdp", Unit::GdpTrillionUsd2005PerYear, VALUE_DIGITS)
        .column("gdp_dev", Unit::GdpTrillionUsd2005PerYear, DEVIATION_DIGITS)
        .column("rate_of_return", "percent_per_year", VALUE_DIGITS)
        .column("rate_of_return_dev", "percent_per_year", DEVIATION_DIGITS);
    w = if config.index_1970 {
        w.meta("wealth_index: wealth referenced to 100 in 1970")
            .column("wealth_index", Unit::Dimensionless, VALUE_DIGITS)
    } else {
        w.column("wealth", Unit::WealthTrillionUsd2005, VALUE_DIGITS)
    };
    for year in TABLE1_YEARS {
        let power = fit.power.value_at(year)?;
        let lambda = fit.lambda_series.value_at(year)?;
        let gdp = fit.gdp.value_at(year)?;
        let eta = fit.eta_series.value_at(year)? * 100.0;
        let c = wealth.value_at(year)?;
        w.row(
            year,
            vec![
                Some(power),
                Some((power - printed.power.value_at(year)?).abs()),
                Some(lambda),
                Some((lambda - printed.power_over_wealth.value_at(year)?).abs()),
                Some(gdp),
                Some((gdp - printed.gdp.value_at(year)?).abs()),
                Some(eta),
                Some((eta - printed.rate_of_return.value_at(year)? * 100.0).abs()),
                Some(if config.index_1970 { 100.0 * c / base } else { c }),
            ],
        );
    }
    Ok(vec![OutputFile {
        name: format!("table1_reconstruction.{}", config.extension()),
        contents: w.render(),
    }])
}

/// Doubling-time table from a rate-of-return series.
pub fn render_doubling_table(
    eta: &AnnualSeries,
    delimiter: Delimiter,
    meta: Vec<String>,
) -> Result<String> {
    let (delta_c, delta_eta) = doubling_time_series(eta, DOUBLING_WINDOW_YEARS)?;
    let mut w = meta
        .into_iter()
        .fold(TableWriter::new(delimiter), |w, m| w.meta(m))
        .meta(format!(
            "centered {DOUBLING_WINDOW_YEARS}-year running mean; empty delta_eta_years means no innovation"
        ))
        .column("delta_c_years", Unit::Years, VALUE_DIGITS)
        .column("delta_eta_years", Unit::Years, VALUE_DIGITS);
    for (year, dc) in delta_c.points() {
        w.row(year, vec![Some(dc), delta_eta.get(year)]);
    }
    Ok(w.render())
}

pub fn render_figure2(config: &RunConfig, prepared: &Prepared) -> Result<Vec<OutputFile>> {
    let contents = render_doubling_table(
        &prepared.analysis.fit.eta_series,
        config.output_format,
        header("figure2", prepared),
    )?;
    Ok(vec![OutputFile {
        name: format!("figure2_data.{}", config.extension()),
        contents,
    }])
}

pub fn write_outputs(dir: &Path, files: &[OutputFile]) -> Result<Vec<PathBuf>> {
    let io = |path: &Path, e: std::io::Error| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    files
        .iter()
        .map(|f| {
            let path = dir.join(&f.name);
            fs::write(&path, &f.contents).map_err(|e| io(&path, e))?;
            Ok(path)
        })
        .collect()
}

pub fn cmd_fit(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let prepared = prepare(config, None)?;
    write_outputs(&config.output_dir, &render_fit(config, &prepared)?)
}

pub fn cmd_forecast(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let prepared = prepare(config, None)?;
    write_outputs(&config.output_dir, &render_forecast(config, &prepared)?)
}

/// Always fits over 1970–2009, the span of the printed table.
pub fn cmd_table1(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let prepared = prepare(config, Some(TABLE1_WINDOW))?;
    write_outputs(&config.output_dir, &render_table1(config, &prepared)?)
}

pub fn cmd_figure2(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let prepared = prepare(config, None)?;
    write_outputs(&config.output_dir, &render_figure2(config, &prepared)?)
}
