//! C ABI for the thermogrowth toolkit.
//!
//! Series, fits and forecasts are opaque handles created by `tg_*_new` style
//! functions and released with the matching `tg_*_free`. Every fallible call
//! returns a [`TgStatus`]; on failure `tg_last_error_message` describes the
//! error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use thermogrowth::forecast::{
    doubling_times, forecast, forecast_base2, forecast_limit_exponential, ForecastPath, Scenario,
};
use thermogrowth::ingest::{builtin_table1, load_series};
use thermogrowth::model::{analyze, build_wealth, Analysis, Calibration, LambdaAnchor};
use thermogrowth::report::{prepare, RunConfig};
use thermogrowth::{AnnualSeries, Error, Unit, WealthInit, YearWindow};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnitMismatch = 3,
    OutOfRange = 4,
    InsufficientData = 5,
    Domain = 6,
    Parse = 7,
    Io = 8,
    Config = 9,
    HorizonOverflow = 10,
    Panic = 99,
}

impl From<&Error> for TgStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::UnitMismatch { .. } | Error::IncompatibleUnits { .. } | Error::UnknownUnit(_) => {
                TgStatus::UnitMismatch
            }
            Error::OutOfRange { .. } => TgStatus::OutOfRange,
            Error::Gap { .. } | Error::InsufficientData(_) => TgStatus::InsufficientData,
            Error::Domain(_) => TgStatus::Domain,
            Error::Validation(_) => TgStatus::InvalidArgument,
            Error::Parse { .. } => TgStatus::Parse,
            Error::Io { .. } => TgStatus::Io,
            Error::Config(_) => TgStatus::Config,
            Error::HorizonOverflow { .. } => TgStatus::HorizonOverflow,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TgUnit {
    PowerTerawatt = 0,
    GdpTrillionUsd2005PerYear = 1,
    WealthTrillionUsd2005 = 2,
    WattsPerThousandUsd2005 = 3,
    PerYearFraction = 4,
    Usd2005PerJoule = 5,
    Years = 6,
    Dimensionless = 7,
}

impl From<TgUnit> for Unit {
    fn from(u: TgUnit) -> Self {
        match u {
            TgUnit::PowerTerawatt => Unit::PowerTerawatt,
            TgUnit::GdpTrillionUsd2005PerYear => Unit::GdpTrillionUsd2005PerYear,
            TgUnit::WealthTrillionUsd2005 => Unit::WealthTrillionUsd2005,
            TgUnit::WattsPerThousandUsd2005 => Unit::WattsPerThousandUsd2005,
            TgUnit::PerYearFraction => Unit::PerYearFraction,
            TgUnit::Usd2005PerJoule => Unit::Usd2005PerJoule,
            TgUnit::Years => Unit::Years,
            TgUnit::Dimensionless => Unit::Dimensionless,
        }
    }
}

impl From<Unit> for TgUnit {
    fn from(u: Unit) -> Self {
        match u {
            Unit::PowerTerawatt => TgUnit::PowerTerawatt,
            Unit::GdpTrillionUsd2005PerYear => TgUnit::GdpTrillionUsd2005PerYear,
            Unit::WealthTrillionUsd2005 => TgUnit::WealthTrillionUsd2005,
            Unit::WattsPerThousandUsd2005 => TgUnit::WattsPerThousandUsd2005,
            Unit::PerYearFraction => TgUnit::PerYearFraction,
            Unit::Usd2005PerJoule => TgUnit::Usd2005PerJoule,
            Unit::Years => TgUnit::Years,
            Unit::Dimensionless => TgUnit::Dimensionless,
        }
    }
}

/// Opaque annual series.
pub struct TgSeries(AnnualSeries);

/// Opaque fit result: wealth, λ, rate of return, productivity and innovation.
pub struct TgAnalysis(Analysis);

/// Opaque forecast path.
pub struct TgForecast(ForecastPath);

/// Scalar results of a fit. `tau_eta` is NaN when there is no innovation.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TgFitSummary {
    pub window_start: i32,
    pub window_end: i32,
    pub wealth_start: f64,
    pub lambda_mean: f64,
    pub lambda_rel_std: f64,
    pub eta_mean: f64,
    pub f_mean: f64,
    pub innovation_rate: f64,
    pub tau_eta: f64,
    pub predicted_gdp_growth: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TgFitSeries {
    Lambda = 0,
    Eta = 1,
    EnergyProductivity = 2,
    Wealth = 3,
}

/// Forecast inputs. Set `tau_eta` to NaN for no innovation.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TgScenario {
    pub c0: f64,
    pub eta0: f64,
    pub tau_eta: f64,
    pub lambda0: f64,
    pub start_year: i32,
    pub horizon_years: u32,
    pub step_years: f64,
}

impl From<&TgScenario> for Scenario {
    fn from(s: &TgScenario) -> Self {
        Scenario::new(s.c0, s.eta0, s.lambda0, s.start_year)
            .with_tau_eta((!s.tau_eta.is_nan()).then_some(s.tau_eta))
            .with_horizon(s.horizon_years)
            .with_step(s.step_years)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TgForecastForm {
    /// Double-exponential closed form.
    Natural = 0,
    /// The same solution written with doubling times.
    Base2 = 1,
    /// Constant rate of return; the scenario must have `tau_eta = NaN`.
    ExponentialLimit = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TgForecastRow {
    pub elapsed: f64,
    pub year: f64,
    pub wealth: f64,
    pub power: f64,
    pub gdp: f64,
    pub eta: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), (TgStatus, String)>) -> TgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TgStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TgStatus::Panic
        }
    }
}

fn fail(e: Error) -> (TgStatus, String) {
    (TgStatus::from(&e), e.to_string())
}

fn null(what: &str) -> (TgStatus, String) {
    (TgStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (TgStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), (TgStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread. The pointer stays valid
/// until the next `tg_*` call on the same thread.
#[no_mangle]
pub extern "C" fn tg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `years` and `values` must point to `len` readable elements; `label` must be
/// NUL-terminated or null.
#[no_mangle]
pub unsafe extern "C" fn tg_series_new(
    label: *const c_char,
    unit: TgUnit,
    years: *const i32,
    values: *const f64,
    len: usize,
    out: *mut *mut TgSeries,
) -> TgStatus {
    guard(|| {
        if len > 0 && (years.is_null() || values.is_null()) {
            return Err(null("years/values"));
        }
        let label = if label.is_null() {
            "series".to_string()
        } else {
            CStr::from_ptr(label).to_string_lossy().into_owned()
        };
        let (ys, vs) = if len == 0 {
            (&[][..], &[][..])
        } else {
            (
                std::slice::from_raw_parts(years, len),
                std::slice::from_raw_parts(values, len),
            )
        };
        let s = AnnualSeries::new(label, unit.into(), ys.iter().copied().zip(vs.iter().copied()))
            .map_err(fail)?;
        put(out, TgSeries(s))
    })
}

/// Loads a `year,value` file with a `# unit:` header.
///
/// # Safety
/// `path` must be a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn tg_series_load_csv(
    path: *const c_char,
    unit: TgUnit,
    out: *mut *mut TgSeries,
) -> TgStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| (TgStatus::InvalidArgument, "path is not UTF-8".to_string()))?;
        let s = load_series(Path::new(path), unit.into()).map_err(fail)?;
        put(out, TgSeries(s))
    })
}

/// # Safety
/// `series` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tg_series_len(series: *const TgSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `series` must be a live handle; `unit_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_series_unit(series: *const TgSeries, unit_out: *mut TgUnit) -> TgStatus {
    guard(|| {
        let s = deref(series, "series")?;
        if unit_out.is_null() {
            return Err(null("unit_out"));
        }
        *unit_out = s.0.unit().into();
        Ok(())
    })
}

/// # Safety
/// `series` must be a live handle; `year` and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_series_point(
    series: *const TgSeries,
    index: usize,
    year: *mut i32,
    value: *mut f64,
) -> TgStatus {
    guard(|| {
        let s = deref(series, "series")?;
        if year.is_null() || value.is_null() {
            return Err(null("year/value"));
        }
        let (y, v) = s.0.points().nth(index).ok_or_else(|| {
            (
                TgStatus::OutOfRange,
                format!("index {index} beyond series length {}", s.0.len()),
            )
        })?;
        *year = y;
        *value = v;
        Ok(())
    })
}

/// # Safety
/// `series` must have come from this library and not been freed already.
#[no_mangle]
pub unsafe extern "C" fn tg_series_free(series: *mut TgSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// The four rows of the bundled measured table. Rates are per-year fractions.
///
/// # Safety
/// All four output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_builtin_table1(
    power: *mut *mut TgSeries,
    gdp: *mut *mut TgSeries,
    power_over_wealth: *mut *mut TgSeries,
    rate_of_return: *mut *mut TgSeries,
) -> TgStatus {
    guard(|| {
        if power.is_null() || gdp.is_null() || power_over_wealth.is_null() || rate_of_return.is_null() {
            return Err(null("output"));
        }
        let t = builtin_table1();
        put(power, TgSeries(t.power))?;
        put(gdp, TgSeries(t.gdp))?;
        put(power_over_wealth, TgSeries(t.power_over_wealth))?;
        put(rate_of_return, TgSeries(t.rate_of_return))
    })
}

/// Fits the bundled table over `start..=end` with its default calibration.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_analysis_builtin(start: i32, end: i32, out: *mut *mut TgAnalysis) -> TgStatus {
    guard(|| {
        let window = YearWindow::new(start, end).map_err(fail)?;
        let prepared = prepare(&RunConfig::builtin("."), Some(window)).map_err(fail)?;
        put(out, TgAnalysis(prepared.analysis))
    })
}

/// Fits user series. With `historical_gdp` non-null wealth is integrated from
/// its first year; otherwise it is anchored at `start` as `a(start)/lambda0`.
///
/// # Safety
/// `gdp` and `power` must be live handles; `historical_gdp` a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tg_analysis_new(
    gdp: *const TgSeries,
    power: *const TgSeries,
    historical_gdp: *const TgSeries,
    lambda0: f64,
    start: i32,
    end: i32,
    out: *mut *mut TgAnalysis,
) -> TgStatus {
    guard(|| {
        let gdp = &deref(gdp, "gdp")?.0;
        let power = &deref(power, "power")?.0;
        let window = YearWindow::new(start, end).map_err(fail)?;
        let wealth = match historical_gdp.as_ref() {
            Some(h) => build_wealth(gdp, Some(&h.0), WealthInit::IntegratedFromEpoch, None, window),
            None => {
                let cal = Calibration {
                    power: power.clone(),
                    lambda: LambdaAnchor::AtStart(lambda0),
                };
                build_wealth(gdp, None, WealthInit::CalibratedFromLambda, Some(&cal), window)
            }
        }
        .map_err(fail)?;
        let analysis = analyze(gdp, power, &wealth, window).map_err(fail)?;
        put(out, TgAnalysis(analysis))
    })
}

/// # Safety
/// `analysis` must be a live handle; `summary` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_analysis_summary(
    analysis: *const TgAnalysis,
    summary: *mut TgFitSummary,
) -> TgStatus {
    guard(|| {
        let a = &deref(analysis, "analysis")?.0;
        if summary.is_null() {
            return Err(null("summary"));
        }
        *summary = TgFitSummary {
            window_start: a.fit.window.start,
            window_end: a.fit.window.end,
            wealth_start: a.fit.wealth.init_value(),
            lambda_mean: a.fit.lambda_mean,
            lambda_rel_std: a.fit.lambda_rel_std,
            eta_mean: a.decomposition.rate_of_return,
            f_mean: a.fit.f_mean(),
            innovation_rate: a.decomposition.innovation_rate,
            tau_eta: a.innovation.tau_eta.unwrap_or(f64::NAN),
            predicted_gdp_growth: a.decomposition.predicted_gdp_growth,
        };
        Ok(())
    })
}

/// Copies one fitted series into a new handle.
///
/// # Safety
/// `analysis` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_analysis_series(
    analysis: *const TgAnalysis,
    which: TgFitSeries,
    out: *mut *mut TgSeries,
) -> TgStatus {
    guard(|| {
        let fit = &deref(analysis, "analysis")?.0.fit;
        let s = match which {
            TgFitSeries::Lambda => fit.lambda_series.clone(),
            TgFitSeries::Eta => fit.eta_series.clone(),
            TgFitSeries::EnergyProductivity => fit.f_series.clone(),
            TgFitSeries::Wealth => fit.wealth.series().clone(),
        };
        put(out, TgSeries(s))
    })
}

/// # Safety
/// `analysis` must have come from this library and not been freed already.
#[no_mangle]
pub unsafe extern "C" fn tg_analysis_free(analysis: *mut TgAnalysis) {
    if !analysis.is_null() {
        drop(Box::from_raw(analysis));
    }
}

/// # Safety
/// `scenario` must be readable; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_forecast(
    scenario: *const TgScenario,
    form: TgForecastForm,
    out: *mut *mut TgForecast,
) -> TgStatus {
    guard(|| {
        let s = Scenario::from(deref(scenario, "scenario")?);
        let path = match form {
            TgForecastForm::Natural => forecast(&s),
            TgForecastForm::Base2 => forecast_base2(&s),
            TgForecastForm::ExponentialLimit => forecast_limit_exponential(&s),
        }
        .map_err(fail)?;
        put(out, TgForecast(path))
    })
}

/// # Safety
/// `path` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tg_forecast_len(path: *const TgForecast) -> usize {
    path.as_ref().map_or(0, |p| p.0.rows.len())
}

/// # Safety
/// `path` must be a live handle; `row` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_forecast_row(
    path: *const TgForecast,
    index: usize,
    row: *mut TgForecastRow,
) -> TgStatus {
    guard(|| {
        let p = &deref(path, "path")?.0;
        if row.is_null() {
            return Err(null("row"));
        }
        let r = p.rows.get(index).ok_or_else(|| {
            (
                TgStatus::OutOfRange,
                format!("row {index} beyond path length {}", p.rows.len()),
            )
        })?;
        *row = TgForecastRow {
            elapsed: r.elapsed,
            year: p.year_of(r),
            wealth: r.wealth,
            power: r.power,
            gdp: r.gdp,
            eta: r.eta,
        };
        Ok(())
    })
}

/// # Safety
/// `path` must have come from this library and not been freed already.
#[no_mangle]
pub unsafe extern "C" fn tg_forecast_free(path: *mut TgForecast) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// Doubling times of wealth and of the rate of return. Pass `tau_eta = NaN`
/// for no innovation; `delta_eta` is then set to NaN.
///
/// # Safety
/// `delta_c` and `delta_eta` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tg_doubling_times(
    eta: f64,
    tau_eta: f64,
    delta_c: *mut f64,
    delta_eta: *mut f64,
) -> TgStatus {
    guard(|| {
        if delta_c.is_null() || delta_eta.is_null() {
            return Err(null("delta_c/delta_eta"));
        }
        let d = doubling_times(eta, (!tau_eta.is_nan()).then_some(tau_eta)).map_err(fail)?;
        *delta_c = d.delta_c;
        *delta_eta = d.delta_eta.unwrap_or(f64::NAN);
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn message() -> String {
        unsafe { CStr::from_ptr(tg_last_error_message()) }
            .to_string_lossy()
            .into_owned()
    }

    #[test]
    fn version_is_nul_terminated() {
        let v = unsafe { CStr::from_ptr(tg_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn series_handles() {
        let years = [2000, 2001, 2002];
        let values = [1.0, 2.0, 3.0];
        let mut s = ptr::null_mut();
        unsafe {
            assert_eq!(
                tg_series_new(ptr::null(), TgUnit::PowerTerawatt, years.as_ptr(), values.as_ptr(), 3, &mut s),
                TgStatus::Ok
            );
            assert_eq!(tg_series_len(s), 3);
            let (mut y, mut v) = (0, 0.0);
            assert_eq!(tg_series_point(s, 2, &mut y, &mut v), TgStatus::Ok);
            assert_eq!((y, v), (2002, 3.0));
            assert_eq!(tg_series_point(s, 3, &mut y, &mut v), TgStatus::OutOfRange);
            let mut unit = TgUnit::Years;
            assert_eq!(tg_series_unit(s, &mut unit), TgStatus::Ok);
            assert_eq!(unit, TgUnit::PowerTerawatt);
            tg_series_free(s);

            let bad = [0.0, 1.0, 1.0];
            let mut s2 = ptr::null_mut();
            assert_eq!(
                tg_series_new(ptr::null(), TgUnit::PowerTerawatt, years.as_ptr(), bad.as_ptr(), 3, &mut s2),
                TgStatus::InvalidArgument
            );
            assert!(s2.is_null());
            assert!(message().contains("strictly positive"));
        }
    }

    #[test]
    fn null_pointers_are_reported() {
        unsafe {
            assert_eq!(tg_series_point(ptr::null(), 0, ptr::null_mut(), ptr::null_mut()), TgStatus::NullPointer);
            assert_eq!(tg_analysis_builtin(1970, 2009, ptr::null_mut()), TgStatus::NullPointer);
            assert_eq!(tg_series_len(ptr::null()), 0);
            tg_series_free(ptr::null_mut());
        }
    }

    #[test]
    fn builtin_fit_summary() {
        let mut a = ptr::null_mut();
        let mut summary = TgFitSummary {
            window_start: 0,
            window_end: 0,
            wealth_start: 0.0,
            lambda_mean: 0.0,
            lambda_rel_std: 0.0,
            eta_mean: 0.0,
            f_mean: 0.0,
            innovation_rate: 0.0,
            tau_eta: 0.0,
            predicted_gdp_growth: 0.0,
        };
        unsafe {
            assert_eq!(tg_analysis_builtin(1970, 2009, &mut a), TgStatus::Ok);
            assert_eq!(tg_analysis_summary(a, &mut summary), TgStatus::Ok);
            let mut lambda = ptr::null_mut();
            assert_eq!(tg_analysis_series(a, TgFitSeries::Lambda, &mut lambda), TgStatus::Ok);
            assert_eq!(tg_series_len(lambda), 40);
            tg_series_free(lambda);
            tg_analysis_free(a);
            assert_eq!(tg_analysis_builtin(2009, 1970, &mut a), TgStatus::Config);
        }
        assert!((6.7..=7.5).contains(&summary.lambda_mean));
        assert!(summary.lambda_rel_std <= 0.05);
        assert_eq!(summary.predicted_gdp_growth, summary.eta_mean + summary.innovation_rate);
    }

    #[test]
    fn user_series_fit() {
        let mut t = [ptr::null_mut(); 4];
        unsafe {
            assert_eq!(tg_builtin_table1(&mut t[0], &mut t[1], &mut t[2], &mut t[3]), TgStatus::Ok);
            let mut a = ptr::null_mut();
            assert_eq!(tg_analysis_new(t[1], t[0], ptr::null(), 6.4, 1970, 2009, &mut a), TgStatus::Ok);
            let mut w = ptr::null_mut();
            assert_eq!(tg_analysis_series(a, TgFitSeries::Wealth, &mut w), TgStatus::Ok);
            let (mut y, mut v) = (0, 0.0);
            tg_series_point(w, 0, &mut y, &mut v);
            assert_eq!(y, 1970);
            assert!((v - 1125.0).abs() < 1e-9);
            tg_series_free(w);
            tg_analysis_free(a);
            for s in t {
                tg_series_free(s);
            }
        }
    }

    #[test]
    fn forecast_forms_agree() {
        let scenario = TgScenario {
            c0: 2300.0,
            eta0: 0.0214,
            tau_eta: 107.5,
            lambda0: 7.0,
            start_year: 2009,
            horizon_years: 50,
            step_years: 1.0,
        };
        unsafe {
            let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
            assert_eq!(tg_forecast(&scenario, TgForecastForm::Natural, &mut a), TgStatus::Ok);
            assert_eq!(tg_forecast(&scenario, TgForecastForm::Base2, &mut b), TgStatus::Ok);
            assert_eq!(tg_forecast_len(a), 51);
            let (mut ra, mut rb) = (TgForecastRow::default(), TgForecastRow::default());
            for i in 0..51 {
                tg_forecast_row(a, i, &mut ra);
                tg_forecast_row(b, i, &mut rb);
                assert!((ra.wealth - rb.wealth).abs() <= 1e-12 * ra.wealth);
            }
            assert_eq!(ra.year, 2059.0);
            let mut lim = ptr::null_mut();
            assert_eq!(tg_forecast(&scenario, TgForecastForm::ExponentialLimit, &mut lim), TgStatus::Config);
            let overflow = TgScenario { tau_eta: 5.0, horizon_years: 400, ..scenario };
            assert_eq!(tg_forecast(&overflow, TgForecastForm::Natural, &mut lim), TgStatus::HorizonOverflow);
            assert!(message().contains("2053"));
            tg_forecast_free(a);
            tg_forecast_free(b);
        }
    }

    #[test]
    fn doubling_times_via_ffi() {
        let (mut dc, mut de) = (0.0, 0.0);
        unsafe {
            assert_eq!(tg_doubling_times(0.0214, f64::NAN, &mut dc, &mut de), TgStatus::Ok);
            assert!((dc - 32.4).abs() < 0.1);
            assert!(de.is_nan());
            assert_eq!(tg_doubling_times(0.02, 100.0, &mut dc, &mut de), TgStatus::Ok);
            assert!((de - 69.31).abs() < 0.01);
            assert_eq!(tg_doubling_times(-1.0, f64::NAN, &mut dc, &mut de), TgStatus::Domain);
        }
    }
}
