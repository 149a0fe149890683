#ifndef THERMOGROWTH_H
#define THERMOGROWTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TgStatus {
  TG_STATUS_OK = 0,
  TG_STATUS_NULL_POINTER = 1,
  TG_STATUS_INVALID_ARGUMENT = 2,
  TG_STATUS_UNIT_MISMATCH = 3,
  TG_STATUS_OUT_OF_RANGE = 4,
  TG_STATUS_INSUFFICIENT_DATA = 5,
  TG_STATUS_DOMAIN = 6,
  TG_STATUS_PARSE = 7,
  TG_STATUS_IO = 8,
  TG_STATUS_CONFIG = 9,
  TG_STATUS_HORIZON_OVERFLOW = 10,
  TG_STATUS_PANIC = 99,
} TgStatus;

typedef enum TgUnit {
  TG_UNIT_POWER_TERAWATT = 0,
  TG_UNIT_GDP_TRILLION_USD2005_PER_YEAR = 1,
  TG_UNIT_WEALTH_TRILLION_USD2005 = 2,
  TG_UNIT_WATTS_PER_THOUSAND_USD2005 = 3,
  TG_UNIT_PER_YEAR_FRACTION = 4,
  TG_UNIT_USD2005_PER_JOULE = 5,
  TG_UNIT_YEARS = 6,
  TG_UNIT_DIMENSIONLESS = 7,
} TgUnit;

typedef enum TgFitSeries {
  TG_FIT_SERIES_LAMBDA = 0,
  TG_FIT_SERIES_ETA = 1,
  TG_FIT_SERIES_ENERGY_PRODUCTIVITY = 2,
  TG_FIT_SERIES_WEALTH = 3,
} TgFitSeries;

typedef enum TgForecastForm {
  /**
   * Double-exponential closed form.
   */
  TG_FORECAST_FORM_NATURAL = 0,
  /**
   * The same solution written with doubling times.
   */
  TG_FORECAST_FORM_BASE2 = 1,
  /**
   * Constant rate of return; the scenario must have `tau_eta = NaN`.
   */
  TG_FORECAST_FORM_EXPONENTIAL_LIMIT = 2,
} TgForecastForm;

/**
 * Opaque fit result: wealth, λ, rate of return, productivity and innovation.
 */
typedef struct TgAnalysis TgAnalysis;

/**
 * Opaque forecast path.
 */
typedef struct TgForecast TgForecast;

/**
 * Opaque annual series.
 */
typedef struct TgSeries TgSeries;

/**
 * Scalar results of a fit. `tau_eta` is NaN when there is no innovation.
 */
typedef struct TgFitSummary {
  int32_t window_start;
  int32_t window_end;
  double wealth_start;
  double lambda_mean;
  double lambda_rel_std;
  double eta_mean;
  double f_mean;
  double innovation_rate;
  double tau_eta;
  double predicted_gdp_growth;
} TgFitSummary;

/**
 * Forecast inputs. Set `tau_eta` to NaN for no innovation.
 */
typedef struct TgScenario {
  double c0;
  double eta0;
  double tau_eta;
  double lambda0;
  int32_t start_year;
  uint32_t horizon_years;
  double step_years;
} TgScenario;

typedef struct TgForecastRow {
  double elapsed;
  double year;
  double wealth;
  double power;
  double gdp;
  double eta;
} TgForecastRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static NUL-terminated string.
 */
const char *tg_version(void);

/**
 * Message for the last failed call on this thread. The pointer stays valid
 * until the next `tg_*` call on the same thread.
 */
const char *tg_last_error_message(void);

/**
 * # Safety
 * `years` and `values` must point to `len` readable elements; `label` must be
 * NUL-terminated or null.
 */
enum TgStatus tg_series_new(const char *label,
                            enum TgUnit unit,
                            const int32_t *years,
                            const double *values,
                            size_t len,
                            struct TgSeries **out);

/**
 * Loads a `year,value` file with a `# unit:` header.
 *
 * # Safety
 * `path` must be a NUL-terminated UTF-8 string.
 */
enum TgStatus tg_series_load_csv(const char *path, enum TgUnit unit, struct TgSeries **out);

/**
 * # Safety
 * `series` must be a live handle or null.
 */
size_t tg_series_len(const struct TgSeries *series);

/**
 * # Safety
 * `series` must be a live handle; `unit_out` must be writable.
 */
enum TgStatus tg_series_unit(const struct TgSeries *series, enum TgUnit *unit_out);

/**
 * # Safety
 * `series` must be a live handle; `year` and `value` must be writable.
 */
enum TgStatus tg_series_point(const struct TgSeries *series,
                              size_t index,
                              int32_t *year,
                              double *value);

/**
 * # Safety
 * `series` must have come from this library and not been freed already.
 */
void tg_series_free(struct TgSeries *series);

/**
 * The four rows of the bundled measured table. Rates are per-year fractions.
 *
 * # Safety
 * All four output pointers must be writable.
 */
enum TgStatus tg_builtin_table1(struct TgSeries **power,
                                struct TgSeries **gdp,
                                struct TgSeries **power_over_wealth,
                                struct TgSeries **rate_of_return);

/**
 * Fits the bundled table over `start..=end` with its default calibration.
 *
 * # Safety
 * `out` must be writable.
 */
enum TgStatus tg_analysis_builtin(int32_t start, int32_t end, struct TgAnalysis **out);

/**
 * Fits user series. With `historical_gdp` non-null wealth is integrated from
 * its first year; otherwise it is anchored at `start` as `a(start)/lambda0`.
 *
 * # Safety
 * `gdp` and `power` must be live handles; `historical_gdp` a live handle or null.
 */
enum TgStatus tg_analysis_new(const struct TgSeries *gdp,
                              const struct TgSeries *power,
                              const struct TgSeries *historical_gdp,
                              double lambda0,
                              int32_t start,
                              int32_t end,
                              struct TgAnalysis **out);

/**
 * # Safety
 * `analysis` must be a live handle; `summary` must be writable.
 */
enum TgStatus tg_analysis_summary(const struct TgAnalysis *analysis, struct TgFitSummary *summary);

/**
 * Copies one fitted series into a new handle.
 *
 * # Safety
 * `analysis` must be a live handle; `out` must be writable.
 */
enum TgStatus tg_analysis_series(const struct TgAnalysis *analysis,
                                 enum TgFitSeries which,
                                 struct TgSeries **out);

/**
 * # Safety
 * `analysis` must have come from this library and not been freed already.
 */
void tg_analysis_free(struct TgAnalysis *analysis);

/**
 * # Safety
 * `scenario` must be readable; `out` must be writable.
 */
enum TgStatus tg_forecast(const struct TgScenario *scenario,
                          enum TgForecastForm form,
                          struct TgForecast **out);

/**
 * # Safety
 * `path` must be a live handle or null.
 */
size_t tg_forecast_len(const struct TgForecast *path);

/**
 * # Safety
 * `path` must be a live handle; `row` must be writable.
 */
enum TgStatus tg_forecast_row(const struct TgForecast *path,
                              size_t index,
                              struct TgForecastRow *row);

/**
 * # Safety
 * `path` must have come from this library and not been freed already.
 */
void tg_forecast_free(struct TgForecast *path);

/**
 * Doubling times of wealth and of the rate of return. Pass `tau_eta = NaN`
 * for no innovation; `delta_eta` is then set to NaN.
 *
 * # Safety
 * `delta_c` and `delta_eta` must be writable.
 */
enum TgStatus tg_doubling_times(double eta, double tau_eta, double *delta_c, double *delta_eta);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THERMOGROWTH_H */
