use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use thermogrowth::ingest::{load_series, load_table, Delimiter};
use thermogrowth::report::render_doubling_table;
use thermogrowth::{AnnualSeries, Unit};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thermogrowth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn summary_value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no `{key}` in summary"))
        .parse()
        .unwrap()
}

fn out_dir(dir: &tempfile::TempDir) -> &str {
    dir.path().to_str().unwrap()
}

#[test]
fn fit_builtin_summary() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["fit", "--builtin-table1", "--out", out_dir(&dir)]);
    let summary = fs::read_to_string(dir.path().join("summary.txt")).unwrap();
    let lambda = summary_value(&summary, "lambda_mean_w_per_thousand_usd2005");
    assert!((6.7..=7.5).contains(&lambda));
    assert!(summary_value(&summary, "lambda_rel_std") <= 0.05);

    let line = summary.lines().find(|l| l.starts_with("decomposition = ")).unwrap();
    let nums: Vec<f64> = line
        .trim_start_matches("decomposition = ")
        .trim_end_matches(" %/yr")
        .split(&['+', '='][..])
        .map(|s| s.trim().parse().unwrap())
        .collect();
    assert_eq!(nums.len(), 3);
    assert!((nums[0] + nums[1] - nums[2]).abs() < 1e-9);
    assert_eq!(nums[2], summary_value(&summary, "predicted_gdp_growth_pct_per_year"));

    let lambda_series = load_series(&dir.path().join("lambda_series.csv"), Unit::WattsPerThousandUsd2005).unwrap();
    assert_eq!(lambda_series.len(), 40);
}

#[test]
fn missing_input_names_the_path() {
    let out = run(&["fit", "--gdp", "/no/such/gdp.csv", "--power", "/no/such/power.csv"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/no/such/gdp.csv"), "{err}");
    assert_eq!(err.trim().lines().count(), 1);
}

#[test]
fn forecast_without_innovation() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["forecast", "--builtin-table1", "--tau-eta", "none", "--out", out_dir(&dir)]);
    let t = load_table(&dir.path().join("forecast.csv")).unwrap();
    assert!(t.metadata.iter().any(|m| m.contains("tau_eta=none") && m.contains("start_year=2009")));
    let eta = t.series("eta", Unit::PerYearFraction).unwrap();
    let wealth = t.series("wealth", Unit::WealthTrillionUsd2005).unwrap();
    assert_eq!(eta.last_year(), Some(2019));
    assert!((eta.values().last().unwrap() * 100.0 - 2.14).abs() < 1e-9);
    let ratio = wealth.value_at(2019).unwrap() / wealth.value_at(2009).unwrap();
    assert!((ratio / 0.214f64.exp() - 1.0).abs() < 1e-10);
}

#[test]
fn forecast_horizon_zero_and_fitted_innovation() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["forecast", "--builtin-table1", "--horizon", "0", "--out", out_dir(&dir)]);
    let t = load_table(&dir.path().join("forecast.csv")).unwrap();
    assert_eq!(t.years, vec![2009]);
    assert!((t.series("power", Unit::PowerTerawatt).unwrap().values()[0] - 16.1).abs() < 1e-9);

    run_ok(&["forecast", "--builtin-table1", "--horizon", "10", "--out", out_dir(&dir)]);
    let t = load_table(&dir.path().join("forecast.csv")).unwrap();
    let eta = t.series("eta", Unit::PerYearFraction).unwrap();
    assert_eq!(eta.len(), 11);
    assert!(eta.values().windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn forecast_overflow_names_year() {
    let out = run(&["forecast", "--builtin-table1", "--tau-eta", "5", "--horizon", "400", "--out", "/tmp"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("at year 2053"));
}

#[test]
fn table1_reconstruction() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["table1", "--builtin-table1", "--index-1970", "--out", out_dir(&dir)]);
    let t = load_table(&dir.path().join("table1_reconstruction.csv")).unwrap();
    assert_eq!(t.years.len(), 9);
    let ratio_dev = t.series("power_over_wealth_dev", Unit::WattsPerThousandUsd2005).unwrap();
    assert!(ratio_dev.values().iter().all(|&d| d <= 0.1));
    let ror_dev = t.series("rate_of_return_dev", Unit::PerYearFraction).unwrap();
    assert!(ror_dev.values().iter().all(|&d| d <= 0.0002));
    let index = t.series("wealth_index", Unit::Dimensionless).unwrap();
    assert_eq!(index.value_at(1970).unwrap(), 100.0);
}

#[test]
fn figure2_rows() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&["figure2", "--builtin-table1", "--out", out_dir(&dir)]);
    let t = load_table(&dir.path().join("figure2_data.csv")).unwrap();
    let dc = t.series("delta_c_years", Unit::Years).unwrap();
    assert!((dc.value_at(2009).unwrap() - 32.4).abs() < 0.5);
    assert!((dc.value_at(1970).unwrap() - 51.0).abs() < 1.0);
    assert!(dc.value_at(1970).unwrap() > dc.value_at(2009).unwrap());
}

#[test]
fn constant_eta_has_no_innovation_column() {
    let eta = AnnualSeries::new("eta", Unit::PerYearFraction, (1970..=2009).map(|y| (y, 0.02))).unwrap();
    let text = render_doubling_table(&eta, Delimiter::Comma, vec![]).unwrap();
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(data.len(), 40);
    assert!(data.iter().all(|l| l.ends_with(',')));
}

fn outputs(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let bytes = fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    files.sort();
    files
}

#[test]
fn outputs_are_deterministic_and_reload() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        for cmd in ["fit", "forecast", "table1", "figure2"] {
            run_ok(&[cmd, "--builtin-table1", "--out", out_dir(dir)]);
        }
    }
    let (fa, fb) = (outputs(a.path()), outputs(b.path()));
    assert_eq!(fa.len(), 5);
    for ((pa, ba), (_, bb)) in fa.iter().zip(&fb) {
        assert_eq!(ba, bb, "{} differs between runs", pa.display());
    }
    for (path, _) in fa.iter().filter(|(p, _)| p.extension().is_some_and(|e| e == "csv")) {
        let t = load_table(path).unwrap();
        for c in &t.columns {
            let (unit, _) = c.unit.expect("every column declares a unit");
            if !c.name.ends_with("_dev") {
                t.series(&c.name, unit).unwrap();
            }
            // values survive a second trip at 12 significant digits
            for x in c.cells.iter().flatten() {
                let y: f64 = thermogrowth::ingest::format_significant(*x, 12).parse().unwrap();
                assert!((x - y).abs() <= 1e-11 * x.abs(), "{}: {x} vs {y}", c.name);
            }
        }
    }
}

#[test]
fn user_files_with_history_and_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, unit: &str, pts: Vec<(i32, f64)>| {
        let mut s = format!("# unit: {unit}\nyear,value\n");
        for (y, v) in pts {
            s += &format!("{y},{v}\n");
        }
        let p = dir.path().join(name);
        fs::write(&p, s).unwrap();
        p
    };
    let gdp = write("gdp.csv", "gdp_trillion_usd2005_per_year", (1970..=2009).map(|y| (y, 15.3 * 1.03f64.powi(y - 1970))).collect());
    let power = write("power.csv", "power_terawatt", (1970..=2009).map(|y| (y, 7.2 * 1.021f64.powi(y - 1970))).collect());
    let hist = write("hist.csv", "gdp_trillion_usd2005_per_year", vec![(1, 0.2), (1500, 0.4), (1820, 0.7), (1900, 2.0), (1950, 5.3)]);
    let out = dir.path().join("out");
    let args = |cmd: &'static str| {
        vec![
            cmd.to_string(), "--gdp".into(), gdp.display().to_string(),
            "--power".into(), power.display().to_string(),
            "--historical-gdp".into(), hist.display().to_string(),
            "--format".into(), "tsv".into(), "--out".into(), out.display().to_string(),
        ]
    };
    for cmd in ["fit", "forecast", "figure2"] {
        let a = args(cmd);
        run_ok(&a.iter().map(String::as_str).collect::<Vec<_>>());
    }
    let summary = fs::read_to_string(out.join("summary.txt")).unwrap();
    assert!(summary.contains("integrated_from_epoch: from 1"));
    let lambda = load_series(&out.join("lambda_series.tsv"), Unit::WattsPerThousandUsd2005).unwrap();
    assert_eq!(lambda.len(), 40);
    assert!(load_table(&out.join("forecast.tsv")).unwrap().column("wealth").is_some());
}

#[test]
fn requires_a_data_source() {
    assert!(!run(&["fit"]).status.success());
    assert!(!run(&["fit", "--builtin-table1", "--window", "1970-2009"]).status.success());
}
