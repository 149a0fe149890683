//! Reading and writing annual series files, and the bundled measured table.
//!
//! File format: UTF-8 text, LF or CRLF. Lines starting with `#` are
//! comments. A `# unit: <token>` comment is mandatory and names the unit of
//! the value column; multi-column tables declare `# unit.<column>: <token>`
//! per column instead. An optional header row starts with `year`. Data rows
//! are `year,value` (comma or tab separated).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::series::AnnualSeries;
use crate::units::{parse_file_unit, Unit};

/// Years at which the bundled measured table has values.
pub const TABLE1_YEARS: [i32; 9] = [1970, 1975, 1980, 1985, 1990, 1995, 2000, 2005, 2009];

const TABLE1_POWER: &str = include_str!("../data/table1_power.csv");
const TABLE1_GDP: &str = include_str!("../data/table1_gdp.csv");
const TABLE1_POWER_OVER_WEALTH: &str = include_str!("../data/table1_power_over_wealth.csv");
const TABLE1_RATE_OF_RETURN: &str = include_str!("../data/table1_rate_of_return.csv");

/// The four measured rows of the bundled table, in canonical units.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1 {
    pub power: AnnualSeries,
    pub gdp: AnnualSeries,
    /// Watts per thousand 2005 USD.
    pub power_over_wealth: AnnualSeries,
    /// Per-year fraction (printed as percent).
    pub rate_of_return: AnnualSeries,
}

impl Table1 {
    /// Wealth implied by the printed rows: power divided by the power/wealth ratio.
    pub fn implied_wealth(&self) -> Result<AnnualSeries> {
        Ok(self
            .power
            .checked_div(&self.power_over_wealth)?
            .with_label("implied_wealth"))
    }
}

pub fn builtin_table1() -> Table1 {
    let parse = |name: &str, text: &str, unit: Unit| {
        parse_series(text, Path::new(name), unit)
            .unwrap_or_else(|e| panic!("bundled table file {name} is invalid: {e}"))
    };
    Table1 {
        power: parse("table1_power.csv", TABLE1_POWER, Unit::PowerTerawatt)
            .with_label("power"),
        gdp: parse("table1_gdp.csv", TABLE1_GDP, Unit::GdpTrillionUsd2005PerYear)
            .with_label("gdp"),
        power_over_wealth: parse(
            "table1_power_over_wealth.csv",
            TABLE1_POWER_OVER_WEALTH,
            Unit::WattsPerThousandUsd2005,
        )
        .with_label("power_over_wealth"),
        rate_of_return: parse(
            "table1_rate_of_return.csv",
            TABLE1_RATE_OF_RETURN,
            Unit::PerYearFraction,
        )
        .with_label("rate_of_return"),
    }
}

/// A parsed file: one year column and any number of value columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Vec<String>,
    pub columns: Vec<Column>,
    pub years: Vec<i32>,
    path: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub unit: Option<(Unit, f64)>,
    /// `None` for an empty cell.
    pub cells: Vec<Option<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }

    /// Extracts one column as a series, skipping empty cells.
    pub fn series(&self, name: &str, expected: Unit) -> Result<AnnualSeries> {
        let column = self.column(name).ok_or_else(|| Error::Parse {
            path: self.path.clone(),
            line: 0,
            message: format!("no column named `{name}`"),
        })?;
        let (unit, scale) = column.unit.ok_or_else(|| Error::Parse {
            path: self.path.clone(),
            line: 0,
            message: format!("column `{name}` has no unit declaration"),
        })?;
        unit.expect(expected)?;
        let points: Vec<_> = self
            .years
            .iter()
            .zip(&column.cells)
            .filter_map(|(&y, c)| c.map(|v| (y, v * scale)))
            .collect();
        if points.is_empty() {
            return Err(Error::InsufficientData(format!(
                "{}: column `{name}` has no data rows",
                self.path.display()
            )));
        }
        AnnualSeries::new(name, unit, points)
    }
}

fn split_row(line: &str) -> Vec<&str> {
    let sep = if line.contains('\t') { '\t' } else { ',' };
    line.split(sep).map(str::trim).collect()
}

/// Parses the text of a series or table file. `path` is used in diagnostics only.
pub fn parse_table(text: &str, path: &Path) -> Result<Table> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut metadata = Vec::new();
    let mut default_unit = None;
    let mut column_units: BTreeMap<String, (Unit, f64)> = BTreeMap::new();
    let mut header: Option<Vec<String>> = None;
    let mut rows: Vec<(usize, i32, Vec<Option<f64>>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if let Some(comment) = line.trim_start().strip_prefix('#') {
            let comment = comment.trim();
            if let Some((key, value)) = comment.split_once(':') {
                let key = key.trim();
                let value = value.trim();
                if key == "unit" {
                    default_unit =
                        Some(parse_file_unit(value).map_err(|e| parse_err(lineno, e.to_string()))?);
                    continue;
                }
                if let Some(col) = key.strip_prefix("unit.") {
                    let unit =
                        parse_file_unit(value).map_err(|e| parse_err(lineno, e.to_string()))?;
                    column_units.insert(col.to_string(), unit);
                    continue;
                }
            }
            metadata.push(comment.to_string());
            continue;
        }
        let fields = split_row(line);
        if header.is_none() && rows.is_empty() && fields[0].eq_ignore_ascii_case("year") {
            header = Some(fields.iter().map(|s| s.to_string()).collect());
            continue;
        }
        if fields.len() < 2 {
            return Err(parse_err(lineno, format!("expected `year,value`, got `{}`", line.trim())));
        }
        let year: i32 = fields[0]
            .parse()
            .map_err(|_| parse_err(lineno, format!("invalid year `{}`", fields[0])))?;
        let cells = fields[1..]
            .iter()
            .map(|f| {
                if f.is_empty() {
                    Ok(None)
                } else {
                    f.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .map(Some)
                        .ok_or_else(|| parse_err(lineno, format!("invalid value `{f}`")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((lineno, year, cells));
    }

    let width = match &header {
        Some(h) => h.len() - 1,
        None => rows.first().map_or(1, |r| r.2.len()),
    };
    for (lineno, _, cells) in &rows {
        if cells.len() != width {
            return Err(parse_err(
                *lineno,
                format!("expected {width} value column(s), got {}", cells.len()),
            ));
        }
    }
    let names: Vec<String> = match header {
        Some(h) => h[1..].to_vec(),
        None if width == 1 => vec!["value".to_string()],
        None => (1..=width).map(|i| format!("value{i}")).collect(),
    };
    let columns = names
        .into_iter()
        .enumerate()
        .map(|(i, name)| {
            let unit = column_units
                .get(&name)
                .copied()
                .or(if width == 1 { default_unit } else { None });
            Column {
                unit,
                cells: rows.iter().map(|r| r.2[i]).collect(),
                name,
            }
        })
        .collect();
    Ok(Table {
        metadata,
        columns,
        years: rows.iter().map(|r| r.1).collect(),
        path: path.to_path_buf(),
    })
}

/// Parses a two-column series file and checks its declared unit.
pub fn parse_series(text: &str, path: &Path, expected: Unit) -> Result<AnnualSeries> {
    let table = parse_table(text, path)?;
    if table.columns.len() != 1 {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            message: format!(
                "expected a single value column, found {}",
                table.columns.len()
            ),
        });
    }
    let column = &table.columns[0];
    let (unit, scale) = column.unit.ok_or_else(|| Error::Parse {
        path: path.to_path_buf(),
        line: 1,
        message: "missing `# unit: <token>` header".into(),
    })?;
    unit.expect(expected)?;
    if table.years.is_empty() {
        return Err(Error::InsufficientData(format!(
            "{}: no data rows",
            path.display()
        )));
    }
    let mut points = Vec::with_capacity(table.years.len());
    for (&year, cell) in table.years.iter().zip(&column.cells) {
        let value = cell.ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            message: format!("empty value for {year}"),
        })?;
        points.push((year, value * scale));
    }
    let label = path
        .file_stem()
        .map_or_else(|| "series".to_string(), |s| s.to_string_lossy().into_owned());
    AnnualSeries::new(label, unit, points)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn load_series(path: &Path, expected_unit: Unit) -> Result<AnnualSeries> {
    parse_series(&read(path)?, path, expected_unit)
}

pub fn load_table(path: &Path) -> Result<Table> {
    parse_table(&read(path)?, path)
}

/// Number of significant digits used when writing values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// Shortest representation that parses back to the same `f64`.
    Full,
    Significant(usize),
}

/// Formats `x` with `digits` significant digits, fixed notation when
/// the magnitude allows, trailing zeros trimmed. Locale independent.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".into()
        } else {
            t.to_string()
        }
    } else {
        s
    }
}

pub fn format_value(x: f64, precision: Precision) -> String {
    match precision {
        Precision::Full => format!("{x:?}"),
        Precision::Significant(d) => format_significant(x, d),
    }
}

/// Column delimiter for written files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delimiter {
    #[default]
    Comma,
    Tab,
}

impl Delimiter {
    pub fn as_char(self) -> char {
        match self {
            Delimiter::Comma => ',',
            Delimiter::Tab => '\t',
        }
    }
}

/// Renders a series in the two-column file format.
pub fn write_series(
    series: &AnnualSeries,
    metadata: &[String],
    precision: Precision,
    delimiter: Delimiter,
) -> String {
    let d = delimiter.as_char();
    let mut out = String::new();
    for m in metadata {
        let _ = writeln!(out, "# {m}");
    }
    let _ = writeln!(out, "# unit: {}", series.unit());
    let _ = writeln!(out, "year{d}{}", series.label());
    for (year, value) in series.points() {
        let _ = writeln!(out, "{year}{d}{}", format_value(value, precision));
    }
    out
}

/// Builder for multi-column output files.
#[derive(Debug, Clone)]
pub struct TableWriter {
    metadata: Vec<String>,
    columns: Vec<(String, String, usize)>,
    rows: Vec<(i32, Vec<Option<f64>>)>,
    delimiter: Delimiter,
}

impl TableWriter {
    pub fn new(delimiter: Delimiter) -> Self {
        Self {
            metadata: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            delimiter,
        }
    }

    pub fn meta(mut self, line: impl Into<String>) -> Self {
        self.metadata.push(line.into());
        self
    }

    /// Adds a column with its unit token and number of significant digits.
    /// Display tokens such as `percent_per_year` are accepted.
    pub fn column(mut self, name: &str, unit: impl std::fmt::Display, digits: usize) -> Self {
        self.columns.push((name.to_string(), unit.to_string(), digits));
        self
    }

    pub fn row(&mut self, year: i32, cells: Vec<Option<f64>>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push((year, cells));
    }

    pub fn render(&self) -> String {
        let d = self.delimiter.as_char();
        let mut out = String::new();
        for m in &self.metadata {
            let _ = writeln!(out, "# {m}");
        }
        for (name, unit, _) in &self.columns {
            let _ = writeln!(out, "# unit.{name}: {unit}");
        }
        out.push_str("year");
        for (name, _, _) in &self.columns {
            out.push(d);
            out.push_str(name);
        }
        out.push('\n');
        for (year, cells) in &self.rows {
            let _ = write!(out, "{year}");
            for (cell, (_, _, digits)) in cells.iter().zip(&self.columns) {
                out.push(d);
                if let Some(v) = cell {
                    out.push_str(&format_significant(*v, *digits));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Input files for a fitting run.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetManifest {
    pub gdp_path: PathBuf,
    pub power_path: PathBuf,
    pub historical_gdp_path: Option<PathBuf>,
    /// Declared unit per series role (`gdp`, `power`, `historical_gdp`).
    pub unit_declarations: BTreeMap<String, Unit>,
}

/// Loaded and validated inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub gdp: AnnualSeries,
    pub power: AnnualSeries,
    pub historical_gdp: Option<AnnualSeries>,
}

/// Minimum run of consecutive years that GDP and power must share.
pub const MIN_OVERLAP_YEARS: usize = 10;

impl DatasetManifest {
    pub fn new(gdp_path: impl Into<PathBuf>, power_path: impl Into<PathBuf>) -> Self {
        let unit_declarations = [
            ("gdp".to_string(), Unit::GdpTrillionUsd2005PerYear),
            ("power".to_string(), Unit::PowerTerawatt),
            ("historical_gdp".to_string(), Unit::GdpTrillionUsd2005PerYear),
        ]
        .into_iter()
        .collect();
        Self {
            gdp_path: gdp_path.into(),
            power_path: power_path.into(),
            historical_gdp_path: None,
            unit_declarations,
        }
    }

    pub fn with_historical_gdp(mut self, path: impl Into<PathBuf>) -> Self {
        self.historical_gdp_path = Some(path.into());
        self
    }

    fn role_unit(role: &str) -> Option<Unit> {
        match role {
            "gdp" | "historical_gdp" => Some(Unit::GdpTrillionUsd2005PerYear),
            "power" => Some(Unit::PowerTerawatt),
            _ => None,
        }
    }

    /// Checks every declared unit against the unit its role requires.
    pub fn validate(&self) -> Result<()> {
        for (role, &declared) in &self.unit_declarations {
            let expected = Self::role_unit(role)
                .ok_or_else(|| Error::Config(format!("unknown series role `{role}`")))?;
            declared.expect(expected)?;
        }
        Ok(())
    }

    pub fn load(&self) -> Result<Dataset> {
        self.validate()?;
        let gdp = load_series(&self.gdp_path, Unit::GdpTrillionUsd2005PerYear)?.with_label("gdp");
        let power = load_series(&self.power_path, Unit::PowerTerawatt)?.with_label("power");
        let historical_gdp = self
            .historical_gdp_path
            .as_deref()
            .map(|p| load_series(p, Unit::GdpTrillionUsd2005PerYear))
            .transpose()?
            .map(|s| s.with_label("historical_gdp"));
        let run = longest_common_run(&gdp, &power);
        if run < MIN_OVERLAP_YEARS {
            return Err(Error::InsufficientData(format!(
                "GDP and power share {run} consecutive years, at least {MIN_OVERLAP_YEARS} are required"
            )));
        }
        Ok(Dataset {
            gdp,
            power,
            historical_gdp,
        })
    }
}

/// Length of the longest run of consecutive years present in both series.
pub fn longest_common_run(a: &AnnualSeries, b: &AnnualSeries) -> usize {
    let mut best = 0;
    let mut run = 0;
    let mut prev = None;
    for &y in a.years() {
        if b.get(y).is_none() {
            run = 0;
            prev = None;
            continue;
        }
        run = if prev == Some(y - 1) { run + 1 } else { 1 };
        prev = Some(y);
        best = best.max(run);
    }
    best
}
