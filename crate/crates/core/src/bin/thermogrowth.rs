use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use thermogrowth::ingest::{DatasetManifest, Delimiter};
use thermogrowth::report::{
    cmd_figure2, cmd_fit, cmd_forecast, cmd_table1, DataSource, RunConfig, ScenarioOverrides,
    TauSetting,
};
use thermogrowth::{Error, YearWindow};

#[derive(Parser)]
#[command(name = "thermogrowth", version, about = "Fit and forecast wealth, power and GDP")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit λ, rate of return and innovation rate; writes lambda_series and summary.txt
    Fit(Opts),
    /// Project wealth, power, GDP and rate of return; writes forecast
    Forecast(Opts),
    /// Rebuild the measured table at its nine years; writes table1_reconstruction
    Table1(Opts),
    /// Doubling times of wealth and of the rate of return; writes figure2_data
    Figure2(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Tsv,
}

#[derive(Args)]
struct Opts {
    /// Use the bundled table for 1970-2009
    #[arg(long, conflicts_with_all = ["gdp", "power"])]
    builtin_table1: bool,
    /// Annual GDP file (trillion 2005 USD per year)
    #[arg(long, requires = "power")]
    gdp: Option<PathBuf>,
    /// Annual primary power file (TW)
    #[arg(long, requires = "gdp")]
    power: Option<PathBuf>,
    /// Sparse historical GDP used to integrate wealth from its first year
    #[arg(long, requires = "gdp")]
    historical_gdp: Option<PathBuf>,
    /// Fit window, START:END
    #[arg(long)]
    window: Option<YearWindow>,
    /// Anchor wealth at the window start with this power/wealth ratio (W per thousand USD)
    #[arg(long)]
    lambda0: Option<f64>,
    /// Initial rate of return for the forecast, as a fraction per year
    #[arg(long)]
    eta0: Option<f64>,
    /// Innovation time in years, `none` for no innovation, or `fit`
    #[arg(long, default_value = "fit")]
    tau_eta: TauSetting,
    /// Forecast horizon in years
    #[arg(long)]
    horizon: Option<u32>,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Report wealth as an index with 1970 = 100
    #[arg(long)]
    index_1970: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl Opts {
    fn into_config(self) -> Result<RunConfig, Error> {
        let data = match (self.builtin_table1, self.gdp, self.power) {
            (true, _, _) => DataSource::BuiltinTable1,
            (false, Some(gdp), Some(power)) => {
                let mut m = DatasetManifest::new(gdp, power);
                if let Some(h) = self.historical_gdp {
                    m = m.with_historical_gdp(h);
                }
                DataSource::Files(m)
            }
            _ => {
                return Err(Error::Config(
                    "pass --builtin-table1 or both --gdp and --power".into(),
                ))
            }
        };
        Ok(RunConfig {
            data,
            fit_window: self.window,
            lambda0: self.lambda0,
            forecast: ScenarioOverrides {
                eta0: self.eta0,
                tau_eta: self.tau_eta,
                horizon_years: self.horizon,
            },
            output_dir: self.out,
            output_format: match self.format {
                Format::Csv => Delimiter::Comma,
                Format::Tsv => Delimiter::Tab,
            },
            index_1970: self.index_1970,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (run, opts): (fn(&RunConfig) -> thermogrowth::Result<Vec<PathBuf>>, Opts) = match cli.command {
        Command::Fit(o) => (cmd_fit, o),
        Command::Forecast(o) => (cmd_forecast, o),
        Command::Table1(o) => (cmd_table1, o),
        Command::Figure2(o) => (cmd_figure2, o),
    };
    match opts.into_config().and_then(|c| run(&c)) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
