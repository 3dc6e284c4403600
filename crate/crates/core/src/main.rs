use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use asymwell::report::{self, Format, Limit, Report, RunConfig};
use asymwell::{Smoothing, WellError, WellSpec, DEFAULT_GRID};

/// Bound states, classical comparison and momentum densities of the asymmetric infinite well.
#[derive(Parser, Debug)]
#[command(name = "asymwell", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Energies and wavenumbers of the lowest states.
    Spectrum(Common),
    /// Wavefunction, density, potential and classical density of one state.
    Wavefunction {
        #[command(flatten)]
        common: Common,
        /// State index (1-based).
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Number of evenly spaced positions across the well.
        #[arg(long, default_value_t = 601)]
        samples: usize,
    },
    /// Quantum vs classical left-side probability with node/antinode bounds.
    Compare(Common),
    /// Energy shifts and probabilities of a smoothed well against the step
    /// (exponential smoothing with delta 0.2 unless chosen otherwise).
    Smoothing(Common),
    /// Momentum-space density of one state.
    Momentum {
        #[command(flatten)]
        common: Common,
        /// State index (1-based).
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Largest |p| sampled.
        #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
        p_max: f64,
        /// Number of momentum samples (odd keeps p = 0 on the grid).
        #[arg(long, default_value_t = 2001)]
        p_points: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SmoothingArg {
    None,
    Exponential,
    Linear,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Width of the left (low) side.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    a: f64,
    /// Width of the right (raised) side.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    b: f64,
    /// Step height.
    #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
    v0: f64,
    /// Smoothing family; implied by --delta or --epsilon when omitted.
    #[arg(long, value_enum)]
    smoothing: Option<SmoothingArg>,
    /// Width of the exponential (sigmoid) smoothing.
    #[arg(long, allow_negative_numbers = true)]
    delta: Option<f64>,
    /// Half-width of the linear ramp.
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Include every state with E <= e-max.
    #[arg(long, conflicts_with = "n_max", allow_negative_numbers = true)]
    e_max: Option<f64>,
    /// Include the lowest n-max states (default 9).
    #[arg(long)]
    n_max: Option<usize>,
    /// Numerov grid intervals for smoothed wells.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn smoothing(&self) -> Result<Smoothing, WellError> {
        let family = match (self.smoothing, self.delta, self.epsilon) {
            (_, Some(_), Some(_)) => {
                return Err(WellError::InvalidArgument(
                    "give either --delta or --epsilon, not both".into(),
                ))
            }
            (Some(f), _, _) => f,
            (None, Some(_), None) => SmoothingArg::Exponential,
            (None, None, Some(_)) => SmoothingArg::Linear,
            (None, None, None) => SmoothingArg::None,
        };
        let missing = |flag: &str, family: &str| {
            WellError::InvalidArgument(format!("--smoothing {family} needs {flag}"))
        };
        match family {
            SmoothingArg::None => {
                if self.delta.is_some() || self.epsilon.is_some() {
                    return Err(WellError::InvalidArgument(
                        "--delta/--epsilon given with --smoothing none".into(),
                    ));
                }
                Ok(Smoothing::None)
            }
            SmoothingArg::Exponential => {
                if self.epsilon.is_some() {
                    return Err(missing("--delta (not --epsilon)", "exponential"));
                }
                Ok(Smoothing::Exponential {
                    delta: self.delta.unwrap_or(report::DEFAULT_DELTA),
                })
            }
            SmoothingArg::Linear => {
                if self.delta.is_some() {
                    return Err(missing("--epsilon (not --delta)", "linear"));
                }
                let epsilon = self.epsilon.ok_or_else(|| missing("--epsilon", "linear"))?;
                Ok(Smoothing::Linear { epsilon })
            }
        }
    }

    fn config(&self) -> Result<RunConfig, WellError> {
        let spec = WellSpec::with_smoothing(self.a, self.b, self.v0, self.smoothing()?)?;
        Ok(RunConfig {
            spec,
            limit: Limit::from_options(self.e_max, self.n_max)?,
            grid: self.grid,
            format: match self.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            },
            ..RunConfig::default()
        })
    }
}

fn run(cli: Cli) -> Result<(), WellError> {
    let config_stage = |e: WellError| WellError::Stage {
        stage: "config".into(),
        message: e.to_string(),
    };
    let (report, out): (Report, _) = match cli.command {
        Command::Spectrum(c) => (
            report::cmd_spectrum(&c.config().map_err(config_stage)?)?,
            c.out,
        ),
        Command::Compare(c) => (
            report::cmd_compare(&c.config().map_err(config_stage)?)?,
            c.out,
        ),
        Command::Smoothing(c) => (
            report::cmd_smoothing(&c.config().map_err(config_stage)?)?,
            c.out,
        ),
        Command::Wavefunction { common, n, samples } => {
            let mut cfg = common.config().map_err(config_stage)?;
            cfg.state = n;
            cfg.samples = samples;
            (report::cmd_wavefunction(&cfg)?, common.out)
        }
        Command::Momentum {
            common,
            n,
            p_max,
            p_points,
        } => {
            let mut cfg = common.config().map_err(config_stage)?;
            cfg.state = n;
            cfg.p_max = p_max;
            cfg.p_points = p_points;
            (report::cmd_momentum(&cfg)?, common.out)
        }
    };
    report.write(out.as_deref())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let text = match &err {
                WellError::Stage { stage, message } => {
                    format!("asymwell: stage '{stage}' failed: {message}")
                }
                other => format!("asymwell: {other}"),
            };
            eprintln!("{text}");
            ExitCode::FAILURE
        }
    }
}
