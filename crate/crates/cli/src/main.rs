use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use varcurve_cli::commands::{self, EocArgs, Input, OutputFormat};
use varcurve_cli::response::DEFAULT_SAMPLES;
use varcurve_cli::{server, ServiceError};
use varcurve_core::convergence::GridMode;

#[derive(Parser)]
#[command(name = "varcurve", version, about = "Local C1 piecewise curves with nodal derivative estimates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Dataset file (CSV with header `tau,F`, or JSON `{tau, F}`).
    #[arg(long, conflicts_with = "fixture")]
    data: Option<PathBuf>,
    /// Built-in dataset instead of --data.
    #[arg(long)]
    fixture: Option<String>,
    /// JSON file with secondary knots `{"x": [...]}`.
    #[arg(long)]
    knots: Option<PathBuf>,
    /// JSON file with a placement `{"alpha2": a, "beta": [...]}`.
    #[arg(long)]
    placement: Option<PathBuf>,
    /// Named knot preset of the fixture.
    #[arg(long, requires = "fixture")]
    preset: Option<String>,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl InputArgs {
    fn input(&self) -> Input {
        Input {
            data: self.data.clone(),
            fixture: self.fixture.clone(),
            knots: self.knots.clone(),
            placement: self.placement.clone(),
            preset: self.preset.clone(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DataFmt {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum EocFmt {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Uniform,
    Ratio,
}

#[derive(Subcommand)]
enum Command {
    /// Build the curve and write coefficients, samples and estimates.
    Fit {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFmt,
    },
    /// Estimate F' and F'' at the interior data points.
    Derivs {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFmt,
    },
    /// Refinement study on a three-point grid.
    Eoc {
        #[arg(long, default_value = "quartic-sine")]
        function: String,
        #[arg(long, value_enum, default_value = "uniform")]
        mode: Mode,
        /// H_{i+1} / H_i in ratio mode (default 3).
        #[arg(long, allow_negative_numbers = true)]
        ratio: Option<f64>,
        #[arg(long, default_value_t = 5)]
        j_min: u32,
        #[arg(long, default_value_t = 9)]
        j_max: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: EocFmt,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the JSON service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Directory with a static UI bundle served at `/`.
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

fn data_fmt(f: DataFmt) -> OutputFormat {
    match f {
        DataFmt::Csv => OutputFormat::Csv,
        DataFmt::Json => OutputFormat::Json,
    }
}

fn run(cli: Cli) -> Result<(), ServiceError> {
    match cli.command {
        Command::Fit { input, samples, format } => {
            let text = commands::fit(&input.input(), samples, data_fmt(format))?;
            commands::emit(&text, input.out.as_deref())
        }
        Command::Derivs { input, format } => {
            let text = commands::derivs(&input.input(), data_fmt(format))?;
            commands::emit(&text, input.out.as_deref())
        }
        Command::Eoc { function, mode, ratio, j_min, j_max, format, out } => {
            let args = EocArgs {
                function,
                mode: match mode {
                    Mode::Uniform => GridMode::Uniform,
                    Mode::Ratio => GridMode::Ratio,
                },
                ratio,
                j_min,
                j_max,
            };
            let format = match format {
                EocFmt::Table => OutputFormat::Table,
                EocFmt::Csv => OutputFormat::Csv,
                EocFmt::Json => OutputFormat::Json,
            };
            commands::emit(&commands::eoc(&args, format)?, out.as_deref())
        }
        Command::Serve { port, host, static_dir } => {
            let rt = tokio::runtime::Runtime::new().map_err(|source| ServiceError::Io {
                path: "<runtime>".into(),
                source,
            })?;
            let addr = SocketAddr::new(host, port);
            rt.block_on(async {
                let listener = server::bind(addr).await?;
                eprintln!("listening on http://{}", listener.local_addr()?);
                server::serve(listener, static_dir).await
            })
            .map_err(|source| ServiceError::Io {
                path: addr.to_string(),
                source,
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", varcurve_cli::to_json(&e.body()).trim_end());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
