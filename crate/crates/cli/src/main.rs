//! `qcorr` — sweep thermal XY-model grids, audit the quantifier inequalities,
//! or evaluate a single parameter point.
//!
//! Exit codes: 0 success, 1 invalid spec, 2 numerical failure.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use qcorr_cli::engine::{run_audit, run_point, run_sweep, Format};
use qcorr_cli::spec::{parse_convention, Axis, CliError, Model, SweepSpec};
use qcorr_cli::config;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qcorr", version, about = "Quantum correlation quantifiers for thermal XY chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a parameter grid and emit one row per point
    Sweep(CommonArgs),
    /// Sweep a grid and emit the inequality/divergence audit report
    Audit(CommonArgs),
    /// Evaluate a single parameter point and emit the full record
    Point(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Model: aniso-xy or iso-xy-field
    #[arg(long)]
    model: Option<String>,
    /// Anisotropy γ: range a:b:n for sweep/audit, single value for point (aniso-xy)
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Magnetic field B: range a:b:n or single value (iso-xy-field)
    #[arg(long, allow_hyphen_values = true)]
    field: Option<String>,
    /// Temperature T: range a:b:n or single value
    #[arg(long, allow_hyphen_values = true)]
    temp: Option<String>,
    /// Coupling J (iso-xy-field only; defaults to 1)
    #[arg(long, allow_hyphen_values = true)]
    coupling: Option<String>,
    /// M-matrix reporting convention: all-pairs (default) or paper
    #[arg(long)]
    convention: Option<String>,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or json (csv default for sweep/audit, json for point)
    #[arg(long)]
    format: Option<String>,
    /// key=value config file; explicit flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Flag values merged over the config file.
struct Resolved {
    values: BTreeMap<&'static str, String>,
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn resolve(&self) -> Result<Resolved, CliError> {
        let file = match &self.config {
            Some(path) => config::load(path)?,
            None => BTreeMap::new(),
        };
        let mut values = BTreeMap::new();
        let mut put = |key: &'static str, flag: &Option<String>| {
            if let Some(v) = flag.clone().or_else(|| file.get(key).cloned()) {
                values.insert(key, v);
            }
        };
        put("model", &self.model);
        put("gamma", &self.gamma);
        put("field", &self.field);
        put("temp", &self.temp);
        put("coupling", &self.coupling);
        put("convention", &self.convention);
        put("format", &self.format);
        let out = self
            .out
            .clone()
            .or_else(|| file.get("out").map(PathBuf::from));
        Ok(Resolved { values, out })
    }
}

impl Resolved {
    fn get(&self, key: &'static str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn require(&self, key: &'static str) -> Result<&str, CliError> {
        self.get(key)
            .ok_or_else(|| CliError::invalid("model", format!("missing required value {key:?}")))
    }

    fn model(&self) -> Result<Model, CliError> {
        Model::parse(self.require("model")?)
    }

    /// The swept model parameter: --gamma for aniso-xy, --field for iso-xy-field.
    fn axis1_raw(&self, model: Model) -> Result<Option<&str>, CliError> {
        let (want, forbid) = match model {
            Model::AnisotropicXy => ("gamma", "field"),
            Model::IsotropicXyField => ("field", "gamma"),
        };
        if self.get(forbid).is_some() {
            return Err(CliError::invalid(
                "model",
                format!("--{forbid} does not apply to {}", model.name()),
            ));
        }
        Ok(self.get(want))
    }

    fn coupling(&self) -> Result<f64, CliError> {
        match self.get("coupling") {
            None => Ok(1.0),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::invalid("coupling", format!("bad number {v:?}"))),
        }
    }

    fn convention(&self) -> Result<qcorr::MatrixConvention, CliError> {
        match self.get("convention") {
            None => Ok(qcorr::MatrixConvention::AllPairs),
            Some(v) => parse_convention(v),
        }
    }

    fn format(&self, default: Format) -> Result<Format, CliError> {
        match self.get("format") {
            None => Ok(default),
            Some(v) => Format::parse(v),
        }
    }
}

fn parse_scalar(field: &'static str, s: &str) -> Result<f64, CliError> {
    if s.contains(':') {
        return Err(CliError::invalid(field, format!("expected a single value, got range {s:?}")));
    }
    s.parse()
        .map_err(|_| CliError::invalid(field, format!("bad number {s:?}")))
}

fn grid_spec(resolved: &Resolved) -> Result<SweepSpec, CliError> {
    let model = resolved.model()?;
    // Figure-quality defaults when a grid axis is not given explicitly.
    let axis1 = match resolved.axis1_raw(model)? {
        Some(raw) => Axis::parse("axis1", raw)?,
        None => match model {
            Model::AnisotropicXy => Axis { start: -1.0, stop: 1.0, steps: 201 },
            Model::IsotropicXyField => Axis { start: 0.0, stop: 3.0, steps: 201 },
        },
    };
    let temp = match resolved.get("temp") {
        Some(raw) => Axis::parse("temp", raw)?,
        None => Axis { start: 0.05, stop: 5.0, steps: 201 },
    };
    let mut spec = SweepSpec::new(model, axis1, temp);
    spec.coupling = resolved.coupling()?;
    spec.convention = resolved.convention()?;
    spec.validate()?;
    Ok(spec)
}

fn with_output<F>(out: &Option<PathBuf>, f: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match out {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            let mut writer = std::io::BufWriter::new(file);
            f(&mut writer)?;
            writer.flush()?;
            Ok(())
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep(args) => {
            let resolved = args.resolve()?;
            let spec = grid_spec(&resolved)?;
            let format = resolved.format(Format::Csv)?;
            with_output(&resolved.out, |mut w| run_sweep(&spec, format, &mut w))
        }
        Command::Audit(args) => {
            let resolved = args.resolve()?;
            let spec = grid_spec(&resolved)?;
            let format = resolved.format(Format::Csv)?;
            let report = run_audit(&spec)?;
            with_output(&resolved.out, |mut w| match format {
                Format::Csv => report.write_csv(&mut w),
                Format::Json => report.write_json(&mut w),
            })
        }
        Command::Point(args) => {
            let resolved = args.resolve()?;
            let model = resolved.model()?;
            let axis1_raw = resolved.axis1_raw(model)?.ok_or_else(|| {
                CliError::invalid(
                    "axis1",
                    format!("point requires --{}", model.axis1_name()),
                )
            })?;
            let axis1 = parse_scalar("axis1", axis1_raw)?;
            let temp = parse_scalar("temp", resolved.require("temp")?)?;
            let point =
                run_point(model, axis1, temp, resolved.coupling()?, resolved.convention()?)?;
            let format = resolved.format(Format::Json)?;
            with_output(&resolved.out, |w| {
                let text = match format {
                    Format::Json => {
                        let mut t = point.to_json();
                        t.push('\n');
                        t
                    }
                    Format::Csv => point.to_csv(),
                };
                w.write_all(text.as_bytes())?;
                Ok(())
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed pipe downstream (e.g. `qcorr sweep ... | head`) is not an error.
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
