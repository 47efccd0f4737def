//! Sweep specifications and their validation.

use qcorr::models::{AnisotropicXyParams, IsotropicFieldParams};
use qcorr::MatrixConvention;
use thiserror::Error;

/// Temperatures below this overflow cosh at the largest supported couplings;
/// the spec floor for grid inputs.
pub const TEMPERATURE_FLOOR: f64 = 0.01;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid spec: {field}: {reason}")]
    InvalidSpec { field: &'static str, reason: String },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidSpec { .. } => 1,
            CliError::Numerical(_) | CliError::Io(_) => 2,
        }
    }

    pub fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        CliError::InvalidSpec { field, reason: reason.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    AnisotropicXy,
    IsotropicXyField,
}

impl Model {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "aniso-xy" => Ok(Model::AnisotropicXy),
            "iso-xy-field" => Ok(Model::IsotropicXyField),
            other => Err(CliError::invalid(
                "model",
                format!("expected aniso-xy or iso-xy-field, got {other:?}"),
            )),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::AnisotropicXy => "aniso-xy",
            Model::IsotropicXyField => "iso-xy-field",
        }
    }

    /// CSV/JSON name of the swept model parameter.
    pub fn axis1_name(&self) -> &'static str {
        match self {
            Model::AnisotropicXy => "gamma",
            Model::IsotropicXyField => "field",
        }
    }
}

/// Inclusive linear range with a fixed step count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Axis {
    /// Parse "start:stop:steps".
    pub fn parse(field: &'static str, s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::invalid(field, format!("expected start:stop:steps, got {s:?}")));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| CliError::invalid(field, format!("bad start {:?}", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| CliError::invalid(field, format!("bad stop {:?}", parts[1])))?;
        let steps: usize = parts[2]
            .parse()
            .map_err(|_| CliError::invalid(field, format!("bad step count {:?}", parts[2])))?;
        Ok(Self { start, stop, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        let h = (self.stop - self.start) / (n - 1) as f64;
        (0..n).map(|k| self.start + k as f64 * h).collect()
    }
}

/// Columns a sweep can emit, in their canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputColumn {
    LqfiNumeric,
    LquNumeric,
    LqfiPaper,
    LquPaper,
    LambdaMaxM,
    XiMaxW,
}

impl OutputColumn {
    pub const ALL: [OutputColumn; 6] = [
        OutputColumn::LqfiNumeric,
        OutputColumn::LquNumeric,
        OutputColumn::LqfiPaper,
        OutputColumn::LquPaper,
        OutputColumn::LambdaMaxM,
        OutputColumn::XiMaxW,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OutputColumn::LqfiNumeric => "lqfi_numeric",
            OutputColumn::LquNumeric => "lqu_numeric",
            OutputColumn::LqfiPaper => "lqfi_paper",
            OutputColumn::LquPaper => "lqu_paper",
            OutputColumn::LambdaMaxM => "lambda_max_m",
            OutputColumn::XiMaxW => "xi_max_w",
        }
    }
}

/// A full grid specification: model, swept axes, fixed coupling, the M-matrix
/// convention for reporting, and the output column set.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub model: Model,
    /// γ for the anisotropic model, B for the field model.
    pub axis1: Axis,
    /// Temperature axis.
    pub temp: Axis,
    /// J; meaningful for the field model only (the anisotropic model pins J = 1).
    pub coupling: f64,
    /// Convention for the reported lambda_max_m column and point-mode matrix.
    /// The lqfi/lqu columns always use the all-pairs ground truth.
    pub convention: MatrixConvention,
    pub outputs: Vec<OutputColumn>,
}

impl SweepSpec {
    pub fn new(model: Model, axis1: Axis, temp: Axis) -> Self {
        Self {
            model,
            axis1,
            temp,
            coupling: 1.0,
            convention: MatrixConvention::AllPairs,
            outputs: OutputColumn::ALL.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (field, axis) in [("axis1", &self.axis1), ("temp", &self.temp)] {
            if axis.steps < 2 {
                return Err(CliError::invalid(field, format!("steps must be ≥ 2, got {}", axis.steps)));
            }
            if axis.start.is_nan() || axis.stop.is_nan() || axis.start >= axis.stop {
                return Err(CliError::invalid(
                    field,
                    format!("start must be < stop, got {}:{}", axis.start, axis.stop),
                ));
            }
            if !axis.start.is_finite() || !axis.stop.is_finite() {
                return Err(CliError::invalid(field, "endpoints must be finite".to_string()));
            }
        }
        if self.temp.start < TEMPERATURE_FLOOR {
            return Err(CliError::invalid(
                "temp",
                format!("temperatures below {TEMPERATURE_FLOOR} overflow cosh; got {}", self.temp.start),
            ));
        }
        if self.outputs.is_empty() {
            return Err(CliError::invalid("outputs", "at least one output column".to_string()));
        }
        match self.model {
            Model::AnisotropicXy => {
                if self.axis1.start < -1.0 || self.axis1.stop > 1.0 {
                    return Err(CliError::invalid(
                        "axis1",
                        format!(
                            "gamma range [{}, {}] must lie in [-1, 1]",
                            self.axis1.start, self.axis1.stop
                        ),
                    ));
                }
                if self.coupling != 1.0 {
                    return Err(CliError::invalid(
                        "coupling",
                        "the anisotropic model fixes J = 1".to_string(),
                    ));
                }
                // Probe the worst corner through the params constructor.
                AnisotropicXyParams::new(self.axis1.start, self.temp.start)
                    .map_err(|e| CliError::invalid("axis1", e.to_string()))?;
            }
            Model::IsotropicXyField => {
                let worst_field = self.axis1.start.abs().max(self.axis1.stop.abs());
                IsotropicFieldParams::new(self.coupling, worst_field, self.temp.start)
                    .map_err(|e| CliError::invalid("axis1", e.to_string()))?;
            }
        }
        Ok(())
    }
}

pub fn parse_convention(s: &str) -> Result<MatrixConvention, CliError> {
    match s {
        "all-pairs" => Ok(MatrixConvention::AllPairs),
        "paper" => Ok(MatrixConvention::PaperOffDiagonalOnly),
        other => Err(CliError::invalid(
            "convention",
            format!("expected all-pairs or paper, got {other:?}"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SweepSpec {
        SweepSpec::new(
            Model::AnisotropicXy,
            Axis { start: -1.0, stop: 1.0, steps: 21 },
            Axis { start: 0.05, stop: 5.0, steps: 100 },
        )
    }

    #[test]
    fn valid_spec_passes() {
        assert!(base().validate().is_ok());
    }

    #[test]
    fn rejects_single_step_axis() {
        let mut s = base();
        s.axis1.steps = 1;
        let e = s.validate().unwrap_err();
        assert!(matches!(e, CliError::InvalidSpec { field: "axis1", .. }));
    }

    #[test]
    fn rejects_reversed_range() {
        let mut s = base();
        s.temp = Axis { start: 5.0, stop: 0.05, steps: 10 };
        assert!(s.validate().is_err());
    }

    #[test]
    fn rejects_cold_grid() {
        let mut s = base();
        s.temp.start = 0.001;
        let e = s.validate().unwrap_err();
        assert!(matches!(e, CliError::InvalidSpec { field: "temp", .. }));
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn rejects_gamma_outside_unit_interval() {
        let mut s = base();
        s.axis1.stop = 1.5;
        assert!(s.validate().is_err());
    }

    #[test]
    fn rejects_coupling_override_for_anisotropic_model() {
        let mut s = base();
        s.coupling = 2.0;
        let e = s.validate().unwrap_err();
        assert!(matches!(e, CliError::InvalidSpec { field: "coupling", .. }));
    }

    #[test]
    fn field_model_accepts_coupling() {
        let mut s = SweepSpec::new(
            Model::IsotropicXyField,
            Axis { start: 0.0, stop: 3.0, steps: 61 },
            Axis { start: 0.05, stop: 5.0, steps: 100 },
        );
        s.coupling = 2.0;
        assert!(s.validate().is_ok());
    }

    #[test]
    fn axis_parse_and_values() {
        let a = Axis::parse("axis1", "0:3:4").unwrap();
        assert_eq!(a.values(), vec![0.0, 1.0, 2.0, 3.0]);
        assert!(Axis::parse("axis1", "1:2").is_err());
        assert!(Axis::parse("axis1", "a:2:3").is_err());
    }
}
