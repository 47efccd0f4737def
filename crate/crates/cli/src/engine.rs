//! Grid evaluation, CSV/JSON emission, and the audit report.

use crate::fmt15;
use crate::spec::{CliError, Model, OutputColumn, SweepSpec};
use qcorr::models::{
    paper_lqfi_anisotropic, paper_lqfi_isotropic_field, paper_lqu_anisotropic,
    paper_lqu_isotropic_field, AnisotropicXyParams, IsotropicFieldParams,
};
use qcorr::quantifiers::{lqfi, lqu, matrix_m, matrix_w, CorrelationReport, CHAIN_TOL};
use qcorr::spectral::DensityMatrix;
use qcorr::MatrixConvention;
use std::io::Write;

/// Output encoding for the subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::invalid("format", format!("expected csv or json, got {other:?}"))),
        }
    }
}

/// Everything a grid cell can report.
#[derive(Clone, Copy, Debug)]
pub struct CellValues {
    pub lqfi_numeric: f64,
    pub lqu_numeric: f64,
    pub lqfi_paper: f64,
    pub lqu_paper: f64,
    pub lambda_max_m: f64,
    pub xi_max_w: f64,
}

impl CellValues {
    pub fn get(&self, col: OutputColumn) -> f64 {
        match col {
            OutputColumn::LqfiNumeric => self.lqfi_numeric,
            OutputColumn::LquNumeric => self.lqu_numeric,
            OutputColumn::LqfiPaper => self.lqfi_paper,
            OutputColumn::LquPaper => self.lqu_paper,
            OutputColumn::LambdaMaxM => self.lambda_max_m,
            OutputColumn::XiMaxW => self.xi_max_w,
        }
    }
}

fn build_state(model: Model, a1: f64, temp: f64, coupling: f64) -> Result<DensityMatrix, CliError> {
    match model {
        Model::AnisotropicXy => Ok(AnisotropicXyParams::new(a1, temp)
            .map_err(|e| CliError::Numerical(e.to_string()))?
            .state()),
        Model::IsotropicXyField => Ok(IsotropicFieldParams::new(coupling, a1, temp)
            .map_err(|e| CliError::Numerical(e.to_string()))?
            .state()),
    }
}

fn paper_values(model: Model, a1: f64, temp: f64, coupling: f64) -> Result<(f64, f64), CliError> {
    match model {
        Model::AnisotropicXy => {
            let p = AnisotropicXyParams::new(a1, temp)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            Ok((paper_lqfi_anisotropic(&p), paper_lqu_anisotropic(&p)))
        }
        Model::IsotropicXyField => {
            let p = IsotropicFieldParams::new(coupling, a1, temp)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            Ok((paper_lqfi_isotropic_field(&p), paper_lqu_isotropic_field(&p)))
        }
    }
}

/// Evaluate one grid cell. The lqfi/lqu columns are the all-pairs ground
/// truth; only the lambda_max_m column follows the requested convention.
pub fn evaluate_cell(
    model: Model,
    a1: f64,
    temp: f64,
    coupling: f64,
    convention: MatrixConvention,
) -> Result<CellValues, CliError> {
    let rho = build_state(model, a1, temp, coupling)?;
    let numerical = |e: qcorr::quantifiers::QuantifierError| CliError::Numerical(e.to_string());
    let (q, _) = lqfi(&rho).map_err(numerical)?;
    let (u, _) = lqu(&rho).map_err(numerical)?;
    let m = matrix_m(&rho, convention).map_err(numerical)?;
    let w = matrix_w(&rho).map_err(numerical)?;
    let (q_paper, u_paper) = paper_values(model, a1, temp, coupling)?;
    let values = CellValues {
        lqfi_numeric: q,
        lqu_numeric: u,
        lqfi_paper: q_paper,
        lqu_paper: u_paper,
        lambda_max_m: m.eigenvalues()[2],
        xi_max_w: w.eigenvalues()[2],
    };
    revalidate(&values, a1, temp)?;
    Ok(values)
}

/// Row-level sanity gate: quantifiers in [0,1], the sandwich holds, paper
/// columns finite. A violation here is a numerical failure, not bad input.
fn revalidate(v: &CellValues, a1: f64, temp: f64) -> Result<(), CliError> {
    let in_range = |x: f64| (0.0..=1.0).contains(&x);
    if !in_range(v.lqfi_numeric) || !in_range(v.lqu_numeric) {
        return Err(CliError::Numerical(format!(
            "quantifier out of [0,1] at axis1={a1}, T={temp}"
        )));
    }
    let chain_ok = v.lqu_numeric - CHAIN_TOL <= v.lqfi_numeric
        && v.lqfi_numeric <= 2.0 * v.lqu_numeric + CHAIN_TOL;
    if !chain_ok {
        return Err(CliError::Numerical(format!(
            "sandwich inequality violated at axis1={a1}, T={temp}: U={}, Q={}",
            v.lqu_numeric, v.lqfi_numeric
        )));
    }
    if !v.lqfi_paper.is_finite() || !v.lqu_paper.is_finite() {
        return Err(CliError::Numerical(format!(
            "printed closed form is not finite at axis1={a1}, T={temp}"
        )));
    }
    Ok(())
}

/// Run the sweep and stream one row per grid point (axis1 outer, temperature
/// inner) to `out`. Deterministic: identical specs produce identical bytes.
pub fn run_sweep(spec: &SweepSpec, format: Format, out: &mut impl Write) -> Result<(), CliError> {
    spec.validate()?;
    let a1_name = spec.model.axis1_name();
    let cols = &spec.outputs;
    match format {
        Format::Csv => {
            let mut header = vec![a1_name.to_string(), "temp".to_string()];
            header.extend(cols.iter().map(|c| c.name().to_string()));
            writeln!(out, "{}", header.join(","))?;
            for &a1 in &spec.axis1.values() {
                for &t in &spec.temp.values() {
                    let v = evaluate_cell(spec.model, a1, t, spec.coupling, spec.convention)?;
                    let mut row = vec![fmt15(a1), fmt15(t)];
                    row.extend(cols.iter().map(|&c| fmt15(v.get(c))));
                    writeln!(out, "{}", row.join(","))?;
                }
            }
        }
        Format::Json => {
            writeln!(out, "[")?;
            let mut first = true;
            for &a1 in &spec.axis1.values() {
                for &t in &spec.temp.values() {
                    let v = evaluate_cell(spec.model, a1, t, spec.coupling, spec.convention)?;
                    if !first {
                        writeln!(out, ",")?;
                    }
                    first = false;
                    let mut fields = vec![
                        format!("\"{}\": {}", a1_name, fmt15(a1)),
                        format!("\"temp\": {}", fmt15(t)),
                    ];
                    fields.extend(cols.iter().map(|&c| format!("\"{}\": {}", c.name(), fmt15(v.get(c)))));
                    write!(out, "  {{{}}}", fields.join(", "))?;
                }
            }
            writeln!(out, "\n]")?;
        }
    }
    Ok(())
}

/// One audited grid point.
#[derive(Clone, Copy, Debug)]
pub struct AuditRow {
    pub axis1: f64,
    pub temp: f64,
    pub u: f64,
    pub q: f64,
    pub chain_ok: bool,
    pub gap_lqfi: f64,
    pub gap_lqu: f64,
}

/// Grid audit: per-point sandwich flags and printed-vs-numeric gaps, plus the
/// summary quantities the report prints.
#[derive(Clone, Debug)]
pub struct AuditReport {
    pub axis1_name: &'static str,
    pub rows: Vec<AuditRow>,
    pub chain_violations: usize,
    /// (gap, axis1, temp) at the arg-max over the grid.
    pub max_gap_lqfi: (f64, f64, f64),
    pub max_gap_lqu: (f64, f64, f64),
    /// axis1 location of the largest |second difference| of numeric Q along
    /// axis1 at the lowest temperature row; needs ≥ 3 axis1 steps.
    pub kink_location: Option<f64>,
    /// The level-crossing point the kink is expected at (B = J), field model only.
    pub kink_expected: Option<f64>,
}

pub fn run_audit(spec: &SweepSpec) -> Result<AuditReport, CliError> {
    spec.validate()?;
    let a1_values = spec.axis1.values();
    let t_values = spec.temp.values();
    let mut rows = Vec::with_capacity(a1_values.len() * t_values.len());
    let mut chain_violations = 0usize;
    let mut max_gap_lqfi = (f64::NEG_INFINITY, 0.0, 0.0);
    let mut max_gap_lqu = (f64::NEG_INFINITY, 0.0, 0.0);
    let mut lowest_t_q = Vec::with_capacity(a1_values.len());

    for &a1 in &a1_values {
        for (ti, &t) in t_values.iter().enumerate() {
            let v = evaluate_cell(spec.model, a1, t, spec.coupling, spec.convention)?;
            let chain_ok = v.lqu_numeric - CHAIN_TOL <= v.lqfi_numeric
                && v.lqfi_numeric <= 2.0 * v.lqu_numeric + CHAIN_TOL;
            if !chain_ok {
                chain_violations += 1;
            }
            let gap_q = (v.lqfi_numeric - v.lqfi_paper).abs();
            let gap_u = (v.lqu_numeric - v.lqu_paper).abs();
            if gap_q > max_gap_lqfi.0 {
                max_gap_lqfi = (gap_q, a1, t);
            }
            if gap_u > max_gap_lqu.0 {
                max_gap_lqu = (gap_u, a1, t);
            }
            if ti == 0 {
                lowest_t_q.push(v.lqfi_numeric);
            }
            rows.push(AuditRow {
                axis1: a1,
                temp: t,
                u: v.lqu_numeric,
                q: v.lqfi_numeric,
                chain_ok,
                gap_lqfi: gap_q,
                gap_lqu: gap_u,
            });
        }
    }

    let kink_location = if a1_values.len() >= 3 {
        let mut best = (f64::NEG_INFINITY, 0.0);
        for i in 1..a1_values.len() - 1 {
            let d2 = (lowest_t_q[i - 1] - 2.0 * lowest_t_q[i] + lowest_t_q[i + 1]).abs();
            if d2 > best.0 {
                best = (d2, a1_values[i]);
            }
        }
        Some(best.1)
    } else {
        None
    };
    let kink_expected = match spec.model {
        Model::IsotropicXyField => Some(spec.coupling),
        Model::AnisotropicXy => None,
    };

    Ok(AuditReport {
        axis1_name: spec.model.axis1_name(),
        rows,
        chain_violations,
        max_gap_lqfi,
        max_gap_lqu,
        kink_location,
        kink_expected,
    })
}

impl AuditReport {
    /// Per-point CSV followed by a `#`-prefixed summary block.
    pub fn write_csv(&self, out: &mut impl Write) -> Result<(), CliError> {
        writeln!(
            out,
            "{},temp,u,q,chain_ok,paper_numeric_gap_lqfi,paper_numeric_gap_lqu",
            self.axis1_name
        )?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                fmt15(r.axis1),
                fmt15(r.temp),
                fmt15(r.u),
                fmt15(r.q),
                r.chain_ok,
                fmt15(r.gap_lqfi),
                fmt15(r.gap_lqu)
            )?;
        }
        writeln!(out, "# summary")?;
        writeln!(out, "# chain_violations: {}", self.chain_violations)?;
        writeln!(
            out,
            "# max_gap_lqfi: {} at {}={}, temp={}",
            fmt15(self.max_gap_lqfi.0),
            self.axis1_name,
            fmt15(self.max_gap_lqfi.1),
            fmt15(self.max_gap_lqfi.2)
        )?;
        writeln!(
            out,
            "# max_gap_lqu: {} at {}={}, temp={}",
            fmt15(self.max_gap_lqu.0),
            self.axis1_name,
            fmt15(self.max_gap_lqu.1),
            fmt15(self.max_gap_lqu.2)
        )?;
        match self.kink_location {
            Some(loc) => writeln!(out, "# kink_location: {}", fmt15(loc))?,
            None => writeln!(out, "# kink_location: n/a (need at least 3 axis1 steps)")?,
        }
        if let Some(expected) = self.kink_expected {
            writeln!(out, "# kink_expected: {}", fmt15(expected))?;
        }
        Ok(())
    }

    pub fn write_json(&self, out: &mut impl Write) -> Result<(), CliError> {
        writeln!(out, "{{")?;
        writeln!(out, "  \"rows\": [")?;
        for (i, r) in self.rows.iter().enumerate() {
            let comma = if i + 1 == self.rows.len() { "" } else { "," };
            writeln!(
                out,
                "    {{\"{}\": {}, \"temp\": {}, \"u\": {}, \"q\": {}, \"chain_ok\": {}, \"paper_numeric_gap_lqfi\": {}, \"paper_numeric_gap_lqu\": {}}}{}",
                self.axis1_name,
                fmt15(r.axis1),
                fmt15(r.temp),
                fmt15(r.u),
                fmt15(r.q),
                r.chain_ok,
                fmt15(r.gap_lqfi),
                fmt15(r.gap_lqu),
                comma
            )?;
        }
        writeln!(out, "  ],")?;
        writeln!(out, "  \"summary\": {{")?;
        writeln!(out, "    \"chain_violations\": {},", self.chain_violations)?;
        writeln!(
            out,
            "    \"max_gap_lqfi\": {{\"gap\": {}, \"{}\": {}, \"temp\": {}}},",
            fmt15(self.max_gap_lqfi.0),
            self.axis1_name,
            fmt15(self.max_gap_lqfi.1),
            fmt15(self.max_gap_lqfi.2)
        )?;
        writeln!(
            out,
            "    \"max_gap_lqu\": {{\"gap\": {}, \"{}\": {}, \"temp\": {}}},",
            fmt15(self.max_gap_lqu.0),
            self.axis1_name,
            fmt15(self.max_gap_lqu.1),
            fmt15(self.max_gap_lqu.2)
        )?;
        match self.kink_location {
            Some(loc) => writeln!(out, "    \"kink_location\": {},", fmt15(loc))?,
            None => writeln!(out, "    \"kink_location\": null,")?,
        }
        match self.kink_expected {
            Some(e) => writeln!(out, "    \"kink_expected\": {}", fmt15(e))?,
            None => writeln!(out, "    \"kink_expected\": null")?,
        }
        writeln!(out, "  }}")?;
        writeln!(out, "}}")?;
        Ok(())
    }
}

/// Full single-point record: the correlation report plus paper-analytic values.
#[derive(Clone, Debug)]
pub struct PointReport {
    pub model: Model,
    pub axis1: f64,
    pub temp: f64,
    pub coupling: f64,
    pub convention: MatrixConvention,
    pub report: CorrelationReport,
    pub lqfi_paper: f64,
    pub lqu_paper: f64,
}

pub fn run_point(
    model: Model,
    axis1: f64,
    temp: f64,
    coupling: f64,
    convention: MatrixConvention,
) -> Result<PointReport, CliError> {
    if !axis1.is_finite() {
        return Err(CliError::invalid("axis1", format!("must be finite, got {axis1}")));
    }
    if model == Model::AnisotropicXy && !(-1.0..=1.0).contains(&axis1) {
        return Err(CliError::invalid("axis1", format!("gamma must lie in [-1, 1], got {axis1}")));
    }
    if temp.is_nan() || temp < crate::spec::TEMPERATURE_FLOOR {
        return Err(CliError::invalid(
            "temp",
            format!("temperature must be ≥ {}, got {temp}", crate::spec::TEMPERATURE_FLOOR),
        ));
    }
    if model == Model::AnisotropicXy && coupling != 1.0 {
        return Err(CliError::invalid("coupling", "the anisotropic model fixes J = 1".to_string()));
    }
    let rho = build_state(model, axis1, temp, coupling)?;
    let report = CorrelationReport::compute(&rho, convention)
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    let (lqfi_paper, lqu_paper) = paper_values(model, axis1, temp, coupling)?;
    Ok(PointReport { model, axis1, temp, coupling, convention, report, lqfi_paper, lqu_paper })
}

impl PointReport {
    /// Single JSON object with a fixed key order.
    pub fn to_json(&self) -> String {
        let dir = |d: &qcorr::BlochDirection| {
            let r = d.components();
            format!("[{}, {}, {}]", fmt15(r[0]), fmt15(r[1]), fmt15(r[2]))
        };
        let mat = |m: &[[f64; 3]; 3]| {
            let rows: Vec<String> = m
                .iter()
                .map(|row| format!("[{}, {}, {}]", fmt15(row[0]), fmt15(row[1]), fmt15(row[2])))
                .collect();
            format!("[{}]", rows.join(", "))
        };
        let convention = match self.convention {
            MatrixConvention::AllPairs => "all-pairs",
            MatrixConvention::PaperOffDiagonalOnly => "paper",
        };
        let mut fields = vec![
            format!("\"model\": \"{}\"", self.model.name()),
            format!("\"{}\": {}", self.model.axis1_name(), fmt15(self.axis1)),
        ];
        if self.model == Model::IsotropicXyField {
            fields.push(format!("\"coupling\": {}", fmt15(self.coupling)));
        }
        let r = &self.report;
        fields.extend([
            format!("\"temp\": {}", fmt15(self.temp)),
            format!("\"convention\": \"{convention}\""),
            format!("\"lqfi\": {}", fmt15(r.lqfi)),
            format!("\"lqu\": {}", fmt15(r.lqu)),
            format!("\"lqfi_direction\": {}", dir(&r.optimal_dir_lqfi)),
            format!("\"lqu_direction\": {}", dir(&r.optimal_dir_lqu)),
            format!("\"matrix_m\": {}", mat(r.matrix_m.entries())),
            format!("\"matrix_w\": {}", mat(r.matrix_w.entries())),
            format!("\"inequality_ok\": {}", r.inequality_ok),
            format!("\"lqfi_paper\": {}", fmt15(self.lqfi_paper)),
            format!("\"lqu_paper\": {}", fmt15(self.lqu_paper)),
            format!("\"gap_lqfi\": {}", fmt15((r.lqfi - self.lqfi_paper).abs())),
            format!("\"gap_lqu\": {}", fmt15((r.lqu - self.lqu_paper).abs())),
        ]);
        format!("{{\n  {}\n}}", fields.join(",\n  "))
    }

    /// Scalar columns as a one-row CSV (matrices appear only in JSON output).
    pub fn to_csv(&self) -> String {
        let r = &self.report;
        let header = format!(
            "model,{},coupling,temp,lqfi,lqu,inequality_ok,lqfi_paper,lqu_paper",
            self.model.axis1_name()
        );
        let row = format!(
            "{},{},{},{},{},{},{},{},{}",
            self.model.name(),
            fmt15(self.axis1),
            fmt15(self.coupling),
            fmt15(self.temp),
            fmt15(r.lqfi),
            fmt15(r.lqu),
            r.inequality_ok,
            fmt15(self.lqfi_paper),
            fmt15(self.lqu_paper)
        );
        format!("{header}\n{row}\n")
    }
}
