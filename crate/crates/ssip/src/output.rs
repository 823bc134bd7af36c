//! Deterministic text artifacts: CSV tables, JSON run logs, and
//! whitespace-delimited polyline centerlines.
//!
//! Everything written here is UTF-8 with LF line endings, ends in a newline,
//! and is byte-identical across reruns of the same configuration: floats are
//! formatted with the shortest round-trip exponential form, column orders
//! are fixed, and no timestamps or machine state leak into the files.

use crate::scenario::{Centerline, LineLoadRecord, ScenarioConfig, ScenarioOutcome};
use crate::{Error, Result};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Shortest round-trip exponential form (`1e0`, `-2.5e-3`); infinities and
/// NaN spelled out so every cell parses back with `f64::from_str`.
pub fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:e}")
    } else if v.is_nan() {
        "NaN".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// A CSV table with a fixed header; rows must match the header width.
#[derive(Debug, Clone)]
pub struct CsvTable {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

/// One CSV cell: text or a float (formatted via [`fmt_float`]).
#[derive(Debug, Clone)]
pub enum Cell {
    /// Verbatim text (must not contain commas or newlines).
    Text(String),
    /// Floating-point value.
    Num(f64),
    /// Integer value.
    Int(i64),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Cell {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Cell {
        Cell::Text(v.to_string())
    }
}

impl CsvTable {
    /// Table with the given header.
    pub fn new(columns: &[&str]) -> CsvTable {
        CsvTable {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Append a row; the cell count must match the header.
    pub fn push(&mut self, cells: Vec<Cell>) -> Result<()> {
        if cells.len() != self.columns.len() {
            return Err(Error::Config(format!(
                "CSV row has {} cells, header has {} columns",
                cells.len(),
                self.columns.len()
            )));
        }
        let rendered: Result<Vec<String>> = cells
            .into_iter()
            .map(|c| match c {
                Cell::Num(v) => Ok(fmt_float(v)),
                Cell::Int(v) => Ok(v.to_string()),
                Cell::Text(t) => {
                    if t.contains(',') || t.contains('\n') {
                        Err(Error::Config(format!(
                            "CSV text cell must not contain commas or newlines: {t:?}"
                        )))
                    } else {
                        Ok(t)
                    }
                }
            })
            .collect();
        self.rows.push(rendered?);
        Ok(())
    }

    /// Number of data rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// True when no data row has been added.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Render header and rows, LF-terminated.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.columns.join(","));
        for row in &self.rows {
            let _ = writeln!(s, "{}", row.join(","));
        }
        s
    }
}

/// Write text to `path`, creating parent directories; rejects content that
/// is not LF-terminated (all artifacts end in exactly one newline).
pub fn write_text(path: &Path, content: &str) -> Result<()> {
    if !content.ends_with('\n') {
        return Err(Error::Config(format!(
            "artifact {} must end with a newline",
            path.display()
        )));
    }
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, content)?;
    Ok(())
}

/// Serialize any value to pretty JSON with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Whitespace-delimited polylines: one `x y z` line per sample, fibers
/// separated by a `# fiber N` comment line and a blank line.
pub fn polyline_text(centerlines: &[Centerline]) -> String {
    let mut s = String::new();
    for (k, c) in centerlines.iter().enumerate() {
        if k > 0 {
            s.push('\n');
        }
        let _ = writeln!(s, "# fiber {}", c.fiber);
        for p in &c.points {
            let _ = writeln!(
                s,
                "{} {} {}",
                fmt_float(p[0]),
                fmt_float(p[1]),
                fmt_float(p[2])
            );
        }
    }
    s
}

/// One reaction entry of a step log.
#[derive(Debug, Clone, Serialize)]
pub struct ReactionLog {
    /// Global node index.
    pub node: usize,
    /// DOF name (`pos_x` ... `tan_z`).
    pub dof: String,
    /// Reaction value (force units for position DOFs).
    pub value: f64,
}

/// One converged load step of a run log.
#[derive(Debug, Clone, Serialize)]
pub struct StepLog {
    /// Load factor reached.
    pub load_factor: f64,
    /// Newton iterations used.
    pub iterations: usize,
    /// Final residual norm.
    pub residual_norm: f64,
    /// Final increment norm.
    pub increment_norm: f64,
    /// Elastic strain energy.
    pub elastic_energy: f64,
    /// Interaction potential.
    pub interaction_energy: f64,
    /// Reactions at fixed DOFs.
    pub reactions: Vec<ReactionLog>,
}

/// The JSON run log: configuration echo plus per-step equilibria.
#[derive(Debug, Clone, Serialize)]
pub struct RunLog {
    /// Scenario name.
    pub scenario: String,
    /// Pair-quadrature segments per element.
    pub n_segments: usize,
    /// Gauss points per segment.
    pub n_gauss: usize,
    /// Work done by the point loads along the path.
    pub external_work: f64,
    /// Per-axis sums of assembled interaction forces at the final state.
    pub interaction_force_sum: [f64; 3],
    /// Largest nodal interaction force norm at the final state.
    pub interaction_force_max: f64,
    /// Newton iterations summed over every attempt, failed ones included.
    pub total_newton_iterations: usize,
    /// Step attempts that did not converge (each halved the step).
    pub failed_attempts: usize,
    /// One entry per converged load step.
    pub steps: Vec<StepLog>,
}

const DOF_NAMES: [&str; 6] = ["pos_x", "pos_y", "pos_z", "tan_x", "tan_y", "tan_z"];

/// Build the run log from a finished scenario.
pub fn run_log(config: &ScenarioConfig, outcome: &ScenarioOutcome) -> RunLog {
    RunLog {
        scenario: config.name.clone(),
        n_segments: config.interaction.n_segments,
        n_gauss: config.interaction.n_gauss,
        external_work: outcome.external_work,
        interaction_force_sum: outcome.interaction_force_sum,
        interaction_force_max: outcome.interaction_force_max,
        total_newton_iterations: outcome.total_newton_iterations,
        failed_attempts: outcome.failed_attempts,
        steps: outcome
            .steps
            .iter()
            .map(|s| StepLog {
                load_factor: s.load_factor,
                iterations: s.iterations,
                residual_norm: s.residual_norm,
                increment_norm: s.increment_norm,
                elastic_energy: s.elastic_energy,
                interaction_energy: s.interaction_energy,
                reactions: s
                    .reactions
                    .iter()
                    .map(|&(dof, value)| ReactionLog {
                        node: dof / 6,
                        dof: DOF_NAMES[dof % 6].to_string(),
                        value,
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Line-load CSV: one row per quadrature point, self-describing (scenario,
/// load factor, and quadrature budget repeated per row).
pub fn line_load_table(
    config: &ScenarioConfig,
    load_factor: f64,
    rows: &[LineLoadRecord],
) -> Result<CsvTable> {
    let mut t = CsvTable::new(&[
        "scenario",
        "load_factor",
        "n_segments",
        "n_gauss",
        "fiber",
        "element",
        "xi",
        "pos_x",
        "pos_y",
        "pos_z",
        "load_x",
        "load_y",
        "load_z",
    ]);
    for r in rows {
        t.push(vec![
            Cell::from(config.name.as_str()),
            Cell::from(load_factor),
            Cell::from(config.interaction.n_segments),
            Cell::from(config.interaction.n_gauss),
            Cell::from(r.fiber),
            Cell::from(r.element),
            Cell::from(r.xi),
            Cell::from(r.position[0]),
            Cell::from(r.position[1]),
            Cell::from(r.position[2]),
            Cell::from(r.load[0]),
            Cell::from(r.load[1]),
            Cell::from(r.load[2]),
        ])?;
    }
    Ok(t)
}

/// Paths written by [`write_run_artifacts`].
#[derive(Debug, Clone)]
pub struct RunArtifacts {
    /// JSON run log.
    pub log: PathBuf,
    /// Polyline centerlines.
    pub centerlines: PathBuf,
    /// Line-load CSV.
    pub line_loads: PathBuf,
}

/// Write the three run artifacts (`<name>_steps.json`,
/// `<name>_centerlines.txt`, `<name>_line_loads.csv`) into `out_dir`.
pub fn write_run_artifacts(
    out_dir: &Path,
    config: &ScenarioConfig,
    outcome: &ScenarioOutcome,
) -> Result<RunArtifacts> {
    let stem = config.name.replace([' ', '/'], "-");
    let log_path = out_dir.join(format!("{stem}_steps.json"));
    let cl_path = out_dir.join(format!("{stem}_centerlines.txt"));
    let ll_path = out_dir.join(format!("{stem}_line_loads.csv"));

    write_text(&log_path, &to_json_pretty(&run_log(config, outcome))?)?;
    write_text(&cl_path, &polyline_text(&outcome.centerlines))?;
    let final_lambda = outcome.steps.last().map_or(0.0, |s| s.load_factor);
    let table = line_load_table(config, final_lambda, &outcome.line_loads)?;
    write_text(&ll_path, &table.render())?;
    Ok(RunArtifacts {
        log: log_path,
        centerlines: cl_path,
        line_loads: ll_path,
    })
}
