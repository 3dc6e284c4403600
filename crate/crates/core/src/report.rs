//! Run configuration, table assembly and CSV/JSON emission for the CLI.
//!
//! Every command returns a [`Report`]: the configuration that produced it,
//! column names and rows. Tables are checked against the invariants of the
//! module that produced them before they are returned, so a report that
//! reaches the writer is internally consistent.
//!
//! Floats are written with 12 significant digits. The same configuration
//! always yields byte-identical output.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::bounds::bounds_at;
use crate::classical::classical_model;
use crate::error::{Result, WellError};
use crate::momentum::density_series;
use crate::potential::{Smoothing, WellSpec};
use crate::shooting::{
    find_spectrum_numeric, lowest_states_numeric, side_probability_numeric, GridSolution,
    DEFAULT_GRID,
};
use crate::spectrum::{
    classify_matching, find_spectrum, lowest_states, side_probabilities, EigenState, Wavenumbers,
    DEFAULT_MATCH_THRESHOLD,
};

/// Smoothing width used by `smoothing` when the configured well is a plain step.
pub const DEFAULT_DELTA: f64 = 0.2;

const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = WellError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(WellError::InvalidArgument(format!(
                "unknown format '{other}' (expected csv or json)"
            ))),
        }
    }
}

/// Which states a command covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Limit {
    /// All states with `E <= e_max`.
    EMax(f64),
    /// The lowest `n_max` states.
    NMax(usize),
}

impl Limit {
    /// Builds the limit from optional CLI values; at most one may be given.
    pub fn from_options(e_max: Option<f64>, n_max: Option<usize>) -> Result<Self> {
        match (e_max, n_max) {
            (Some(_), Some(_)) => Err(WellError::InvalidArgument(
                "set only one of e_max and n_max".into(),
            )),
            (Some(e), None) => Ok(Limit::EMax(e)),
            (None, Some(n)) => Ok(Limit::NMax(n)),
            (None, None) => Ok(Limit::NMax(9)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub spec: WellSpec,
    pub limit: Limit,
    /// Numerov intervals across the well.
    pub grid: usize,
    /// State index for `wavefunction` and `momentum`.
    pub state: usize,
    /// Position samples for `wavefunction`.
    pub samples: usize,
    pub p_max: f64,
    pub p_points: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            spec: WellSpec::standard(),
            limit: Limit::NMax(9),
            grid: DEFAULT_GRID,
            state: 1,
            samples: 601,
            p_max: 20.0,
            p_points: 2001,
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        let bad = |msg: String| Err(WellError::InvalidArgument(msg));
        match self.limit {
            Limit::EMax(e) if !(e.is_finite() && e > 0.0) => {
                return bad(format!("e_max must be positive, got {e}"))
            }
            Limit::NMax(0) => return bad("n_max must be at least 1".into()),
            _ => {}
        }
        if self.grid < 100 || !self.grid.is_multiple_of(2) {
            return bad(format!(
                "grid must be even and at least 100, got {}",
                self.grid
            ));
        }
        if self.state == 0 {
            return bad("state index starts at 1".into());
        }
        if self.samples < 3 {
            return bad(format!("need at least 3 samples, got {}", self.samples));
        }
        if !(self.p_max.is_finite() && self.p_max > 0.0) {
            return bad(format!("p_max must be positive, got {}", self.p_max));
        }
        if self.p_points < 3 {
            return bad(format!(
                "need at least 3 momentum points, got {}",
                self.p_points
            ));
        }
        Ok(())
    }

    fn entries(&self) -> Vec<(String, Cell)> {
        let s = &self.spec;
        let mut out = vec![
            ("a".to_string(), Cell::Num(s.a)),
            ("b".to_string(), Cell::Num(s.b)),
            ("v0".to_string(), Cell::Num(s.v0)),
            (
                "smoothing".to_string(),
                Cell::Text(s.smoothing.name().into()),
            ),
        ];
        match s.smoothing {
            Smoothing::None => {}
            Smoothing::Exponential { delta } => out.push(("delta".into(), Cell::Num(delta))),
            Smoothing::Linear { epsilon } => out.push(("epsilon".into(), Cell::Num(epsilon))),
        }
        match self.limit {
            Limit::EMax(e) => out.push(("e_max".into(), Cell::Num(e))),
            Limit::NMax(n) => out.push(("n_max".into(), Cell::Int(n as u64))),
        }
        out.extend([
            ("grid".to_string(), Cell::Int(self.grid as u64)),
            ("state".to_string(), Cell::Int(self.state as u64)),
            ("samples".to_string(), Cell::Int(self.samples as u64)),
            ("p_max".to_string(), Cell::Num(self.p_max)),
            ("p_points".to_string(), Cell::Int(self.p_points as u64)),
            ("format".to_string(), Cell::Text(self.format.name().into())),
        ]);
        out
    }
}

/// One table entry.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Text(String),
    /// Not defined for this row (written as an empty CSV field or JSON null).
    Null,
}

impl Cell {
    fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Null, Cell::Num)
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(i) => Some(*i as f64),
            Cell::Num(x) => Some(*x),
            _ => None,
        }
    }

    fn to_text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => format_number(*x),
            Cell::Text(t) => t.clone(),
            Cell::Null => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Num(x) => {
                let rounded: f64 = format_number(*x).parse().unwrap_or(f64::NAN);
                serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
            }
            Cell::Text(t) => Value::String(t.clone()),
            Cell::Null => Value::Null,
        }
    }
}

/// Formats `x` with 12 significant digits, in positional notation for
/// moderate exponents and scientific notation otherwise. Trailing zeros of
/// the fraction are dropped.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        if exp < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
            out.push_str(digits.trim_end_matches('0'));
        } else {
            let split = exp as usize + 1;
            out.push_str(&digits[..split]);
            let frac = digits[split..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        }
    } else {
        out.push_str(&digits[..1]);
        let frac = digits[1..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        let _ = write!(out, "e{exp}");
    }
    out
}

/// A finished table ready for emission.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub config: RunConfig,
    /// Derived scalars reported next to the configuration, e.g. momentum markers.
    pub extras: Vec<(String, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    fn new(command: &'static str, config: &RunConfig, columns: &[&'static str]) -> Self {
        Report {
            command,
            config: *config,
            extras: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn header(&self) -> Vec<(String, Cell)> {
        let mut out = vec![("command".to_string(), Cell::Text(self.command.into()))];
        out.extend(self.config.entries());
        out.extend(self.extras.iter().cloned());
        out
    }

    /// Column values as floats; non-numeric cells become NaN.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| r[idx].as_f64().unwrap_or(f64::NAN))
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in self.header() {
            let _ = writeln!(out, "# {key} = {}", value.to_text());
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::to_text).collect();
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let config: Map<String, Value> = self
            .header()
            .into_iter()
            .map(|(k, v)| (k, v.to_json()))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        let mut doc = Map::new();
        doc.insert("config".into(), Value::Object(config));
        doc.insert(
            "columns".into(),
            Value::Array(self.columns.iter().map(|c| Value::from(*c)).collect()),
        );
        doc.insert("rows".into(), Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&Value::Object(doc))
            .expect("JSON values built from finite numbers serialize");
        text.push('\n');
        text
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Writes the rendered report to `out`, or to stdout when `None`.
    pub fn write(&self, out: Option<&Path>) -> Result<()> {
        let text = self.render();
        let emit_err = |e: std::io::Error| stage_error("emit", e);
        match out {
            Some(path) => std::fs::write(path, text).map_err(emit_err),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes()).map_err(emit_err)?;
                stdout.flush().map_err(emit_err)
            }
        }
    }
}

fn stage_error(stage: &str, err: impl std::fmt::Display) -> WellError {
    WellError::Stage {
        stage: stage.into(),
        message: err.to_string(),
    }
}

fn at<T>(stage: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        WellError::Stage { .. } => e,
        other => stage_error(stage, other),
    })
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(stage_error("validate", what()))
    }
}

fn analytic_states(cfg: &RunConfig) -> Result<Vec<EigenState>> {
    let states = at(
        "spectrum",
        match cfg.limit {
            Limit::EMax(e) => find_spectrum(&cfg.spec, e),
            Limit::NMax(n) => lowest_states(&cfg.spec, n),
        },
    )?;
    if let Limit::NMax(n) = cfg.limit {
        check_count(states.len(), n)?;
    }
    Ok(states)
}

fn numeric_states(spec: &WellSpec, limit: Limit, grid: usize) -> Result<Vec<GridSolution>> {
    let states = at(
        "shooting",
        match limit {
            Limit::EMax(e) => find_spectrum_numeric(spec, e, grid),
            Limit::NMax(n) => lowest_states_numeric(spec, n, grid),
        },
    )?;
    if let Limit::NMax(n) = limit {
        check_count(states.len(), n)?;
    }
    Ok(states)
}

fn check_count(found: usize, wanted: usize) -> Result<()> {
    if found < wanted {
        return Err(stage_error(
            "spectrum",
            WellError::UnknownState {
                n: wanted,
                available: found,
            },
        ));
    }
    Ok(())
}

fn require_step(cfg: &RunConfig, command: &str) -> Result<()> {
    if cfg.spec.smoothing.is_step() {
        Ok(())
    } else {
        Err(stage_error(
            "config",
            format!("{command} needs the discontinuous step well (drop --smoothing)"),
        ))
    }
}

fn check_ordered(energies: &[f64]) -> Result<()> {
    check(
        energies.iter().all(|e| e.is_finite() && *e > 0.0)
            && energies.windows(2).all(|w| w[0] < w[1]),
        || "energies are not positive and strictly increasing".into(),
    )
}

fn check_probability(p: f64, what: &str, n: usize) -> Result<()> {
    check((0.0..=1.0).contains(&p), || {
        format!("{what} = {p} for state {n} is not a probability")
    })
}

/// Energies and wavenumbers of the lowest states.
///
/// Smoothed wells are solved by shooting on `grid` intervals; for them `k`
/// and `q_or_qbar` are the wavenumbers far from the ramp.
pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Report> {
    at("config", cfg.validate())?;
    let energies: Vec<f64> = if cfg.spec.smoothing.is_step() {
        analytic_states(cfg)?.iter().map(|s| s.energy).collect()
    } else {
        numeric_states(&cfg.spec, cfg.limit, cfg.grid)?
            .iter()
            .map(|s| s.energy)
            .collect()
    };
    check_ordered(&energies)?;

    let mut report = Report::new("spectrum", cfg, &["n", "E", "k", "q_or_qbar", "branch"]);
    for (i, &e) in energies.iter().enumerate() {
        let w = Wavenumbers::at(&cfg.spec, e);
        report.rows.push(vec![
            Cell::Int(i as u64 + 1),
            Cell::Num(e),
            Cell::Num(w.k),
            Cell::Num(w.q),
            Cell::Text(w.branch.name().into()),
        ]);
    }
    Ok(report)
}

/// `psi`, `|psi|^2`, the floor and the classical density for state `cfg.state`.
///
/// Step wells are sampled at `cfg.samples` evenly spaced points; smoothed
/// wells are reported on the shooting grid, without a classical column.
pub fn cmd_wavefunction(cfg: &RunConfig) -> Result<Report> {
    at("config", cfg.validate())?;
    let n = cfg.state;
    let spec = cfg.spec;
    let mut report = Report::new(
        "wavefunction",
        cfg,
        &["x", "psi", "density", "potential", "classical_density"],
    );

    let norm;
    if spec.smoothing.is_step() {
        let states = at("spectrum", lowest_states(&spec, n))?;
        let state = states.get(n - 1).ok_or_else(|| {
            stage_error(
                "spectrum",
                WellError::UnknownState {
                    n,
                    available: states.len(),
                },
            )
        })?;
        let (left, right) = side_probabilities(state);
        norm = left + right;
        let model = at("classical", classical_model(&spec, state.energy))?;
        report
            .extras
            .push(("energy".into(), Cell::Num(state.energy)));
        let last = (cfg.samples - 1) as f64;
        for i in 0..cfg.samples {
            // pin the endpoints exactly so they stay inside the well
            let x = match i {
                0 => -spec.a,
                _ if i == cfg.samples - 1 => spec.b,
                _ => -spec.a + spec.width() * i as f64 / last,
            };
            let psi = at("wavefunction", state.psi(x))?;
            let rho = at("classical", model.density(x))?;
            report.rows.push(vec![
                Cell::Num(x),
                Cell::Num(psi),
                Cell::Num(psi * psi),
                Cell::Num(spec.floor(x)),
                Cell::Num(rho),
            ]);
        }
    } else {
        let states = numeric_states(&spec, Limit::NMax(n), cfg.grid)?;
        let sol = &states[n - 1];
        norm = sol.norm();
        report.extras.push(("energy".into(), Cell::Num(sol.energy)));
        for (&x, &psi) in sol.grid.iter().zip(&sol.values) {
            report.rows.push(vec![
                Cell::Num(x),
                Cell::Num(psi),
                Cell::Num(psi * psi),
                Cell::Num(spec.floor(x)),
                Cell::Null,
            ]);
        }
    }

    let psi = report.column("psi").expect("psi column");
    let peak = psi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    check(
        psi[0].abs() <= 1e-9 * peak && psi[psi.len() - 1].abs() <= 1e-9 * peak,
        || format!("state {n} does not vanish at the walls"),
    )?;
    check((norm - 1.0).abs() < 1e-10, || {
        format!("state {n} has norm {norm}")
    })?;
    Ok(report)
}

/// Quantum and classical left-side probabilities with the node/antinode bounds.
pub fn cmd_compare(cfg: &RunConfig) -> Result<Report> {
    at("config", cfg.validate())?;
    require_step(cfg, "compare")?;
    let states = analytic_states(cfg)?;
    let mut report = Report::new(
        "compare",
        cfg,
        &[
            "n",
            "E",
            "p_left_qm",
            "p_left_cl",
            "lower_bound",
            "upper_bound",
            "match_class",
        ],
    );
    for s in &states {
        let (p_qm, _) = side_probabilities(s);
        let p_cl = at("classical", classical_model(&cfg.spec, s.energy))?.p_left;
        let bounds = if s.is_above_threshold() {
            bounds_at(&cfg.spec, s.energy).ok()
        } else {
            None
        };
        let class = if s.is_above_threshold() {
            at("classify", classify_matching(s, DEFAULT_MATCH_THRESHOLD))?
                .kind
                .name()
        } else {
            "below_step"
        };

        check_probability(p_qm, "p_left_qm", s.n)?;
        check_probability(p_cl, "p_left_cl", s.n)?;
        match bounds {
            Some(bp) => check(bp.contains(p_cl, 1e-12), || {
                format!("classical p_left of state {} escapes its bounds", s.n)
            })?,
            None if s.energy < cfg.spec.v0 => check(p_cl == 1.0, || {
                format!("state {} is confined left but p_left_cl = {p_cl}", s.n)
            })?,
            None => {}
        }

        report.rows.push(vec![
            Cell::Int(s.n as u64),
            Cell::Num(s.energy),
            Cell::Num(p_qm),
            Cell::Num(p_cl),
            Cell::opt(bounds.map(|b| b.lower)),
            Cell::opt(bounds.map(|b| b.upper)),
            Cell::Text(class.into()),
        ]);
    }
    check_ordered(&states.iter().map(|s| s.energy).collect::<Vec<_>>())?;
    Ok(report)
}

/// Energy shifts and left-side probabilities of a smoothed well against the step.
///
/// The smoothing is taken from the configuration; a plain step configuration
/// is compared with exponential smoothing of width [`DEFAULT_DELTA`].
pub fn cmd_smoothing(cfg: &RunConfig) -> Result<Report> {
    at("config", cfg.validate())?;
    let step = cfg.spec.as_step();
    let smooth = if cfg.spec.smoothing.is_step() {
        at(
            "config",
            step.smoothed(Smoothing::Exponential {
                delta: DEFAULT_DELTA,
            }),
        )?
    } else {
        cfg.spec
    };
    let mut used = *cfg;
    used.spec = smooth;

    let step_states = analytic_states(&RunConfig { spec: step, ..*cfg })?;
    let smooth_states = numeric_states(&smooth, Limit::NMax(step_states.len()), cfg.grid)?;
    check(smooth_states.len() == step_states.len(), || {
        "smoothed spectrum is shorter than the step spectrum".into()
    })?;

    let mut report = Report::new(
        "smoothing",
        &used,
        &[
            "n",
            "E_step",
            "E_smooth",
            "dE_over_E",
            "p_left_step",
            "p_left_smooth",
            "p_left_cl",
        ],
    );
    for (s, g) in step_states.iter().zip(&smooth_states) {
        let (p_step, _) = side_probabilities(s);
        let p_smooth = side_probability_numeric(g);
        let p_cl = at("classical", classical_model(&step, s.energy))?.p_left;
        check_probability(p_step, "p_left_step", s.n)?;
        check_probability(p_smooth, "p_left_smooth", s.n)?;
        report.rows.push(vec![
            Cell::Int(s.n as u64),
            Cell::Num(s.energy),
            Cell::Num(g.energy),
            Cell::Num((g.energy - s.energy) / s.energy),
            Cell::Num(p_step),
            Cell::Num(p_smooth),
            Cell::Num(p_cl),
        ]);
    }
    check_ordered(&smooth_states.iter().map(|s| s.energy).collect::<Vec<_>>())?;
    Ok(report)
}

/// `|phi(p)|^2` of state `cfg.state` on `cfg.p_points` momenta in `[-p_max, p_max]`.
pub fn cmd_momentum(cfg: &RunConfig) -> Result<Report> {
    at("config", cfg.validate())?;
    require_step(cfg, "momentum")?;
    let n = cfg.state;
    let states = at("spectrum", lowest_states(&cfg.spec, n))?;
    let state = states.get(n - 1).ok_or_else(|| {
        stage_error(
            "spectrum",
            WellError::UnknownState {
                n,
                available: states.len(),
            },
        )
    })?;
    let series = at("momentum", density_series(state, cfg.p_max, cfg.p_points))?;

    let peak = series.density.iter().fold(0.0f64, |m, v| m.max(*v));
    check(series.density.iter().all(|d| *d >= 0.0), || {
        "negative momentum density".into()
    })?;
    check(series.asymmetry() <= 1e-12 * peak, || {
        format!("momentum density of state {n} is not even")
    })?;

    let mut report = Report::new("momentum", cfg, &["p", "density"]);
    report.extras = vec![
        ("energy".into(), Cell::Num(state.energy)),
        ("marker_k".into(), Cell::Num(series.k_marker)),
        ("marker_q".into(), Cell::opt(series.q_marker)),
    ];
    report.rows = series
        .p_grid
        .iter()
        .zip(&series.density)
        .map(|(&p, &d)| vec![Cell::Num(p), Cell::Num(d)])
        .collect();
    Ok(report)
}
