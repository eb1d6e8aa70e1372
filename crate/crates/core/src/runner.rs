//! Scenario runner behind the `spindecoh` binary: config files, figure
//! tables, CSV output and the validation report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{
    schwarzschild_metric, static_vierbein_schwarzschild, verify_vierbein, SpacetimePoint,
};
use crate::lorentz::LocalMomentum;
use crate::schwarzschild::{
    decoherence_rate_curve, entropy_curve, entropy_from_phase_average, l_factor, numeric_generator,
    numeric_samples, numeric_transform, omega, phase_average_exact, pipeline_entropy,
    small_w_coefficients, wigner_angle_from_samples, CurveMode, SchwarzschildScenario, WignerRoute,
};
use crate::transport::{LocalVector, LorentzGenerator};
use crate::wavepacket::GridSpec;

pub const TOOL_NAME: &str = "spindecoh";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

fn config_error(field: &str, reason: impl Into<String>) -> Error {
    Error::Config {
        field: field.to_string(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Approx,
    Exact,
    Both,
}

impl Mode {
    fn as_str(self) -> &'static str {
        match self {
            Mode::Approx => "approx",
            Mode::Exact => "exact",
            Mode::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Entropy against proper time.
    Fig1,
    /// Decoherence rate against `r_s/r`.
    Fig2,
}

impl Figure {
    fn as_str(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
        }
    }
}

/// Flat `key = value` scenario description. Times are in units of `τ_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub figure: Figure,
    pub r_s_over_r: f64,
    pub v_over_c: f64,
    pub w_over_mc: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub tau_count: usize,
    pub grid_nodes: usize,
    pub integrator_steps: usize,
    pub mode: Mode,
    /// Number of `r_s/r` samples in the rate sweep.
    pub sweep_count: usize,
    /// The sweep stops at `r_s/r = 1 − sweep_exclusion`.
    pub sweep_exclusion: f64,
}

const KEYS: [&str; 13] = [
    "name",
    "figure",
    "r_s_over_r",
    "v_over_c",
    "w_over_mc",
    "tau_min",
    "tau_max",
    "tau_count",
    "grid_nodes",
    "integrator_steps",
    "mode",
    "sweep_count",
    "sweep_exclusion",
];

impl ScenarioConfig {
    pub fn fig1() -> Self {
        Self {
            name: "fig1".into(),
            figure: Figure::Fig1,
            r_s_over_r: 0.9,
            v_over_c: 0.8,
            w_over_mc: 0.1,
            tau_min: 0.0,
            tau_max: 10.0,
            tau_count: 201,
            grid_nodes: 129,
            integrator_steps: 4096,
            mode: Mode::Both,
            sweep_count: 399,
            sweep_exclusion: 1e-3,
        }
    }

    pub fn fig2() -> Self {
        Self {
            name: "fig2".into(),
            figure: Figure::Fig2,
            mode: Mode::Approx,
            ..Self::fig1()
        }
    }

    /// Parses and validates. Blank lines and `#` comments are ignored;
    /// missing keys take the defaults of the selected figure.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                config_error("line", format!("line {} is not `key = value`", n + 1))
            })?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(config_error(key, "unknown key"));
            }
            if entries
                .insert(key.to_string(), value.trim().to_string())
                .is_some()
            {
                return Err(config_error(key, "given more than once"));
            }
        }
        let mut cfg = match entries.get("figure").map(String::as_str) {
            None | Some("fig1") => Self::fig1(),
            Some("fig2") => Self::fig2(),
            Some(other) => {
                return Err(config_error(
                    "figure",
                    format!("expected fig1 or fig2, got `{other}`"),
                ))
            }
        };
        for (key, value) in &entries {
            cfg.set(key, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn real(key: &str, v: &str) -> Result<f64> {
            v.parse()
                .map_err(|_| config_error(key, format!("`{v}` is not a number")))
        }
        fn count(key: &str, v: &str) -> Result<usize> {
            v.parse()
                .map_err(|_| config_error(key, format!("`{v}` is not a non-negative integer")))
        }
        match key {
            "name" => self.name = value.to_string(),
            "figure" => {}
            "r_s_over_r" => self.r_s_over_r = real(key, value)?,
            "v_over_c" => self.v_over_c = real(key, value)?,
            "w_over_mc" => self.w_over_mc = real(key, value)?,
            "tau_min" => self.tau_min = real(key, value)?,
            "tau_max" => self.tau_max = real(key, value)?,
            "tau_count" => self.tau_count = count(key, value)?,
            "grid_nodes" => self.grid_nodes = count(key, value)?,
            "integrator_steps" => self.integrator_steps = count(key, value)?,
            "sweep_count" => self.sweep_count = count(key, value)?,
            "sweep_exclusion" => self.sweep_exclusion = real(key, value)?,
            "mode" => {
                self.mode = match value {
                    "approx" => Mode::Approx,
                    "exact" => Mode::Exact,
                    "both" => Mode::Both,
                    _ => {
                        return Err(config_error(
                            key,
                            format!("expected approx, exact or both, got `{value}`"),
                        ))
                    }
                }
            }
            _ => return Err(config_error(key, "unknown key")),
        }
        Ok(())
    }

    /// One `key = value` line per field, in a fixed order. Reals use the
    /// shortest representation that parses back to the same value.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        line("name", self.name.clone());
        line("figure", self.figure.as_str().into());
        line("r_s_over_r", format!("{:?}", self.r_s_over_r));
        line("v_over_c", format!("{:?}", self.v_over_c));
        line("w_over_mc", format!("{:?}", self.w_over_mc));
        line("tau_min", format!("{:?}", self.tau_min));
        line("tau_max", format!("{:?}", self.tau_max));
        line("tau_count", self.tau_count.to_string());
        line("grid_nodes", self.grid_nodes.to_string());
        line("integrator_steps", self.integrator_steps.to_string());
        line("mode", self.mode.as_str().into());
        line("sweep_count", self.sweep_count.to_string());
        line("sweep_exclusion", format!("{:?}", self.sweep_exclusion));
        out
    }

    pub fn validate(&self) -> Result<()> {
        let n = &self.name;
        if n.is_empty() || n.trim() != n || n.contains(['#', '\n', '\r']) {
            return Err(config_error(
                "name",
                "must be non-empty, without surrounding spaces, `#` or line breaks",
            ));
        }
        if !(self.r_s_over_r > 0.0 && self.r_s_over_r < 1.0) {
            return Err(config_error(
                "r_s_over_r",
                format!("must lie in (0, 1), got {}", self.r_s_over_r),
            ));
        }
        if !(self.v_over_c >= 0.0 && self.v_over_c < 1.0) {
            return Err(config_error(
                "v_over_c",
                format!("must lie in [0, 1), got {}", self.v_over_c),
            ));
        }
        if !(self.w_over_mc >= 0.0 && self.w_over_mc.is_finite()) {
            return Err(config_error("w_over_mc", "must be finite and non-negative"));
        }
        if !(self.tau_min >= 0.0 && self.tau_min.is_finite()) {
            return Err(config_error("tau_min", "must be finite and non-negative"));
        }
        if !(self.tau_max > self.tau_min && self.tau_max.is_finite()) {
            return Err(config_error(
                "tau_max",
                "must be finite and greater than tau_min",
            ));
        }
        if self.tau_count < 2 {
            return Err(config_error("tau_count", "need at least 2 samples"));
        }
        if self.grid_nodes == 0 || self.grid_nodes.is_multiple_of(2) {
            return Err(config_error("grid_nodes", "must be a positive odd integer"));
        }
        if self.integrator_steps == 0 {
            return Err(config_error("integrator_steps", "must be positive"));
        }
        if self.sweep_count < 2 {
            return Err(config_error("sweep_count", "need at least 2 samples"));
        }
        if !(self.sweep_exclusion >= 0.0 && self.sweep_exclusion < 1.0) {
            return Err(config_error("sweep_exclusion", "must lie in [0, 1)"));
        }
        Ok(())
    }

    pub fn scenario(&self) -> Result<SchwarzschildScenario> {
        SchwarzschildScenario::new(self.r_s_over_r, self.v_over_c, self.w_over_mc)
    }

    /// Evenly spaced sample times in units of `τ_s`.
    pub fn taus(&self) -> Vec<f64> {
        linspace(self.tau_min, self.tau_max, self.tau_count)
    }

    /// Recovers the config echoed into a CSV header by [`CurveTable::to_csv`].
    pub fn from_csv_header(csv: &str) -> Result<Self> {
        let body: String = csv
            .lines()
            .filter_map(|l| l.strip_prefix(CONFIG_PREFIX))
            .map(|l| format!("{l}\n"))
            .collect();
        if body.is_empty() {
            return Err(config_error("header", "no config lines found"));
        }
        Self::parse(&body)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect()
}

const CONFIG_PREFIX: &str = "# config: ";

/// A rectangular table of finite reals plus provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    config: Option<ScenarioConfig>,
    metadata: Vec<(String, String)>,
}

impl CurveTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            config: None,
            metadata: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::Invariant(format!(
                "row has {} values for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        if let Some(v) = row.iter().find(|v| !v.is_finite()) {
            return Err(Error::Invariant(format!("non-finite table value {v}")));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn with_config(mut self, cfg: &ScenarioConfig) -> Self {
        self.config = Some(cfg.clone());
        self
    }

    pub fn add_metadata(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.metadata.push((key.into(), value.into()));
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// CSV text: `#` header lines, a column-name row, then one row per sample
    /// with 17 significant digits. The timestamp line is written only when
    /// one is given, so default output is reproducible byte for byte.
    pub fn to_csv(&self, timestamp: Option<u64>) -> String {
        let mut out = format!("# {TOOL_NAME} {TOOL_VERSION}\n");
        if let Some(t) = timestamp {
            let _ = writeln!(out, "# timestamp = {t}");
        }
        if let Some(cfg) = &self.config {
            for line in cfg.serialize().lines() {
                let _ = writeln!(out, "{CONFIG_PREFIX}{line}");
            }
        }
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Writes through a sibling temp file and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let file_name = path.file_name().ok_or_else(|| {
        std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "output path has no file name",
        )
    })?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}

/// Entropy against `τ/τ_s`. In `both` mode the largest approx/exact gap is
/// recorded as `max_abs_diff_S`.
pub fn run_fig1(cfg: &ScenarioConfig) -> Result<CurveTable> {
    cfg.validate()?;
    if cfg.w_over_mc <= 0.0 {
        return Err(config_error(
            "w_over_mc",
            "the time axis is in units of τ_s and needs w > 0",
        ));
    }
    let s = cfg.scenario()?;
    let scaled = cfg.taus();
    let natural: Vec<f64> = scaled.iter().map(|t| t * s.tau_s()).collect();
    let curve = |mode| -> Result<Vec<f64>> {
        Ok(entropy_curve(&s, &natural, mode, cfg.grid_nodes)?
            .into_iter()
            .map(|(_, v)| v)
            .collect())
    };
    let (approx, exact) = match cfg.mode {
        Mode::Approx => (Some(curve(CurveMode::Approx)?), None),
        Mode::Exact => (None, Some(curve(CurveMode::Exact)?)),
        Mode::Both => (
            Some(curve(CurveMode::Approx)?),
            Some(curve(CurveMode::Exact)?),
        ),
    };
    let mut columns = vec!["tau_over_tau_s"];
    if approx.is_some() {
        columns.push("S_approx");
    }
    if exact.is_some() {
        columns.push("S_exact");
    }
    let mut table = CurveTable::new(columns).with_config(cfg);
    let c = small_w_coefficients(&s);
    table.add_metadata("L", format!("{:.16e}", c.l));
    table.add_metadata("A_times_tau_s", format!("{:.16e}", c.a * c.tau_s));
    table.add_metadata("B_times_tau_s", format!("{:.16e}", c.b * c.tau_s));
    for (i, &t) in scaled.iter().enumerate() {
        let mut row = vec![t];
        row.extend(approx.as_ref().map(|a| a[i]));
        row.extend(exact.as_ref().map(|e| e[i]));
        table.push_row(row)?;
    }
    if let (Some(a), Some(e)) = (&approx, &exact) {
        let gap = a
            .iter()
            .zip(e)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        table.add_metadata("max_abs_diff_S", format!("{gap:.16e}"));
    }
    Ok(table)
}

/// Sample points of the rate sweep: `sweep_count` evenly spaced values of
/// `r_s/r` in `(0, 1 − sweep_exclusion]`, plus the landmark `2/3`.
pub fn fig2_sweep(cfg: &ScenarioConfig) -> Vec<f64> {
    let top = 1.0 - cfg.sweep_exclusion;
    let n = cfg.sweep_count;
    let mut xs: Vec<f64> = (1..=n).map(|i| top * i as f64 / n as f64).collect();
    let landmark = 2.0 / 3.0;
    if landmark < top && !xs.contains(&landmark) {
        xs.push(landmark);
        xs.sort_by(f64::total_cmp);
    }
    xs
}

/// `|B| τ_s` against `r_s/r`.
pub fn run_fig2(cfg: &ScenarioConfig) -> Result<CurveTable> {
    cfg.validate()?;
    if cfg.w_over_mc <= 0.0 {
        return Err(config_error(
            "w_over_mc",
            "the rate is in units of 1/τ_s and needs w > 0",
        ));
    }
    let curve = decoherence_rate_curve(&fig2_sweep(cfg), cfg.v_over_c, cfg.w_over_mc)?;
    let mut table = CurveTable::new(["r_s_over_r", "abs_B_times_tau_s"]).with_config(cfg);
    for (x, b) in curve {
        table.push_row(vec![x, b])?;
    }
    Ok(table)
}

pub fn run_config(cfg: &ScenarioConfig) -> Result<CurveTable> {
    match cfg.figure {
        Figure::Fig1 => run_fig1(cfg),
        Figure::Fig2 => run_fig2(cfg),
    }
}

/// Knobs for [`run_validate_with`].
#[derive(Debug, Clone, Copy)]
pub struct ValidateSettings {
    pub steps: usize,
    /// Applied to every sampled generator before it is used; a test seam
    /// for injecting faults.
    pub generator_hook: Option<fn(&LorentzGenerator) -> LorentzGenerator>,
}

impl Default for ValidateSettings {
    fn default() -> Self {
        Self {
            steps: 4096,
            generator_hook: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {:<44} residual={:.3e} tolerance={:.1e}",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.residual,
                c.tolerance
            );
        }
        out
    }

    /// 0 when every check passed, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            2
        }
    }

    fn push(&mut self, name: impl Into<String>, residual: Result<f64>, tolerance: f64) {
        self.checks.push(CheckResult {
            name: name.into(),
            residual: residual.unwrap_or(f64::NAN),
            tolerance,
        });
    }
}

pub fn run_validate() -> ValidationReport {
    run_validate_with(&ValidateSettings::default())
}

/// Cross-module agreement checks between the closed forms and the numeric
/// transport pipeline. A check that errors is reported with a NaN residual.
pub fn run_validate_with(settings: &ValidateSettings) -> ValidationReport {
    let hook = |g: LorentzGenerator| settings.generator_hook.map_or(g, |h| h(&g));
    let mut report = ValidationReport::default();

    report.push("vierbein identity", vierbein_residual(), 1e-12);

    let static_residual = (|| {
        let mut worst: f64 = 0.0;
        for i in 0..10 {
            let x = 0.05 + 0.09 * i as f64;
            let s = SchwarzschildScenario::new(x, 0.0, 0.1)?;
            worst = worst.max(hook(numeric_generator(&s)?).max_abs());
        }
        Ok(worst)
    })();
    report.push("static cancellation", static_residual, 1e-10);

    let landmark = (|| {
        let s = SchwarzschildScenario::new(2.0 / 3.0, 0.8, 0.1)?;
        let c = small_w_coefficients(&s);
        Ok(l_factor(&s).abs().max(c.b.abs()))
    })();
    report.push("landmark zero at r = 3 r_s / 2", landmark, 1e-12);

    for (x, tol) in [(0.3, 1e-8), (0.9, 1e-8), (0.9999, 1e-6)] {
        report.push(
            format!("transported Wigner angle, r_s/r = {x}"),
            angle_residual(x, WignerRoute::Transported, settings.steps, &hook),
            tol,
        );
    }
    for x in [0.3, 0.9] {
        report.push(
            format!("literal Wigner angle, r_s/r = {x}"),
            angle_residual(x, WignerRoute::Literal, settings.steps, &hook),
            1e-8,
        );
    }

    let group = (|| {
        let s = SchwarzschildScenario::new(0.9, 0.8, 0.1)?;
        let lt = numeric_transform(&s, 10.0 * s.tau_s(), 10_000)?;
        let q = LocalMomentum::along_z(s.q3(), 1.0)?.as_local();
        let moved: LocalVector = lt.apply(&q);
        let drift = (0..4)
            .map(|i| (moved.components()[i] - q.components()[i]).abs())
            .fold(0.0, f64::max);
        Ok((lt.metric_residual(), drift))
    })();
    report.push(
        "Lorentz group residual after 1e4 steps",
        group.clone().map(|g| g.0),
        1e-9,
    );
    report.push(
        "centroid momentum drift after 1e4 steps",
        group.map(|g| g.1),
        1e-8,
    );

    let entropy_gap = (|| {
        let s = SchwarzschildScenario::new(0.9, 0.8, 0.1)?;
        let packet = s.packet(GridSpec::GaussHermite { nodes: 129 })?;
        let mut worst: f64 = 0.0;
        for t in [0.5, 2.0, 5.0] {
            let tau = t * s.tau_s();
            let numeric = pipeline_entropy(&s, &packet, tau, settings.steps)?;
            let closed = entropy_from_phase_average(phase_average_exact(&s, tau, 129)?);
            worst = worst.max((numeric - closed).abs());
        }
        Ok(worst)
    })();
    report.push("pipeline entropy vs quadrature", entropy_gap, 1e-8);

    report
}

fn vierbein_residual() -> Result<f64> {
    let chart = schwarzschild_metric(1.0)?;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let r = 1.01 * (100.0f64 / 1.01).powf(i as f64 / 19.0);
        let theta = 0.2 + 2.7 * i as f64 / 19.0;
        let x = SpacetimePoint::new(0.3 * i as f64, r, theta, 0.4 * i as f64);
        let v = static_vierbein_schwarzschild(&x, 1.0)?;
        worst = worst.max(verify_vierbein(&chart, &v, &x)?);
    }
    Ok(worst)
}

/// Largest `|θ_numeric − Ω τ|` over 33 momenta spanning `q³ ± 4w`, at
/// `v/c = 0.8`, `w/mc = 0.1`. The literal route runs to `τ = 10⁻⁴ τ_s`,
/// the transported route until the largest angle reaches 3.
fn angle_residual(
    x: f64,
    route: WignerRoute,
    steps: usize,
    hook: &dyn Fn(LorentzGenerator) -> LorentzGenerator,
) -> Result<f64> {
    let s = SchwarzschildScenario::new(x, 0.8, 0.1)?;
    let momenta = keystone_momenta(&s);
    let tau = match route {
        WignerRoute::Literal => 1e-4 * s.tau_s(),
        WignerRoute::Transported => {
            let fastest = momenta
                .iter()
                .map(|&p| omega(p, &s).abs())
                .fold(0.0, f64::max);
            3.0 / fastest
        }
    };
    let samples: Vec<_> = numeric_samples(&s, tau, steps)?
        .into_iter()
        .map(|(g, h)| (hook(g), h))
        .collect();
    let mut worst: f64 = 0.0;
    for &p in &momenta {
        let angle = wigner_angle_from_samples(&samples, p, route)?;
        worst = worst.max((angle - omega(p, &s) * tau).abs());
    }
    Ok(worst)
}

/// 33 evenly spaced `p³` across `q³ ± 4w`.
pub fn keystone_momenta(s: &SchwarzschildScenario) -> Vec<f64> {
    let q = s.q3();
    let w = s.w();
    linspace(q - 4.0 * w, q + 4.0 * w, 33)
}
