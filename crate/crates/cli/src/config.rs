//! TOML run configuration.
//!
//! Every physical quantity carries its unit in the key (`_nm`, `_um`, `_nm2`,
//! `_rad`, `_hz_angular`, `_w_per_cm2`, `_per_cm3`, `_kg`, `_bohr`); unknown keys are
//! rejected. Missing entries are filled by [`ConfigDocument::resolve`], and the
//! resolved document is what reports embed.

use serde::{Deserialize, Serialize};

use zeno_core::design::asymptotic_params;
use zeno_core::gate::{Aggregate, GateConfig};
use zeno_core::optimizer::{ControlLossMode, EpsilonSearch, OptimizationProblem, SearchSettings};
use zeno_core::rates::{EnsembleConfig, PhysicalScenario, PumpConfig, DEFAULT_SCATTER_CONSTANT};
use zeno_core::units::{Area, Frequency, Intensity, Length, Mass};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Simulate,
    Optimize,
    Table1,
    Rates,
    Sweep,
    Franson,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Optimize => "optimize",
            Command::Table1 => "table1",
            Command::Rates => "rates",
            Command::Sweep => "sweep",
            Command::Franson => "franson",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub segments: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_rad: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_one: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_two: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_control: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub segments: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aggregate: Option<Aggregate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub control_loss: Option<ControlLossMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_search: Option<EpsilonSearch>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points_per_decade: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_one_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_one_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_two_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_two_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale_with_segments: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavelength_one_nm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavelength_two_nm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_hz_angular: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_control_hz_angular: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell_atom_bohr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell_atom_nm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub area_nm2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass_kg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scatter_constant: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_hz_angular: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intensity_one_w_per_cm2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intensity_two_w_per_cm2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub number_density_per_cm3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thickness_um: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub active_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub effective_coupling_hz_angular: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// Minimal kappa over a list of segment counts.
    #[default]
    Tradeoff,
    /// Minimal kappa as the control loss grows towards the target loss.
    ControlLoss,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<SweepKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub segment_counts: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub large_segments: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fractions: Option<Vec<f64>>,
}

/// A parsed configuration file. All sections are optional.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<GateSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<ScenarioSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pump: Option<PumpSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<EnsembleSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Overrides {
    pub segments: Option<usize>,
    pub target_error: Option<f64>,
    pub aggregate: Option<Aggregate>,
}

/// Everything needed to execute one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub document: ConfigDocument,
}

const DEFAULT_SEGMENTS: usize = 10;
const DEFAULT_TARGET_ERROR: f64 = 0.5;

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, column)
}

/// Parses a TOML document without resolving defaults.
pub fn parse_config(text: &str) -> Result<ConfigDocument, CliError> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((None, None), |s| {
            let (l, c) = line_column(text, s.start);
            (Some(l), Some(c))
        });
        CliError::parse(e.message().to_string(), line, column)
    })
}

/// Serializes a document back to TOML.
pub fn emit_config(doc: &ConfigDocument) -> String {
    toml::to_string(doc).expect("configuration documents always serialize")
}

impl ConfigDocument {
    pub fn apply_overrides(&mut self, o: &Overrides) {
        if let Some(n) = o.segments {
            self.problem.get_or_insert_with(Default::default).segments = Some(n);
            if let Some(g) = self.gate.as_mut() {
                g.segments = Some(n);
            }
        }
        if let Some(p) = o.target_error {
            self.problem.get_or_insert_with(Default::default).target_error = Some(p);
            if let Some(s) = self.sweep.as_mut() {
                s.target_error = Some(p);
            }
        }
        if let Some(a) = o.aggregate {
            self.problem.get_or_insert_with(Default::default).aggregate = Some(a);
        }
    }

    /// Fills every section used by `command` with defaults and validates it.
    pub fn resolve(&self, command: Command) -> Result<ConfigDocument, CliError> {
        let mut out = ConfigDocument::default();
        let mut violations = Vec::new();
        let problem = resolve_problem(self.problem.unwrap_or_default());
        let uses = |c: &[Command]| c.contains(&command);
        if uses(&[Command::Optimize, Command::Table1, Command::Sweep, Command::Franson, Command::Rates, Command::Simulate]) {
            out.problem = Some(problem);
        }
        if command == Command::Optimize {
            out.search = Some(resolve_search(self.search.unwrap_or_default()));
        }
        if command == Command::Simulate {
            match resolve_gate(self.gate.unwrap_or_default(), &problem) {
                Ok(g) => out.gate = Some(g),
                Err(v) => violations.extend(v),
            }
        }
        if uses(&[Command::Table1, Command::Rates]) {
            out.scenario = Some(resolve_scenario(self.scenario.unwrap_or_default()));
        }
        if command == Command::Rates {
            out.pump = Some(resolve_pump(self.pump.unwrap_or_default()));
            out.ensemble = Some(resolve_ensemble(self.ensemble.unwrap_or_default()));
        }
        if command == Command::Sweep {
            out.sweep = Some(resolve_sweep(self.sweep.clone().unwrap_or_default(), &problem));
        }
        violations.extend(out.validate());
        if violations.is_empty() {
            Ok(out)
        } else {
            Err(CliError::validation(violations))
        }
    }

    /// Lists every violated invariant of the sections present.
    pub fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if let Some(g) = &self.gate {
            v.extend(gate_violations(g));
        }
        if let Some(p) = &self.problem {
            if let Err(e) = self.problem_config_from(p) {
                v.push(format!("problem: {e}"));
            }
        }
        if let Some(s) = &self.search {
            if let Err(e) = search_settings(s) {
                v.push(format!("search: {e}"));
            }
        }
        if self.scenario.is_some() {
            if let Err(e) = self.physical_scenario() {
                v.push(e);
            }
        }
        if self.pump.is_some() {
            if let Err(e) = self.pump_config() {
                v.push(e);
            }
        }
        if self.ensemble.is_some() {
            if let Err(e) = self.ensemble_config() {
                v.push(e);
            }
        }
        if let Some(s) = &self.sweep {
            v.extend(sweep_violations(s));
        }
        v
    }

    fn problem_config_from(&self, p: &ProblemSection) -> zeno_core::Result<OptimizationProblem> {
        let problem = OptimizationProblem::new(p.segments.unwrap_or(DEFAULT_SEGMENTS), p.target_error.unwrap_or(DEFAULT_TARGET_ERROR))?
            .with_aggregate(p.aggregate.unwrap_or_default())
            .with_epsilon_search(p.epsilon_search.unwrap_or_default());
        problem.with_control_loss(p.control_loss.unwrap_or_default())
    }

    pub fn gate_config(&self) -> Result<GateConfig, String> {
        let g = self.gate.ok_or("missing [gate] section")?;
        let cfg = GateConfig::new(
            g.segments.ok_or("gate.segments missing")?,
            g.epsilon_rad.ok_or("gate.epsilon_rad missing")?,
            g.xi_one.ok_or("gate.xi_one missing")?,
            g.xi_two.ok_or("gate.xi_two missing")?,
        )
        .and_then(|c| c.with_control_loss(g.xi_control.unwrap_or(0.0)))
        .map_err(|e| format!("gate: {e}"))?;
        Ok(cfg)
    }

    pub fn problem_config(&self) -> Result<OptimizationProblem, String> {
        let p = self.problem.ok_or("missing [problem] section")?;
        self.problem_config_from(&p).map_err(|e| format!("problem: {e}"))
    }

    pub fn search_settings(&self) -> Result<SearchSettings, String> {
        search_settings(&self.search.unwrap_or_default()).map_err(|e| format!("search: {e}"))
    }

    pub fn physical_scenario(&self) -> Result<PhysicalScenario, String> {
        let s = resolve_scenario(self.scenario.unwrap_or_default());
        let ell = match (s.ell_atom_bohr, s.ell_atom_nm) {
            (Some(_), Some(_)) => return Err("scenario: give only one of ell_atom_bohr and ell_atom_nm".into()),
            (Some(b), None) => Length::from_bohr(b),
            (None, Some(nm)) => Length::from_nm(nm),
            (None, None) => unreachable!("resolved scenario has a dipole length"),
        };
        let l1 = s.wavelength_one_nm.expect("resolved");
        let l2 = s.wavelength_two_nm.expect("resolved");
        if !(l1 > 0.0 && l2 > 0.0) {
            return Err(format!("scenario: wavelengths must be positive (got {l1} nm, {l2} nm)"));
        }
        let area = match s.area_nm2 {
            Some(a) => Area::from_nm2(a),
            None => Area::diffraction_limited(Length::from_nm(l1)),
        };
        PhysicalScenario::resonant(
            Frequency::from_wavelength(Length::from_nm(l1)),
            Frequency::from_wavelength(Length::from_nm(l2)),
            Frequency::from_angular(s.delta_hz_angular.expect("resolved")),
            Frequency::from_angular(s.delta_control_hz_angular.expect("resolved")),
            ell,
            area,
        )
        .map(|sc| sc.with_mass(Mass::from_kg(s.mass_kg.expect("resolved"))))
        .and_then(|sc| sc.with_scatter_constant(s.scatter_constant.expect("resolved")))
        .map_err(|e| format!("scenario: {e}"))
    }

    pub fn pump_config(&self) -> Result<PumpConfig, String> {
        let sc = self.physical_scenario()?;
        let p = resolve_pump(self.pump.unwrap_or_default());
        PumpConfig::detuned(
            &sc,
            Frequency::from_angular(p.delta_hz_angular.expect("resolved")),
            Intensity::from_w_per_cm2(p.intensity_one_w_per_cm2.expect("resolved")),
            Intensity::from_w_per_cm2(p.intensity_two_w_per_cm2.expect("resolved")),
        )
        .map_err(|e| format!("pump: {e}"))
    }

    /// Ensemble with `S` from the focal volume and `s` from the pump ratio.
    pub fn ensemble_config(&self) -> Result<EnsembleConfig, String> {
        let e = resolve_ensemble(self.ensemble.unwrap_or_default());
        let base = EnsembleConfig {
            number_density_per_cm3: e.number_density_per_cm3.expect("resolved"),
            thickness: Length::from_um(e.thickness_um.expect("resolved")),
            active_fraction: e.active_fraction.expect("resolved"),
            active_count: 0,
            excitations: 0,
            effective_coupling: e.effective_coupling_hz_angular.expect("resolved"),
        };
        base.validate().map_err(|err| format!("ensemble: {err}"))?;
        let sc = self.physical_scenario()?;
        let ratio = zeno_core::rates::pump_excitation_ratio(&sc, &self.pump_config()?).map_err(|err| format!("pump: {err}"))?;
        base.with_counts_from(sc.area(), ratio).map_err(|err| format!("ensemble: {err}"))
    }
}

fn resolve_problem(p: ProblemSection) -> ProblemSection {
    ProblemSection {
        segments: Some(p.segments.unwrap_or(DEFAULT_SEGMENTS)),
        target_error: Some(p.target_error.unwrap_or(DEFAULT_TARGET_ERROR)),
        aggregate: Some(p.aggregate.unwrap_or_default()),
        control_loss: Some(p.control_loss.unwrap_or_default()),
        epsilon_search: Some(p.epsilon_search.unwrap_or_default()),
    }
}

fn resolve_search(s: SearchSection) -> SearchSection {
    let d = SearchSettings::default();
    SearchSection {
        points_per_decade: Some(s.points_per_decade.unwrap_or(d.points_per_decade)),
        xi_one_min: Some(s.xi_one_min.unwrap_or(d.xi_one_range.0)),
        xi_one_max: Some(s.xi_one_max.unwrap_or(d.xi_one_range.1)),
        xi_two_min: Some(s.xi_two_min.unwrap_or(d.xi_two_range.0)),
        xi_two_max: Some(s.xi_two_max.unwrap_or(d.xi_two_range.1)),
        scale_with_segments: Some(s.scale_with_segments.unwrap_or(d.scale_with_segments)),
        max_iterations: Some(s.max_iterations.unwrap_or(d.max_iterations)),
    }
}

fn search_settings(s: &SearchSection) -> zeno_core::Result<SearchSettings> {
    let s = resolve_search(*s);
    let settings = SearchSettings {
        points_per_decade: s.points_per_decade.expect("resolved"),
        xi_one_range: (s.xi_one_min.expect("resolved"), s.xi_one_max.expect("resolved")),
        xi_two_range: (s.xi_two_min.expect("resolved"), s.xi_two_max.expect("resolved")),
        scale_with_segments: s.scale_with_segments.expect("resolved"),
        max_iterations: s.max_iterations.expect("resolved"),
        ..SearchSettings::default()
    };
    settings.validate()?;
    Ok(settings)
}

/// Missing gate entries default to the asymptotic laws of the problem section.
fn resolve_gate(g: GateSection, problem: &ProblemSection) -> Result<GateSection, Vec<String>> {
    let n = g.segments.or(problem.segments).unwrap_or(DEFAULT_SEGMENTS);
    let p = problem.target_error.unwrap_or(DEFAULT_TARGET_ERROR);
    let law = if g.epsilon_rad.is_none() || g.xi_one.is_none() || g.xi_two.is_none() {
        Some(asymptotic_params(p, n).map_err(|e| vec![format!("gate defaults: {e}")])?)
    } else {
        None
    };
    Ok(GateSection {
        segments: Some(n),
        epsilon_rad: g.epsilon_rad.or(law.map(|l| l.epsilon)),
        xi_one: g.xi_one.or(law.map(|l| l.xi_one)),
        xi_two: g.xi_two.or(law.map(|l| l.xi_two)),
        xi_control: Some(g.xi_control.unwrap_or(0.0)),
    })
}

fn gate_violations(g: &GateSection) -> Vec<String> {
    let mut v = Vec::new();
    if g.segments == Some(0) {
        v.push("gate.segments must be at least 1".to_string());
    }
    if let Some(e) = g.epsilon_rad {
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&e) {
            v.push(format!("gate.epsilon_rad = {e} must lie in [0, pi/2)"));
        }
    }
    for (name, x) in [("xi_one", g.xi_one), ("xi_two", g.xi_two), ("xi_control", g.xi_control)] {
        if let Some(x) = x {
            if !(x >= 0.0) {
                v.push(format!("gate.{name} = {x} must be non-negative"));
            }
        }
    }
    if let (Some(a), Some(b)) = (g.xi_one, g.xi_two) {
        if b < a {
            v.push(format!("gate.xi_two = {b} must not be smaller than gate.xi_one = {a}"));
        }
    }
    v
}

fn resolve_scenario(s: ScenarioSection) -> ScenarioSection {
    let (bohr, nm) = match (s.ell_atom_bohr, s.ell_atom_nm) {
        (None, None) => (Some(6.0), None),
        other => other,
    };
    ScenarioSection {
        wavelength_one_nm: Some(s.wavelength_one_nm.unwrap_or(500.0)),
        wavelength_two_nm: Some(s.wavelength_two_nm.unwrap_or(500.0)),
        delta_hz_angular: Some(s.delta_hz_angular.unwrap_or(3e12)),
        delta_control_hz_angular: Some(s.delta_control_hz_angular.unwrap_or(3e13)),
        ell_atom_bohr: bohr,
        ell_atom_nm: nm,
        area_nm2: s.area_nm2,
        mass_kg: Some(s.mass_kg.unwrap_or(Mass::electron().to_kg())),
        scatter_constant: Some(s.scatter_constant.unwrap_or(DEFAULT_SCATTER_CONSTANT)),
    }
}

fn resolve_pump(p: PumpSection) -> PumpSection {
    PumpSection {
        delta_hz_angular: Some(p.delta_hz_angular.unwrap_or(3e14)),
        intensity_one_w_per_cm2: Some(p.intensity_one_w_per_cm2.unwrap_or(1e10)),
        intensity_two_w_per_cm2: Some(p.intensity_two_w_per_cm2.unwrap_or(1e10)),
    }
}

fn resolve_ensemble(e: EnsembleSection) -> EnsembleSection {
    let d = EnsembleConfig::default();
    EnsembleSection {
        number_density_per_cm3: Some(e.number_density_per_cm3.unwrap_or(d.number_density_per_cm3)),
        thickness_um: Some(e.thickness_um.unwrap_or(d.thickness.to_um())),
        active_fraction: Some(e.active_fraction.unwrap_or(d.active_fraction)),
        effective_coupling_hz_angular: Some(e.effective_coupling_hz_angular.unwrap_or(d.effective_coupling)),
    }
}

fn resolve_sweep(s: SweepSection, problem: &ProblemSection) -> SweepSection {
    SweepSection {
        kind: Some(s.kind.unwrap_or_default()),
        target_error: Some(s.target_error.or(problem.target_error).unwrap_or(DEFAULT_TARGET_ERROR)),
        segment_counts: Some(s.segment_counts.unwrap_or_else(|| vec![8, 10, 12, 16, 22, 30, 40, 60])),
        large_segments: Some(s.large_segments.unwrap_or(10_000)),
        fractions: Some(s.fractions.unwrap_or_else(|| vec![0.0, 0.25, 0.5, 0.75, 1.0])),
    }
}

fn sweep_violations(s: &SweepSection) -> Vec<String> {
    let mut v = Vec::new();
    if let Some(p) = s.target_error {
        if !(p > 0.0 && p < 1.0) {
            v.push(format!("sweep.target_error = {p} must lie in (0, 1)"));
        }
    }
    if let Some(ns) = &s.segment_counts {
        if ns.is_empty() || ns.contains(&0) {
            v.push("sweep.segment_counts must be a non-empty list of positive integers".to_string());
        }
    }
    if let Some(n) = s.large_segments {
        if n < 1000 {
            v.push(format!("sweep.large_segments = {n} must be at least 1000"));
        }
    }
    if let Some(fs) = &s.fractions {
        if fs.iter().any(|f| !(*f >= 0.0 && f.is_finite())) {
            v.push("sweep.fractions must be finite and non-negative".to_string());
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_gate_parses() {
        let doc = parse_config("[gate]\nsegments = 10\nepsilon_rad = 0.2221\nxi_one = 0.1307\nxi_two = 1.498\n").unwrap();
        let cfg = doc.gate_config().unwrap();
        assert_eq!(cfg.segments(), 10);
        assert_eq!(cfg.xi_two(), 1.498);
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_config("[scenario]\ndelta = 3e12\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(err.message.contains("delta"), "{}", err.message);
    }

    #[test]
    fn collects_all_violations() {
        let doc = parse_config("[gate]\nsegments = 0\nepsilon_rad = 2.0\nxi_one = 0.5\nxi_two = 0.1\n").unwrap();
        let err = doc.resolve(Command::Simulate).unwrap_err();
        assert!(err.violations.len() >= 3, "{:?}", err.violations);
    }
}
