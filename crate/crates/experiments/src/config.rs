//! Scenario definitions and the plain-text `key = value` config format.
//!
//! ```text
//! # comments and blank lines are ignored
//! scenario     = AMP_ONE
//! family       = phi            # phi | psi | werner
//! c_in         = 0.25, 0.5, 1.0 # numbers and start:step:end ranges
//! grid         = 0:0.02:1
//! bipartitions = AB, AE, BE
//! output       = amp_one.csv
//! ```
//!
//! Other keys: `eta` (Werner mixing values), `bell` (singlet, phi_plus,
//! phi_minus, psi_plus) and `grid_b` (second damping strength grid for
//! asymmetric double damping). Unknown keys are rejected.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qcorr_core::{BellState, ChannelKind, FamilyKind};

use crate::error::{config_err, Result};

/// Which qubits are damped, by which channel, starting from which kind of
/// initial state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scenario {
    PhaseBoth,
    PhaseOne,
    AmpOne,
    AmpBoth,
    /// Werner initial state, both qubits dephased.
    WernerPhase,
    /// Werner initial state, both qubits amplitude damped.
    WernerAmp,
}

impl Scenario {
    pub const ALL: [Scenario; 6] =
        [Self::PhaseBoth, Self::PhaseOne, Self::AmpOne, Self::AmpBoth, Self::WernerPhase, Self::WernerAmp];

    pub fn name(self) -> &'static str {
        match self {
            Self::PhaseBoth => "PHASE_BOTH",
            Self::PhaseOne => "PHASE_ONE",
            Self::AmpOne => "AMP_ONE",
            Self::AmpBoth => "AMP_BOTH",
            Self::WernerPhase => "WERNER_PHASE",
            Self::WernerAmp => "WERNER_AMP",
        }
    }

    pub fn channel(self) -> ChannelKind {
        match self {
            Self::PhaseBoth | Self::PhaseOne | Self::WernerPhase => ChannelKind::Phase,
            Self::AmpOne | Self::AmpBoth | Self::WernerAmp => ChannelKind::Amplitude,
        }
    }

    pub fn damps_both(self) -> bool {
        !matches!(self, Self::PhaseOne | Self::AmpOne)
    }

    pub fn is_werner(self) -> bool {
        matches!(self, Self::WernerPhase | Self::WernerAmp)
    }

    /// Bipartitions that exist in this scenario's register.
    pub fn bipartitions(self) -> &'static [Bipartition] {
        use Bipartition::*;
        if self.is_werner() {
            &[AB]
        } else if self.damps_both() {
            &[AB, AEa, AEb, BEa, BEb, EaEb]
        } else {
            &[AB, AE, BE]
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let upper = s.trim().to_ascii_uppercase();
        Self::ALL
            .into_iter()
            .find(|sc| sc.name() == upper)
            .ok_or_else(|| format!("unknown scenario '{s}'"))
    }
}

/// A pair of qubits of a purified register.
///
/// Single-damping registers are `A, B, E`; double-damping registers are
/// `A, B, E_A, E_B`. Variants are declared in output order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bipartition {
    AB,
    AE,
    BE,
    AEa,
    AEb,
    BEa,
    BEb,
    EaEb,
}

impl Bipartition {
    const ALL: [Bipartition; 8] =
        [Self::AB, Self::AE, Self::BE, Self::AEa, Self::AEb, Self::BEa, Self::BEb, Self::EaEb];

    pub fn label(self) -> &'static str {
        match self {
            Self::AB => "AB",
            Self::AE => "AE",
            Self::BE => "BE",
            Self::AEa => "AE_A",
            Self::AEb => "AE_B",
            Self::BEa => "BE_A",
            Self::BEb => "BE_B",
            Self::EaEb => "E_AE_B",
        }
    }

    /// Qubit indices in the purified register.
    pub fn qubits(self) -> [usize; 2] {
        match self {
            Self::AB => [0, 1],
            Self::AE | Self::AEa => [0, 2],
            Self::BE | Self::BEa => [1, 2],
            Self::AEb => [0, 3],
            Self::BEb => [1, 3],
            Self::EaEb => [2, 3],
        }
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Bipartition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let upper = s.trim().to_ascii_uppercase();
        Self::ALL
            .into_iter()
            .find(|b| b.label() == upper)
            .ok_or_else(|| format!("unknown bipartition '{s}'"))
    }
}

/// Initial-state family selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Pure(FamilyKind),
    Werner(BellState),
}

impl FamilySpec {
    pub fn label(self) -> String {
        match self {
            Self::Pure(kind) => kind.name().to_string(),
            Self::Werner(bell) => format!("werner:{}", bell.name()),
        }
    }
}

/// Full description of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub scenario: Scenario,
    pub family: FamilySpec,
    /// Initial concurrences (pure families) or mixing parameters η (Werner).
    pub initial: Vec<f64>,
    pub grid: Vec<f64>,
    /// Independent strengths for qubit B; `None` damps both equally.
    pub grid_b: Option<Vec<f64>>,
    pub bipartitions: Vec<Bipartition>,
    pub output: Option<PathBuf>,
}

pub const DEFAULT_C_IN: [f64; 6] = [0.1, 0.25, 0.5, 0.75, 0.9, 1.0];
pub const DEFAULT_ETA: [f64; 2] = [0.5, 0.95];

/// `0, 0.02, ..., 1`.
pub fn default_grid() -> Vec<f64> {
    parse_values("0:0.02:1").expect("default grid parses")
}

impl SweepConfig {
    pub fn new(scenario: Scenario) -> Self {
        let (family, initial) = if scenario.is_werner() {
            (FamilySpec::Werner(BellState::Singlet), DEFAULT_ETA.to_vec())
        } else {
            (FamilySpec::Pure(FamilyKind::Phi), DEFAULT_C_IN.to_vec())
        };
        Self {
            scenario,
            family,
            initial,
            grid: default_grid(),
            grid_b: None,
            bipartitions: vec![Bipartition::AB],
            output: None,
        }
    }

    /// Checks grids, family/scenario agreement and bipartitions.
    pub fn validate(&self) -> Result<()> {
        check_sorted_unit("grid", &self.grid)?;
        if let Some(b) = &self.grid_b {
            check_sorted_unit("grid_b", b)?;
            if !self.scenario.damps_both() || self.scenario.is_werner() {
                return Err(config_err(format!("grid_b is only meaningful for PHASE_BOTH and AMP_BOTH, not {}", self.scenario)));
            }
        }
        let name = if self.scenario.is_werner() { "eta" } else { "c_in" };
        check_sorted_unit(name, &self.initial)?;
        match (self.family, self.scenario.is_werner()) {
            (FamilySpec::Werner(_), false) => {
                return Err(config_err(format!("family werner requires a WERNER_* scenario, got {}", self.scenario)))
            }
            (FamilySpec::Pure(_), true) => {
                return Err(config_err(format!("scenario {} requires family werner", self.scenario)))
            }
            _ => {}
        }
        if self.scenario.is_werner() && self.initial.iter().any(|&e| e <= 0.0) {
            return Err(config_err("eta must lie in (0, 1]"));
        }
        if self.bipartitions.is_empty() {
            return Err(config_err("at least one bipartition is required"));
        }
        let allowed = self.scenario.bipartitions();
        for b in &self.bipartitions {
            if !allowed.contains(b) {
                let names: Vec<&str> = allowed.iter().map(|b| b.label()).collect();
                return Err(config_err(format!(
                    "bipartition {b} is not available in {} (allowed: {})",
                    self.scenario,
                    names.join(", ")
                )));
            }
        }
        Ok(())
    }
}

fn check_sorted_unit(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(config_err(format!("{name} is empty")));
    }
    if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(config_err(format!("{name} value {v} is outside [0, 1]")));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(config_err(format!("{name} must be strictly ascending")));
    }
    Ok(())
}

/// Parses comma-separated numbers and `start:step:end` ranges.
///
/// Range points are `start + i·step` rounded to 12 decimals, so
/// `0:0.1:1` yields exactly `0.3` rather than `0.30000000000000004`.
pub fn parse_values(spec: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').map(str::trim).collect();
        let num = |s: &str| s.parse::<f64>().map_err(|_| config_err(format!("'{s}' is not a number")));
        match parts.as_slice() {
            [v] => out.push(num(v)?),
            [start, step, end] => {
                let (start, step, end) = (num(start)?, num(step)?, num(end)?);
                if step.is_nan() || step <= 0.0 || end < start {
                    return Err(config_err(format!("range '{item}' needs step > 0 and end >= start")));
                }
                let n = ((end - start) / step + 1e-9).floor() as usize;
                if n > 100_000 {
                    return Err(config_err(format!("range '{item}' has too many points")));
                }
                out.extend((0..=n).map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12));
            }
            _ => return Err(config_err(format!("cannot parse '{item}' (expected number or start:step:end)"))),
        }
    }
    if out.is_empty() {
        return Err(config_err(format!("no values in '{spec}'")));
    }
    Ok(out)
}

fn parse_list<T: FromStr<Err = String>>(spec: &str) -> Result<Vec<T>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(config_err))
        .collect()
}

/// Raw key/value settings before they are resolved against a scenario.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigFile {
    pub scenario: Option<String>,
    pub family: Option<String>,
    pub c_in: Option<String>,
    pub eta: Option<String>,
    pub bell: Option<String>,
    pub grid: Option<String>,
    pub grid_b: Option<String>,
    pub bipartitions: Option<String>,
    pub output: Option<String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| config_err(format!("line {}: expected key = value", lineno + 1)))?;
            let value = Some(value.trim().to_string());
            let slot = match key.trim() {
                "scenario" => &mut cfg.scenario,
                "family" => &mut cfg.family,
                "c_in" => &mut cfg.c_in,
                "eta" => &mut cfg.eta,
                "bell" => &mut cfg.bell,
                "grid" => &mut cfg.grid,
                "grid_b" => &mut cfg.grid_b,
                "bipartitions" => &mut cfg.bipartitions,
                "output" => &mut cfg.output,
                other => return Err(config_err(format!("line {}: unknown key '{other}'", lineno + 1))),
            };
            if slot.is_some() {
                return Err(config_err(format!("line {}: duplicate key '{}'", lineno + 1, key.trim())));
            }
            *slot = value;
        }
        Ok(cfg)
    }

    /// Resolves into a validated [`SweepConfig`]; `default_scenario` applies
    /// when the file names none.
    pub fn resolve(&self, default_scenario: Scenario) -> Result<SweepConfig> {
        let scenario = match &self.scenario {
            Some(s) => s.parse().map_err(config_err)?,
            None => default_scenario,
        };
        let mut cfg = SweepConfig::new(scenario);

        let bell = match &self.bell {
            Some(b) => b.parse::<BellState>().map_err(config_err)?,
            None => BellState::Singlet,
        };
        cfg.family = match self.family.as_deref().map(|f| f.trim().to_ascii_lowercase()) {
            None if scenario.is_werner() => FamilySpec::Werner(bell),
            None => FamilySpec::Pure(FamilyKind::Phi),
            Some(f) if f == "phi" => FamilySpec::Pure(FamilyKind::Phi),
            Some(f) if f == "psi" => FamilySpec::Pure(FamilyKind::Psi),
            Some(f) if f == "werner" => FamilySpec::Werner(bell),
            Some(f) => return Err(config_err(format!("unknown family '{f}'"))),
        };
        if self.bell.is_some() && !matches!(cfg.family, FamilySpec::Werner(_)) {
            return Err(config_err("bell only applies to the werner family"));
        }

        match (scenario.is_werner(), &self.c_in, &self.eta) {
            (true, Some(_), _) => return Err(config_err("c_in does not apply to WERNER_* scenarios; use eta")),
            (false, _, Some(_)) => return Err(config_err("eta only applies to WERNER_* scenarios")),
            (true, _, Some(eta)) => cfg.initial = parse_values(eta)?,
            (false, Some(c), _) => cfg.initial = parse_values(c)?,
            _ => {}
        }
        if let Some(g) = &self.grid {
            cfg.grid = parse_values(g)?;
        }
        if let Some(g) = &self.grid_b {
            cfg.grid_b = Some(parse_values(g)?);
        }
        if let Some(b) = &self.bipartitions {
            cfg.bipartitions = parse_list(b)?;
            cfg.bipartitions.sort();
            cfg.bipartitions.dedup();
        }
        cfg.output = self.output.as_ref().map(PathBuf::from);
        cfg.validate()?;
        Ok(cfg)
    }
}
