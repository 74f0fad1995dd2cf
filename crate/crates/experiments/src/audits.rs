//! Audits of the entanglement/discord relations for single-qubit damping.
//!
//! In the purified register `A, B, E` the environment `E` belongs to the
//! damped qubit `A`. Every one-way discord used by an audit is measured on
//! the second subsystem of its pair: on `B` for `ρ_AB` and on `E` for
//! `ρ_AE`, i.e. on the partners of the shared subsystem `A`.

use qcorr_core::channels::{apply_two_qubit, purify_single};
use qcorr_core::measures::{concurrence, discord, eof_from_concurrence, geometric_discord, negativity};
use qcorr_core::states::{make_pure, make_werner, to_density};
use qcorr_core::{BellState, ChannelKind, DensityMatrix, FamilyKind, QubitChannel, Side, StateFamily};
use rayon::prelude::*;

use crate::config::Scenario;
use crate::error::{config_err, ExperimentError, Result};
use crate::output::{fmt_sig, CsvRow};

pub const CONSERVATION_TOL: f64 = 1e-4;
pub const STRICT_TOL: f64 = 1e-6;
pub const ZERO_CONCURRENCE_TOL: f64 = 1e-10;
pub const BOUND_TOL: f64 = 1e-9;
pub const SATURATION_TOL: f64 = 1e-6;
/// Initial correlations at or below this make a rescaled ratio undefined.
pub const UNDEFINED_BELOW: f64 = 1e-12;

/// Reduced states `ρ_AB` and `ρ_AE` after damping qubit `A`.
pub fn damped_pairs(kind: FamilyKind, c_in: f64, ch: &QubitChannel) -> qcorr_core::Result<(DensityMatrix, DensityMatrix)> {
    let psi = make_pure(StateFamily::new(kind, c_in)?);
    let register = to_density(&purify_single(&psi, ch, Side::A)?);
    Ok((register.reduce(&[0, 1])?, register.reduce(&[0, 2])?))
}

/// Entanglement and partner-measured discord of both pairs at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairBudget {
    pub c_in: f64,
    pub strength: f64,
    pub concurrence_ab: f64,
    pub concurrence_ae: f64,
    pub e_ab: f64,
    pub e_ae: f64,
    pub d_ab: f64,
    pub d_ae: f64,
    /// Same discords measured on `A` instead, for comparison only.
    pub d_ab_measured_a: f64,
    pub d_ae_measured_a: f64,
}

impl PairBudget {
    pub fn compute(kind: FamilyKind, channel: ChannelKind, c_in: f64, strength: f64) -> Result<Self> {
        let ch = QubitChannel::new(channel, strength)?;
        let (ab, ae) = damped_pairs(kind, c_in, &ch)?;
        let (c_ab, c_ae) = (concurrence(&ab)?, concurrence(&ae)?);
        Ok(Self {
            c_in,
            strength,
            concurrence_ab: c_ab,
            concurrence_ae: c_ae,
            e_ab: eof_from_concurrence(c_ab),
            e_ae: eof_from_concurrence(c_ae),
            d_ab: discord(&ab, Side::B)?.value,
            d_ae: discord(&ae, Side::B)?.value,
            d_ab_measured_a: discord(&ab, Side::A)?.value,
            d_ae_measured_a: discord(&ae, Side::A)?.value,
        })
    }

    /// `|E_AB + E_AE − D_AB − D_AE|`.
    pub fn violation(&self) -> f64 {
        (self.e_ab + self.e_ae - self.d_ab - self.d_ae).abs()
    }

    pub fn violation_measured_a(&self) -> f64 {
        (self.e_ab + self.e_ae - self.d_ab_measured_a - self.d_ae_measured_a).abs()
    }
}

fn lattice(c_grid: &[f64], s_grid: &[f64]) -> Vec<(f64, f64)> {
    c_grid.iter().flat_map(|&c| s_grid.iter().map(move |&s| (c, s))).collect()
}

fn budgets(kind: FamilyKind, channel: ChannelKind, c_grid: &[f64], s_grid: &[f64]) -> Result<Vec<PairBudget>> {
    lattice(c_grid, s_grid)
        .par_iter()
        .map(|&(c, s)| PairBudget::compute(kind, channel, c, s))
        .collect()
}

fn single_channel(scenario: Scenario) -> Result<ChannelKind> {
    match scenario {
        Scenario::PhaseOne | Scenario::AmpOne => Ok(scenario.channel()),
        other => Err(config_err(format!("this audit needs PHASE_ONE or AMP_ONE, got {other}"))),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConservationRow {
    pub family: FamilyKind,
    pub channel: ChannelKind,
    pub budget: PairBudget,
}

impl CsvRow for ConservationRow {
    fn header() -> &'static [&'static str] {
        &[
            "family",
            "channel",
            "c_in",
            "strength",
            "e_ab",
            "e_ae",
            "d_ab",
            "d_ae",
            "violation",
            "violation_measured_a",
        ]
    }

    fn fields(&self) -> Vec<String> {
        let b = &self.budget;
        let mut out = vec![self.family.name().to_string(), self.channel.name().to_string()];
        out.extend(
            [b.c_in, b.strength, b.e_ab, b.e_ae, b.d_ab, b.d_ae, b.violation(), b.violation_measured_a()].map(fmt_sig),
        );
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConservationReport {
    pub rows: Vec<ConservationRow>,
    pub max_violation: f64,
}

impl ConservationReport {
    pub fn passed(&self) -> bool {
        self.max_violation <= CONSERVATION_TOL
    }

    pub fn max_violation_measured_a(&self) -> f64 {
        self.rows.iter().map(|r| r.budget.violation_measured_a()).fold(0.0, f64::max)
    }
}

/// Checks `E_AB + E_AE = D_AB + D_AE` over a `(c_in, strength)` lattice.
pub fn conservation_audit(
    family: FamilyKind,
    channel: ChannelKind,
    c_grid: &[f64],
    s_grid: &[f64],
) -> Result<ConservationReport> {
    let rows: Vec<ConservationRow> = budgets(family, channel, c_grid, s_grid)?
        .into_iter()
        .map(|budget| ConservationRow { family, channel, budget })
        .collect();
    let max_violation = rows.iter().map(|r| r.budget.violation()).fold(0.0, f64::max);
    Ok(ConservationReport { rows, max_violation })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominanceRow {
    pub c_in: f64,
    pub strength: f64,
    pub check: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl CsvRow for DominanceRow {
    fn header() -> &'static [&'static str] {
        &["c_in", "strength", "check", "lhs", "rhs", "holds"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_sig(self.c_in),
            fmt_sig(self.strength),
            self.check.to_string(),
            fmt_sig(self.lhs),
            fmt_sig(self.rhs),
            self.holds.to_string(),
        ]
    }
}

fn dominance_checks(channel: ChannelKind, b: &PairBudget) -> Vec<DominanceRow> {
    let row = |check, lhs: f64, rhs: f64, holds| DominanceRow { c_in: b.c_in, strength: b.strength, check, lhs, rhs, holds };
    match channel {
        ChannelKind::Phase => vec![
            row("E_AB=D_AB+D_AE", b.e_ab, b.d_ab + b.d_ae, (b.e_ab - b.d_ab - b.d_ae).abs() <= CONSERVATION_TOL),
            row("D_AB<=E_AB", b.d_ab, b.e_ab, b.d_ab <= b.e_ab + STRICT_TOL),
            row("C_AE=0", b.concurrence_ae, 0.0, b.concurrence_ae <= ZERO_CONCURRENCE_TOL),
        ],
        ChannelKind::Amplitude => {
            let mut rows = vec![row("E_AE<=D_AE", b.e_ae, b.d_ae, b.e_ae <= b.d_ae + STRICT_TOL)];
            if b.strength == 0.0 || b.strength == 1.0 {
                rows.push(row("E_AE=D_AE", b.e_ae, b.d_ae, (b.e_ae - b.d_ae).abs() <= CONSERVATION_TOL));
            }
            rows.push(row("E_AB>=D_AB", b.e_ab, b.d_ab, b.e_ab >= b.d_ab - STRICT_TOL));
            rows
        }
    }
}

/// Pointwise entanglement-vs-discord ordering for one-sided damping.
///
/// Phase damping: `E_AB = D_AB + D_AE`, `D_AB ≤ E_AB` and `C_AE = 0`.
/// Amplitude damping: `E_AE ≤ D_AE` (equal at `γ ∈ {0, 1}`) and `E_AB ≥ D_AB`.
pub fn dominance_audit(scenario: Scenario, family: FamilyKind, c_grid: &[f64], s_grid: &[f64]) -> Result<Vec<DominanceRow>> {
    let channel = single_channel(scenario)?;
    Ok(budgets(family, channel, c_grid, s_grid)?.iter().flat_map(|b| dominance_checks(channel, b)).collect())
}

/// A ratio whose denominator may vanish.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ratio {
    Value(f64),
    Undefined,
}

impl Ratio {
    fn of(num: f64, den: f64) -> Self {
        if den <= UNDEFINED_BELOW {
            Self::Undefined
        } else {
            Self::Value(num / den)
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Self::Value(v) => Some(v),
            Self::Undefined => None,
        }
    }

    fn render(self) -> String {
        self.value().map_or_else(|| "undefined".to_string(), fmt_sig)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WernerRow {
    pub channel: ChannelKind,
    pub bell: BellState,
    pub eta: f64,
    pub strength: f64,
    pub eof: f64,
    pub eof_rescaled: Ratio,
    pub discord_ma: f64,
    pub discord_ma_rescaled: Ratio,
    pub discord_mb: f64,
    pub discord_mb_rescaled: Ratio,
}

impl CsvRow for WernerRow {
    fn header() -> &'static [&'static str] {
        &[
            "channel",
            "bell",
            "eta",
            "strength",
            "eof",
            "eof_rescaled",
            "discord_mA",
            "discord_mA_rescaled",
            "discord_mB",
            "discord_mB_rescaled",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.channel.name().to_string(),
            self.bell.name().to_string(),
            fmt_sig(self.eta),
            fmt_sig(self.strength),
            fmt_sig(self.eof),
            self.eof_rescaled.render(),
            fmt_sig(self.discord_ma),
            self.discord_ma_rescaled.render(),
            fmt_sig(self.discord_mb),
            self.discord_mb_rescaled.render(),
        ]
    }
}

fn werner_point(eta: f64, channel: ChannelKind, bell: BellState, strength: f64) -> Result<(f64, f64, f64)> {
    let ch = QubitChannel::new(channel, strength)?;
    let rho = apply_two_qubit(&make_werner(eta, &bell.state())?, Some(&ch), Some(&ch))?;
    let e = eof_from_concurrence(concurrence(&rho)?);
    Ok((e, discord(&rho, Side::A)?.value, discord(&rho, Side::B)?.value))
}

/// Both qubits of a Werner state damped with equal strength; values are
/// divided by their undamped counterparts.
pub fn werner_rescaled_sweep(eta: f64, channel: ChannelKind, grid: &[f64], bell: BellState) -> Result<Vec<WernerRow>> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(config_err(format!("eta {eta} is outside (0, 1]")));
    }
    let (e_in, da_in, db_in) = werner_point(eta, channel, bell, 0.0)?;
    grid.par_iter()
        .map(|&s| {
            let (e, da, db) = werner_point(eta, channel, bell, s)?;
            Ok(WernerRow {
                channel,
                bell,
                eta,
                strength: s,
                eof: e,
                eof_rescaled: Ratio::of(e, e_in),
                discord_ma: da,
                discord_ma_rescaled: Ratio::of(da, da_in),
                discord_mb: db,
                discord_mb_rescaled: Ratio::of(db, db_in),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeometricRow {
    pub c_in: f64,
    pub strength: f64,
    pub bipartition: &'static str,
    pub negativity: f64,
    pub geo_discord: f64,
}

impl GeometricRow {
    pub fn n_squared(&self) -> f64 {
        self.negativity * self.negativity
    }

    /// `N² ≤ G_D` up to [`BOUND_TOL`].
    pub fn holds(&self) -> bool {
        self.n_squared() <= self.geo_discord + BOUND_TOL
    }

    pub fn saturated(&self) -> bool {
        (self.n_squared() - self.geo_discord).abs() <= SATURATION_TOL
    }

    /// Zero negativity alongside non-zero geometric discord.
    pub fn discord_without_negativity(&self) -> bool {
        self.negativity <= ZERO_CONCURRENCE_TOL && self.geo_discord > SATURATION_TOL
    }
}

impl CsvRow for GeometricRow {
    fn header() -> &'static [&'static str] {
        &[
            "c_in",
            "strength",
            "bipartition",
            "negativity",
            "negativity_sq",
            "geo_discord",
            "holds",
            "saturated",
            "zero_negativity_positive_geo",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_sig(self.c_in),
            fmt_sig(self.strength),
            self.bipartition.to_string(),
            fmt_sig(self.negativity),
            fmt_sig(self.n_squared()),
            fmt_sig(self.geo_discord),
            self.holds().to_string(),
            self.saturated().to_string(),
            self.discord_without_negativity().to_string(),
        ]
    }
}

/// `N² ≤ G_D` on `ρ_AB` and `ρ_AE` of a dephased family, geometric discord
/// measured on the second subsystem.
pub fn inequality_audit_geometric(family: FamilyKind, c_grid: &[f64], s_grid: &[f64]) -> Result<Vec<GeometricRow>> {
    let per_point: Vec<Vec<GeometricRow>> = lattice(c_grid, s_grid)
        .par_iter()
        .map(|&(c, s)| {
            let (ab, ae) = damped_pairs(family, c, &QubitChannel::new(ChannelKind::Phase, s)?)?;
            [("AB", ab), ("AE", ae)]
                .into_iter()
                .map(|(label, rho)| {
                    Ok(GeometricRow {
                        c_in: c,
                        strength: s,
                        bipartition: label,
                        negativity: negativity(&rho)?,
                        geo_discord: geometric_discord(&rho, Side::B)?.value,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

/// Error to return when an audit finds a violation.
pub fn audit_failure(msg: impl Into<String>) -> ExperimentError {
    ExperimentError::AuditFailed(msg.into())
}
