//! Grid sweeps over damping strengths.

use qcorr_core::channels::{apply_two_qubit, purify_double, purify_single};
use qcorr_core::states::{make_pure, make_werner, to_density};
use qcorr_core::{CorrelationReport, DensityMatrix, QubitChannel, Side, StateFamily};
use rayon::prelude::*;

use crate::config::{Bipartition, FamilySpec, Scenario, SweepConfig};
use crate::output::{fmt_sig, CsvRow};

/// One bipartition at one grid point. A failed measure leaves `report` as
/// the error message instead of aborting the sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub scenario: Scenario,
    pub family: String,
    pub initial: f64,
    pub strength_a: f64,
    pub strength_b: f64,
    pub bipartition: Bipartition,
    pub report: Result<CorrelationReport, String>,
}

pub const SWEEP_HEADER: [&str; 15] = [
    "scenario",
    "family",
    "c_in_or_eta",
    "strength_a",
    "strength_b",
    "bipartition",
    "concurrence",
    "eof",
    "discord_mA",
    "discord_mB",
    "discord_sym",
    "mutual_info",
    "negativity",
    "geo_discord",
    "geo_discord_raw",
];

impl CsvRow for SweepRow {
    fn header() -> &'static [&'static str] {
        &SWEEP_HEADER
    }

    fn fields(&self) -> Vec<String> {
        let mut out = vec![
            self.scenario.name().to_string(),
            self.family.clone(),
            fmt_sig(self.initial),
            fmt_sig(self.strength_a),
            fmt_sig(self.strength_b),
            self.bipartition.label().to_string(),
        ];
        match &self.report {
            Ok(r) => out.extend(
                [
                    r.concurrence,
                    r.eof,
                    r.discord_measured_a,
                    r.discord_measured_b,
                    r.symmetrized_discord,
                    r.mutual_information,
                    r.negativity,
                    r.geometric_discord,
                    r.geometric_discord_raw,
                ]
                .map(fmt_sig),
            ),
            Err(_) => out.extend(std::iter::repeat_n("error".to_string(), 9)),
        }
        out
    }
}

/// Strength pairs `(a, b)` visited by a scenario.
pub fn strength_points(cfg: &SweepConfig) -> Vec<(f64, f64)> {
    let sc = cfg.scenario;
    if !sc.damps_both() {
        return cfg.grid.iter().map(|&s| (s, 0.0)).collect();
    }
    match &cfg.grid_b {
        Some(gb) => cfg.grid.iter().flat_map(|&a| gb.iter().map(move |&b| (a, b))).collect(),
        None => cfg.grid.iter().map(|&s| (s, s)).collect(),
    }
}

/// Damped two-qubit state, or the purified register when an environment
/// bipartition is needed.
fn register(cfg: &SweepConfig, initial: f64, sa: f64, sb: f64) -> qcorr_core::Result<DensityMatrix> {
    let kind = cfg.scenario.channel();
    let ch_a = QubitChannel::new(kind, sa)?;
    let ch_b = if cfg.scenario.damps_both() { Some(QubitChannel::new(kind, sb)?) } else { None };
    match cfg.family {
        FamilySpec::Werner(bell) => {
            let rho = make_werner(initial, &bell.state())?;
            apply_two_qubit(&rho, Some(&ch_a), ch_b.as_ref())
        }
        FamilySpec::Pure(kind) => {
            let psi = make_pure(StateFamily::new(kind, initial)?);
            let needs_env = cfg.bipartitions.iter().any(|&b| b != Bipartition::AB);
            if !needs_env {
                return apply_two_qubit(&to_density(&psi), Some(&ch_a), ch_b.as_ref());
            }
            let purified = match ch_b {
                Some(ch_b) => purify_double(&psi, Some(&ch_a), Some(&ch_b))?,
                None => purify_single(&psi, &ch_a, Side::A)?,
            };
            Ok(to_density(&purified))
        }
    }
}

fn rows_at(cfg: &SweepConfig, initial: f64, sa: f64, sb: f64) -> Vec<SweepRow> {
    let reg = register(cfg, initial, sa, sb);
    let family = cfg.family.label();
    cfg.bipartitions
        .iter()
        .map(|&bip| {
            let report = reg.as_ref().map_err(|e| e.to_string()).and_then(|reg| {
                let pair = if reg.n_qubits() == 2 { Ok(reg.clone()) } else { reg.reduce(&bip.qubits()) };
                pair.and_then(|rho| CorrelationReport::compute(&rho, bip.label())).map_err(|e| e.to_string())
            });
            SweepRow {
                scenario: cfg.scenario,
                family: family.clone(),
                initial,
                strength_a: sa,
                strength_b: sb,
                bipartition: bip,
                report,
            }
        })
        .collect()
}

/// Evaluates every grid point in parallel. Rows come out ordered by
/// initial value, then strengths, then bipartition, independent of
/// scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Vec<SweepRow> {
    let points = strength_points(cfg);
    let work: Vec<(f64, f64, f64)> = cfg
        .initial
        .iter()
        .flat_map(|&init| points.iter().map(move |&(a, b)| (init, a, b)))
        .collect();
    work.par_iter().flat_map_iter(|&(init, a, b)| rows_at(cfg, init, a, b)).collect()
}
