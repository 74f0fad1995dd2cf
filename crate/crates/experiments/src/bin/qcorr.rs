use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcorr_experiments::audits::{
    audit_failure, conservation_audit, dominance_audit, inequality_audit_geometric, werner_rescaled_sweep,
    CONSERVATION_TOL,
};
use qcorr_experiments::output::emit_csv;
use qcorr_experiments::{run_sweep, ConfigFile, ExperimentError, FamilySpec, Result, Scenario, SweepConfig};

/// Entanglement and discord of damped two-qubit states.
#[derive(Parser)]
#[command(name = "qcorr", version)]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every measure on every requested bipartition over the strength grid.
    Sweep(Common),
    /// Check E_AB + E_AE = D_AB + D_AE for one-sided damping.
    Conserve(Common),
    /// Pointwise EoF/discord ordering for one-sided damping.
    Dominance(Common),
    /// Rescaled EoF and discord of damped Werner states.
    Werner(Common),
    /// Check N² ≤ G_D on dephased states.
    Geometric(Common),
}

#[derive(Args)]
struct Common {
    /// key = value config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Strength grid, e.g. `0:0.1:1` or `0,0.5,1`.
    #[arg(long)]
    grid: Option<String>,
    /// Initial concurrences.
    #[arg(long)]
    cin: Option<String>,
    /// Werner mixing parameters.
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    scenario: Option<String>,
}

impl Common {
    fn resolve(&self, default_scenario: Scenario) -> Result<SweepConfig> {
        let mut file = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    ExperimentError::Config(format!("cannot read {}: {e}", path.display()))
                })?;
                ConfigFile::parse(&text)?
            }
            None => ConfigFile::default(),
        };
        let overrides = [
            (&self.grid, &mut file.grid),
            (&self.cin, &mut file.c_in),
            (&self.eta, &mut file.eta),
            (&self.scenario, &mut file.scenario),
        ];
        for (flag, slot) in overrides {
            if flag.is_some() {
                *slot = flag.clone();
            }
        }
        if let Some(out) = &self.out {
            file.output = Some(out.display().to_string());
        }
        file.resolve(default_scenario)
    }
}

fn pure_family(cfg: &SweepConfig) -> Result<qcorr_core::FamilyKind> {
    match cfg.family {
        FamilySpec::Pure(kind) => Ok(kind),
        FamilySpec::Werner(_) => Err(ExperimentError::Config("this command needs family phi or psi".into())),
    }
}

fn sweep(args: &Common) -> Result<()> {
    let cfg = args.resolve(Scenario::PhaseBoth)?;
    let rows = run_sweep(&cfg);
    let failed: Vec<_> = rows.iter().filter(|r| r.report.is_err()).collect();
    for row in &failed {
        eprintln!(
            "error at c_in_or_eta={} strength=({}, {}) {}: {}",
            row.initial,
            row.strength_a,
            row.strength_b,
            row.bipartition,
            row.report.as_ref().unwrap_err()
        );
    }
    emit_csv(&rows, cfg.output.as_deref())?;
    eprintln!("sweep {}: {} rows, {} errors", cfg.scenario, rows.len(), failed.len());
    Ok(())
}

fn conserve(args: &Common) -> Result<()> {
    let cfg = args.resolve(Scenario::PhaseOne)?;
    if !matches!(cfg.scenario, Scenario::PhaseOne | Scenario::AmpOne) {
        return Err(ExperimentError::Config(format!("conserve needs PHASE_ONE or AMP_ONE, got {}", cfg.scenario)));
    }
    let report = conservation_audit(pure_family(&cfg)?, cfg.scenario.channel(), &cfg.initial, &cfg.grid)?;
    emit_csv(&report.rows, cfg.output.as_deref())?;
    eprintln!(
        "conserve {}: max violation {:.3e} over {} points (tolerance {:.0e})",
        cfg.scenario,
        report.max_violation,
        report.rows.len(),
        CONSERVATION_TOL
    );
    if !report.passed() {
        return Err(audit_failure(format!("conservation violated by {:.3e}", report.max_violation)));
    }
    Ok(())
}

fn dominance(args: &Common) -> Result<()> {
    let cfg = args.resolve(Scenario::PhaseOne)?;
    let rows = dominance_audit(cfg.scenario, pure_family(&cfg)?, &cfg.initial, &cfg.grid)?;
    emit_csv(&rows, cfg.output.as_deref())?;
    let failures = rows.iter().filter(|r| !r.holds).count();
    eprintln!("dominance {}: {} checks, {} failed", cfg.scenario, rows.len(), failures);
    if failures > 0 {
        return Err(audit_failure(format!("{failures} dominance checks failed")));
    }
    Ok(())
}

fn werner(args: &Common) -> Result<()> {
    let cfg = args.resolve(Scenario::WernerPhase)?;
    let FamilySpec::Werner(bell) = cfg.family else {
        return Err(ExperimentError::Config("werner needs a WERNER_* scenario".into()));
    };
    let mut rows = Vec::new();
    for &eta in &cfg.initial {
        rows.extend(werner_rescaled_sweep(eta, cfg.scenario.channel(), &cfg.grid, bell)?);
    }
    emit_csv(&rows, cfg.output.as_deref())?;
    eprintln!("werner {}: {} rows", cfg.scenario, rows.len());
    Ok(())
}

fn geometric(args: &Common) -> Result<()> {
    let cfg = args.resolve(Scenario::PhaseOne)?;
    if cfg.scenario != Scenario::PhaseOne {
        return Err(ExperimentError::Config(format!("geometric needs PHASE_ONE, got {}", cfg.scenario)));
    }
    let rows = inequality_audit_geometric(pure_family(&cfg)?, &cfg.initial, &cfg.grid)?;
    emit_csv(&rows, cfg.output.as_deref())?;
    let violations = rows.iter().filter(|r| !r.holds()).count();
    let saturated = rows.iter().filter(|r| r.bipartition == "AB" && r.saturated()).count();
    let flagged = rows.iter().filter(|r| r.discord_without_negativity()).count();
    eprintln!(
        "geometric: {} rows, {} violations, {}/{} AB rows saturated, {} rows with zero negativity and positive G_D",
        rows.len(),
        violations,
        saturated,
        rows.len() / 2,
        flagged
    );
    if violations > 0 {
        return Err(audit_failure(format!("N^2 <= G_D violated at {violations} rows")));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Conserve(a) => conserve(a),
        Command::Dominance(a) => dominance(a),
        Command::Werner(a) => werner(a),
        Command::Geometric(a) => geometric(a),
    }
}

fn main() -> ExitCode {
    // Usage errors share exit code 1 with config errors; 2 is reserved for audits.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("qcorr: --threads must be positive");
            return ExitCode::from(1);
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("qcorr: cannot start worker threads: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcorr: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
