//! Correlation quantifiers for two-qubit states.
//!
//! One-way quantities take an explicit [`Side`]: the qubit on which the
//! projective measurement acts. Discord is minimized over rank-one
//! projective measurements `{|m><m|, |m⊥><m⊥|}` with
//! `|m> = cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{
    binary_entropy, clip_spectrum, hermitian_eigensystem, paulis, partial_transpose, trace_norm_hermitian,
    von_neumann_entropy, ComplexMatrix, C64,
};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::states::DensityMatrix;

/// Outcomes rarer than this contribute no conditional entropy.
const OUTCOME_FLOOR: f64 = 1e-12;
/// Density eigenvalues at or below this are dropped from the support when
/// forming the concurrence spectrum.
const SUPPORT_TOL: f64 = 1e-14;

/// Subsystem of a two-qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Side::A => 0,
            Side::B => 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" => Ok(Side::A),
            "B" | "b" => Ok(Side::B),
            other => Err(format!("unknown side '{other}'")),
        }
    }
}

/// Rank-one projective measurement on a qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Computational (σz) basis.
    pub fn z() -> Self {
        Self::new(0.0, 0.0)
    }

    /// `|m>` and `|m⊥>`.
    pub fn vectors(&self) -> [[C64; 2]; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        let e = C64::from_polar(1.0, self.phi);
        [[C64::new(c, 0.0), e * s], [-e.conj() * s, C64::new(c, 0.0)]]
    }

    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        self.vectors().map(|v| ComplexMatrix::outer(&v))
    }

    /// Same measurement with `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn canonical(&self) -> Self {
        let mut theta = self.theta.rem_euclid(2.0 * PI);
        let mut phi = self.phi;
        if theta > PI {
            theta = 2.0 * PI - theta;
            phi += PI;
        }
        Self { theta, phi: phi.rem_euclid(2.0 * PI) }
    }
}

fn require_pair(rho: &DensityMatrix) -> Result<()> {
    if rho.n_qubits() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit measure applied to a {}-qubit state",
            rho.n_qubits()
        )));
    }
    Ok(())
}

fn reduced_entropy(rho: &DensityMatrix, side: Side) -> Result<f64> {
    von_neumann_entropy(rho.reduce(&[side.index()])?.matrix())
}

/// Entropy in bits of the normalized 2×2 Hermitian block `[[a, b], [b*, d]]`
/// with trace `p`.
fn qubit_block_entropy(a: f64, d: f64, b: C64, p: f64) -> f64 {
    let r = ((a - d).powi(2) + 4.0 * b.norm_sqr()).sqrt() / p;
    let lo = (0.5 * (1.0 - r)).max(0.0);
    let hi = (0.5 * (1.0 + r)).min(1.0);
    [lo, hi].iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// Conditional-entropy evaluator specialized to one state and measured side.
struct ConditionalEntropy {
    rho: [[C64; 4]; 4],
    side: Side,
}

impl ConditionalEntropy {
    fn new(rho: &DensityMatrix, side: Side) -> Self {
        let m = rho.matrix();
        let mut entries = [[C64::new(0.0, 0.0); 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = m[(i, j)];
            }
        }
        Self { rho: entries, side }
    }

    /// `Σ_i p_i S(σ_i)` where `σ_i = <m_i| ρ |m_i>` on the measured qubit.
    fn eval(&self, basis: MeasurementBasis) -> f64 {
        let mut total = 0.0;
        for v in basis.vectors() {
            let mut sigma = [[C64::new(0.0, 0.0); 2]; 2];
            for (u, row) in sigma.iter_mut().enumerate() {
                for (w, s) in row.iter_mut().enumerate() {
                    let mut acc = C64::new(0.0, 0.0);
                    for x in 0..2 {
                        for y in 0..2 {
                            let (r, c) = match self.side {
                                Side::A => (2 * x + u, 2 * y + w),
                                Side::B => (2 * u + x, 2 * w + y),
                            };
                            acc += v[x].conj() * self.rho[r][c] * v[y];
                        }
                    }
                    *s = acc;
                }
            }
            let (a, d) = (sigma[0][0].re, sigma[1][1].re);
            let p = a + d;
            if p < OUTCOME_FLOOR {
                continue;
            }
            total += p * qubit_block_entropy(a, d, sigma[0][1], p);
        }
        total
    }
}

/// `Σ_i p_i S(ρ_i)` of the unmeasured qubit after measuring `side` in `basis`.
pub fn conditional_entropy(rho: &DensityMatrix, basis: MeasurementBasis, side: Side) -> Result<f64> {
    require_pair(rho)?;
    Ok(ConditionalEntropy::new(rho, side).eval(basis))
}

/// `S(A) + S(B) - S(AB)`.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    require_pair(rho)?;
    let total = reduced_entropy(rho, Side::A)? + reduced_entropy(rho, Side::B)? - von_neumann_entropy(rho.matrix())?;
    Ok(total.clamp(0.0, 2.0))
}

/// Settings of the two-stage (grid, then simplex) measurement search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordOptions {
    /// Grid points over `θ ∈ [0, π/2]`, endpoints included.
    pub theta_points: usize,
    /// Grid points over `φ ∈ [0, 2π)`.
    pub phi_points: usize,
    /// Number of best grid points refined by the simplex stage.
    pub refine_starts: usize,
    pub simplex: NelderMeadOptions,
}

impl Default for DiscordOptions {
    fn default() -> Self {
        Self { theta_points: 32, phi_points: 64, refine_starts: 3, simplex: NelderMeadOptions::default() }
    }
}

/// Result of a one-way discord computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordResult {
    /// `max(raw, 0)`.
    pub value: f64,
    /// `I - J` before clipping.
    pub raw: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    /// Minimizing measurement, canonicalized.
    pub basis: MeasurementBasis,
    /// Whether every simplex refinement met its diameter tolerance.
    pub converged: bool,
}

struct ConditionalMinimum {
    value: f64,
    basis: MeasurementBasis,
    converged: bool,
}

fn minimize_conditional_entropy(rho: &DensityMatrix, side: Side, opts: &DiscordOptions) -> ConditionalMinimum {
    let objective = ConditionalEntropy::new(rho, side);
    let eval = |theta: f64, phi: f64| objective.eval(MeasurementBasis::new(theta, phi));

    let nt = opts.theta_points.max(2);
    let np = opts.phi_points.max(1);
    let d_theta = FRAC_PI_2 / (nt - 1) as f64;
    let d_phi = 2.0 * PI / np as f64;

    // Row-major over (θ, φ): stable sorting makes ties resolve to lowest θ,
    // then lowest φ.
    let mut grid: Vec<(f64, f64, f64)> = Vec::with_capacity(nt * np);
    for i in 0..nt {
        let theta = i as f64 * d_theta;
        for j in 0..np {
            let phi = j as f64 * d_phi;
            grid.push((eval(theta, phi), theta, phi));
        }
    }
    grid.sort_by(|a, b| a.0.total_cmp(&b.0));

    let (mut best_value, t0, p0) = grid[0];
    let mut best_basis = MeasurementBasis::new(t0, p0);
    let mut converged = true;
    for &(_, theta, phi) in grid.iter().take(opts.refine_starts) {
        let m = nelder_mead(|x| eval(x[0], x[1]), &[theta, phi], &[d_theta, d_phi], opts.simplex);
        converged &= m.converged;
        if m.value < best_value {
            best_value = m.value;
            best_basis = MeasurementBasis::new(m.x[0], m.x[1]);
        }
    }
    ConditionalMinimum { value: best_value, basis: best_basis.canonical(), converged }
}

/// One-way discord `I - J` with the measurement on `side`.
pub fn discord(rho: &DensityMatrix, side: Side) -> Result<DiscordResult> {
    discord_with(rho, side, &DiscordOptions::default())
}

pub fn discord_with(rho: &DensityMatrix, side: Side, opts: &DiscordOptions) -> Result<DiscordResult> {
    require_pair(rho)?;
    let mutual = mutual_information(rho)?;
    let unmeasured = reduced_entropy(rho, side.other())?;
    let min = minimize_conditional_entropy(rho, side, opts);
    let classical = unmeasured - min.value;
    let raw = mutual - classical;
    Ok(DiscordResult {
        value: raw.max(0.0),
        raw,
        mutual_information: mutual,
        classical_correlation: classical,
        basis: min.basis,
        converged: min.converged,
    })
}

/// One-way classical correlation `J = S(unmeasured) - min H`.
pub fn classical_correlation(rho: &DensityMatrix, side: Side) -> Result<f64> {
    Ok(discord(rho, side)?.classical_correlation)
}

/// `max(D measured on A, D measured on B)`.
pub fn symmetrized_discord(rho: &DensityMatrix) -> Result<f64> {
    Ok(discord(rho, Side::A)?.value.max(discord(rho, Side::B)?.value))
}

/// Wootters concurrence.
///
/// The spectrum of `ρ ρ̃` with `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)` equals that of the
/// Hermitian `√ρ ρ̃ √ρ`. With `ρ = X X†` over the support of `ρ`, the
/// latter shares its nonzero spectrum with `τ†τ` for the complex symmetric
/// `τ = Xᵀ (σy⊗σy) X`, whose singular values are the `√λ_i` directly.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_pair(rho)?;
    let es = hermitian_eigensystem(rho.matrix())?;
    let spectrum = clip_spectrum(&es.values)?;
    let support: Vec<usize> = (0..4).filter(|&k| spectrum[k] > SUPPORT_TOL).collect();
    let r = support.len();
    if r == 0 {
        return Ok(0.0);
    }
    // σy⊗σy maps |ij> to -(-1)^{i+j}|ī j̄>: real anti-diagonal (-1, 1, 1, -1).
    const FLIP_SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let x: Vec<Vec<C64>> = support
        .iter()
        .map(|&k| es.vector(k).into_iter().map(|z| z * spectrum[k].sqrt()).collect())
        .collect();
    let mut tau = ComplexMatrix::zeros(r);
    for a in 0..r {
        for b in 0..r {
            tau[(a, b)] = (0..4).map(|i| x[a][i] * FLIP_SIGN[i] * x[b][3 - i]).sum();
        }
    }
    let gram = &tau.adjoint() * &tau;
    let mut roots: Vec<f64> = hermitian_eigensystem(&gram)?.values.iter().map(|&m| m.max(0.0).sqrt()).collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    let c = roots[0] - roots[1..].iter().sum::<f64>();
    Ok(c.clamp(0.0, 1.0))
}

/// `h((1 + √(1 - C²)) / 2)`.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt())).expect("argument lies in [1/2, 1]")
}

/// Entanglement of formation in bits.
pub fn eof(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

/// `‖ρ^{T_A}‖₁ - 1`, clipped at 0.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    require_pair(rho)?;
    let pt = partial_transpose(rho.matrix(), 2, 0)?;
    Ok((trace_norm_hermitian(&pt)? - 1.0).max(0.0))
}

/// `ρ = ¼(I⊗I + a·σ⊗I + I⊗b·σ + Σ t_ij σ_i⊗σ_j)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochDecomposition {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl BlochDecomposition {
    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        require_pair(rho)?;
        let s = paulis();
        let id = ComplexMatrix::identity(2);
        let expect = |op: ComplexMatrix| (&op * rho.matrix()).trace().re;
        let mut out = Self { a: [0.0; 3], b: [0.0; 3], t: [[0.0; 3]; 3] };
        for i in 0..3 {
            out.a[i] = expect(crate::linalg::kron(&s[i], &id));
            out.b[i] = expect(crate::linalg::kron(&id, &s[i]));
            for j in 0..3 {
                out.t[i][j] = expect(crate::linalg::kron(&s[i], &s[j]));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometricDiscord {
    /// Twice the raw distance, so pure states satisfy `N² = value`.
    pub value: f64,
    /// Minimal squared Hilbert–Schmidt distance to classical-quantum states.
    pub raw: f64,
}

/// Closed-form geometric discord with the measurement on `side`.
pub fn geometric_discord(rho: &DensityMatrix, side: Side) -> Result<GeometricDiscord> {
    let bloch = BlochDecomposition::of(rho)?;
    let (x, t) = match side {
        Side::A => (bloch.a, bloch.t),
        Side::B => {
            let mut tt = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    tt[i][j] = bloch.t[j][i];
                }
            }
            (bloch.b, tt)
        }
    };
    let k = ComplexMatrix::from_fn(3, |i, j| {
        C64::new(x[i] * x[j] + (0..3).map(|l| t[i][l] * t[j][l]).sum::<f64>(), 0.0)
    });
    let k_max = hermitian_eigensystem(&k)?.values[0];
    let norm_x: f64 = x.iter().map(|v| v * v).sum();
    let norm_t: f64 = t.iter().flatten().map(|v| v * v).sum();
    let raw = (0.25 * (norm_x + norm_t - k_max)).max(0.0);
    Ok(GeometricDiscord { value: (2.0 * raw).min(1.0), raw })
}

/// Every measure for one bipartition at one parameter point.
///
/// The geometric discord reported here is measured on the second
/// subsystem of the pair.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationReport {
    pub bipartition: String,
    pub concurrence: f64,
    pub eof: f64,
    pub discord_measured_a: f64,
    pub discord_measured_b: f64,
    pub symmetrized_discord: f64,
    pub mutual_information: f64,
    pub negativity: f64,
    pub geometric_discord: f64,
    pub geometric_discord_raw: f64,
    pub discord_converged: bool,
}

impl CorrelationReport {
    pub fn compute(rho: &DensityMatrix, bipartition: impl Into<String>) -> Result<Self> {
        let c = concurrence(rho)?;
        let da = discord(rho, Side::A)?;
        let db = discord(rho, Side::B)?;
        let geo = geometric_discord(rho, Side::B)?;
        Ok(Self {
            bipartition: bipartition.into(),
            concurrence: c,
            eof: eof_from_concurrence(c),
            discord_measured_a: da.value,
            discord_measured_b: db.value,
            symmetrized_discord: da.value.max(db.value),
            mutual_information: da.mutual_information,
            negativity: negativity(rho)?,
            geometric_discord: geo.value,
            geometric_discord_raw: geo.raw,
            discord_converged: da.converged && db.converged,
        })
    }

    pub fn discord(&self, side: Side) -> f64 {
        match side {
            Side::A => self.discord_measured_a,
            Side::B => self.discord_measured_b,
        }
    }
}
