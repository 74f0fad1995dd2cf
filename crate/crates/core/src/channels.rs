//! Phase- and amplitude-damping channels and their isometric dilations.
//!
//! A damped qubit is dilated onto a single environment qubit that starts in
//! `|0>`. Purified registers are ordered `A, B, E` (one damped qubit) or
//! `A, B, E_A, E_B` (both damped): environments are appended after the
//! system qubits in the order they are attached.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, C64};
use crate::measures::Side;
use crate::states::{check_unit_interval, DensityMatrix, PureState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    Phase,
    Amplitude,
}

impl ChannelKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Phase => "phase",
            Self::Amplitude => "amplitude",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "phase" => Ok(Self::Phase),
            "amplitude" | "amp" => Ok(Self::Amplitude),
            other => Err(format!("unknown channel kind '{other}'")),
        }
    }
}

/// Single-qubit channel given by two Kraus operators.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitChannel {
    kind: ChannelKind,
    strength: f64,
    kraus: [ComplexMatrix; 2],
}

/// Phase damping: `K0 = diag(1, √(1-λ))`, `K1 = diag(0, √λ)`.
pub fn phase_damping(lambda: f64) -> Result<QubitChannel> {
    check_unit_interval("lambda", lambda)?;
    Ok(QubitChannel {
        kind: ChannelKind::Phase,
        strength: lambda,
        kraus: [
            ComplexMatrix::from_real_diag(&[1.0, (1.0 - lambda).sqrt()]),
            ComplexMatrix::from_real_diag(&[0.0, lambda.sqrt()]),
        ],
    })
}

/// Amplitude damping: `K0 = diag(1, √(1-γ))`, `K1 = √γ |0><1|`.
pub fn amplitude_damping(gamma: f64) -> Result<QubitChannel> {
    check_unit_interval("gamma", gamma)?;
    let mut k1 = ComplexMatrix::zeros(2);
    k1[(0, 1)] = C64::new(gamma.sqrt(), 0.0);
    Ok(QubitChannel {
        kind: ChannelKind::Amplitude,
        strength: gamma,
        kraus: [ComplexMatrix::from_real_diag(&[1.0, (1.0 - gamma).sqrt()]), k1],
    })
}

impl QubitChannel {
    pub fn new(kind: ChannelKind, strength: f64) -> Result<Self> {
        match kind {
            ChannelKind::Phase => phase_damping(strength),
            ChannelKind::Amplitude => amplitude_damping(strength),
        }
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn kraus(&self) -> &[ComplexMatrix; 2] {
        &self.kraus
    }

    /// Largest entry of `Σ K†K - I`.
    pub fn completeness_deviation(&self) -> f64 {
        let sum = self
            .kraus
            .iter()
            .map(|k| &k.adjoint() * k)
            .fold(ComplexMatrix::zeros(2), |acc, m| &acc + &m);
        sum.max_abs_diff(&ComplexMatrix::identity(2))
    }

    /// `Σ K ρ K†` on a single qubit.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        self.kraus
            .iter()
            .map(|k| &(k * rho) * &k.adjoint())
            .fold(ComplexMatrix::zeros(2), |acc, m| &acc + &m)
    }
}

fn kraus_or_identity(ch: Option<&QubitChannel>) -> Vec<ComplexMatrix> {
    match ch {
        Some(ch) => ch.kraus.to_vec(),
        None => vec![ComplexMatrix::identity(2)],
    }
}

/// `Σ_ij (K_i ⊗ K_j) ρ (K_i ⊗ K_j)†`, with `None` standing for the identity
/// channel on that qubit.
pub fn apply_two_qubit(
    rho: &DensityMatrix,
    ch_a: Option<&QubitChannel>,
    ch_b: Option<&QubitChannel>,
) -> Result<DensityMatrix> {
    if rho.n_qubits() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit channel applied to a {}-qubit state",
            rho.n_qubits()
        )));
    }
    let mut out = ComplexMatrix::zeros(4);
    for ka in kraus_or_identity(ch_a) {
        for kb in kraus_or_identity(ch_b) {
            let k = kron(&ka, &kb);
            out = &out + &(&(&k * rho.matrix()) * &k.adjoint());
        }
    }
    DensityMatrix::new(out, rho.labels().to_vec())
}

/// Isometry `V = K0 ⊗ |0>_E + K1 ⊗ |1>_E` from a qubit into qubit ⊗ environment.
#[derive(Clone, Debug, PartialEq)]
pub struct DilationIsometry {
    /// Row `2s + e` (system `s`, environment `e`), column = input basis state.
    matrix: [[C64; 2]; 4],
}

pub fn dilate(ch: &QubitChannel) -> DilationIsometry {
    DilationIsometry::from_kraus(&ch.kraus)
}

impl DilationIsometry {
    fn from_kraus(kraus: &[ComplexMatrix]) -> Self {
        let mut matrix = [[C64::new(0.0, 0.0); 2]; 4];
        for (e, k) in kraus.iter().enumerate() {
            for s in 0..2 {
                for i in 0..2 {
                    matrix[2 * s + e][i] = k[(s, i)];
                }
            }
        }
        Self { matrix }
    }

    /// Trivial dilation of the identity channel.
    pub fn identity() -> Self {
        Self::from_kraus(&[ComplexMatrix::identity(2)])
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[row][col]
    }

    /// Largest entry of `V†V - I`.
    pub fn isometry_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let g: C64 = (0..4).map(|r| self.matrix[r][i].conj() * self.matrix[r][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }

    /// Applies `V` to `qubit` of `psi`, appending the environment as the new
    /// last qubit.
    pub fn apply_to_qubit(&self, psi: &PureState, qubit: usize) -> Result<PureState> {
        let n = psi.n_qubits();
        if qubit >= n {
            return Err(Error::InvalidSubsystem(format!("qubit {qubit} out of range for {n} qubits")));
        }
        let bit = 1 << (n - 1 - qubit);
        let mut out = vec![C64::new(0.0, 0.0); 1 << (n + 1)];
        for (i, &amp) in psi.amplitudes().iter().enumerate() {
            if amp == C64::new(0.0, 0.0) {
                continue;
            }
            let input = usize::from(i & bit != 0);
            for s in 0..2 {
                let sys = if s == 1 { i | bit } else { i & !bit };
                for e in 0..2 {
                    out[(sys << 1) | e] += self.matrix[2 * s + e][input] * amp;
                }
            }
        }
        Ok(PureState::from_isometry_output(out))
    }
}

fn side_qubit(side: Side) -> usize {
    match side {
        Side::A => 0,
        Side::B => 1,
    }
}

fn check_two_qubit(psi: &PureState) -> Result<()> {
    if psi.n_qubits() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "purification expects a two-qubit state, got {} qubits",
            psi.n_qubits()
        )));
    }
    Ok(())
}

/// System–environment state `A, B, E` after damping one qubit.
pub fn purify_single(psi: &PureState, ch: &QubitChannel, target: Side) -> Result<PureState> {
    check_two_qubit(psi)?;
    dilate(ch).apply_to_qubit(psi, side_qubit(target))
}

/// System–environment state `A, B, E_A, E_B` after damping both qubits.
/// `None` leaves that qubit undamped (its environment stays in `|0>`).
pub fn purify_double(
    psi: &PureState,
    ch_a: Option<&QubitChannel>,
    ch_b: Option<&QubitChannel>,
) -> Result<PureState> {
    check_two_qubit(psi)?;
    let va = ch_a.map(dilate).unwrap_or_else(DilationIsometry::identity);
    let vb = ch_b.map(dilate).unwrap_or_else(DilationIsometry::identity);
    let with_ea = va.apply_to_qubit(psi, 0)?;
    vb.apply_to_qubit(&with_ea, 1)
}
