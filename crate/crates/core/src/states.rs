//! Initial states: concurrence-parameterized pure families and Werner states.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{clip_spectrum, hermitian_eigensystem, partial_trace, ComplexMatrix, C64};

const NORM_TOL: f64 = 1e-12;
const DENSITY_TOL: f64 = 1e-10;

/// Normalized amplitude vector over an `n`-qubit computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "{len} amplitudes do not describe a register of qubits"
            )));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { n_qubits: len.trailing_zeros() as usize, amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![C64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self { n_qubits, amplitudes }
    }

    /// Wraps amplitudes produced by an isometry; normalization is the
    /// caller's responsibility.
    pub(crate) fn from_isometry_output(amplitudes: Vec<C64>) -> Self {
        let n_qubits = amplitudes.len().trailing_zeros() as usize;
        Self { n_qubits, amplitudes }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    /// Concurrence `2|a00 a11 - a01 a10|` of a two-qubit pure state.
    pub fn pure_concurrence(&self) -> Result<f64> {
        if self.n_qubits != 2 {
            return Err(Error::DimensionMismatch(format!(
                "pure concurrence needs 2 qubits, got {}",
                self.n_qubits
            )));
        }
        let a = &self.amplitudes;
        Ok(2.0 * (a[0] * a[3] - a[1] * a[2]).norm())
    }
}

/// The four maximally entangled two-qubit states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellState {
    /// `(|00> + |11>)/√2`
    PhiPlus,
    /// `(|00> - |11>)/√2`
    PhiMinus,
    /// `(|01> + |10>)/√2`
    PsiPlus,
    /// `(|01> - |10>)/√2`, the singlet.
    Singlet,
}

impl BellState {
    pub const ALL: [BellState; 4] = [Self::PhiPlus, Self::PhiMinus, Self::PsiPlus, Self::Singlet];

    pub fn state(self) -> PureState {
        let s = FRAC_1_SQRT_2;
        let amps = match self {
            Self::PhiPlus => [s, 0.0, 0.0, s],
            Self::PhiMinus => [s, 0.0, 0.0, -s],
            Self::PsiPlus => [0.0, s, s, 0.0],
            Self::Singlet => [0.0, s, -s, 0.0],
        };
        PureState::from_real(&amps).expect("Bell states are normalized")
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::PhiPlus => "phi_plus",
            Self::PhiMinus => "phi_minus",
            Self::PsiPlus => "psi_plus",
            Self::Singlet => "singlet",
        }
    }
}

impl FromStr for BellState {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "phi_plus" | "phi+" => Ok(Self::PhiPlus),
            "phi_minus" | "phi-" => Ok(Self::PhiMinus),
            "psi_plus" | "psi+" => Ok(Self::PsiPlus),
            "singlet" | "psi_minus" | "psi-" => Ok(Self::Singlet),
            other => Err(format!("unknown Bell state '{other}'")),
        }
    }
}

/// Which two-dimensional subspace a pure family lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `α|00> + √(1-α²)|11>`
    Phi,
    /// `α|01> + √(1-α²)|10>`
    Psi,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Phi => "phi",
            Self::Psi => "psi",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A pure initial state labelled by its family and initial concurrence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateFamily {
    kind: FamilyKind,
    c_in: f64,
}

impl StateFamily {
    pub fn new(kind: FamilyKind, c_in: f64) -> Result<Self> {
        check_unit_interval("c_in", c_in)?;
        Ok(Self { kind, c_in })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn c_in(&self) -> f64 {
        self.c_in
    }

    pub fn alpha(&self) -> f64 {
        alpha_from_concurrence(self.c_in).expect("validated on construction")
    }
}

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value, range: "[0, 1]" })
    }
}

/// `α = √((1 + √(1 - C²)) / 2)`, mapping `[0, 1]` onto `[1/√2, 1]`.
pub fn alpha_from_concurrence(c_in: f64) -> Result<f64> {
    check_unit_interval("c_in", c_in)?;
    Ok(((1.0 + (1.0 - c_in * c_in).sqrt()) / 2.0).sqrt())
}

/// Builds the pure two-qubit state of a family with real non-negative
/// amplitudes `α` and `√(1-α²)`.
pub fn make_pure(family: StateFamily) -> PureState {
    let alpha = family.alpha();
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    let mut amps = [0.0; 4];
    match family.kind {
        FamilyKind::Phi => {
            amps[0b00] = alpha;
            amps[0b11] = beta;
        }
        FamilyKind::Psi => {
            amps[0b01] = alpha;
            amps[0b10] = beta;
        }
    }
    PureState::from_real(&amps).expect("alpha^2 + beta^2 = 1")
}

/// `η|ψ><ψ| + (1-η)/4 · I` for a maximally entangled `|ψ>`.
pub fn make_werner(eta: f64, bell: &PureState) -> Result<DensityMatrix> {
    check_unit_interval("eta", eta)?;
    let concurrence = bell.pure_concurrence()?;
    if (concurrence - 1.0).abs() > 1e-10 {
        return Err(Error::NotMaximallyEntangled { concurrence });
    }
    let projector = ComplexMatrix::outer(bell.amplitudes()).scale(eta);
    let noise = ComplexMatrix::identity(4).scale((1.0 - eta) / 4.0);
    DensityMatrix::new(&projector + &noise, default_labels(2))
}

/// Rank-one projector `|ψ><ψ|` with the default subsystem labels.
pub fn to_density(psi: &PureState) -> DensityMatrix {
    DensityMatrix {
        n_qubits: psi.n_qubits,
        matrix: ComplexMatrix::outer(psi.amplitudes()),
        labels: default_labels(psi.n_qubits),
    }
}

/// `A, B` for pairs, `A, B, E` for one environment, `A, B, E_A, E_B` for two.
pub fn default_labels(n_qubits: usize) -> Vec<String> {
    let names: &[&str] = match n_qubits {
        1 => &["A"],
        2 => &["A", "B"],
        3 => &["A", "B", "E"],
        _ => &["A", "B", "E_A", "E_B"],
    };
    names.iter().take(n_qubits).map(|s| s.to_string()).collect()
}

/// Hermitian, positive semidefinite, unit-trace operator over labelled qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
    labels: Vec<String>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (eigenvalues may dip
    /// to `-1e-8`).
    pub fn new(matrix: ComplexMatrix, labels: Vec<String>) -> Result<Self> {
        let n_qubits = labels.len();
        if n_qubits == 0 || n_qubits > 4 || matrix.dim() != 1 << n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimension {} does not match {} labels",
                matrix.dim(),
                n_qubits
            )));
        }
        let max_asymmetry = matrix.max_asymmetry();
        if max_asymmetry > DENSITY_TOL {
            return Err(Error::NotHermitian { max_asymmetry });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > DENSITY_TOL {
            return Err(Error::TraceDeviation { trace });
        }
        clip_spectrum(&hermitian_eigensystem(&matrix)?.values)?;
        Ok(Self { n_qubits, matrix, labels })
    }

    pub fn with_default_labels(matrix: ComplexMatrix) -> Result<Self> {
        let n = matrix.dim().trailing_zeros() as usize;
        Self::new(matrix, default_labels(n))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Reduced state on the qubits in `keep` (strictly increasing).
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let matrix = partial_trace(&self.matrix, self.n_qubits, keep)?;
        let labels = keep.iter().map(|&q| self.labels[q].clone()).collect();
        Ok(DensityMatrix { n_qubits: keep.len(), matrix, labels })
    }

    /// Reduced state on qubits given by label.
    pub fn reduce_labels(&self, keep: &[&str]) -> Result<DensityMatrix> {
        let mut idx = keep
            .iter()
            .map(|name| {
                self.labels
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| Error::InvalidSubsystem(format!("no subsystem labelled {name}")))
            })
            .collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        self.reduce(&idx)
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}
