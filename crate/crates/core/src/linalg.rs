//! Dense complex linear algebra for operators on a handful of qubits.
//!
//! Everything here works on square matrices of dimension at most 16 stored
//! row-major. The Hermitian eigensolver is a cyclic complex Jacobi method;
//! every spectrum the crate needs is Hermitian, so no general solver exists.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest `|h - h^dagger|` entry accepted by the eigensolver.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Eigenvalues in `[-PSD_CLIP, 0)` are treated as roundoff and clipped to 0.
pub const PSD_CLIP: f64 = 1e-8;
/// Allowed deviation of a density matrix trace from 1 for entropies.
pub const ENTROPY_TRACE_TOL: f64 = 1e-9;

const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense square complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from rows, rejecting ragged or non-square input.
    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch("matrix must have at least one row".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(Error::RaggedRows { row, len: r.len(), expected: dim });
            }
            data.extend(r);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// `|v><v|` (no normalization applied).
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim, "vector length must match matrix dimension");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in max_abs_diff");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest elementwise modulus of `self - self^dagger`.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(h + h^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:>9.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Tensor product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim, b.dim);
    ComplexMatrix::from_fn(da * db, |r, c| a[(r / db, c / db)] * b[(r % db, c % db)])
}

fn check_qubit_dim(rho: &ComplexMatrix, n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > 4 || rho.dim != 1 << n_qubits {
        return Err(Error::DimensionMismatch(format!(
            "matrix of dimension {} does not describe {} qubits",
            rho.dim, n_qubits
        )));
    }
    Ok(())
}

/// Bit mask of qubit `q` in an `n`-qubit basis index (qubit 0 is the MSB).
#[inline]
fn qubit_bit(n_qubits: usize, q: usize) -> usize {
    1 << (n_qubits - 1 - q)
}

/// Traces out every qubit not listed in `keep`.
///
/// `keep` must be non-empty and strictly increasing; the kept qubits keep
/// their relative order in the result.
pub fn partial_trace(rho: &ComplexMatrix, n_qubits: usize, keep: &[usize]) -> Result<ComplexMatrix> {
    check_qubit_dim(rho, n_qubits)?;
    if keep.is_empty() {
        return Err(Error::InvalidSubsystem("keep set is empty".into()));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep[keep.len() - 1] >= n_qubits {
        return Err(Error::InvalidSubsystem(format!(
            "keep set {keep:?} must be strictly increasing indices below {n_qubits}"
        )));
    }
    let traced: Vec<usize> = (0..n_qubits).filter(|q| !keep.contains(q)).collect();

    // Embeds the bits of `sub` (over the qubits in `qubits`) into a full index.
    let embed = |sub: usize, qubits: &[usize]| -> usize {
        let k = qubits.len();
        qubits
            .iter()
            .enumerate()
            .filter(|(pos, _)| sub & (1 << (k - 1 - pos)) != 0)
            .map(|(_, &q)| qubit_bit(n_qubits, q))
            .sum()
    };

    let out_dim = 1 << keep.len();
    let kept_idx: Vec<usize> = (0..out_dim).map(|s| embed(s, keep)).collect();
    let traced_idx: Vec<usize> = (0..1 << traced.len()).map(|s| embed(s, &traced)).collect();

    Ok(ComplexMatrix::from_fn(out_dim, |i, j| {
        traced_idx
            .iter()
            .map(|&t| rho[(kept_idx[i] | t, kept_idx[j] | t)])
            .sum()
    }))
}

/// Transposes the indices of a single qubit.
pub fn partial_transpose(rho: &ComplexMatrix, n_qubits: usize, subsystem: usize) -> Result<ComplexMatrix> {
    check_qubit_dim(rho, n_qubits)?;
    if subsystem >= n_qubits {
        return Err(Error::InvalidSubsystem(format!(
            "qubit {subsystem} out of range for {n_qubits} qubits"
        )));
    }
    let bit = qubit_bit(n_qubits, subsystem);
    Ok(ComplexMatrix::from_fn(rho.dim, |r, c| {
        let r2 = (r & !bit) | (c & bit);
        let c2 = (c & !bit) | (r & bit);
        rho[(r2, c2)]
    }))
}

/// Eigenvalues sorted descending, with the matching orthonormal
/// eigenvectors stored as the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.dim).map(|i| self.vectors[(i, k)]).collect()
    }

    /// `V diag(f(λ)) V^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim;
        let fl: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * self.vectors[(j, k)].conj() * fl[k])
                .sum()
        })
    }
}

/// Diagonalizes a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is symmetrized as `(h + h^dagger)/2` first; asymmetry above
/// [`HERMITIAN_TOL`] is rejected.
pub fn hermitian_eigensystem(h: &ComplexMatrix) -> Result<EigenSystem> {
    let max_asymmetry = h.max_asymmetry();
    if max_asymmetry > HERMITIAN_TOL {
        return Err(Error::NotHermitian { max_asymmetry });
    }
    let n = h.dim;
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let tol = JACOBI_OFF_TOL * a.frobenius_norm().max(1.0);

    let off_diagonal = |a: &ComplexMatrix| {
        let mut worst: f64 = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                worst = worst.max(a[(p, q)].norm());
            }
        }
        worst
    };

    let mut sweeps = 0;
    loop {
        let off = off_diagonal(&a);
        if off < tol {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_diagonal: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                // Remove the phase of a_pq, then apply a real rotation.
                let phase_conj = (apq / mag).conj();
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let r_pp = C64::new(c, 0.0);
                let r_pq = C64::new(s, 0.0);
                let r_qp = phase_conj * -s;
                let r_qq = phase_conj * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * r_pp + akq * r_qp;
                    a[(k, q)] = akp * r_pq + akq * r_qq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * r_pp + vkq * r_qp;
                    v[(k, q)] = vkp * r_pq + vkq * r_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = r_pp.conj() * apk + r_qp.conj() * aqk;
                    a[(q, k)] = r_pq.conj() * apk + r_qq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(EigenSystem { values, vectors })
}

/// Clips roundoff-negative eigenvalues to zero and rejects genuinely
/// negative ones.
pub fn clip_spectrum(values: &[f64]) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|&l| {
            if l < -PSD_CLIP {
                Err(Error::NotPositive { eigenvalue: l })
            } else {
                Ok(l.max(0.0))
            }
        })
        .collect()
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let es = hermitian_eigensystem(rho)?;
    clip_spectrum(&es.values)?;
    Ok(es.map_spectrum(|l| l.max(0.0).sqrt()))
}

/// Shannon entropy in bits of a (clipped) probability spectrum, `0 log 0 = 0`.
pub fn entropy_of_spectrum(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// `-Tr[rho log2 rho]` in bits.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > ENTROPY_TRACE_TOL || tr.im.abs() > ENTROPY_TRACE_TOL {
        return Err(Error::TraceDeviation { trace: tr.re });
    }
    let es = hermitian_eigensystem(rho)?;
    let spectrum = clip_spectrum(&es.values)?;
    let max = (rho.dim as f64).log2();
    Ok(entropy_of_spectrum(&spectrum).clamp(0.0, max))
}

/// `h(x) = -x log2 x - (1-x) log2(1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    const SLACK: f64 = 1e-12;
    if !(-SLACK..=1.0 + SLACK).contains(&x) || x.is_nan() {
        return Err(Error::OutOfRange { name: "x", value: x, range: "[0, 1]" });
    }
    let x = x.clamp(0.0, 1.0);
    Ok(entropy_of_spectrum(&[x, 1.0 - x]))
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm_hermitian(h: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigensystem(h)?.values.iter().map(|l| l.abs()).sum())
}

/// Pauli matrices `[σx, σy, σz]`.
pub fn paulis() -> [ComplexMatrix; 3] {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        ComplexMatrix { dim: 2, data: vec![z, one, one, z] },
        ComplexMatrix { dim: 2, data: vec![z, -i, i, z] },
        ComplexMatrix { dim: 2, data: vec![one, z, z, -one] },
    ]
}
