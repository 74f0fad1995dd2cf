//! Random unitaries and states for property tests and regression sets.
//!
//! Unitaries are Haar distributed (Gram–Schmidt on a complex Ginibre
//! matrix). Pure states are the first column of a Haar unitary.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, C64};
use crate::states::{DensityMatrix, PureState};

fn gaussian(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| gaussian(rng)).collect();
        for u in &cols {
            let overlap: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= overlap * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

pub fn random_pure_state(rng: &mut impl Rng, n_qubits: usize) -> PureState {
    let u = random_unitary(rng, 1 << n_qubits);
    let amps = (0..1 << n_qubits).map(|i| u[(i, 0)]).collect();
    PureState::new(amps).expect("unitary columns are normalized")
}

/// Random two-qubit density matrix `G G^dagger / Tr` with `G` Ginibre of
/// the given rank (1..=4).
pub fn random_density(rng: &mut impl Rng, rank: usize) -> DensityMatrix {
    let rank = rank.clamp(1, 4);
    let g: Vec<Vec<C64>> = (0..4).map(|_| (0..rank).map(|_| gaussian(rng)).collect()).collect();
    let mut m = ComplexMatrix::from_fn(4, |i, j| (0..rank).map(|k| g[i][k] * g[j][k].conj()).sum());
    let tr = m.trace().re;
    m = m.scale(1.0 / tr);
    DensityMatrix::with_default_labels(m.hermitian_part()).expect("Wishart matrices are valid states")
}

/// Random Hermitian matrix with entries uniform in `[-1, 1]`.
pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = C64::new(rng.random_range(-1.0..=1.0), 0.0);
        for j in i + 1..dim {
            let z = C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}
