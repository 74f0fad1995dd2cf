//! Test-only oracles, independent of the optimized code paths they check.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use qcorr_core::linalg::{hermitian_eigensystem, kron, partial_trace, psd_sqrt, von_neumann_entropy, ComplexMatrix, C64};
use qcorr_core::{DensityMatrix, MeasurementBasis, Side};

/// Post-measurement conditional entropy from explicit projectors:
/// `Σ p_i S(Tr_measured[(Π_i ⊗ I) ρ (Π_i ⊗ I)] / p_i)`.
pub fn conditional_entropy_by_projectors(rho: &DensityMatrix, basis: MeasurementBasis, side: Side) -> f64 {
    let id = ComplexMatrix::identity(2);
    let mut h = 0.0;
    for p in basis.projectors() {
        let full = match side {
            Side::A => kron(&p, &id),
            Side::B => kron(&id, &p),
        };
        let post = &(&full * rho.matrix()) * &full;
        let prob = post.trace().re;
        if prob < 1e-12 {
            continue;
        }
        let keep = [side.other().index()];
        let reduced = partial_trace(&post, 2, &keep).unwrap().scale(1.0 / prob);
        h += prob * von_neumann_entropy(&reduced).unwrap();
    }
    h
}

/// Discord by brute force over `n_theta × n_phi` bases with
/// `θ ∈ [0, π/2]` (endpoints included) and `φ ∈ [0, 2π)`.
pub fn grid_discord(rho: &DensityMatrix, side: Side, n_theta: usize, n_phi: usize) -> f64 {
    let s = |m: &ComplexMatrix| von_neumann_entropy(m).unwrap();
    let sa = s(&partial_trace(rho.matrix(), 2, &[0]).unwrap());
    let sb = s(&partial_trace(rho.matrix(), 2, &[1]).unwrap());
    let mutual = sa + sb - s(rho.matrix());
    let unmeasured = match side {
        Side::A => sb,
        Side::B => sa,
    };
    let mut min_h = f64::INFINITY;
    for i in 0..n_theta {
        let theta = FRAC_PI_2 * i as f64 / (n_theta - 1) as f64;
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            min_h = min_h.min(conditional_entropy_by_projectors(rho, MeasurementBasis::new(theta, phi), side));
        }
    }
    (mutual - (unmeasured - min_h)).max(0.0)
}

/// The 10⁴-point oracle.
pub fn dense_grid_discord(rho: &DensityMatrix, side: Side) -> f64 {
    grid_discord(rho, side, 100, 100)
}

/// Concurrence from the spectrum of `√ρ ρ̃ √ρ` built literally.
pub fn concurrence_via_sqrt(rho: &DensityMatrix) -> f64 {
    let sy = ComplexMatrix::from_rows(vec![
        vec![C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
        vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
    ])
    .unwrap();
    let yy = kron(&sy, &sy);
    let tilde = &(&yy * &rho.matrix().conj()) * &yy;
    let root = psd_sqrt(rho.matrix()).unwrap();
    let r = &(&root * &tilde) * &root;
    let l: Vec<f64> = hermitian_eigensystem(&r.hermitian_part()).unwrap().values.iter().map(|x| x.max(0.0).sqrt()).collect();
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

/// Closed-form X-state concurrence.
pub fn x_state_concurrence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let d = |i: usize| m[(i, i)].re;
    let c1 = m[(0, 3)].norm() - (d(1) * d(2)).sqrt();
    let c2 = m[(1, 2)].norm() - (d(0) * d(3)).sqrt();
    (2.0 * c1.max(c2)).max(0.0)
}

/// Applies `U_A ⊗ U_B`.
pub fn local_rotate(rho: &DensityMatrix, ua: &ComplexMatrix, ub: &ComplexMatrix) -> DensityMatrix {
    let u = kron(ua, ub);
    let m = &(&u * rho.matrix()) * &u.adjoint();
    DensityMatrix::with_default_labels(m.hermitian_part()).unwrap()
}

/// Fixed 20-state regression set for optimizer-vs-oracle checks: X-shaped
/// states from the damping scenarios, whose optimal measurements lie on the
/// oracle grid.
pub fn regression_states() -> Vec<(String, DensityMatrix)> {
    use qcorr_core::channels::{amplitude_damping, apply_two_qubit, phase_damping, purify_single};
    use qcorr_core::states::{make_pure, make_werner, to_density};
    use qcorr_core::{BellState, FamilyKind, QubitChannel, StateFamily};
    use FamilyKind::{Phi, Psi};

    let pure = |kind, c| make_pure(StateFamily::new(kind, c).unwrap());
    let single = |kind, c, ch: &QubitChannel, keep: [usize; 2]| {
        to_density(&purify_single(&pure(kind, c), ch, Side::A).unwrap()).reduce(&keep).unwrap()
    };
    let both = |rho: &DensityMatrix, ch: &QubitChannel| apply_two_qubit(rho, Some(ch), Some(ch)).unwrap();
    let fam = |kind, c| to_density(&pure(kind, c));
    let werner = |eta, bell: BellState| make_werner(eta, &bell.state()).unwrap();
    let ph = |s| phase_damping(s).unwrap();
    let amp = |s| amplitude_damping(s).unwrap();
    const AB: [usize; 2] = [0, 1];
    const AE: [usize; 2] = [0, 2];
    const BE: [usize; 2] = [1, 2];

    let states = vec![
        ("werner 0.5", werner(0.5, BellState::Singlet)),
        ("werner 0.95", werner(0.95, BellState::Singlet)),
        ("werner 0.2 phi+", werner(0.2, BellState::PhiPlus)),
        ("phase both phi 0.5/0.5", both(&fam(Phi, 0.5), &ph(0.5))),
        ("phase both psi 0.9/0.3", both(&fam(Psi, 0.9), &ph(0.3))),
        ("phase both psi 1.0/0.8", both(&fam(Psi, 1.0), &ph(0.8))),
        ("phase AB phi 0.75/0.6", single(Phi, 0.75, &ph(0.6), AB)),
        ("amp AB phi 0.5/0.5", single(Phi, 0.5, &amp(0.5), AB)),
        ("amp AE phi 0.5/0.5", single(Phi, 0.5, &amp(0.5), AE)),
        ("amp BE phi 0.5/0.5", single(Phi, 0.5, &amp(0.5), BE)),
        ("amp AB psi 0.75/0.3", single(Psi, 0.75, &amp(0.3), AB)),
        ("amp AE psi 0.75/0.3", single(Psi, 0.75, &amp(0.3), AE)),
        ("amp BE psi 0.75/0.3", single(Psi, 0.75, &amp(0.3), BE)),
        ("amp AB phi 0.25/0.9", single(Phi, 0.25, &amp(0.9), AB)),
        ("amp BE psi 0.5/1.0", single(Psi, 0.5, &amp(1.0), BE)),
        ("amp both phi 0.5/0.4", both(&fam(Phi, 0.5), &amp(0.4))),
        ("amp both psi 0.5/0.6", both(&fam(Psi, 0.5), &amp(0.6))),
        ("amp both phi 1.0/0.7", both(&fam(Phi, 1.0), &amp(0.7))),
        ("werner 0.95 phase both 0.5", both(&werner(0.95, BellState::Singlet), &ph(0.5))),
        ("werner 0.5 amp both 0.3", both(&werner(0.5, BellState::Singlet), &amp(0.3))),
    ];
    states
        .into_iter()
        .map(|(name, rho)| {
            let labelled = DensityMatrix::with_default_labels(rho.matrix().clone()).unwrap();
            (name.to_string(), labelled)
        })
        .collect()
}

/// States whose optimal measurement generally falls between grid points.
pub fn generic_states() -> Vec<DensityMatrix> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    (0..12).map(|i| qcorr_core::sample::random_density(&mut rng, 1 + i % 4)).collect()
}
