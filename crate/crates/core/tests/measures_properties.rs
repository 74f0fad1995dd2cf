mod support;

use qcorr_core::channels::{amplitude_damping, apply_two_qubit, phase_damping, purify_single};
use qcorr_core::linalg::{binary_entropy, von_neumann_entropy};
use qcorr_core::measures::{
    concurrence, conditional_entropy, discord, eof, geometric_discord, mutual_information, negativity,
    symmetrized_discord,
};
use qcorr_core::sample::{random_density, random_pure_state, random_unitary};
use qcorr_core::states::{make_pure, make_werner, to_density};
use qcorr_core::{BellState, DensityMatrix, FamilyKind, MeasurementBasis, Side, StateFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::{
    concurrence_via_sqrt, dense_grid_discord, generic_states, grid_discord, local_rotate, regression_states,
    x_state_concurrence,
};

fn family_state(kind: FamilyKind, c: f64) -> DensityMatrix {
    to_density(&make_pure(StateFamily::new(kind, c).unwrap()))
}

#[test]
fn pure_states_have_equal_eof_and_discord() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let rho = to_density(&random_pure_state(&mut rng, 2));
        let e = eof(&rho).unwrap();
        let s_a = von_neumann_entropy(rho.reduce(&[0]).unwrap().matrix()).unwrap();
        for side in [Side::A, Side::B] {
            let d = discord(&rho, side).unwrap();
            assert!((e - d.value).abs() <= 1e-5, "eof {e} vs discord {}", d.value);
            assert!((s_a - d.value).abs() <= 1e-5);
        }
        assert!((e - s_a).abs() <= 1e-9);
    }
}

#[test]
fn discord_is_bounded_by_mutual_information() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for i in 0..30 {
        let rho = random_density(&mut rng, 1 + i % 4);
        let i_ab = mutual_information(&rho).unwrap();
        for side in [Side::A, Side::B] {
            let d = discord(&rho, side).unwrap();
            assert!(d.raw >= -1e-9);
            assert!(d.value <= i_ab + 1e-9);
        }
    }
}

#[test]
fn entangled_states_are_discordant() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut states: Vec<DensityMatrix> = (0..30).map(|i| random_density(&mut rng, 1 + i % 3)).collect();
    states.extend(regression_states().into_iter().map(|(_, r)| r));
    states.extend(generic_states());
    let mut entangled = 0;
    for rho in &states {
        if concurrence(rho).unwrap() > 1e-6 {
            entangled += 1;
            for side in [Side::A, Side::B] {
                assert!(discord(rho, side).unwrap().value > 1e-6);
            }
        }
    }
    assert!(entangled > 10, "test set should contain entangled states");
}

#[test]
fn measures_are_local_unitary_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for i in 0..20 {
        let rho = random_density(&mut rng, 1 + i % 4);
        let ua = random_unitary(&mut rng, 2);
        let ub = random_unitary(&mut rng, 2);
        let rotated = local_rotate(&rho, &ua, &ub);
        assert!((concurrence(&rho).unwrap() - concurrence(&rotated).unwrap()).abs() <= 1e-6);
        assert!((eof(&rho).unwrap() - eof(&rotated).unwrap()).abs() <= 1e-6);
        assert!((negativity(&rho).unwrap() - negativity(&rotated).unwrap()).abs() <= 1e-6);
        for side in [Side::A, Side::B] {
            let d0 = discord(&rho, side).unwrap().value;
            let d1 = discord(&rotated, side).unwrap().value;
            assert!((d0 - d1).abs() <= 1e-6, "{d0} vs {d1}");
        }
    }
}

#[test]
fn optimum_beats_every_fixed_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for i in 0..10 {
        let rho = random_density(&mut rng, 1 + i % 4);
        for side in [Side::A, Side::B] {
            let d = discord(&rho, side).unwrap();
            let s_unmeasured = von_neumann_entropy(rho.reduce(&[side.other().index()]).unwrap().matrix()).unwrap();
            for _ in 0..50 {
                let basis = MeasurementBasis::new(rng.random_range(0.0..std::f64::consts::PI), rng.random_range(0.0..std::f64::consts::TAU));
                let fixed = d.mutual_information - (s_unmeasured - conditional_entropy(&rho, basis, side).unwrap());
                assert!(d.raw <= fixed + 1e-9);
            }
        }
    }
}

#[test]
fn optimizer_matches_dense_grid_oracle() {
    for (name, rho) in regression_states() {
        for side in [Side::A, Side::B] {
            let d = discord(&rho, side).unwrap();
            let oracle = dense_grid_discord(&rho, side);
            assert!((d.value - oracle).abs() <= 1e-5, "{name} side {side}: optimizer {} oracle {oracle}", d.value);
        }
    }
}

#[test]
fn optimizer_never_loses_to_brute_force() {
    for rho in generic_states() {
        for side in [Side::A, Side::B] {
            let d = discord(&rho, side).unwrap();
            assert!(d.value <= dense_grid_discord(&rho, side) + 1e-9);
        }
    }
}

#[test]
fn off_grid_optimum_matches_finer_brute_force() {
    // Measuring E on the dephasing environment pair: the optimal basis is
    // tilted off the 100x100 grid.
    let fam = StateFamily::new(FamilyKind::Phi, 0.5).unwrap();
    let joint = to_density(&purify_single(&make_pure(fam), &phase_damping(0.5).unwrap(), Side::A).unwrap());
    let ae = DensityMatrix::with_default_labels(joint.reduce(&[0, 2]).unwrap().matrix().clone()).unwrap();
    let d = discord(&ae, Side::B).unwrap().value;
    let fine = grid_discord(&ae, Side::B, 400, 400);
    assert!(d <= fine + 1e-9);
    assert!(fine - d <= 1e-5, "optimizer {d} vs fine grid {fine}");
}

#[test]
fn phase_damping_keeps_discord_symmetric() {
    for kind in [FamilyKind::Phi, FamilyKind::Psi] {
        for c in [0.25, 0.5, 0.9] {
            for lambda in [0.2, 0.5, 0.8] {
                let ch = phase_damping(lambda).unwrap();
                let rho0 = family_state(kind, c);
                for rho in [
                    apply_two_qubit(&rho0, Some(&ch), None).unwrap(),
                    apply_two_qubit(&rho0, Some(&ch), Some(&ch)).unwrap(),
                ] {
                    let da = discord(&rho, Side::A).unwrap().value;
                    let db = discord(&rho, Side::B).unwrap().value;
                    assert!((da - db).abs() <= 1e-5);
                }
            }
        }
    }
}

#[test]
fn concurrence_agrees_with_independent_routes() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for _ in 0..30 {
        let rho = random_density(&mut rng, 4);
        assert!((concurrence(&rho).unwrap() - concurrence_via_sqrt(&rho)).abs() <= 1e-7);
    }
    for (_, rho) in regression_states() {
        assert!((concurrence(&rho).unwrap() - x_state_concurrence(&rho)).abs() <= 1e-10);
    }
    for eta in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
        for bell in BellState::ALL {
            let w = make_werner(eta, &bell.state()).unwrap();
            let want = ((3.0 * eta - 1.0) / 2.0).max(0.0);
            assert!((concurrence(&w).unwrap() - want).abs() <= 1e-10);
            assert!((concurrence_via_sqrt(&w) - want).abs() <= 1e-6);
        }
    }
}

#[test]
fn werner_discord_matches_closed_form() {
    for eta in [0.1, 0.5, 0.95] {
        let w = make_werner(eta, &BellState::Singlet.state()).unwrap();
        let l = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
        let want = 0.25 * (l(1.0 - eta) - 2.0 * l(1.0 + eta) + l(1.0 + 3.0 * eta));
        for side in [Side::A, Side::B] {
            let d = discord(&w, side).unwrap().value;
            assert!((d - want).abs() <= 1e-9, "eta {eta}: {d} vs {want}");
            assert!((d - dense_grid_discord(&w, side)).abs() <= 1e-5);
        }
    }
}

#[test]
fn werner_measures_do_not_depend_on_bell_choice() {
    for eta in [0.2, 0.5, 0.9] {
        let reference = make_werner(eta, &BellState::Singlet.state()).unwrap();
        for bell in BellState::ALL {
            let w = make_werner(eta, &bell.state()).unwrap();
            assert!((eof(&w).unwrap() - eof(&reference).unwrap()).abs() <= 1e-12);
            assert!((negativity(&w).unwrap() - negativity(&reference).unwrap()).abs() <= 1e-12);
            assert!((mutual_information(&w).unwrap() - mutual_information(&reference).unwrap()).abs() <= 1e-12);
            let g = geometric_discord(&w, Side::A).unwrap().value;
            assert!((g - geometric_discord(&reference, Side::A).unwrap().value).abs() <= 1e-12);
            for side in [Side::A, Side::B] {
                let d = discord(&w, side).unwrap().value;
                assert!((d - discord(&reference, side).unwrap().value).abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn negativity_squared_equals_geometric_discord_on_pure_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..30 {
        let rho = to_density(&random_pure_state(&mut rng, 2));
        let n = negativity(&rho).unwrap();
        for side in [Side::A, Side::B] {
            let g = geometric_discord(&rho, side).unwrap();
            assert!((n * n - g.value).abs() <= 1e-9);
            assert!((g.value - 2.0 * g.raw).abs() <= 1e-15);
        }
        // Pure-state identity N = C.
        assert!((n - concurrence(&rho).unwrap()).abs() <= 1e-9);
    }
    for i in 0..30 {
        let rho = random_density(&mut rng, 1 + i % 4);
        let n = negativity(&rho).unwrap();
        for side in [Side::A, Side::B] {
            assert!(n * n <= geometric_discord(&rho, side).unwrap().value + 1e-9);
        }
    }
}

#[test]
fn environment_pair_has_geometric_discord_without_negativity() {
    let fam = StateFamily::new(FamilyKind::Phi, 1.0).unwrap();
    assert!((fam.alpha() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    let joint = to_density(&purify_single(&make_pure(fam), &phase_damping(0.5).unwrap(), Side::A).unwrap());
    let ae = joint.reduce(&[0, 2]).unwrap();
    assert!(negativity(&ae).unwrap() <= 1e-12);
    assert!(geometric_discord(&ae, Side::B).unwrap().value > 1e-3);
}

#[test]
fn symmetrized_discord_is_max_of_verified_one_way_values() {
    let fam = StateFamily::new(FamilyKind::Phi, 0.5).unwrap();
    let rho = apply_two_qubit(&to_density(&make_pure(fam)), Some(&amplitude_damping(0.5).unwrap()), None).unwrap();
    let da = dense_grid_discord(&rho, Side::A);
    let db = dense_grid_discord(&rho, Side::B);
    let ds = symmetrized_discord(&rho).unwrap();
    assert!((ds - da.max(db)).abs() <= 1e-5);
    assert!((discord(&rho, Side::A).unwrap().value - da).abs() <= 1e-5);
    assert!((discord(&rho, Side::B).unwrap().value - db).abs() <= 1e-5);
}

#[test]
fn eof_is_monotone_in_concurrence() {
    let values: Vec<f64> = (0..=100).map(|i| qcorr_core::measures::eof_from_concurrence(i as f64 / 100.0)).collect();
    assert_eq!(values[0], 0.0);
    assert!(values.windows(2).all(|w| w[1] > w[0]));
    assert!((values[50] - binary_entropy(0.5 * (1.0 + 0.75f64.sqrt())).unwrap()).abs() < 1e-15);
}

#[test]
fn family_round_trip_concurrence() {
    for kind in [FamilyKind::Phi, FamilyKind::Psi] {
        for i in 0..=10 {
            let c = i as f64 / 10.0;
            assert!((concurrence(&family_state(kind, c)).unwrap() - c).abs() <= 1e-9);
        }
    }
}
