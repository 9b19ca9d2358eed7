//! Cross-checks of the matrix-product-state machinery against dense
//! statevector references on small systems.

use approx::assert_relative_eq;
use gapchannel_core::oracles;
use gapchannel_core::spin_mps::{
    build_hamiltonian_terms, evolve_tebd, ground_state_chain, initial_energy_variance,
    joint_ancilla_probs, prepare_initial, EvolveOptions, GroundStateOptions, SiteLabel,
    SiteOrdering, SpinModelParams,
};

fn small_params() -> SpinModelParams<f64> {
    SpinModelParams {
        n: 6,
        field: 1.0,
        jx: 0.3,
        jy: 0.0,
        jz: 0.0,
        ancilla_field: 0.64,
        ancilla_coupling: 0.1,
        site_s: 2,
        site_r: 4,
    }
}

fn ground_options() -> GroundStateOptions<f64> {
    GroundStateOptions {
        chi: 32,
        ..GroundStateOptions::default()
    }
}

#[test]
fn imaginary_time_ground_state_matches_dense_diagonalization() {
    let p = small_params();
    let (mut mps, energy) = ground_state_chain(&p, &ground_options()).unwrap();
    let terms = gapchannel_core::spin_mps::chain_only_terms(&p).unwrap();
    let ordering = SiteOrdering::new_chain_only(p.n);
    let h = oracles::dense_hamiltonian(&terms, &ordering).unwrap();
    let (e_exact, psi_exact) = oracles::dense_ground_state(&h);
    assert_relative_eq!(energy, e_exact, epsilon = 1e-8);

    mps.move_center_to(0);
    mps.normalize();
    let psi = mps.to_dense();
    let overlap: f64 = psi
        .iter()
        .zip(&psi_exact)
        .map(|(a, b)| (a.conj() * b))
        .sum::<num_complex::Complex<f64>>()
        .norm_sqr()
        .sqrt();
    assert!(overlap > 1.0 - 1e-8, "overlap {overlap}");
}

#[test]
fn prepared_state_starts_in_the_up_down_sector() {
    let p = small_params();
    let (ground, _) = ground_state_chain(&p, &ground_options()).unwrap();
    let mut state = prepare_initial(&ground, &p).unwrap();
    let ordering = p.ordering();
    let probs = joint_ancilla_probs(
        &mut state,
        ordering.slot(SiteLabel::Sender),
        ordering.slot(SiteLabel::Receiver),
    );
    assert_relative_eq!(probs.p_ud, 1.0, epsilon = 1e-10);
    assert!(probs.p_uu.abs() < 1e-12);
    assert!(probs.p_du.abs() < 1e-12);
    assert!(probs.is_normalized(1e-10));
}

#[test]
fn initial_energy_spread_is_sqrt_two_ja() {
    for ja in [0.01, 0.05, 0.1] {
        let p = SpinModelParams {
            ancilla_coupling: ja,
            ..small_params()
        };
        let (ground, _) = ground_state_chain(&p, &ground_options()).unwrap();
        let mut state = prepare_initial(&ground, &p).unwrap();
        let spread = initial_energy_variance(&mut state, &p).unwrap();
        assert_relative_eq!(spread, 2.0f64.sqrt() * ja, epsilon = 1e-9);
    }
}

#[test]
fn tebd_tracks_the_dense_propagator() {
    let p = small_params();
    let (ground, _) = ground_state_chain(&p, &ground_options()).unwrap();
    let state = prepare_initial(&ground, &p).unwrap();

    let t_max = 10.0;
    let options = EvolveOptions::new(0.01, t_max, 200, 64);
    let (series, _) = evolve_tebd(state.clone(), &p, &options).unwrap();

    // Dense reference: same initial state, Chebyshev propagation.
    let mut chain_state = ground.clone();
    chain_state.move_center_to(0);
    chain_state.normalize();
    let full0 = oracles::embed_with_ancillas(&chain_state.to_dense(), &p).unwrap();
    let terms = build_hamiltonian_terms(&p).unwrap();
    let ordering = p.ordering();

    for (i, &t) in series.times().iter().enumerate() {
        let psi_t = oracles::ed_spin_evolve(&terms, &ordering, &full0, t).unwrap();
        let exact = oracles::dense_ancilla_probs(&psi_t, &p);
        for (name, value) in [
            ("p_uu", exact.p_uu),
            ("p_ud", exact.p_ud),
            ("p_du", exact.p_du),
            ("p_dd", exact.p_dd),
        ] {
            let got = series.column(name).unwrap()[i];
            assert!(
                (got - value).abs() < 1e-4,
                "t = {t}, {name}: tebd {got} vs dense {value}"
            );
        }
    }
}

#[test]
fn tebd_conserves_energy_and_probability() {
    let p = small_params();
    let (ground, _) = ground_state_chain(&p, &ground_options()).unwrap();
    let state = prepare_initial(&ground, &p).unwrap();
    let options = EvolveOptions::new(0.02, 20.0, 100, 64);
    let (series, _) = evolve_tebd(state, &p, &options).unwrap();
    let energy = series.column("energy").unwrap();
    let e0 = energy[0];
    // The splitting conserves a dt^2-shifted effective Hamiltonian, so the
    // energy sits a constant O(dt^2) offset away from the initial value.
    for (i, &e) in energy.iter().enumerate() {
        assert!(
            (e - e0).abs() < 1e-5,
            "energy drifted from {e0} to {e} at sample {i}"
        );
    }
    for i in 0..series.len() {
        let sum: f64 = ["p_uu", "p_ud", "p_du", "p_dd"]
            .iter()
            .map(|n| series.column(n).unwrap()[i])
            .sum();
        assert!((sum - 1.0).abs() < 1e-10, "probability sum {sum}");
    }
}

#[test]
fn trotter_error_scales_quadratically() {
    let p = small_params();
    let (ground, _) = ground_state_chain(&p, &ground_options()).unwrap();
    let state = prepare_initial(&ground, &p).unwrap();

    let mut chain_state = ground.clone();
    chain_state.move_center_to(0);
    chain_state.normalize();
    let full0 = oracles::embed_with_ancillas(&chain_state.to_dense(), &p).unwrap();
    let terms = build_hamiltonian_terms(&p).unwrap();
    let ordering = p.ordering();
    let t_max = 8.0;
    let psi_t = oracles::ed_spin_evolve(&terms, &ordering, &full0, t_max).unwrap();
    let exact = oracles::dense_ancilla_probs(&psi_t, &p);

    let error_at = |dt: f64| -> f64 {
        let options = EvolveOptions::new(dt, t_max, (t_max / dt) as usize, 64);
        let (series, _) = evolve_tebd(state.clone(), &p, &options).unwrap();
        let last = series.len() - 1;
        [
            ("p_uu", exact.p_uu),
            ("p_ud", exact.p_ud),
            ("p_du", exact.p_du),
            ("p_dd", exact.p_dd),
        ]
        .iter()
        .map(|(n, v)| (series.column(n).unwrap()[last] - v).abs())
        .fold(0.0, f64::max)
    };
    let coarse = error_at(0.1);
    let fine = error_at(0.05);
    let ratio = coarse / fine;
    assert!(
        (2.5..6.0).contains(&ratio),
        "second-order splitting should gain ~4x per dt halving, got {ratio} ({coarse} -> {fine})"
    );
}
