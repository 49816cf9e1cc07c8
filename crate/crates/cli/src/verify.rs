//! The `verify` subcommand: a fast invariant suite over the core engine,
//! printed as a pass/fail table.

use fringelab_core::coherence::{
    first_harmonic, general_intensity_closed_form, phi_grid, scan_pattern,
    visibility_from_pattern,
};
use fringelab_core::fock::FockState;
use fringelab_core::optics::{
    balanced_splitter, coherent_to_fock, phase_shifter, propagate_coherent, propagate_fock,
    CoherentField,
};
use fringelab_core::scenarios::{
    classical_visibility, fig2_curve, first_splitter, interpolation_input, linear_grid,
    phased_interpolation_scenario, prepare_interpolation_state, quantum_g1, quantum_visibility,
};
use num_complex::Complex64;

fn check(name: &str, ok: bool) -> bool {
    println!("{} {name}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn single_photon_fringe(phis: &[f64]) -> bool {
    let inside = propagate_fock(&FockState::basis(&[1, 0]), &first_splitter()).unwrap();
    let pattern = scan_pattern(&inside, phis).unwrap();
    phis.iter()
        .enumerate()
        .all(|(k, &phi)| (pattern.intensity_a[k] - 0.5 * (1.0 + phi.cos())).abs() <= 1e-12)
}

fn pair_state_suppression(phis: &[f64]) -> bool {
    let inside = propagate_fock(&interpolation_input(0.0, 0.0).unwrap(), &first_splitter())
        .unwrap();
    let pattern = scan_pattern(&inside, phis).unwrap();
    let flat = visibility_from_pattern(phis, &pattern.intensity_a)
        .unwrap()
        .value
        <= 1e-12;
    let coincidences = pattern.coincidences.as_ref().unwrap();
    let fringing = phis
        .iter()
        .enumerate()
        .all(|(k, &phi)| (coincidences.p_aa[k] - 0.25 * (1.0 - (2.0 * phi).cos())).abs() <= 1e-12);
    flat && fringing
}

fn coherence_curve() -> bool {
    fig2_curve(&linear_grid(0.0, 1.0, 21))
        .unwrap()
        .iter()
        .all(|row| {
            (row.g1_simulated - quantum_g1(row.eta)).abs() <= 1e-12 && row.g1_classical == 1.0
        })
}

fn visibility_ordering(phis: &[f64]) -> bool {
    linear_grid(0.0, 1.0, 6).iter().all(|&eta| {
        linear_grid(0.0, std::f64::consts::TAU, 6).iter().all(|&beta| {
            let result = phased_interpolation_scenario(eta, beta, phis).unwrap();
            let extract = |series: &[f64]| {
                let (mean, c, s) = first_harmonic(phis, series).unwrap();
                (c * c + s * s).sqrt() / mean
            };
            let vq = extract(&result.quantum.as_ref().unwrap().pattern.intensity_a);
            let vc = extract(&result.classical.as_ref().unwrap().pattern.intensity_a);
            (vq - quantum_visibility(eta, beta)).abs() <= 1e-12
                && (vc - classical_visibility(eta, beta)).abs() <= 1e-12
                && vq <= vc + 1e-12
        })
    })
}

fn preparation_protocol() -> bool {
    linear_grid(0.0, std::f64::consts::FRAC_PI_2, 7)
        .iter()
        .all(|&angle| {
            let outcome = prepare_interpolation_state(angle).unwrap();
            (outcome.fidelity - 1.0).abs() <= 1e-12
                && (outcome.success_probability - 0.5).abs() <= 1e-12
        })
}

fn cross_model(cutoff: u32) -> bool {
    let alpha = Complex64::new(0.8, 0.3);
    let inside = CoherentField::new(vec![alpha, alpha * Complex64::from_polar(1.0, 0.7)]);
    let (truncated, neglected) = coherent_to_fock(&inside, cutoff);
    if neglected > 1e-9 {
        return false;
    }
    [0.0, 1.3, 3.9].iter().all(|&phi| {
        let t = phase_shifter(0, phi, 2)
            .unwrap()
            .compose(&balanced_splitter(0, 1, 2).unwrap())
            .unwrap();
        let quantum = propagate_fock(&truncated, &t).unwrap();
        let classical = propagate_coherent(&inside, &t).unwrap();
        (0..2).all(|mode| {
            (quantum.mean_photon_number(mode).unwrap() - classical.amplitudes[mode].norm_sqr())
                .abs()
                <= 1e-8
        })
    })
}

fn closed_form_agreement(phis: &[f64]) -> bool {
    let state = FockState::from_amplitudes(
        2,
        [
            (vec![1, 0], Complex64::new(0.3, 0.2)),
            (vec![0, 1], Complex64::new(-0.4, 0.1)),
            (vec![2, 0], Complex64::new(0.5, 0.0)),
            (vec![1, 1], Complex64::new(0.1, -0.6)),
            (vec![0, 2], Complex64::new(0.2, 0.2)),
        ],
    )
    .unwrap()
    .normalize()
    .unwrap();
    let out_pattern = scan_pattern(&state, phis).unwrap();
    phis.iter().enumerate().all(|(k, &phi)| {
        (out_pattern.intensity_a[k] - general_intensity_closed_form(&state, phi)).abs() <= 1e-12
    })
}

/// Run every invariant check; returns true when all pass.
pub fn run(cutoff: u32) -> bool {
    let phis = phi_grid(181);
    let mut all = true;
    all &= check("single-photon fringe matches (1 + cos phi)/2", single_photon_fringe(&phis));
    all &= check(
        "balanced pair state: flat intensity, (1 - cos 2 phi)/4 coincidences",
        pair_state_suppression(&phis),
    );
    all &= check("|g1|(eta) matches eta / sqrt(1 - 2 eta (1 - eta))", coherence_curve());
    all &= check(
        "visibility surfaces match closed forms with V_Q <= V_C",
        visibility_ordering(&phis),
    );
    all &= check(
        "preparation protocol: fidelity 1 at success probability 1/2",
        preparation_protocol(),
    );
    all &= check(
        "truncated-Fock propagation matches analytic coherent fields",
        cross_model(cutoff),
    );
    all &= check(
        "operator engine agrees with the closed-form intensity",
        closed_form_agreement(&phis),
    );
    println!();
    println!("{}", if all { "all checks passed" } else { "checks FAILED" });
    all
}
