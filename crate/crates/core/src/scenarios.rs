//! Named constructions of every state family and quantum-vs-classical
//! comparison, each paired with its closed-form prediction so the operator
//! engine and the formulas can be checked against each other.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::coherence::{
    coherence_report, coherent_pattern, coherent_report, scan_pattern, CoherenceReport,
    InterferencePattern,
};
use crate::error::{CoreError, Result};
use crate::fock::{state_from_polynomial, FockState, OperatorPolynomial, PolyTerm};
use crate::optics::{
    balanced_splitter, balanced_splitter_signed, polarization_rotation, propagate_coherent,
    propagate_fock, CoherentField, ModeTransform, SplitterSign,
};

/// One side (quantum or classical) of a scenario evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioChannel {
    pub pattern: InterferencePattern,
    pub report: Option<CoherenceReport>,
}

/// A scenario run: parameters, simulated patterns, and the closed-form
/// predictions they are checked against.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioResult {
    pub name: String,
    pub parameters: BTreeMap<String, f64>,
    pub closed_form: BTreeMap<String, f64>,
    pub quantum: Option<ScenarioChannel>,
    pub classical: Option<ScenarioChannel>,
}

/// Output of the four-mode polarization preparation protocol.
#[derive(Clone, Debug, Serialize)]
pub struct PreparationOutcome {
    /// Post-selected two-mode state on (a, b).
    pub state: FockState,
    pub success_probability: f64,
    /// Squared overlap with the target mixing-angle state, global phase
    /// ignored.
    pub fidelity: f64,
    pub result: ScenarioResult,
}

/// One row of the coherence-suppression curve.
#[derive(Clone, Debug, Serialize)]
pub struct Fig2Point {
    pub eta: f64,
    pub g1_simulated: f64,
    pub g1_closed_form: f64,
    pub g1_classical: f64,
}

/// The input-side splitter a -> (1+2)/sqrt2, b -> (1-2)/sqrt2.
pub fn first_splitter() -> ModeTransform {
    balanced_splitter(0, 1, 2).expect("2-mode splitter")
}

/// |g_Q(1)|(eta) = eta / sqrt(1 - 2 eta (1-eta)).
pub fn quantum_g1(eta: f64) -> f64 {
    eta / (1.0 - 2.0 * eta * (1.0 - eta)).sqrt()
}

/// Unordered pair of channel intensities {1 -+ sqrt(2 eta (1-eta))}.
pub fn channel_intensity_pair(eta: f64) -> (f64, f64) {
    let s = (2.0 * eta * (1.0 - eta)).sqrt();
    (1.0 - s, 1.0 + s)
}

/// V_Q(eta, beta) = sqrt(eta^2 + 2 eta (1-eta) sin^2 beta).
pub fn quantum_visibility(eta: f64, beta: f64) -> f64 {
    (eta * eta + 2.0 * eta * (1.0 - eta) * beta.sin().powi(2)).sqrt()
}

/// V_C(eta, beta) = sqrt(eta^2 + (1+eta)(1-eta) sin^2 beta).
pub fn classical_visibility(eta: f64, beta: f64) -> f64 {
    (eta * eta + (1.0 + eta) * (1.0 - eta) * beta.sin().powi(2)).sqrt()
}

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(CoreError::InvalidParameter(format!(
            "eta must lie in [0, 1], got {eta}"
        )));
    }
    Ok(())
}

/// (sqrt(eta) a^dag^2/sqrt2 + sqrt(1-eta) e^{i beta} a^dag b^dag)|0>, the
/// eta-weight parameterization with an optional relative phase on the second
/// component.
pub fn interpolation_input(eta_weight: f64, beta: f64) -> Result<FockState> {
    check_eta(eta_weight)?;
    let poly = OperatorPolynomial::new(vec![
        PolyTerm {
            coefficient: Complex64::new(eta_weight.sqrt() / std::f64::consts::SQRT_2, 0.0),
            factors: vec![(0, 2)],
        },
        PolyTerm {
            coefficient: Complex64::from_polar((1.0 - eta_weight).sqrt(), beta),
            factors: vec![(0, 1), (1, 1)],
        },
    ]);
    state_from_polynomial(&poly, 2)
}

/// Sum_nu c_nu a^dag^nu / sqrt(nu!) |0> on two modes.
pub fn young_input(coefficients: &[Complex64]) -> Result<FockState> {
    if coefficients.len() > 7 {
        return Err(CoreError::InvalidParameter(
            "at most 7 coefficients (nu <= 6) supported".into(),
        ));
    }
    let norm_sq: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(CoreError::InvalidParameter(format!(
            "coefficients are not normalized (sum |c|^2 = {norm_sq})"
        )));
    }
    let mut factorial = 1.0f64;
    let terms = coefficients
        .iter()
        .enumerate()
        .map(|(nu, &c)| {
            if nu > 0 {
                factorial *= nu as f64;
            }
            PolyTerm {
                coefficient: c / factorial.sqrt(),
                factors: if nu == 0 { vec![] } else { vec![(0, nu as u32)] },
            }
        })
        .collect();
    state_from_polynomial(&OperatorPolynomial::new(terms), 2)
}

/// Conventional Young setup: arbitrary single-port input, classical law
/// I_A = N/2 (1 + cos phi) with N the mean photon number.
pub fn young_scenario(coefficients: &[Complex64], phis: &[f64]) -> Result<ScenarioResult> {
    let input = young_input(coefficients)?;
    let mean_photons = input.total_mean_photon_number();
    if mean_photons <= 0.0 {
        return Err(CoreError::InvalidParameter(
            "input carries no photons".into(),
        ));
    }
    let inside = propagate_fock(&input, &first_splitter())?;
    let pattern = scan_pattern(&inside, phis)?;
    let report = coherence_report(&inside, 0, 1)?;
    let mut parameters = BTreeMap::new();
    parameters.insert("nu_max".into(), (coefficients.len() - 1) as f64);
    let mut closed_form = BTreeMap::new();
    closed_form.insert("mean_photon_number".into(), mean_photons);
    closed_form.insert("visibility".into(), 1.0);
    closed_form.insert("g1_abs".into(), 1.0);
    Ok(ScenarioResult {
        name: "young".into(),
        parameters,
        closed_form,
        quantum: Some(ScenarioChannel {
            pattern,
            report: Some(report),
        }),
        classical: None,
    })
}

/// Interpolation family between the single-port two-photon state (eta = 1)
/// and the balanced bimodal state (eta = 0), with the channel-intensity
/// matched coherent pair as classical reference.
pub fn interpolation_scenario(eta: f64, phis: &[f64]) -> Result<ScenarioResult> {
    check_eta(eta)?;
    let inside = propagate_fock(&interpolation_input(eta, 0.0)?, &first_splitter())?;
    let pattern = scan_pattern(&inside, phis)?;
    let report = coherence_report(&inside, 0, 1)?;

    // Classical reference: coherent pair with the same channel intensities
    // and a stable relative phase, hence |g1| = 1.
    let (i_low, i_high) = channel_intensity_pair(eta);
    let classical_field = CoherentField::new(vec![
        Complex64::new(i_high.sqrt(), 0.0),
        Complex64::new(i_low.sqrt(), 0.0),
    ]);
    let classical_pattern = coherent_pattern(&classical_field, phis)?;
    let classical_report = coherent_report(&classical_field, 0, 1).ok();

    let mut parameters = BTreeMap::new();
    parameters.insert("eta".into(), eta);
    let mut closed_form = BTreeMap::new();
    closed_form.insert("fringe_amplitude".into(), eta);
    closed_form.insert("visibility_quantum".into(), eta);
    closed_form.insert("channel_intensity_low".into(), i_low);
    closed_form.insert("channel_intensity_high".into(), i_high);
    closed_form.insert("g1_abs_quantum".into(), quantum_g1(eta));
    closed_form.insert("g1_abs_classical".into(), 1.0);
    Ok(ScenarioResult {
        name: "interp".into(),
        parameters,
        closed_form,
        quantum: Some(ScenarioChannel {
            pattern,
            report: Some(report),
        }),
        classical: Some(ScenarioChannel {
            pattern: classical_pattern,
            report: classical_report,
        }),
    })
}

/// (eta, beta) family: phased quantum input against the intensity-matched
/// classical input field, both propagated through the full interferometer.
pub fn phased_interpolation_scenario(eta: f64, beta: f64, phis: &[f64]) -> Result<ScenarioResult> {
    check_eta(eta)?;
    let inside = propagate_fock(&interpolation_input(eta, beta)?, &first_splitter())?;
    let pattern = scan_pattern(&inside, phis)?;
    let report = coherence_report(&inside, 0, 1)?;

    // Classical counterpart: input amplitudes matched to I_a = 1 + eta and
    // I_b = 1 - eta, with the same relative phase beta.
    let classical_input = CoherentField::new(vec![
        Complex64::new((1.0 + eta).sqrt(), 0.0),
        Complex64::from_polar((1.0 - eta).sqrt(), beta),
    ]);
    let classical_inside = propagate_coherent(&classical_input, &first_splitter())?;
    let classical_pattern = coherent_pattern(&classical_inside, phis)?;
    let classical_report = coherent_report(&classical_inside, 0, 1).ok();

    let mut parameters = BTreeMap::new();
    parameters.insert("eta".into(), eta);
    parameters.insert("beta".into(), beta);
    let mut closed_form = BTreeMap::new();
    closed_form.insert("cos_coefficient".into(), eta);
    closed_form.insert(
        "sin_coefficient_quantum".into(),
        -(2.0 * eta * (1.0 - eta)).sqrt() * beta.sin(),
    );
    closed_form.insert(
        "sin_coefficient_classical".into(),
        -((1.0 + eta) * (1.0 - eta)).sqrt() * beta.sin(),
    );
    closed_form.insert("visibility_quantum".into(), quantum_visibility(eta, beta));
    closed_form.insert(
        "visibility_classical".into(),
        classical_visibility(eta, beta),
    );
    Ok(ScenarioResult {
        name: "phased-interp".into(),
        parameters,
        closed_form,
        quantum: Some(ScenarioChannel {
            pattern,
            report: Some(report),
        }),
        classical: Some(ScenarioChannel {
            pattern: classical_pattern,
            report: classical_report,
        }),
    })
}

/// The coherent channel pair |alpha>_1 |e^{i phi12} alpha>_2: full-visibility
/// fringe whose offset tracks phi12.
pub fn classical_channel_model(
    alpha: Complex64,
    phi12: f64,
    phis: &[f64],
) -> Result<ScenarioResult> {
    if alpha.norm() == 0.0 {
        return Err(CoreError::InvalidParameter(
            "alpha must be nonzero".into(),
        ));
    }
    let inside = CoherentField::new(vec![alpha, alpha * Complex64::from_polar(1.0, phi12)]);
    let pattern = coherent_pattern(&inside, phis)?;
    let report = coherent_report(&inside, 0, 1)?;
    let mut parameters = BTreeMap::new();
    parameters.insert("alpha_re".into(), alpha.re);
    parameters.insert("alpha_im".into(), alpha.im);
    parameters.insert("phi12".into(), phi12);
    let mut closed_form = BTreeMap::new();
    closed_form.insert("visibility".into(), 1.0);
    closed_form.insert("g1_abs".into(), 1.0);
    closed_form.insert("mean_intensity".into(), alpha.norm_sqr());
    Ok(ScenarioResult {
        name: "classical".into(),
        parameters,
        closed_form,
        quantum: None,
        classical: Some(ScenarioChannel {
            pattern,
            report: Some(report),
        }),
    })
}

/// Four-mode polarization protocol: start from one H photon in spatial mode
/// 1 and one V photon in spatial mode 2, rotate the 2-mode polarization to
/// overlap H by cos(eta), mix both polarizations on a polarization
/// insensitive splitter, and post-select vacuum in the heralding mode. The
/// surviving branch is (cos eta a^dag^2/sqrt2 + sin eta a^dag b^dag)|0>
/// with success probability 1/2.
pub fn prepare_interpolation_state(eta_angle: f64) -> Result<PreparationOutcome> {
    // Mode order: 0 = 1H (-> A_H = a), 1 = 1V (-> A_V), 2 = 2H (-> B_H = c),
    // 3 = 2V (-> B_V).
    let initial = FockState::basis(&[1, 0, 0, 1]);

    // Rotate the 2-channel polarization: 2V^dag -> cos(eta) 2H^dag +
    // sin(eta) 2V^dag, a block rotation on (2V, 2H) by pi/2 - eta.
    let rotation =
        polarization_rotation(3, 2, std::f64::consts::FRAC_PI_2 - eta_angle, 4)?;

    // Polarization-insensitive splitter: 1 -> (A+B)/sqrt2, 2 -> (A-B)/sqrt2
    // for each polarization.
    let splitter = balanced_splitter(0, 2, 4)?.compose(&balanced_splitter(1, 3, 4)?)?;

    // Express the V-polarized outputs in the (b_perp, b) basis with
    // b = (A_V - B_V)/sqrt2 landing on index 3.
    let v_basis = balanced_splitter_signed(1, 3, 4, SplitterSign::SecondMinus)?;

    let transform = rotation.compose(&splitter)?.compose(&v_basis)?;
    let propagated = propagate_fock(&initial, &transform)?;

    // Herald on vacuum in c (index 2) and in the unoccupied b_perp (index 1);
    // remaining modes are (a, b).
    let (state, success_probability) = propagated.project_vacuum(&[1, 2])?;

    let target = FockState::from_amplitudes(
        2,
        [
            (vec![2, 0], Complex64::new(eta_angle.cos(), 0.0)),
            (vec![1, 1], Complex64::new(eta_angle.sin(), 0.0)),
        ],
    )?;
    let fidelity = target.inner_product(&state)?.norm_sqr();

    let inside = propagate_fock(&state, &first_splitter())?;
    let phis = crate::coherence::default_phi_grid();
    let pattern = scan_pattern(&inside, &phis)?;
    let report = coherence_report(&inside, 0, 1)?;

    let eta_weight = eta_angle.cos().powi(2);
    let mut parameters = BTreeMap::new();
    parameters.insert("eta_angle".into(), eta_angle);
    parameters.insert("eta_weight".into(), eta_weight);
    let mut closed_form = BTreeMap::new();
    closed_form.insert("success_probability".into(), 0.5);
    closed_form.insert("fidelity".into(), 1.0);
    closed_form.insert("g1_abs_quantum".into(), quantum_g1(eta_weight));
    let result = ScenarioResult {
        name: "prep".into(),
        parameters,
        closed_form,
        quantum: Some(ScenarioChannel {
            pattern,
            report: Some(report),
        }),
        classical: None,
    };
    Ok(PreparationOutcome {
        state,
        success_probability,
        fidelity,
        result,
    })
}

/// Coherence-suppression curve: operator-simulated |g(1)| against the closed
/// form, with the classical reference line at 1.
pub fn fig2_curve(eta_grid: &[f64]) -> Result<Vec<Fig2Point>> {
    eta_grid
        .iter()
        .map(|&eta| {
            check_eta(eta)?;
            let inside = propagate_fock(&interpolation_input(eta, 0.0)?, &first_splitter())?;
            let report = coherence_report(&inside, 0, 1)?;
            Ok(Fig2Point {
                eta,
                g1_simulated: report.g1.norm(),
                g1_closed_form: quantum_g1(eta),
                g1_classical: 1.0,
            })
        })
        .collect()
}

/// Uniform grid of `points` values over [lo, hi], endpoints included.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    (0..points)
        .map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64)
        .collect()
}
