//! Browser bindings: a thin JSON-over-string facade over the core scenarios,
//! sized for an interactive demo page. The `api` module is plain Rust (and
//! unit-tested on the host); the `#[wasm_bindgen]` wrappers exist only on
//! wasm32, where a thrown string marks a validation error.

pub mod api {
    use fringelab_core::coherence::phi_grid;
    use fringelab_core::scenarios::{
        classical_visibility, fig2_curve, linear_grid, phased_interpolation_scenario,
        prepare_interpolation_state, quantum_visibility,
    };

    fn to_json<T: serde::Serialize>(value: &T) -> Result<String, String> {
        serde_json::to_string(value).map_err(|e| e.to_string())
    }

    /// Scan the (eta, beta) interpolation scenario: returns the quantum and
    /// classical fringe patterns plus both visibility closed forms.
    pub fn scan_interpolation(eta: f64, beta: f64, phi_points: usize) -> Result<String, String> {
        let phis = phi_grid(phi_points.clamp(16, 4096));
        let result =
            phased_interpolation_scenario(eta, beta, &phis).map_err(|e| e.to_string())?;
        let quantum = result.quantum.as_ref().expect("quantum channel");
        let classical = result.classical.as_ref().expect("classical channel");
        to_json(&serde_json::json!({
            "phis": phis,
            "quantum_intensity_a": quantum.pattern.intensity_a,
            "classical_intensity_a": classical.pattern.intensity_a,
            "coincidence_aa": quantum.pattern.coincidences.as_ref().map(|c| &c.p_aa),
            "visibility_quantum": quantum_visibility(eta, beta),
            "visibility_classical": classical_visibility(eta, beta),
        }))
    }

    /// The |g1|(eta) suppression curve with the classical reference line.
    pub fn coherence_curve(points: usize) -> Result<String, String> {
        let rows = fig2_curve(&linear_grid(0.0, 1.0, points.clamp(2, 1024)))
            .map_err(|e| e.to_string())?;
        to_json(&rows)
    }

    /// Run the four-mode preparation protocol at a mixing angle (radians).
    pub fn prepare(eta_angle: f64) -> Result<String, String> {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&eta_angle) {
            return Err("eta_angle must lie in [0, pi/2]".into());
        }
        let outcome = prepare_interpolation_state(eta_angle).map_err(|e| e.to_string())?;
        to_json(&serde_json::json!({
            "state": outcome.state,
            "success_probability": outcome.success_probability,
            "fidelity": outcome.fidelity,
            "closed_form": outcome.result.closed_form,
        }))
    }
}

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    #[wasm_bindgen]
    pub fn scan_interpolation(eta: f64, beta: f64, phi_points: usize) -> Result<String, JsValue> {
        crate::api::scan_interpolation(eta, beta, phi_points)
            .map_err(|e| JsValue::from_str(&e))
    }

    #[wasm_bindgen]
    pub fn coherence_curve(points: usize) -> Result<String, JsValue> {
        crate::api::coherence_curve(points).map_err(|e| JsValue::from_str(&e))
    }

    #[wasm_bindgen]
    pub fn prepare(eta_angle: f64) -> Result<String, JsValue> {
        crate::api::prepare(eta_angle).map_err(|e| JsValue::from_str(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::api::*;

    #[test]
    fn scan_payload_is_valid_json_with_expected_keys() {
        let text = scan_interpolation(0.4, 1.1, 181).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["phis"].as_array().unwrap().len(), 181);
        assert!(value["visibility_quantum"].as_f64().unwrap() > 0.0);
        assert!(
            value["visibility_quantum"].as_f64().unwrap()
                <= value["visibility_classical"].as_f64().unwrap() + 1e-12
        );
    }

    #[test]
    fn scan_rejects_out_of_range_eta() {
        assert!(scan_interpolation(1.5, 0.0, 181).is_err());
    }

    #[test]
    fn curve_payload_has_requested_rows() {
        let text = coherence_curve(31).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value.as_array().unwrap().len(), 31);
    }

    #[test]
    fn prepare_payload_reports_success_probability() {
        let text = prepare(0.6).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!((value["success_probability"].as_f64().unwrap() - 0.5).abs() < 1e-12);
        assert!((value["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn prepare_rejects_out_of_range_angle() {
        assert!(prepare(2.0).is_err());
    }
}
