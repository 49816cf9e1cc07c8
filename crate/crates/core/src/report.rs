//! Plot-ready text output. CSV column order is part of the interface and is
//! relied on by golden-file tests: patterns emit
//! `phi,I_A,I_B,P_AA,P_BB,P_AB` and the coherence curve emits
//! `eta,g1_sim,g1_formula,g1_classical`. Floats are printed with 17
//! significant digits so golden files round-trip losslessly.

use std::fmt::Write as _;

use crate::coherence::InterferencePattern;
use crate::scenarios::Fig2Point;

/// Lossless f64 formatting: 17 significant digits, scientific notation.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

pub const PATTERN_CSV_HEADER: &str = "phi,I_A,I_B,P_AA,P_BB,P_AB";
pub const FIG2_CSV_HEADER: &str = "eta,g1_sim,g1_formula,g1_classical";
pub const COMPARE_CSV_HEADER: &str = "eta,beta,v_q_sim,v_q_formula,v_c_sim,v_c_formula";

/// One row per grid point; coincidence columns are left empty when the state
/// does not define them.
pub fn pattern_to_csv(pattern: &InterferencePattern) -> String {
    let mut out = String::new();
    out.push_str(PATTERN_CSV_HEADER);
    out.push('\n');
    for (k, &phi) in pattern.phis.iter().enumerate() {
        let _ = write!(
            out,
            "{},{},{}",
            format_f64(phi),
            format_f64(pattern.intensity_a[k]),
            format_f64(pattern.intensity_b[k]),
        );
        match &pattern.coincidences {
            Some(c) => {
                let _ = write!(
                    out,
                    ",{},{},{}",
                    format_f64(c.p_aa[k]),
                    format_f64(c.p_bb[k]),
                    format_f64(c.p_ab[k]),
                );
            }
            None => out.push_str(",,,"),
        }
        out.push('\n');
    }
    out
}

pub fn fig2_to_csv(rows: &[Fig2Point]) -> String {
    let mut out = String::new();
    out.push_str(FIG2_CSV_HEADER);
    out.push('\n');
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_f64(row.eta),
            format_f64(row.g1_simulated),
            format_f64(row.g1_closed_form),
            format_f64(row.g1_classical),
        );
    }
    out
}

/// One visibility-surface row: (eta, beta) with simulated and closed-form
/// quantum/classical visibilities.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CompareRow {
    pub eta: f64,
    pub beta: f64,
    pub v_q_simulated: f64,
    pub v_q_closed_form: f64,
    pub v_c_simulated: f64,
    pub v_c_closed_form: f64,
}

pub fn compare_to_csv(rows: &[CompareRow]) -> String {
    let mut out = String::new();
    out.push_str(COMPARE_CSV_HEADER);
    out.push('\n');
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            format_f64(row.eta),
            format_f64(row.beta),
            format_f64(row.v_q_simulated),
            format_f64(row.v_q_closed_form),
            format_f64(row.v_c_simulated),
            format_f64(row.v_c_closed_form),
        );
    }
    out
}
