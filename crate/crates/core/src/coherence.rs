//! Intensities, first-order correlation and coherence, visibility, and
//! phase scans of interference patterns for quantum states and coherent
//! fields.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::fock::FockState;
use crate::optics::{
    balanced_splitter, phase_shifter, propagate_coherent, propagate_fock, CoherentField,
};

/// Default scan grid: 721 points on [0, 2pi], 0.5 degree resolution.
pub const DEFAULT_PHI_POINTS: usize = 721;

/// Coincidence probabilities are only attached for states of definite total
/// photon number up to this.
pub const MAX_COINCIDENCE_PHOTONS: u32 = 4;

pub fn phi_grid(points: usize) -> Vec<f64> {
    let span = 2.0 * std::f64::consts::PI;
    (0..points)
        .map(|k| span * k as f64 / (points - 1) as f64)
        .collect()
}

pub fn default_phi_grid() -> Vec<f64> {
    phi_grid(DEFAULT_PHI_POINTS)
}

/// Channel intensities, G(1) entries, g(1), and the visibility they imply.
#[derive(Clone, Debug, Serialize)]
pub struct CoherenceReport {
    pub intensity_1: f64,
    pub intensity_2: f64,
    pub g11: f64,
    pub g22: f64,
    pub g12: Complex64,
    pub g1: Complex64,
    pub visibility: f64,
    /// Set when one channel is empty; g1 is then defined as 0.
    pub degenerate: bool,
}

/// Two-photon coincidence probabilities per shot, sampled over the grid.
#[derive(Clone, Debug, Serialize)]
pub struct CoincidenceSeries {
    pub p_aa: Vec<f64>,
    pub p_bb: Vec<f64>,
    pub p_ab: Vec<f64>,
}

/// Detector intensities (and coincidences when defined) over a phase grid.
#[derive(Clone, Debug, Serialize)]
pub struct InterferencePattern {
    pub phis: Vec<f64>,
    pub intensity_a: Vec<f64>,
    pub intensity_b: Vec<f64>,
    pub coincidences: Option<CoincidenceSeries>,
}

/// Numerically extracted fringe contrast with the extremal grid points.
#[derive(Clone, Debug, Serialize)]
pub struct VisibilityEstimate {
    pub value: f64,
    pub phi_max: f64,
    pub phi_min: f64,
}

/// G(1)_ij = <i^dag j>. Diagonal entries are the channel intensities.
pub fn first_order_correlation(state: &FockState, i: usize, j: usize) -> Result<Complex64> {
    let n = state.mode_count();
    let mut creation = vec![0u32; n];
    let mut annihilation = vec![0u32; n];
    creation[i] += 1;
    annihilation[j] += 1;
    state.normally_ordered_moment(&creation, &annihilation)
}

/// Assemble intensities, correlations, g(1) and the visibility
/// V = |g1| 2 sqrt(I1 I2) / (I1 + I2) for channels (i, j).
pub fn coherence_report(state: &FockState, i: usize, j: usize) -> Result<CoherenceReport> {
    let g11 = first_order_correlation(state, i, i)?.re;
    let g22 = first_order_correlation(state, j, j)?.re;
    let g12 = first_order_correlation(state, i, j)?;
    let total = g11 + g22;
    if total <= 0.0 {
        return Err(CoreError::InvalidParameter(
            "no photons in either channel".into(),
        ));
    }
    // Both channels empty is rejected above; a single empty channel makes
    // g1 a 0/0 and the fringe flat, so 0 is the consistent completion.
    let degenerate = g11 <= 0.0 || g22 <= 0.0;
    let g1 = if degenerate {
        Complex64::new(0.0, 0.0)
    } else {
        g12 / (g11 * g22).sqrt()
    };
    let visibility = g1.norm() * 2.0 * (g11 * g22).max(0.0).sqrt() / total;
    Ok(CoherenceReport {
        intensity_1: g11,
        intensity_2: g22,
        g11,
        g22,
        g12,
        g1,
        visibility,
        degenerate,
    })
}

/// Scan the output of a state inside a two-mode interferometer: for each phi,
/// apply the channel-1 phase shifter and the output splitter, then evaluate
/// detector intensities and (for definite photon number <= 4) the per-shot
/// coincidence probabilities P_AA = <A2d A2>/2, P_BB = <B2d B2>/2,
/// P_AB = <Ad Bd A B>.
pub fn scan_pattern(inside_state: &FockState, phis: &[f64]) -> Result<InterferencePattern> {
    if phis.is_empty() {
        return Err(CoreError::EmptyGrid);
    }
    if inside_state.mode_count() != 2 {
        return Err(CoreError::ModeMismatch {
            left: inside_state.mode_count(),
            right: 2,
        });
    }
    let with_coincidences = inside_state
        .definite_total_photon_number()
        .is_some_and(|n| n <= MAX_COINCIDENCE_PHOTONS);
    let splitter = balanced_splitter(0, 1, 2)?;
    let mut intensity_a = Vec::with_capacity(phis.len());
    let mut intensity_b = Vec::with_capacity(phis.len());
    let mut p_aa = Vec::with_capacity(phis.len());
    let mut p_bb = Vec::with_capacity(phis.len());
    let mut p_ab = Vec::with_capacity(phis.len());
    for &phi in phis {
        let transform = phase_shifter(0, phi, 2)?.compose(&splitter)?;
        let out = propagate_fock(inside_state, &transform)?;
        intensity_a.push(out.normally_ordered_moment(&[1, 0], &[1, 0])?.re);
        intensity_b.push(out.normally_ordered_moment(&[0, 1], &[0, 1])?.re);
        if with_coincidences {
            p_aa.push(0.5 * out.normally_ordered_moment(&[2, 0], &[2, 0])?.re);
            p_bb.push(0.5 * out.normally_ordered_moment(&[0, 2], &[0, 2])?.re);
            p_ab.push(out.normally_ordered_moment(&[1, 1], &[1, 1])?.re);
        }
    }
    Ok(InterferencePattern {
        phis: phis.to_vec(),
        intensity_a,
        intensity_b,
        coincidences: with_coincidences.then_some(CoincidenceSeries { p_aa, p_bb, p_ab }),
    })
}

/// Closed-form detector-A intensity for a two-mode state with amplitudes
/// c_{mu,nu}: the diagonal background plus the first off-diagonal fringe
/// terms with weights sqrt(mu (nu+1)) and sqrt((mu+1) nu). Independent of the
/// operator engine; reads the amplitudes directly.
pub fn general_intensity_closed_form(state: &FockState, phi: f64) -> f64 {
    let mut background = 0.0;
    let mut fringe = Complex64::new(0.0, 0.0);
    for (occ, amp) in state.amplitudes() {
        let (mu, nu) = (occ.count(0), occ.count(1));
        background += amp.norm_sqr() * (mu + nu) as f64 / 2.0;
        if mu >= 1 {
            let partner = state.amplitude(&[mu - 1, nu + 1]);
            fringe += amp.conj() * partner * (mu as f64 * (nu + 1) as f64).sqrt();
        }
    }
    background + (Complex64::from_polar(1.0, -phi) * fringe).re
}

/// (max - min)/(max + min) with extrema located on the grid. The grid
/// resolution bounds the accuracy.
pub fn visibility_from_pattern(phis: &[f64], series: &[f64]) -> Result<VisibilityEstimate> {
    if phis.is_empty() || phis.len() != series.len() {
        return Err(CoreError::EmptyGrid);
    }
    let mut max_idx = 0;
    let mut min_idx = 0;
    for (idx, &value) in series.iter().enumerate() {
        if value > series[max_idx] {
            max_idx = idx;
        }
        if value < series[min_idx] {
            min_idx = idx;
        }
    }
    let (max, min) = (series[max_idx], series[min_idx]);
    if max <= 0.0 {
        return Err(CoreError::ZeroSeries);
    }
    let value = if max - min < 1e-12 {
        0.0
    } else {
        (max - min) / (max + min)
    };
    Ok(VisibilityEstimate {
        value,
        phi_max: phis[max_idx],
        phi_min: phis[min_idx],
    })
}

/// Fundamental-harmonic fit of a series sampled uniformly over one full
/// period (endpoint duplicated): returns (mean, cos coefficient, sin
/// coefficient). Exact for trigonometric polynomials resolved by the grid.
pub fn first_harmonic(phis: &[f64], series: &[f64]) -> Result<(f64, f64, f64)> {
    if phis.len() < 3 || phis.len() != series.len() {
        return Err(CoreError::EmptyGrid);
    }
    // Drop the duplicated endpoint; remaining points are uniform on [0, 2pi).
    let n = phis.len() - 1;
    let mut mean = 0.0;
    let mut cos_coeff = 0.0;
    let mut sin_coeff = 0.0;
    for k in 0..n {
        mean += series[k];
        cos_coeff += series[k] * phis[k].cos();
        sin_coeff += series[k] * phis[k].sin();
    }
    Ok((
        mean / n as f64,
        2.0 * cos_coeff / n as f64,
        2.0 * sin_coeff / n as f64,
    ))
}

/// Classical scan: propagate the inside field through shifter and output
/// splitter for each phi; coincidence columns follow the factorized
/// coherent-state statistics.
pub fn coherent_pattern(inside: &CoherentField, phis: &[f64]) -> Result<InterferencePattern> {
    if phis.is_empty() {
        return Err(CoreError::EmptyGrid);
    }
    if inside.mode_count() != 2 {
        return Err(CoreError::ModeMismatch {
            left: inside.mode_count(),
            right: 2,
        });
    }
    let splitter = balanced_splitter(0, 1, 2)?;
    let mut intensity_a = Vec::with_capacity(phis.len());
    let mut intensity_b = Vec::with_capacity(phis.len());
    let mut p_aa = Vec::with_capacity(phis.len());
    let mut p_bb = Vec::with_capacity(phis.len());
    let mut p_ab = Vec::with_capacity(phis.len());
    for &phi in phis {
        let transform = phase_shifter(0, phi, 2)?.compose(&splitter)?;
        let out = propagate_coherent(inside, &transform)?;
        let ia = out.amplitudes[0].norm_sqr();
        let ib = out.amplitudes[1].norm_sqr();
        intensity_a.push(ia);
        intensity_b.push(ib);
        p_aa.push(0.5 * ia * ia);
        p_bb.push(0.5 * ib * ib);
        p_ab.push(ia * ib);
    }
    Ok(InterferencePattern {
        phis: phis.to_vec(),
        intensity_a,
        intensity_b,
        coincidences: Some(CoincidenceSeries { p_aa, p_bb, p_ab }),
    })
}

/// Analytic coherence report for a product coherent state: G(1)_ij =
/// conj(alpha_i) alpha_j, so |g1| = 1 whenever both channels are occupied.
pub fn coherent_report(field: &CoherentField, i: usize, j: usize) -> Result<CoherenceReport> {
    let a1 = field.amplitudes[i];
    let a2 = field.amplitudes[j];
    let g11 = a1.norm_sqr();
    let g22 = a2.norm_sqr();
    let total = g11 + g22;
    if total <= 0.0 {
        return Err(CoreError::InvalidParameter(
            "no photons in either channel".into(),
        ));
    }
    let degenerate = g11 <= 0.0 || g22 <= 0.0;
    let g12 = a1.conj() * a2;
    let g1 = if degenerate {
        Complex64::new(0.0, 0.0)
    } else {
        g12 / (g11 * g22).sqrt()
    };
    Ok(CoherenceReport {
        intensity_1: g11,
        intensity_2: g22,
        g11,
        g22,
        g12,
        g1,
        visibility: g1.norm() * 2.0 * (g11 * g22).sqrt() / total,
        degenerate,
    })
}
