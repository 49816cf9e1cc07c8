//! Mode transformations: beam splitters, phase shifters, polarization
//! rotators, and propagation of Fock states and coherent fields through them.
//!
//! Convention, fixed throughout: a transform replaces input creation operator
//! i by sum_j U[i][j] * (output creation operator j). The balanced splitter is
//! the Hadamard form a^dag -> (1^dag + 2^dag)/sqrt2, b^dag -> (1^dag -
//! 2^dag)/sqrt2; the phase shifter is a separate diagonal element.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::fock::{FockState, PRUNE_THRESHOLD};

/// Entrywise tolerance for accepting U U^dag = I.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// Which row of the balanced-splitter block carries the minus sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitterSign {
    /// Second input row is (1, -1)/sqrt2: a -> (1+2)/sqrt2, b -> (1-2)/sqrt2.
    SecondMinus,
    /// First input row is (1, -1)/sqrt2.
    FirstMinus,
}

/// Unitary substitution on creation operators, row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeTransform {
    mode_count: usize,
    entries: Vec<Complex64>,
}

impl ModeTransform {
    pub fn identity(mode_count: usize) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); mode_count * mode_count];
        for i in 0..mode_count {
            entries[i * mode_count + i] = Complex64::new(1.0, 0.0);
        }
        ModeTransform {
            mode_count,
            entries,
        }
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.mode_count + j]
    }

    fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.mode_count + j] = value;
    }

    pub fn is_unitary(&self) -> bool {
        let n = self.mode_count;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.entry(i, k) * self.entry(j, k).conj();
                }
                let expected = if i == j { 1.0 } else { 0.0 };
                if (acc - expected).norm() > UNITARITY_TOLERANCE {
                    return false;
                }
            }
        }
        true
    }

    /// The substitution that applies `self` first, `then` second.
    pub fn compose(&self, then: &ModeTransform) -> Result<ModeTransform> {
        if self.mode_count != then.mode_count {
            return Err(CoreError::ModeMismatch {
                left: self.mode_count,
                right: then.mode_count,
            });
        }
        let n = self.mode_count;
        let mut out = ModeTransform {
            mode_count: n,
            entries: vec![Complex64::new(0.0, 0.0); n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    acc += self.entry(i, j) * then.entry(j, k);
                }
                out.set(i, k, acc);
            }
        }
        Ok(out)
    }
}

fn check_pair(i: usize, j: usize, mode_count: usize) -> Result<()> {
    for &m in &[i, j] {
        if m >= mode_count {
            return Err(CoreError::ModeOutOfRange { mode: m, mode_count });
        }
    }
    if i == j {
        return Err(CoreError::DegenerateSplitter(i));
    }
    Ok(())
}

/// Balanced splitter on (i, j), identity elsewhere.
pub fn balanced_splitter(i: usize, j: usize, mode_count: usize) -> Result<ModeTransform> {
    balanced_splitter_signed(i, j, mode_count, SplitterSign::SecondMinus)
}

pub fn balanced_splitter_signed(
    i: usize,
    j: usize,
    mode_count: usize,
    sign: SplitterSign,
) -> Result<ModeTransform> {
    check_pair(i, j, mode_count)?;
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut t = ModeTransform::identity(mode_count);
    match sign {
        SplitterSign::SecondMinus => {
            t.set(i, i, s);
            t.set(i, j, s);
            t.set(j, i, s);
            t.set(j, j, -s);
        }
        SplitterSign::FirstMinus => {
            t.set(i, i, s);
            t.set(i, j, -s);
            t.set(j, i, s);
            t.set(j, j, s);
        }
    }
    Ok(t)
}

/// Diagonal shifter: creation operator i picks up e^{i phi}.
pub fn phase_shifter(i: usize, phi: f64, mode_count: usize) -> Result<ModeTransform> {
    if i >= mode_count {
        return Err(CoreError::ModeOutOfRange { mode: i, mode_count });
    }
    let mut t = ModeTransform::identity(mode_count);
    t.set(i, i, Complex64::from_polar(1.0, phi));
    Ok(t)
}

/// Real rotation block [[cos, sin], [-sin, cos]] on rows/columns (i, j).
pub fn polarization_rotation(i: usize, j: usize, eta: f64, mode_count: usize) -> Result<ModeTransform> {
    check_pair(i, j, mode_count)?;
    let (sin, cos) = eta.sin_cos();
    let mut t = ModeTransform::identity(mode_count);
    t.set(i, i, Complex64::new(cos, 0.0));
    t.set(i, j, Complex64::new(sin, 0.0));
    t.set(j, i, Complex64::new(-sin, 0.0));
    t.set(j, j, Complex64::new(cos, 0.0));
    Ok(t)
}

/// Rewrite the state's creation-operator polynomial under the substitution
/// and re-expand in the number basis. Rejects non-unitary transforms since
/// norm preservation is a module guarantee.
pub fn propagate_fock(state: &FockState, t: &ModeTransform) -> Result<FockState> {
    if state.mode_count() != t.mode_count() {
        return Err(CoreError::ModeMismatch {
            left: state.mode_count(),
            right: t.mode_count(),
        });
    }
    if !t.is_unitary() {
        return Err(CoreError::NonUnitary);
    }
    let n = t.mode_count();
    let mut out = FockState::zero(n);
    for (occ, amp) in state.amplitudes() {
        // |occ> = prod_i (a_i^dag)^{n_i} / sqrt(n_i!) |0>; substitute each
        // a_i^dag by its output-mode combination and apply to the vacuum.
        let mut norm_factor = 1.0;
        for &count in occ.counts() {
            for k in 1..=count {
                norm_factor *= (k as f64).sqrt();
            }
        }
        // Scale only after the expansion: the seed amplitude divided by
        // sqrt(n!) can drop below the prune threshold for deep shells.
        let mut partial = FockState::vacuum(n);
        for (mode, &count) in occ.counts().iter().enumerate() {
            for _ in 0..count {
                let mut next = FockState::zero(n);
                for out_mode in 0..n {
                    let coeff = t.entry(mode, out_mode);
                    if coeff.norm() < PRUNE_THRESHOLD {
                        continue;
                    }
                    next = next.add(&partial.apply_creation(out_mode)?.scale(coeff))?;
                }
                partial = next;
            }
        }
        out = out.add(&partial.scale(amp / norm_factor))?;
    }
    Ok(out)
}

/// One Glauber amplitude per mode; the classical model carrier.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoherentField {
    pub amplitudes: Vec<Complex64>,
}

impl CoherentField {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        CoherentField { amplitudes }
    }

    pub fn mode_count(&self) -> usize {
        self.amplitudes.len()
    }

    /// Total mean photon number, sum |alpha|^2.
    pub fn total_mean_photon_number(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Coherent states map to coherent states under linear optics; the amplitude
/// vector transforms by the same substitution, beta_j = sum_i alpha_i U[i][j].
pub fn propagate_coherent(field: &CoherentField, t: &ModeTransform) -> Result<CoherentField> {
    if field.mode_count() != t.mode_count() {
        return Err(CoreError::ModeMismatch {
            left: field.mode_count(),
            right: t.mode_count(),
        });
    }
    let n = t.mode_count();
    let amplitudes = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| field.amplitudes[i] * t.entry(i, j))
                .sum::<Complex64>()
        })
        .collect();
    Ok(CoherentField { amplitudes })
}

/// Product of per-mode Poissonian expansions e^{-|a|^2/2} a^n / sqrt(n!),
/// truncated to total occupation <= cutoff. Returns the truncated state and
/// the neglected probability mass.
pub fn coherent_to_fock(field: &CoherentField, cutoff: u32) -> (FockState, f64) {
    let n = field.mode_count();
    let prefactor = (-field.total_mean_photon_number() / 2.0).exp();
    let mut state = FockState::zero(n);
    let mut kept_mass = 0.0;
    let mut counts = vec![0u32; n];
    enumerate_occupations(&mut counts, 0, cutoff, &mut |counts| {
        let mut amp = Complex64::new(prefactor, 0.0);
        for (mode, &k) in counts.iter().enumerate() {
            for step in 1..=k {
                amp *= field.amplitudes[mode] / (step as f64).sqrt();
            }
        }
        kept_mass += amp.norm_sqr();
        if amp.norm() >= PRUNE_THRESHOLD {
            state = state
                .add(&FockState::basis(counts).scale(amp))
                .expect("same mode count");
        }
    });
    (state, (1.0 - kept_mass).max(0.0))
}

fn enumerate_occupations(
    counts: &mut Vec<u32>,
    mode: usize,
    budget: u32,
    visit: &mut impl FnMut(&[u32]),
) {
    if mode == counts.len() {
        visit(counts);
        return;
    }
    for k in 0..=budget {
        counts[mode] = k;
        enumerate_occupations(counts, mode + 1, budget - k, visit);
    }
    counts[mode] = 0;
}

/// Smallest cutoff such that the Poisson tail P(N > cutoff) at mean
/// `mean_total` drops below `target_mass`.
pub fn cutoff_for_neglected_mass(mean_total: f64, target_mass: f64) -> u32 {
    if mean_total <= 0.0 {
        return 0;
    }
    let mut term = (-mean_total).exp();
    let mut cdf = term;
    let mut k = 0u32;
    while 1.0 - cdf > target_mass && k < 10_000 {
        k += 1;
        term *= mean_total / k as f64;
        cdf += term;
    }
    k
}

/// Serializable circuit description, one element per optical component.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CircuitElement {
    Splitter {
        modes: (usize, usize),
        #[serde(default = "default_sign")]
        sign: SplitterSign,
    },
    Phase {
        mode: usize,
        phi: f64,
    },
    Polrot {
        modes: (usize, usize),
        eta: f64,
    },
}

fn default_sign() -> SplitterSign {
    SplitterSign::SecondMinus
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CircuitSpec {
    pub modes: usize,
    pub elements: Vec<CircuitElement>,
}

impl CircuitSpec {
    /// Compose all elements, in order, into a single transform.
    pub fn to_transform(&self) -> Result<ModeTransform> {
        let mut t = ModeTransform::identity(self.modes);
        for element in &self.elements {
            let next = match *element {
                CircuitElement::Splitter { modes: (i, j), sign } => {
                    balanced_splitter_signed(i, j, self.modes, sign)?
                }
                CircuitElement::Phase { mode, phi } => phase_shifter(mode, phi, self.modes)?,
                CircuitElement::Polrot { modes: (i, j), eta } => {
                    polarization_rotation(i, j, eta, self.modes)?
                }
            };
            t = t.compose(&next)?;
        }
        if !t.is_unitary() {
            return Err(CoreError::NonUnitary);
        }
        Ok(t)
    }
}
